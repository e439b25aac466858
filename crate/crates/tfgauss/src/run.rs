//! Batch front end: load a TOML config, validate the weight pair against
//! the space hypotheses, run one experiment, and write machine-readable
//! artifacts plus a run manifest.
//!
//! Validation precedes computation: no experiment runs against a weight pair
//! that fails the hypotheses unless `--force` is given, and a forced run is
//! recorded in the manifest.  Exit mapping (done by the binary): success 0,
//! validation/config failure 2, runtime failure 1.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::approx::{
    completeness_witness, default_ridge, gram_matrix, greedy_pursuit, least_squares_fit,
    ApproxReport, Dictionary,
};
use crate::atoms::{check_window, schur_bound, GaussianAtom, SchurKernel, WindowSpec};
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::grid::Signal;
use crate::io::{self, fmt_float};
use crate::operators::{
    composite_identity_error, mollifier_cert, mollifier_identity_error, CompositeOrder,
};
use crate::transform::{forward_ft, inverse_ft, parseval_gap};
use crate::weights::{NonDegeneracyReport, RegularityEnvelope, WeightAnalysis};
use crate::wspace::{default_embedding_family, SpacePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    CheckWeights,
    Transform,
    Mollify,
    Approximate,
    Witness,
    CheckWindow,
}

impl Subcommand {
    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::CheckWeights => "check-weights",
            Subcommand::Transform => "transform",
            Subcommand::Mollify => "mollify",
            Subcommand::Approximate => "approximate",
            Subcommand::Witness => "witness",
            Subcommand::CheckWindow => "check-window",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config_path: PathBuf,
    pub subcommand: Subcommand,
    pub out_override: Option<PathBuf>,
    pub force: bool,
    pub threads: usize,
    pub seed: u64,
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    config_sha256: String,
    forced: bool,
    threads: usize,
    seed: u64,
    wall_ms: u128,
    outputs: Vec<String>,
}

#[derive(Serialize)]
struct WeightSideReport {
    nondegeneracy: NonDegeneracyReport,
    one_plus_envelope: RegularityEnvelope,
    mmc_deltas: Vec<f64>,
    mmc_values: Vec<f64>,
}

#[derive(Serialize)]
struct WeightsReport {
    w_t: WeightSideReport,
    w_omega: WeightSideReport,
    hypotheses_hold: bool,
}

#[derive(Serialize)]
struct TransformReport {
    roundtrip_max_abs_error: f64,
    parseval_gap: f64,
    time_norm_sq: f64,
    freq_norm_sq: f64,
}

#[derive(Serialize)]
struct EmbeddingJson {
    b_hat: f64,
    family_size: usize,
    argmax_params: (f64, f64),
}

#[derive(Serialize)]
struct ApproxJson {
    atoms: Vec<(f64, f64)>,
    coefficients: Vec<(f64, f64)>,
    residual_h_norm: f64,
    residual_trace: Vec<f64>,
    gram_condition: f64,
}

fn approx_json(report: &ApproxReport) -> ApproxJson {
    ApproxJson {
        atoms: report.atoms.clone(),
        coefficients: report.coefficients.iter().map(|c| (c.re, c.im)).collect(),
        residual_h_norm: report.residual_h_norm,
        residual_trace: report.residual_trace.clone(),
        gram_condition: report.gram_condition,
    }
}

/// Thin a dense per-offset curve to geometric indices for reporting.
fn thin_curve(analysis: &WeightAnalysis) -> (Vec<f64>, Vec<f64>) {
    let curve = analysis.curve();
    let n = curve.deltas.len();
    let mut idx = vec![0usize];
    let mut d = 1usize;
    while d < n - 1 {
        idx.push(d);
        d *= 2;
    }
    idx.push(n - 1);
    (
        idx.iter().map(|i| curve.deltas[*i]).collect(),
        idx.iter().map(|i| curve.values[*i]).collect(),
    )
}

struct RunContext {
    cfg: ExperimentConfig,
    base_dir: PathBuf,
    out_dir: PathBuf,
    outputs: Vec<PathBuf>,
}

impl RunContext {
    fn record(&mut self, path: PathBuf) {
        self.outputs.push(path);
    }

    fn out(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

/// Run one subcommand against a config; returns the artifact paths.
pub fn run(opts: &RunOptions) -> Result<Vec<PathBuf>> {
    let started = Instant::now();
    let config_text = std::fs::read_to_string(&opts.config_path)
        .map_err(|e| Error::config(format!("{}: {e}", opts.config_path.display())))?;
    let cfg = ExperimentConfig::load(&opts.config_path)?;
    let base_dir = opts
        .config_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let out_dir = opts
        .out_override
        .clone()
        .unwrap_or_else(|| base_dir.join(&cfg.outputs.dir));
    std::fs::create_dir_all(&out_dir)?;

    let mut ctx = RunContext { cfg, base_dir, out_dir, outputs: Vec::new() };
    let grid = ctx.cfg.build_grid()?;
    let freq_halfwidth = grid.reciprocal().halfwidth();
    let w_t = ctx.cfg.build_weight(&ctx.cfg.weights.w_t.clone(), grid.halfwidth(), &ctx.base_dir)?;
    let w_o =
        ctx.cfg.build_weight(&ctx.cfg.weights.w_omega.clone(), freq_halfwidth, &ctx.base_dir)?;
    let eps_t = ctx.cfg.weights.epsilon_t;
    let eps_o = ctx.cfg.weights.epsilon_omega;

    // validation precedes computation
    let pair = if opts.force {
        SpacePair::new_unchecked(w_t, w_o, grid, eps_t, eps_o)?
    } else if opts.subcommand == Subcommand::CheckWeights {
        // the checker itself reports the failure rather than aborting early
        SpacePair::new_unchecked(w_t, w_o, grid, eps_t, eps_o)?
    } else {
        SpacePair::new(w_t, w_o, grid, eps_t, eps_o)?
    };

    match opts.subcommand {
        Subcommand::CheckWeights => run_check_weights(&mut ctx, &pair, opts.force)?,
        Subcommand::Transform => run_transform(&mut ctx, &pair)?,
        Subcommand::Mollify => run_mollify(&mut ctx, &pair)?,
        Subcommand::Approximate => run_approximate(&mut ctx, &pair)?,
        Subcommand::Witness => run_witness(&mut ctx, &pair, opts.seed)?,
        Subcommand::CheckWindow => run_check_window(&mut ctx, &pair)?,
    }

    let manifest = Manifest {
        tool: "tfgauss",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: opts.subcommand.name(),
        config_sha256: hex_digest(&config_text),
        forced: opts.force,
        threads: opts.threads,
        seed: opts.seed,
        wall_ms: started.elapsed().as_millis(),
        outputs: ctx.outputs.iter().map(|p| p.display().to_string()).collect(),
    };
    let manifest_path = ctx.out("manifest.json");
    io::write_json(&manifest_path, &manifest)?;
    let mut outputs = ctx.outputs;
    outputs.push(manifest_path);
    Ok(outputs)
}

fn hex_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn run_check_weights(ctx: &mut RunContext, pair: &SpacePair, forced: bool) -> Result<()> {
    let (dt, vt) = thin_curve(pair.analysis_time());
    let (d_o, v_o) = thin_curve(pair.analysis_freq());
    let report = WeightsReport {
        w_t: WeightSideReport {
            nondegeneracy: pair.nondegeneracy_time(),
            one_plus_envelope: pair.analysis_time().envelope(),
            mmc_deltas: dt,
            mmc_values: vt,
        },
        w_omega: WeightSideReport {
            nondegeneracy: pair.nondegeneracy_freq(),
            one_plus_envelope: pair.analysis_freq().envelope(),
            mmc_deltas: d_o,
            mmc_values: v_o,
        },
        hypotheses_hold: pair.hypotheses_hold(),
    };
    let path = ctx.out("weights_report.json");
    io::write_json(&path, &report)?;
    ctx.record(path);

    if pair.hypotheses_hold() {
        let family: Vec<Signal> = default_embedding_family(pair.grid())
            .iter()
            .map(|a| a.signal(pair.grid()))
            .collect();
        let atoms = default_embedding_family(pair.grid());
        let est = pair.embedding_estimate(&family)?;
        let emb = EmbeddingJson {
            b_hat: est.b_hat,
            family_size: est.family_size,
            argmax_params: (atoms[est.argmax].alpha, atoms[est.argmax].tau),
        };
        let path = ctx.out("embedding.json");
        io::write_json(&path, &emb)?;
        ctx.record(path);
    } else if !forced {
        let what = if !pair.nondegeneracy_time().passes || !pair.nondegeneracy_freq().passes {
            "non-degeneracy failed"
        } else {
            "regularity failed"
        };
        return Err(Error::validation(format!(
            "{what}; see {}",
            ctx.out("weights_report.json").display()
        )));
    }
    Ok(())
}

fn run_transform(ctx: &mut RunContext, pair: &SpacePair) -> Result<()> {
    let target = ctx.cfg.build_target(pair.grid(), &ctx.base_dir)?;
    let spectrum = forward_ft(&target)?;
    let back = inverse_ft(&spectrum)?;
    let roundtrip = target
        .values
        .iter()
        .zip(&back.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    let report = TransformReport {
        roundtrip_max_abs_error: roundtrip,
        parseval_gap: parseval_gap(&target)?,
        time_norm_sq: target.l2_norm_sq(),
        freq_norm_sq: spectrum.l2_norm_sq(),
    };
    let sig_path = ctx.out("signal.csv");
    io::write_signal_csv(&sig_path, &target)?;
    ctx.record(sig_path);
    let spec_path = ctx.out("spectrum.csv");
    io::write_spectrum_csv(&spec_path, &spectrum)?;
    ctx.record(spec_path);
    let rep_path = ctx.out("transform_report.json");
    io::write_json(&rep_path, &report)?;
    ctx.record(rep_path);
    Ok(())
}

fn run_mollify(ctx: &mut RunContext, pair: &SpacePair) -> Result<()> {
    let target = ctx.cfg.build_target(pair.grid(), &ctx.base_dir)?;
    // certificates against w_T itself when strictly positive, else via 1 + w
    let analysis = WeightAnalysis::of_weight(pair.w_time(), pair.grid())
        .or_else(|_| WeightAnalysis::of_one_plus(pair.w_time(), pair.grid()))?;
    let mut csv = String::from(
        "alpha,error,bound,envelope_bound,composite_im_error,composite_mi_error\n",
    );
    for alpha in ctx.cfg.schedule.alphas.clone() {
        let cert = mollifier_cert(alpha, &analysis)?;
        let err = mollifier_identity_error(&target, alpha, pair.w_time())?;
        let im = composite_identity_error(&target, alpha, pair.w_time(), CompositeOrder::Im)?;
        let mi = composite_identity_error(&target, alpha, pair.w_time(), CompositeOrder::Mi)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_float(alpha),
            fmt_float(err),
            fmt_float(cert.bound),
            fmt_float(cert.envelope_bound),
            fmt_float(im),
            fmt_float(mi)
        ));
    }
    let path = ctx.out("mollify.csv");
    io::atomic_write(&path, csv.as_bytes())?;
    ctx.record(path);
    Ok(())
}

fn build_dictionary(ctx: &RunContext, pair: &SpacePair) -> Result<Dictionary> {
    let Some(dict_cfg) = &ctx.cfg.dictionary else {
        return Err(Error::config("this subcommand needs a [dictionary] section"));
    };
    if let Some(window_csv) = &dict_cfg.window_csv {
        let window = WindowSpec::new(io::read_signal_csv(&ctx.base_dir.join(window_csv))?)?;
        return Dictionary::windowed(
            pair.clone(),
            &window,
            &dict_cfg.alpha_grid,
            &dict_cfg.tau_grid,
        );
    }
    if let Some(atoms_csv) = &dict_cfg.atoms_csv {
        let labels = io::read_atoms_csv(&ctx.base_dir.join(atoms_csv))?;
        let atoms: Vec<GaussianAtom> = labels
            .into_iter()
            .map(|(a, t)| GaussianAtom::new(a, t))
            .collect::<Result<_>>()?;
        return Dictionary::gaussian(pair.clone(), &atoms);
    }
    Dictionary::gaussian_grid(pair.clone(), &dict_cfg.alpha_grid, &dict_cfg.tau_grid)
}

fn run_approximate(ctx: &mut RunContext, pair: &SpacePair) -> Result<()> {
    let target = ctx.cfg.build_target(pair.grid(), &ctx.base_dir)?;
    let dict = build_dictionary(ctx, pair)?;
    let dict_cfg = ctx.cfg.dictionary.clone().expect("checked in build_dictionary");

    let gram = gram_matrix(&dict);
    let ridge = dict_cfg.ridge.unwrap_or_else(|| default_ridge(&gram));
    let ls = least_squares_fit(&target, &dict, ridge)?;
    let ls_path = ctx.out("least_squares.json");
    io::write_json(&ls_path, &approx_json(&ls))?;
    ctx.record(ls_path);
    let atoms_path = ctx.out("atoms.csv");
    io::write_atoms_csv(&atoms_path, &ls.atoms)?;
    ctx.record(atoms_path);

    if !dict_cfg.alpha_grid.is_empty()
        && !dict_cfg.tau_grid.is_empty()
        && dict_cfg.window_csv.is_none()
    {
        let n = dict_cfg.greedy_atoms.min(dict.len());
        match greedy_pursuit(&target, pair, &dict_cfg.alpha_grid, &dict_cfg.tau_grid, n) {
            Ok(greedy) => {
                let path = ctx.out("greedy.json");
                io::write_json(&path, &approx_json(&greedy))?;
                ctx.record(path);
                let mut trace = String::from("iteration,residual_h_norm\n");
                for (i, r) in greedy.residual_trace.iter().enumerate() {
                    trace.push_str(&format!("{},{}\n", i + 1, fmt_float(*r)));
                }
                let path = ctx.out("residual_trace.csv");
                io::atomic_write(&path, trace.as_bytes())?;
                ctx.record(path);
            }
            // a target exhausted before n atoms is still a useful run
            Err(Error::StagnatedPursuit { iteration }) => {
                let path = ctx.out("greedy.json");
                io::write_json(
                    &path,
                    &serde_json::json!({ "stagnated_at_iteration": iteration }),
                )?;
                ctx.record(path);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn run_witness(ctx: &mut RunContext, pair: &SpacePair, seed: u64) -> Result<()> {
    let target = ctx.cfg.build_target(pair.grid(), &ctx.base_dir)?;
    let alphas = ctx.cfg.schedule.alphas.clone();
    let curves = completeness_witness(&target, pair, &alphas)?;
    // the term columns carry real parts; imaginary parts are rounding noise
    // for the real-valued target presets
    let mut csv = String::from(
        "alpha,term1,term2,target1,target2,I_alpha,I1_alpha,Iinf_alpha\n",
    );
    for (i, alpha) in curves.alphas.iter().enumerate() {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_float(*alpha),
            fmt_float(curves.term1[i].re),
            fmt_float(curves.term2[i].re),
            fmt_float(curves.target1),
            fmt_float(curves.target2),
            fmt_float(curves.i_alpha[i]),
            fmt_float(curves.i1_alpha[i]),
            fmt_float(curves.i_inf_alpha[i])
        ));
    }
    let path = ctx.out("witness.csv");
    io::atomic_write(&path, csv.as_bytes())?;
    ctx.record(path);

    // Fubini diagnostics: disagreement of the two integration orders
    let gaps: Vec<f64> = (0..curves.alphas.len()).map(|i| curves.fubini_gap(i)).collect();
    let diag_path = ctx.out("witness_diagnostics.json");
    io::write_json(
        &diag_path,
        &serde_json::json!({ "fubini_relative_gaps": gaps }),
    )?;
    ctx.record(diag_path);

    // seeded Schur probe check of the bounding kernels at the schedule ends
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = pair.grid();
    let freq = pair.freq_grid();
    let (c_t, mu_t) = pair.analysis_time().growth_constants();
    let (c_o, mu_o) = pair.analysis_freq().growth_constants();
    let mut probe_csv = String::from("alpha,kernel,bound,max_probe_ratio\n");
    let probe_alphas = [alphas[0], *alphas.last().unwrap()];
    for alpha in probe_alphas {
        for (name, kernel) in [
            ("K_T", SchurKernel::time_kernel(alpha, c_t, mu_t, grid)),
            ("K_Omega", SchurKernel::freq_kernel(alpha, c_o, mu_o, &freq, grid)),
        ] {
            let bound = schur_bound(&kernel)?;
            let mut max_ratio = 0.0f64;
            for _ in 0..20 {
                let f: Vec<Complex64> = (0..grid.count())
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let g: Vec<Complex64> = (0..grid.count())
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let nf = (grid.step() * f.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
                let ng = (grid.step() * g.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
                let form = kernel.bilinear(&f, &g)?.norm();
                max_ratio = max_ratio.max(form / (bound * nf * ng));
            }
            probe_csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_float(alpha),
                name,
                fmt_float(bound),
                fmt_float(max_ratio)
            ));
        }
    }
    let path = ctx.out("schur_probes.csv");
    io::atomic_write(&path, probe_csv.as_bytes())?;
    ctx.record(path);
    Ok(())
}

fn run_check_window(ctx: &mut RunContext, pair: &SpacePair) -> Result<()> {
    let window_cfg = ctx
        .cfg
        .window
        .clone()
        .ok_or_else(|| Error::config("check-window needs a [window] section"))?;
    let window = if let Some(csv) = &window_cfg.csv {
        WindowSpec::new(io::read_signal_csv(&ctx.base_dir.join(csv))?)?
    } else {
        match window_cfg.preset.as_deref() {
            Some("gaussian") | None => WindowSpec::new(Signal::from_real_fn(
                *pair.grid(),
                |t| (-std::f64::consts::PI * t * t).exp(),
            ))?,
            Some(other) => return Err(Error::config(format!("unknown window preset {other:?}"))),
        }
    };
    let report = check_window(&window, pair, &ctx.cfg.schedule.alphas, window_cfg.delta)?;
    let path = ctx.out("window_report.json");
    io::write_json(&path, &report)?;
    ctx.record(path.clone());
    if !report.all_pass() {
        return Err(Error::validation(format!(
            "window conditions failed; see {}",
            path.display()
        )));
    }
    Ok(())
}
