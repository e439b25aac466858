//! Dictionary generators and kernel bounds: the Gaussian atoms
//! `g_{alpha,tau}(t) = sqrt(alpha) exp(-pi alpha (t-tau)^2)` with their
//! closed-form transforms, generalized windows with the admissibility
//! condition checks, and the Schur row/column estimator for integral-kernel
//! norms.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, Signal, Spectrum};
use crate::transform::forward_ft;
use crate::wspace::SpacePair;

const PI: f64 = std::f64::consts::PI;

/// Scaled, shifted Gaussian `sqrt(alpha) e^{-pi alpha (t - tau)^2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianAtom {
    pub alpha: f64,
    pub tau: f64,
}

impl GaussianAtom {
    pub fn new(alpha: f64, tau: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!("atom scale alpha = {alpha} must be positive")));
        }
        if !tau.is_finite() {
            return Err(Error::invalid("atom center tau must be finite"));
        }
        Ok(GaussianAtom { alpha, tau })
    }

    pub fn eval_time(&self, t: f64) -> f64 {
        self.alpha.sqrt() * (-PI * self.alpha * (t - self.tau).powi(2)).exp()
    }

    /// Closed-form transform `e^{-(pi/alpha) w^2 - 2 pi i tau w}`.
    pub fn eval_freq(&self, w: f64) -> Complex64 {
        let modulus = (-(PI / self.alpha) * w * w).exp();
        Complex64::from_polar(modulus, -2.0 * PI * self.tau * w)
    }

    /// Samples on a time grid; strictly positive.
    pub fn signal(&self, grid: &Grid) -> Signal {
        Signal::from_real_fn(*grid, |t| self.eval_time(t))
    }

    /// Closed-form transform sampled on the reciprocal of a time grid.
    pub fn spectrum(&self, time_grid: &Grid) -> Spectrum {
        Spectrum::from_fn(time_grid.reciprocal(), |w| self.eval_freq(w))
    }

    /// `|1 - h sum g|`: quadrature mass defect against the unit mass of the
    /// atom family.
    pub fn mass_defect(&self, grid: &Grid) -> f64 {
        let mass: f64 = grid.step() * grid.points().map(|t| self.eval_time(t)).sum::<f64>();
        (mass - 1.0).abs()
    }

    /// Reject atoms whose center leaves the window or whose mass outside the
    /// window breaks the quadrature contracts.
    pub fn validate_on(&self, grid: &Grid) -> Result<()> {
        if self.tau.abs() > grid.halfwidth() || self.mass_defect(grid) > 1e-10 {
            return Err(Error::AtomOutsideDomain { alpha: self.alpha, tau: self.tau });
        }
        Ok(())
    }
}

/// A general window `g` with its transform and mass, the raw material for
/// the generalized (non-Gaussian) dictionary conditions.
#[derive(Debug, Clone)]
pub struct WindowSpec {
    pub g: Signal,
    pub g_hat: Spectrum,
    pub unit_mass: Complex64,
}

impl WindowSpec {
    /// Build from time samples; the transform is computed numerically.
    pub fn new(g: Signal) -> Result<Self> {
        let g_hat = forward_ft(&g)?;
        let unit_mass = g.grid.step() * g.values.iter().sum::<Complex64>();
        Ok(WindowSpec { g, g_hat, unit_mass })
    }

    /// Build with a known transform (e.g. a closed form).
    pub fn with_spectrum(g: Signal, g_hat: Spectrum) -> Result<Self> {
        if g_hat.grid != g.grid.reciprocal() {
            return Err(Error::GridMismatch);
        }
        let unit_mass = g.grid.step() * g.values.iter().sum::<Complex64>();
        Ok(WindowSpec { g, g_hat, unit_mass })
    }
}

/// One admissibility condition: verdict plus the measured margin.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionReport {
    pub pass: bool,
    pub margin: f64,
}

/// Verdicts for the generalized-window conditions.
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub ap_ide1: ConditionReport,
    pub ap_ide2: ConditionReport,
    pub ap_ide3: ConditionReport,
    pub kt1: ConditionReport,
    pub kt2: ConditionReport,
    pub ko1: ConditionReport,
    pub ko2: ConditionReport,
}

impl WindowReport {
    pub fn all_pass(&self) -> bool {
        self.ap_ide1.pass
            && self.ap_ide2.pass
            && self.ap_ide3.pass
            && self.kt1.pass
            && self.kt2.pass
            && self.ko1.pass
            && self.ko2.pass
    }
}

/// Tail integral `int_{|eta|>delta} alpha |g(alpha eta)| sqrt(M(|eta|)) d eta`
/// after the change of variables `u = alpha eta`, so the sampled window is
/// only read at its own grid points.
fn window_tail(
    g: &Signal,
    mmc: &crate::weights::WeightAnalysis,
    alpha: f64,
    delta: f64,
) -> Result<f64> {
    let h = g.grid.step();
    let mut acc = 0.0;
    for (u, v) in g.grid.points().zip(&g.values) {
        if u.abs() > alpha * delta {
            acc += v.norm() * mmc.mmc_at_or_envelope(u.abs() / alpha)?.sqrt();
        }
    }
    Ok(h * acc)
}

/// Integral `int |f(u)| M(|u|/alpha) du` restricted to `|u| <= cut`.
fn weighted_integral(
    values: &[Complex64],
    grid: &Grid,
    mmc: &crate::weights::WeightAnalysis,
    alpha: f64,
    cut: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for (u, v) in grid.points().zip(values) {
        if u.abs() <= cut {
            acc += v.norm() * mmc.mmc_at_or_envelope(u.abs() / alpha)?;
        }
    }
    Ok(grid.step() * acc)
}

/// Sup of `|f(u)| M(|u|/alpha)` over `|u| <= cut`.
fn weighted_sup(
    values: &[Complex64],
    grid: &Grid,
    mmc: &crate::weights::WeightAnalysis,
    alpha: f64,
    cut: f64,
) -> Result<f64> {
    let mut best = 0.0f64;
    for (u, v) in grid.points().zip(values) {
        if u.abs() <= cut {
            best = best.max(v.norm() * mmc.mmc_at_or_envelope(u.abs() / alpha)?);
        }
    }
    Ok(best)
}

/// Divergence probe on the truncated window: a quantity is treated as finite
/// when it stays below 1e12 and grows by less than 2x from the half window
/// to the full window.
fn finite_by_probe(full: f64, half: f64) -> bool {
    full <= 1e12 && (half == 0.0 || full <= 2.0 * half)
}

/// Check the generalized-window conditions against a space pair: unit mass,
/// vanishing weighted tails along the alpha schedule, and finiteness of the
/// weighted kernel integrals/sups.
pub fn check_window(
    window: &WindowSpec,
    sp: &SpacePair,
    alphas: &[f64],
    delta: f64,
) -> Result<WindowReport> {
    if alphas.is_empty() || alphas.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::invalid("alphas must be a nonempty ascending list"));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid("delta must be positive"));
    }
    let mmc_t = sp.analysis_time();
    let mmc_o = sp.analysis_freq();
    let time_grid = &window.g.grid;
    let freq_grid = &window.g_hat.grid;
    let half_t = time_grid.halfwidth() / 2.0;
    let half_o = freq_grid.halfwidth() / 2.0;

    let mass_margin = (window.unit_mass - Complex64::new(1.0, 0.0)).norm();
    let ap_ide1 = ConditionReport { pass: mass_margin < 1e-8, margin: mass_margin };

    let report_tail = |mmc: &crate::weights::WeightAnalysis| -> Result<ConditionReport> {
        let tails: Vec<f64> = alphas
            .iter()
            .map(|a| window_tail(&window.g, mmc, *a, delta))
            .collect::<Result<_>>()?;
        let dec = tails.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-9));
        let last = *tails.last().unwrap();
        Ok(ConditionReport { pass: dec && last < 1e-6, margin: last })
    };
    let ap_ide2 = report_tail(mmc_t)?;
    let ap_ide3 = report_tail(mmc_o)?;

    // KT1: int |g(alpha eta)| M_{1+w_T}(|eta|) d eta  (u = alpha eta)
    let mut kt1 = ConditionReport { pass: true, margin: 0.0 };
    for a in alphas {
        let full = weighted_integral(&window.g.values, time_grid, mmc_t, *a, f64::INFINITY)? / a;
        let half = weighted_integral(&window.g.values, time_grid, mmc_t, *a, half_t)? / a;
        kt1.pass &= finite_by_probe(full, half);
        kt1.margin = kt1.margin.max(full);
    }

    // KT2: sup |ghat(alpha eta)| M_{1+w_T}(|eta|)
    let mut kt2 = ConditionReport { pass: true, margin: 0.0 };
    for a in alphas {
        let full = weighted_sup(&window.g_hat.values, freq_grid, mmc_t, *a, f64::INFINITY)?;
        let half = weighted_sup(&window.g_hat.values, freq_grid, mmc_t, *a, half_o)?;
        kt2.pass &= finite_by_probe(full, half);
        kt2.margin = kt2.margin.max(full);
    }

    // KO1: int |ghat(alpha eta)| M_{1+w_Omega}(|eta|) d eta
    let mut ko1 = ConditionReport { pass: true, margin: 0.0 };
    for a in alphas {
        let full = weighted_integral(&window.g_hat.values, freq_grid, mmc_o, *a, f64::INFINITY)? / a;
        let half = weighted_integral(&window.g_hat.values, freq_grid, mmc_o, *a, half_o)? / a;
        ko1.pass &= finite_by_probe(full, half);
        ko1.margin = ko1.margin.max(full);
    }

    // KO2: sup |ghat(alpha eta)| M_{1+w_Omega}(|eta|)
    let mut ko2 = ConditionReport { pass: true, margin: 0.0 };
    for a in alphas {
        let full = weighted_sup(&window.g_hat.values, freq_grid, mmc_o, *a, f64::INFINITY)?;
        let half = weighted_sup(&window.g_hat.values, freq_grid, mmc_o, *a, half_o)?;
        ko2.pass &= finite_by_probe(full, half);
        ko2.margin = ko2.margin.max(full);
    }

    Ok(WindowReport { ap_ide1, ap_ide2, ap_ide3, kt1, kt2, ko1, ko2 })
}

/// Sampled non-negative kernel `K(t, tau)` with its row/column integral sups
/// `N_1 = sup_tau int |K| dt` and `N_inf = sup_t int |K| d tau`.
#[derive(Debug, Clone)]
pub struct SchurKernel {
    values: Vec<f64>, // row-major: rows indexed by t, columns by tau
    row_grid: Grid,
    col_grid: Grid,
    n1: f64,
    n_inf: f64,
}

impl SchurKernel {
    /// Sample `|f(t, tau)|` on the product of two grids.
    pub fn from_fn(
        row_grid: &Grid,
        col_grid: &Grid,
        f: impl Fn(f64, f64) -> f64 + Sync + Send,
    ) -> Self {
        let rows = row_grid.count();
        let cols = col_grid.count();
        let f = &f;
        let values: Vec<f64> = (0..rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let t = row_grid.point(i);
                (0..cols).map(move |j| f(t, col_grid.point(j)).abs())
            })
            .collect();
        let mut col_sums = vec![0.0f64; cols];
        let mut n_inf = 0.0f64;
        for i in 0..rows {
            let row = &values[i * cols..(i + 1) * cols];
            let mut row_sum = 0.0;
            for (j, v) in row.iter().enumerate() {
                row_sum += v;
                col_sums[j] += v;
            }
            n_inf = n_inf.max(col_grid.step() * row_sum);
        }
        let n1 = col_sums
            .iter()
            .map(|s| row_grid.step() * s)
            .fold(0.0f64, f64::max);
        SchurKernel { values, row_grid: *row_grid, col_grid: *col_grid, n1, n_inf }
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n_inf(&self) -> f64 {
        self.n_inf
    }

    /// Discrete bilinear form `h_t h_tau sum f(t) K(t,tau) conj(g(tau))`.
    pub fn bilinear(&self, f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
        let rows = self.row_grid.count();
        let cols = self.col_grid.count();
        if f.len() != rows || g.len() != cols {
            return Err(Error::GridMismatch);
        }
        let partials: Vec<Complex64> = (0..rows)
            .into_par_iter()
            .map(|i| {
                let row = &self.values[i * cols..(i + 1) * cols];
                let inner: Complex64 = row
                    .iter()
                    .zip(g)
                    .map(|(k, gj)| k * gj.conj())
                    .sum();
                f[i] * inner
            })
            .collect();
        let total: Complex64 = partials.into_iter().sum();
        Ok(total * self.row_grid.step() * self.col_grid.step())
    }

    /// Kernel of the time-side double integral:
    /// `C sqrt(a) e^{-pi a (t-tau)^2 + mu |t-tau|} e^{-(pi/a) tau^2 + mu |tau|}`.
    pub fn time_kernel(alpha: f64, c: f64, mu: f64, grid: &Grid) -> Self {
        let sa = alpha.sqrt();
        Self::from_fn(grid, grid, move |t, tau| {
            c * sa
                * (-PI * alpha * (t - tau).powi(2) + mu * (t - tau).abs()).exp()
                * (-(PI / alpha) * tau * tau + mu * tau.abs()).exp()
        })
    }

    /// Kernel of the frequency-side double integral:
    /// `C e^{-(pi/a) w^2 + mu |w|} e^{-(pi/a) tau^2}` (rows on the frequency
    /// grid, columns on the time grid).
    pub fn freq_kernel(alpha: f64, c: f64, mu: f64, freq_grid: &Grid, time_grid: &Grid) -> Self {
        Self::from_fn(freq_grid, time_grid, move |w, tau| {
            c * (-(PI / alpha) * w * w + mu * w.abs()).exp()
                * (-(PI / alpha) * tau * tau).exp()
        })
    }
}

/// The Schur bound `sqrt(N_1 N_inf)` on the bilinear form.
pub fn schur_bound(kernel: &SchurKernel) -> Result<f64> {
    if kernel.n1 > 1e300 || kernel.n_inf > 1e300 || !kernel.n1.is_finite() || !kernel.n_inf.is_finite()
    {
        return Err(Error::InfiniteBound);
    }
    Ok((kernel.n1 * kernel.n_inf).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightSpec;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Grid {
        Grid::with_log2_count(16.0, 12).unwrap()
    }

    #[test]
    fn atom_values_at_center() {
        let g = grid();
        let a1 = GaussianAtom::new(1.0, 0.0).unwrap().signal(&g);
        assert_eq!(a1.values[g.count() / 2].re, 1.0);
        let a4 = GaussianAtom::new(4.0, 0.0).unwrap().signal(&g);
        assert_eq!(a4.values[g.count() / 2].re, 2.0);
    }

    #[test]
    fn atom_unit_mass() {
        let g = grid();
        for alpha in [0.25, 1.0, 4.0, 16.0, 64.0] {
            for tau in [0.0, 1.0, -1.0] {
                let defect = GaussianAtom::new(alpha, tau).unwrap().mass_defect(&g);
                assert!(defect < 1e-10, "alpha={alpha} tau={tau} defect={defect:e}");
            }
        }
    }

    #[test]
    fn atom_rejected_near_edge() {
        let g = grid();
        let a = GaussianAtom::new(1.0, 15.9).unwrap();
        assert!(matches!(a.validate_on(&g), Err(Error::AtomOutsideDomain { .. })));
        assert!(GaussianAtom::new(1.0, 2.0).unwrap().validate_on(&g).is_ok());
    }

    #[test]
    fn spectrum_closed_form_values() {
        let g = grid();
        let a = GaussianAtom::new(1.0, 0.0).unwrap();
        let spec = a.spectrum(&g);
        let freq = g.reciprocal();
        assert_eq!(spec.values[freq.count() / 2], Complex64::new(1.0, 0.0));

        let b = GaussianAtom::new(1.0, 0.5).unwrap();
        let at_one = b.eval_freq(1.0);
        assert_relative_eq!(at_one.re, -(-PI).exp(), max_relative = 1e-12);
        assert!(at_one.im.abs() < 1e-15);
    }

    #[test]
    fn spectrum_matches_transform() {
        let g = grid();
        for alpha in [0.25, 1.0, 4.0, 16.0] {
            for tau in [0.0, 1.0, -1.0] {
                let atom = GaussianAtom::new(alpha, tau).unwrap();
                let closed = atom.spectrum(&g);
                let numeric = forward_ft(&atom.signal(&g)).unwrap();
                let max_err = closed
                    .values
                    .iter()
                    .zip(&numeric.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max);
                assert!(max_err < 1e-10, "alpha={alpha} tau={tau}: {max_err:e}");
            }
        }
    }

    #[test]
    fn spectrum_modulus_even() {
        let g = grid();
        let spec = GaussianAtom::new(4.0, 1.0).unwrap().spectrum(&g);
        let n = spec.values.len();
        for m in 1..n {
            let diff = (spec.values[m].norm() - spec.values[n - m].norm()).abs();
            assert!(diff < 1e-14);
        }
    }

    #[test]
    fn schur_zero_kernel() {
        let g = Grid::with_log2_count(4.0, 6).unwrap();
        let k = SchurKernel::from_fn(&g, &g, |_, _| 0.0);
        assert_eq!(schur_bound(&k).unwrap(), 0.0);
    }

    #[test]
    fn schur_exponential_kernel() {
        let g = grid();
        let k = SchurKernel::from_fn(&g, &g, |t, tau| (-(t - tau).abs()).exp());
        let bound = schur_bound(&k).unwrap();
        assert!((bound - 2.0).abs() <= 2.0 * g.step(), "bound = {bound}");
        assert!((k.n1() - 2.0).abs() <= 2.0 * g.step());
        assert!((k.n_inf() - 2.0).abs() <= 2.0 * g.step());
    }

    #[test]
    fn schur_dominates_bilinear_form() {
        let g = Grid::with_log2_count(16.0, 10).unwrap();
        let k = SchurKernel::time_kernel(1.0, 1.0, 0.0, &g);
        let bound = schur_bound(&k).unwrap();
        assert!(bound <= 1.0, "reduced time kernel bound = {bound}");
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = g.step();
        for _ in 0..25 {
            let f: Vec<Complex64> = (0..g.count())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let v: Vec<Complex64> = (0..g.count())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let form = k.bilinear(&f, &v).unwrap().norm();
            let nf = (h * f.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
            let nv = (h * v.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
            assert!(form <= bound * nf * nv * (1.0 + 1e-12));
        }
    }

    #[test]
    fn infinite_bound_detected() {
        let g = Grid::with_log2_count(4.0, 6).unwrap();
        let k = SchurKernel::from_fn(&g, &g, |_, _| 1e305);
        assert!(matches!(schur_bound(&k), Err(Error::InfiniteBound)));
    }

    fn unit_pair(grid: &Grid) -> SpacePair {
        let l = grid.halfwidth();
        let wf = grid.reciprocal().halfwidth();
        SpacePair::new(
            WeightSpec::constant(1.0, l).unwrap(),
            WeightSpec::constant(1.0, wf).unwrap(),
            *grid,
            0.5,
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn gaussian_window_passes_all_conditions() {
        let g = grid();
        let sp = unit_pair(&g);
        let window = WindowSpec::new(Signal::from_real_fn(g, |t| (-PI * t * t).exp())).unwrap();
        let report = check_window(&window, &sp, &[1.0, 4.0, 16.0, 64.0], 0.5).unwrap();
        assert!(report.all_pass(), "report: {report:?}");
    }

    #[test]
    fn scaled_window_fails_unit_mass() {
        let g = grid();
        let sp = unit_pair(&g);
        let window =
            WindowSpec::new(Signal::from_real_fn(g, |t| 0.5 * (-PI * t * t).exp())).unwrap();
        let report = check_window(&window, &sp, &[1.0, 4.0], 0.5).unwrap();
        assert!(!report.ap_ide1.pass);
        assert!((report.ap_ide1.margin - 0.5).abs() < 1e-9);
    }

    #[test]
    fn slow_spectral_decay_fails_ko1_under_exponential_weight() {
        // g = pi e^{-2 pi |t|} has ghat = 1/(1 + w^2); against w_Omega = e^{|w|}
        // the weighted integral blows up across the half/full domain probe.
        let g = grid();
        let l = g.halfwidth();
        let wf = g.reciprocal().halfwidth();
        let sp = SpacePair::new(
            WeightSpec::constant(1.0, l).unwrap(),
            WeightSpec::exp_abs(1.0, wf).unwrap(),
            g,
            0.5,
            0.5,
        )
        .unwrap();
        let raw = Signal::from_real_fn(g, |t| PI * (-2.0 * PI * t.abs()).exp());
        // normalize the sampled mass so the failure is isolated to KO1
        let mass = g.step() * raw.values.iter().map(|v| v.re).sum::<f64>();
        let window = WindowSpec::new(
            Signal::new(g, raw.values.iter().map(|v| v / mass).collect()).unwrap(),
        )
        .unwrap();
        let report = check_window(&window, &sp, &[1.0, 4.0], 0.5).unwrap();
        assert!(report.ap_ide1.pass);
        assert!(!report.ko1.pass, "ko1 margin = {}", report.ko1.margin);
    }
}
