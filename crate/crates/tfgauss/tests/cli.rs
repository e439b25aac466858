//! End-to-end runs of the binary: artifacts, exit codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn base_config(out: &str) -> String {
    format!(
        r#"
[grid]
halfwidth = 16.0
step = 0.03125

[weights]
w_t = {{ kind = "constant", level = 1.0 }}
w_omega = {{ kind = "sobolev-omega", order = 1 }}

[target]
preset = "gaussian"
alpha = 1.0
tau = 0.0

[dictionary]
alpha_grid = [1.0, 4.0]
tau_grid = [-1.0, 0.0, 1.0]
greedy_atoms = 2

[schedule]
alphas = [1.0, 4.0, 16.0]

[outputs]
dir = "{out}"
"#
    )
}

fn run_cli(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tfgauss"))
        .args(args)
        .arg("--config")
        .arg(config)
        .output()
        .expect("binary runs")
}

#[test]
fn transform_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "t.toml", &base_config("out_t"));
    let output = run_cli(&["transform"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let out = dir.path().join("out_t");
    for name in ["signal.csv", "signal.grid.json", "spectrum.csv", "transform_report.json", "manifest.json"] {
        assert!(out.join(name).exists(), "missing {name}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("transform_report.json")).unwrap())
            .unwrap();
    assert!(report["roundtrip_max_abs_error"].as_f64().unwrap() < 1e-10);
    assert!(report["parseval_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn witness_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "w.toml", &base_config("out_w"));
    let output = run_cli(&["witness", "--seed", "7"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let csv_path = dir.path().join("out_w/witness.csv");
    let first = std::fs::read(&csv_path).unwrap();
    let probes_first = std::fs::read(dir.path().join("out_w/schur_probes.csv")).unwrap();

    let output = run_cli(&["witness", "--seed", "7"], &config);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(std::fs::read(&csv_path).unwrap(), first, "witness.csv not byte-identical");
    assert_eq!(
        std::fs::read(dir.path().join("out_w/schur_probes.csv")).unwrap(),
        probes_first,
        "schur_probes.csv not byte-identical"
    );

    let header = String::from_utf8(first).unwrap();
    assert!(header.starts_with("alpha,term1,term2,target1,target2,I_alpha,I1_alpha,Iinf_alpha\n"));
    assert_eq!(header.lines().count(), 4); // header + 3 schedule rows
}

#[test]
fn approximate_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "a.toml", &base_config("out_a"));
    let output = run_cli(&["approximate"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let out = dir.path().join("out_a");
    let ls: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("least_squares.json")).unwrap())
            .unwrap();
    // the gaussian target sits in the dictionary: near-zero residual
    assert!(ls["residual_h_norm"].as_f64().unwrap() < 1e-6);
    assert!(out.join("greedy.json").exists());
    assert!(out.join("atoms.csv").exists());
}

#[test]
fn mollify_writes_schedule_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "m.toml", &base_config("out_m"));
    let output = run_cli(&["mollify"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out_m/mollify.csv")).unwrap();
    assert!(csv.starts_with("alpha,error,bound,envelope_bound,"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn check_window_gaussian_passes() {
    let dir = tempfile::tempdir().unwrap();
    let mut body = base_config("out_cw");
    body.push_str("\n[window]\npreset = \"gaussian\"\ndelta = 0.5\n");
    let config = write_config(dir.path(), "cw.toml", &body);
    let output = run_cli(&["check-window"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out_cw/window_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["ap_ide1"]["pass"], true);
    assert_eq!(report["ko1"]["pass"], true);
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.toml", "this is not toml = [");
    let output = run_cli(&["transform"], &config);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn force_runs_despite_failed_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"
[grid]
halfwidth = 16.0
step = 0.03125

[weights]
w_t = { kind = "gauss-square", rate = 1.0 }
w_omega = { kind = "gauss-square", rate = 1.0 }

[target]
preset = "gaussian"

[outputs]
dir = "out_f"
"#;
    let config = write_config(dir.path(), "f.toml", body);
    // gated: validation stops the run
    let output = run_cli(&["transform"], &config);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("regularity"));
    // forced: the run proceeds and the manifest records it
    let output = run_cli(&["transform", "--force"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out_f/manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["forced"], true);
    // check-weights under --force still reports the failed hypotheses
    let output = run_cli(&["check-weights", "--force"], &config);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out_f/weights_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["hypotheses_hold"], false);
}

#[test]
fn out_override_redirects_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "o.toml", &base_config("ignored"));
    let alt = dir.path().join("elsewhere");
    let output = Command::new(env!("CARGO_BIN_EXE_tfgauss"))
        .args(["check-weights", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&alt)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    assert!(alt.join("weights_report.json").exists());
    assert!(alt.join("embedding.json").exists());
    assert!(!dir.path().join("ignored").exists());
}

#[test]
fn explicit_atom_list_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("atoms.csv"), "alpha,tau\n1.0,0.0\n4.0,0.5\n").unwrap();
    let body = r#"
[grid]
halfwidth = 16.0
step = 0.03125

[weights]
w_t = { kind = "constant", level = 1.0 }
w_omega = { kind = "constant", level = 1.0 }

[target]
preset = "gaussian"
alpha = 4.0
tau = 0.5

[dictionary]
atoms_csv = "atoms.csv"

[outputs]
dir = "out_atoms"
"#;
    let config = write_config(dir.path(), "atoms.toml", body);
    let output = run_cli(&["approximate"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let ls: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out_atoms/least_squares.json")).unwrap(),
    )
    .unwrap();
    assert!(ls["residual_h_norm"].as_f64().unwrap() < 1e-8);
    assert_eq!(ls["atoms"].as_array().unwrap().len(), 2);
}

#[test]
fn windowed_dictionary_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    // gaussian window sampled to CSV; its scaled shifts should reproduce a
    // gaussian target up to interpolation error
    let grid_note = r#"{"halfwidth": 16.0, "step": 0.03125, "count": 1024}"#;
    let mut csv = String::from("xi,re,im\n");
    let mut xi = -16.0f64;
    for _ in 0..1024 {
        let v = (-std::f64::consts::PI * xi * xi).exp();
        csv.push_str(&format!("{xi},{v},0.0\n"));
        xi += 0.03125;
    }
    std::fs::write(dir.path().join("window.csv"), csv).unwrap();
    std::fs::write(dir.path().join("window.grid.json"), grid_note).unwrap();
    let body = r#"
[grid]
halfwidth = 16.0
step = 0.03125

[weights]
w_t = { kind = "constant", level = 1.0 }
w_omega = { kind = "constant", level = 1.0 }

[target]
preset = "gaussian"
alpha = 4.0
tau = 0.5

[dictionary]
window_csv = "window.csv"
alpha_grid = [1.0, 2.0, 4.0]
tau_grid = [-0.5, 0.0, 0.5]

[outputs]
dir = "out_win"
"#;
    let config = write_config(dir.path(), "win.toml", body);
    let output = run_cli(&["approximate"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let ls: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out_win/least_squares.json")).unwrap(),
    )
    .unwrap();
    // target g_(4, 0.5) is the window atom at (alpha = 2, tau = 0.5);
    // linear interpolation of the sampled window limits the residual
    assert!(ls["residual_h_norm"].as_f64().unwrap() < 1e-2);
}

#[test]
fn table_weight_loads_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    // strictly positive table weight on the time axis
    let mut table = String::from("xi,w\n");
    let mut xi: f64 = -16.0;
    while xi < 16.0 - 1e-9 {
        table.push_str(&format!("{xi},{}\n", 1.0 + 0.1 * xi.abs()));
        xi += 0.03125;
    }
    std::fs::write(dir.path().join("wt.csv"), table).unwrap();
    let body = r#"
[grid]
halfwidth = 16.0
step = 0.03125

[weights]
w_t = { kind = "table", csv = "wt.csv" }
w_omega = { kind = "constant", level = 1.0 }

[target]
preset = "gaussian"

[outputs]
dir = "out_tab"
"#;
    let config = write_config(dir.path(), "tab.toml", body);
    let output = run_cli(&["check-weights"], &config);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
}
