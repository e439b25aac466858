//! Generalized windows: checking the admissibility conditions that let a
//! non-Gaussian window generate a complete dictionary, and a window/weight
//! combination that fails them.
//!
//! Run: cargo run -p tfgauss --example window_conditions

use tfgauss::atoms::{check_window, WindowSpec};
use tfgauss::grid::{Grid, Signal};
use tfgauss::weights::WeightSpec;
use tfgauss::wspace::SpacePair;

const PI: f64 = std::f64::consts::PI;

fn print_report(label: &str, report: &tfgauss::atoms::WindowReport) {
    println!("{label}:");
    for (tag, c) in [
        ("ApIde1", report.ap_ide1),
        ("ApIde2", report.ap_ide2),
        ("ApIde3", report.ap_ide3),
        ("KT1", report.kt1),
        ("KT2", report.kt2),
        ("KO1", report.ko1),
        ("KO2", report.ko2),
    ] {
        println!("  {tag:7} pass = {:5} margin = {:.4e}", c.pass, c.margin);
    }
}

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 12)?;
    let alphas = [1.0, 4.0, 16.0, 64.0];

    let unit_pair = SpacePair::new(
        WeightSpec::constant(1.0, grid.halfwidth())?,
        WeightSpec::constant(1.0, grid.reciprocal().halfwidth())?,
        grid,
        0.5,
        0.5,
    )?;
    let gaussian = WindowSpec::new(Signal::from_real_fn(grid, |t| (-PI * t * t).exp()))?;
    let report = check_window(&gaussian, &unit_pair, &alphas, 0.5)?;
    print_report("gaussian window, flat weights", &report);

    // g = pi e^(-2 pi |t|) has the slowly decaying transform 1/(1+w^2);
    // against w_Omega = e^|w| the weighted spectral integral diverges
    let exp_pair = SpacePair::new(
        WeightSpec::constant(1.0, grid.halfwidth())?,
        WeightSpec::exp_abs(1.0, grid.reciprocal().halfwidth())?,
        grid,
        0.5,
        0.5,
    )?;
    let raw = Signal::from_real_fn(grid, |t| PI * (-2.0 * PI * t.abs()).exp());
    let mass = grid.step() * raw.values.iter().map(|v| v.re).sum::<f64>();
    let lorentz = WindowSpec::new(Signal::new(
        grid,
        raw.values.iter().map(|v| v / mass).collect(),
    )?)?;
    let report = check_window(&lorentz, &exp_pair, &alphas, 0.5)?;
    print_report("\nslow-spectral-decay window, exponential frequency weight", &report);
    Ok(())
}
