//! Orthogonal greedy pursuit: atom-by-atom selection with full refits and a
//! nonincreasing residual trace.
//!
//! Run: cargo run -p tfgauss --example greedy_pursuit

use tfgauss::approx::greedy_pursuit;
use tfgauss::atoms::GaussianAtom;
use tfgauss::grid::{Grid, Signal};
use tfgauss::weights::WeightSpec;
use tfgauss::wspace::SpacePair;

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 11)?;
    let pair = SpacePair::new(
        WeightSpec::constant(1.0, grid.halfwidth())?,
        WeightSpec::constant(1.0, grid.reciprocal().halfwidth())?,
        grid,
        0.5,
        0.5,
    )?;

    // two bumps, one of them off the candidate lattice, so four atoms stay busy
    let left = GaussianAtom::new(1.0, -1.0)?.signal(&grid);
    let right = GaussianAtom::new(1.7, 0.6)?.signal(&grid);
    let f = Signal::new(
        grid,
        left.values
            .iter()
            .zip(&right.values)
            .map(|(a, b)| a + 0.6 * b)
            .collect(),
    )?;

    let alpha_grid = [0.5, 1.0, 2.0, 4.0];
    let tau_grid: Vec<f64> = (-8..=8).map(|k| k as f64 * 0.25).collect();
    let report = greedy_pursuit(&f, &pair, &alpha_grid, &tau_grid, 4)?;

    println!("selected atoms and residual trace:");
    for (i, ((alpha, tau), residual)) in
        report.atoms.iter().zip(&report.residual_trace).enumerate()
    {
        println!("  step {}: alpha = {alpha:4}, tau = {tau:5}  ->  residual {residual:.6e}", i + 1);
    }
    println!("final coefficients:");
    for ((alpha, tau), c) in report.atoms.iter().zip(&report.coefficients) {
        println!("  ({alpha}, {tau}): {:.6} + {:.2e} i", c.re, c.im);
    }
    Ok(())
}
