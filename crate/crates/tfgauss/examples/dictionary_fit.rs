//! Least-squares fit of a compactly supported bump over a 63-atom Gaussian
//! dictionary in the Sobolev-weighted space.
//!
//! Run: cargo run -p tfgauss --example dictionary_fit

use tfgauss::approx::{default_ridge, gram_matrix, least_squares_fit, Dictionary};
use tfgauss::grid::{Grid, Signal};
use tfgauss::weights::WeightSpec;
use tfgauss::wspace::SpacePair;

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 12)?;
    let pair = SpacePair::new(
        WeightSpec::constant(1.0, grid.halfwidth())?,
        WeightSpec::sobolev_omega(1, grid.reciprocal().halfwidth())?,
        grid,
        0.5,
        0.5,
    )?;

    let bump = Signal::from_real_fn(grid, |t| if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 });
    let bump_norm = pair.h_norm_sq(&bump)?.sqrt();
    println!("target: (1-t^2)^2 on |t|<1, space norm {bump_norm:.6}");

    let alpha_grid = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
    let tau_grid: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
    let dict = Dictionary::gaussian_grid(pair.clone(), &alpha_grid, &tau_grid)?;
    println!("dictionary: {} atoms ({} scales x {} centers)", dict.len(), alpha_grid.len(), tau_grid.len());

    let gram = gram_matrix(&dict);
    let ridge = default_ridge(&gram);
    let report = least_squares_fit(&bump, &dict, ridge)?;
    println!("ridge = {ridge:.3e}, regularized gram condition = {:.3e}", report.gram_condition);
    println!(
        "residual = {:.6e} ({:.4}% of the space norm)",
        report.residual_h_norm,
        100.0 * report.residual_h_norm / bump_norm
    );

    // a handful of the largest coefficients
    let mut indexed: Vec<(usize, f64)> = report
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.norm()))
        .collect();
    indexed.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    println!("largest coefficients:");
    for (i, mag) in indexed.iter().take(5) {
        let (alpha, tau) = report.atoms[*i];
        println!("  alpha = {alpha:5}, tau = {tau:5}: |c| = {mag:.4}");
    }
    Ok(())
}
