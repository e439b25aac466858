//! The discrete transform pair in the ordinary-frequency convention:
//! closed-form agreement on Gaussians, round-trip identity, Parseval.
//!
//! Run: cargo run -p tfgauss --example fourier_roundtrip

use tfgauss::atoms::GaussianAtom;
use tfgauss::grid::Grid;
use tfgauss::transform::{forward_ft, inverse_ft, parseval_gap};

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 12)?;
    println!(
        "time grid: [{}, {}) step {}; frequency grid: [{}, {}) step {}",
        -grid.halfwidth(),
        grid.halfwidth(),
        grid.step(),
        -grid.reciprocal().halfwidth(),
        grid.reciprocal().halfwidth(),
        grid.reciprocal().step()
    );

    for (alpha, tau) in [(1.0, 0.0), (0.25, 1.0), (16.0, -1.0)] {
        let atom = GaussianAtom::new(alpha, tau)?;
        let x = atom.signal(&grid);
        let spectrum = forward_ft(&x)?;

        let closed = atom.spectrum(&grid);
        let ft_err = spectrum
            .values
            .iter()
            .zip(&closed.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);

        let back = inverse_ft(&spectrum)?;
        let rt_err = back
            .values
            .iter()
            .zip(&x.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);

        println!(
            "g_(alpha={alpha}, tau={tau}): closed-form err {ft_err:.2e}, round-trip err {rt_err:.2e}, parseval gap {:.2e}",
            parseval_gap(&x)?
        );
    }

    // both L2 norms of e^{-pi t^2} equal 1/sqrt(2)
    let x = GaussianAtom::new(1.0, 0.0)?.signal(&grid);
    println!(
        "||g_(1,0)||^2 = {:.12} (analytic 1/sqrt(2) = {:.12})",
        x.l2_norm_sq(),
        1.0 / 2.0f64.sqrt()
    );
    Ok(())
}
