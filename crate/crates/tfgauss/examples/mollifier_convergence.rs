//! The operator families along a growing scale: shift norm bounds, the
//! mollifier with its certificates, the multiplier contraction, and the
//! approximate-identity error of both compositions.
//!
//! Run: cargo run -p tfgauss --example mollifier_convergence

use tfgauss::atoms::GaussianAtom;
use tfgauss::grid::Grid;
use tfgauss::operators::{
    composite_identity_error, mollifier_identity_error, mollify, shift, CompositeOrder,
};
use tfgauss::weights::{WeightAnalysis, WeightSpec};

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 12)?;
    let weight = WeightSpec::exp_abs(1.0, grid.halfwidth())?;
    let analysis = WeightAnalysis::of_weight(&weight, &grid)?;
    let w = analysis.carrier();
    let h = grid.step();
    let x = GaussianAtom::new(4.0, 0.0)?.signal(&grid);

    let wnorm = |v: &[num_complex::Complex64]| -> f64 {
        (h * v.iter().zip(w).map(|(z, wk)| z.norm_sqr() * wk).sum::<f64>()).sqrt()
    };

    println!("== shifts under w = e^|xi| ==");
    for eta in [0.25, 0.5, 1.0, 2.0] {
        let shifted = shift(&x, eta)?;
        let ratio = wnorm(&shifted.values) / wnorm(&x.values);
        let bound = analysis.mmc_at(eta)?.sqrt();
        println!("eta = {eta}: norm ratio {ratio:.6} <= sqrt(M({eta})) = {bound:.6}");
    }

    println!("\n== mollifier certificates ==");
    for alpha in [1.0, 4.0, 16.0, 64.0] {
        let (smoothed, cert) = mollify(&x, alpha, &analysis)?;
        let ratio = wnorm(&smoothed.values) / wnorm(&x.values);
        println!(
            "alpha = {alpha:4}: ratio {ratio:.6} <= bound {:.6} <= envelope bound {:.6}",
            cert.bound, cert.envelope_bound
        );
    }

    println!("\n== approximate identity: || C_a x - x ||_w ==");
    println!("{:>8} {:>14} {:>14} {:>14}", "alpha", "mollify only", "I_a M_a", "M_a I_a");
    for alpha in [1.0, 4.0, 16.0, 64.0, 256.0] {
        let plain = mollifier_identity_error(&x, alpha, &weight)?;
        let im = composite_identity_error(&x, alpha, &weight, CompositeOrder::Im)?;
        let mi = composite_identity_error(&x, alpha, &weight, CompositeOrder::Mi)?;
        println!("{alpha:>8} {plain:>14.6e} {im:>14.6e} {mi:>14.6e}");
    }
    Ok(())
}
