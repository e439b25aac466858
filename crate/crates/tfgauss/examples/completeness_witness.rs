//! The completeness witness: both bilinear forms climb to the weighted
//! norms of the target as the scale grows, and the two integration orders
//! agree to rounding error.
//!
//! Run: cargo run -p tfgauss --example completeness_witness

use tfgauss::approx::completeness_witness;
use tfgauss::atoms::GaussianAtom;
use tfgauss::grid::Grid;
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
    let f = GaussianAtom::new(1.0, 0.0)?.signal(&grid);

    let curves = completeness_witness(&f, &pair, &[1.0, 4.0, 16.0, 64.0, 256.0])?;
    println!(
        "targets: <f,f>_(w_T) = {:.9}, <fhat,fhat>_(w_Omega) = {:.9}",
        curves.target1, curves.target2
    );
    println!(
        "{:>8} {:>13} {:>13} {:>11} {:>10} {:>10} {:>10}",
        "alpha", "term1", "term2", "fubini gap", "I(a)", "I1(a)", "Iinf(a)"
    );
    for (i, alpha) in curves.alphas.iter().enumerate() {
        println!(
            "{alpha:>8} {:>13.9} {:>13.9} {:>11.2e} {:>10.3} {:>10.3} {:>10.3}",
            curves.term1[i].re,
            curves.term2[i].re,
            curves.fubini_gap(i),
            curves.i_alpha[i],
            curves.i1_alpha[i],
            curves.i_inf_alpha[i]
        );
    }
    println!(
        "deviation at the largest scale: {:.3e} + {:.3e}",
        (curves.term1.last().unwrap() - curves.target1).norm(),
        (curves.term2.last().unwrap() - curves.target2).norm()
    );
    Ok(())
}
