//! Building a validated weight pair and working with the space norm: the
//! Sobolev identity, inner products, the embedding ratio, and the rejection
//! of Hardy-type weights.
//!
//! Run: cargo run -p tfgauss --example weighted_space

use tfgauss::atoms::GaussianAtom;
use tfgauss::grid::{Grid, Signal};
use tfgauss::weights::WeightSpec;
use tfgauss::wspace::{default_embedding_family, SpacePair};

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 12)?;
    let freq_halfwidth = grid.reciprocal().halfwidth();

    // w_T == 1, w_Omega = (2 pi w)^2: the first-order Sobolev space
    let pair = SpacePair::new(
        WeightSpec::constant(1.0, grid.halfwidth())?,
        WeightSpec::sobolev_omega(1, freq_halfwidth)?,
        grid,
        0.5,
        0.5,
    )?;

    let x = GaussianAtom::new(1.0, 0.0)?.signal(&grid);
    let norm_sq = pair.h_norm_sq(&x)?;
    println!("space norm^2 of e^(-pi t^2): {:.12}", norm_sq);
    println!("analytic (1+pi)/sqrt(2):     {:.12}", (1.0 + std::f64::consts::PI) / 2.0f64.sqrt());

    // same number through the derivative: int |x|^2 + int |x'|^2
    let h = grid.step();
    let deriv_route: f64 = x.l2_norm_sq()
        + h * grid
            .points()
            .map(|t| {
                let pi = std::f64::consts::PI;
                (-2.0 * pi * t * (-pi * t * t).exp()).powi(2)
            })
            .sum::<f64>();
    println!("derivative route:            {:.12}", deriv_route);

    let y = GaussianAtom::new(1.0, 1.0)?.signal(&grid);
    println!("<g_(1,0), g_(1,1)> under this pair = {:.9}", pair.h_inner(&x, &y)?);

    // largest ||x||^2_L2 / ||x||^2_H over the default Gaussian family
    let atoms = default_embedding_family(&grid);
    let family: Vec<Signal> = atoms.iter().map(|a| a.signal(&grid)).collect();
    let est = pair.embedding_estimate(&family)?;
    println!(
        "embedding ratio: b_hat = {:.6} attained at alpha = {}, tau = {} ({} atoms)",
        est.b_hat, atoms[est.argmax].alpha, atoms[est.argmax].tau, est.family_size
    );

    // weights growing like e^(xi^2) empty the space: construction refuses
    let hardy = SpacePair::new(
        WeightSpec::gauss_square(1.0, grid.halfwidth())?,
        WeightSpec::gauss_square(1.0, freq_halfwidth)?,
        grid,
        0.5,
        0.5,
    );
    match hardy {
        Err(e) => println!("hardy pair rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
