//! Schur row/column bounds on sampled kernels, with random probes of the
//! bilinear form.
//!
//! Run: cargo run -p tfgauss --example schur_bounds

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tfgauss::atoms::{schur_bound, SchurKernel};
use tfgauss::grid::Grid;

fn main() -> tfgauss::Result<()> {
    let grid = Grid::with_log2_count(16.0, 10)?;
    let h = grid.step();

    let k = SchurKernel::from_fn(&grid, &grid, |t, tau| (-(t - tau).abs()).exp());
    println!(
        "K(t,tau) = e^-|t-tau|: N1 = {:.6}, Ninf = {:.6}, bound = {:.6} (analytic 2)",
        k.n1(),
        k.n_inf(),
        schur_bound(&k)?
    );

    // the time-side kernel of the witness double integral, flat weight
    let kt = SchurKernel::time_kernel(1.0, 1.0, 0.0, &grid);
    let bound = schur_bound(&kt)?;
    println!("reduced time kernel at alpha = 1: bound = {bound:.6} (<= 1)");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f: Vec<Complex64> = (0..grid.count())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let g: Vec<Complex64> = (0..grid.count())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let nf = (h * f.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        let ng = (h * g.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        worst = worst.max(kt.bilinear(&f, &g)?.norm() / (bound * nf * ng));
    }
    println!("worst |form| / (bound ||f|| ||g||) over 50 probes: {worst:.6}");
    Ok(())
}
