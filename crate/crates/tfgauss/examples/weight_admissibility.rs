//! Weight admissibility: non-degeneracy, the multiplicative modulus of
//! continuity, and the exponential envelope.  Shows a weight passing both
//! conditions, one failing non-degeneracy, and the Hardy-type weight that
//! fails regularity.
//!
//! Run: cargo run -p tfgauss --example weight_admissibility

use tfgauss::weights::{
    check_nondegeneracy, estimate_mmc, fit_envelope, WeightKind, WeightSpec,
    DEFAULT_BLOWUP_THRESHOLD,
};

fn main() -> tfgauss::Result<()> {
    let halfwidth = 16.0;
    let step = 1.0 / 128.0;
    let deltas: Vec<f64> = (0..=16).map(|k| k as f64 * 0.25).collect();

    println!("== exp-abs weight w(xi) = e^|xi| ==");
    let exp_abs = WeightSpec::exp_abs(1.0, halfwidth)?;
    let nd = check_nondegeneracy(&exp_abs, 0.5, step)?;
    println!("sublevel measure of {{w < 0.5}}: {} (passes: {})", nd.sublevel_measure, nd.passes);
    let curve = estimate_mmc(&exp_abs, &deltas, step)?;
    println!("M(1) = {:.9} (analytic: e = {:.9})", curve.values[4], std::f64::consts::E);
    let env = fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD)?;
    println!("envelope: C = {:.6}, mu = {:.6}, regular = {}", env.c_w, env.mu_w, env.regular);

    println!("\n== power weight w(xi) = xi^2 (vanishes at a point) ==");
    let power = WeightSpec::power(2.0, 10.0)?;
    let nd = check_nondegeneracy(&power, 1.0, 1e-3)?;
    println!(
        "sublevel measure of {{w < 1}}: {:.4} (the interval (-1,1)), passes: {}",
        nd.sublevel_measure, nd.passes
    );
    match estimate_mmc(&power, &deltas, step) {
        Err(e) => println!("modulus estimate refuses the zero sample: {e}"),
        Ok(_) => unreachable!(),
    }

    println!("\n== degenerate weight (all zeros) ==");
    let zero = WeightSpec::new(
        WeightKind::Table { start: -10.0, step: 0.01, values: vec![0.0; 2000] },
        10.0,
    )?;
    let nd = check_nondegeneracy(&zero, 0.5, 0.01)?;
    println!("sublevel measure: {} = full window, passes: {}", nd.sublevel_measure, nd.passes);

    println!("\n== Hardy-type weight w(xi) = e^(xi^2) ==");
    let hardy = WeightSpec::gauss_square(1.0, halfwidth)?;
    let curve = estimate_mmc(&hardy, &deltas, step)?;
    println!("M(1) = {:.3e}, M(4) = {:.3e}", curve.values[4], curve.values[16]);
    let env = fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD)?;
    println!("regular = {} (the modulus blows past {:.0e})", env.regular, DEFAULT_BLOWUP_THRESHOLD);
    Ok(())
}
