//! The shift family `T_eta x = x(. - eta)`, the Gaussian mollifier family
//! `I_a x = int G_a(eta) x(. - eta) d eta` with `G_a = sqrt(a) e^{-pi a eta^2}`,
//! the Gaussian multiplier `M_a x = e^{-(pi/a) xi^2} x`, their weighted-norm
//! bounds, and the approximate-identity error of the compositions.
//!
//! Shifts are restricted to grid multiples with zero fill at the inflow
//! edge, which keeps the discrete shift bound
//! `||T_eta x||_w <= sqrt(M_w(|eta|)) ||x||_w` exact: dropped outflow terms
//! only shrink the left side, and every surviving pair is in the modulus sup.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{quad, Signal};
use crate::weights::{WeightAnalysis, WeightSpec};

const PI: f64 = std::f64::consts::PI;

/// Use the spectral convolution path at or above this grid size.
const FFT_CONV_THRESHOLD: usize = 1 << 10;

/// Unit-mass Gaussian kernel `G_a` sampled on a grid.
#[derive(Debug, Clone)]
pub struct MollifierKernel {
    pub alpha: f64,
    samples: Vec<f64>,
    step: f64,
}

impl MollifierKernel {
    pub fn new(alpha: f64, grid: &crate::grid::Grid) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!("mollifier scale alpha = {alpha} must be positive")));
        }
        let sa = alpha.sqrt();
        let samples = grid
            .points()
            .map(|eta| sa * (-PI * alpha * eta * eta).exp())
            .collect();
        Ok(MollifierKernel { alpha, samples, step: grid.step() })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Quadrature mass `h sum G_a`; equals 1 to ~1e-15 on resolved grids.
    pub fn mass(&self) -> f64 {
        self.step * self.samples.iter().sum::<f64>()
    }
}

/// Norm certificate for `I_a` on `L^2(w dxi)`:
/// `bound = int G_a(eta) sqrt(M_w(|eta|)) d eta` from the tabulated modulus,
/// and the coarser envelope form `sqrt(C_w) int G_a e^{mu_w |eta| / 2}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OperatorNormCert {
    pub alpha: f64,
    pub bound: f64,
    pub envelope_bound: f64,
    /// true when the modulus was taken of `1 + w` (weights touching zero)
    pub carrier_shifted: bool,
}

/// Shift by a grid multiple with zero fill at the inflow edge.
pub fn shift(x: &Signal, eta: f64) -> Result<Signal> {
    let h = x.grid.step();
    let pos = eta / h;
    let d = pos.round();
    if (pos - d).abs() > 1e-12 * (1.0 + pos.abs()) {
        return Err(Error::OffGridShift { eta, step: h });
    }
    let d = d as i64;
    let n = x.grid.count() as i64;
    let mut values = vec![Complex64::default(); x.grid.count()];
    for k in 0..n {
        let src = k - d;
        if (0..n).contains(&src) {
            values[k as usize] = x.values[src as usize];
        }
    }
    Signal::new(x.grid, values)
}

fn direct_convolve(x: &Signal, kernel: &MollifierKernel) -> Signal {
    let n = x.grid.count() as i64;
    let half = n / 2;
    let h = x.grid.step();
    let mut values = vec![Complex64::default(); x.grid.count()];
    for k in 0..n {
        let mut acc = Complex64::default();
        for j in 0..n {
            let src = k - j + half;
            if (0..n).contains(&src) {
                acc += kernel.samples[j as usize] * x.values[src as usize];
            }
        }
        values[k as usize] = acc * h;
    }
    Signal { grid: x.grid, values }
}

fn fft_convolve(x: &Signal, kernel: &MollifierKernel) -> Result<Signal> {
    let kernel_values: Vec<Complex64> =
        kernel.samples.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    let values = crate::transform::circular_convolve(&kernel_values, &x.values, x.grid.step());
    Signal::new(x.grid, values)
}

/// Convolution with `G_a` by quadrature: spectral path on large grids,
/// direct sum otherwise.  Public so the two routes can be compared.
pub fn convolve_with_kernel(x: &Signal, kernel: &MollifierKernel) -> Result<Signal> {
    if x.grid.count() >= FFT_CONV_THRESHOLD {
        fft_convolve(x, kernel)
    } else {
        Ok(direct_convolve(x, kernel))
    }
}

/// Direct-quadrature convolution (the slow reference path).
pub fn mollify_direct(x: &Signal, alpha: f64) -> Result<Signal> {
    Ok(direct_convolve(x, &MollifierKernel::new(alpha, &x.grid)?))
}

/// Norm certificate of `I_a` on `L^2(w dxi)` from a weight analysis whose
/// grid matches the signal grid.
pub fn mollifier_cert(alpha: f64, weight: &WeightAnalysis) -> Result<OperatorNormCert> {
    let grid = weight.grid();
    let kernel = MollifierKernel::new(alpha, grid)?;
    let h = grid.step();
    let mut bound = 0.0;
    for (eta, g) in grid.points().zip(kernel.samples()) {
        bound += g * weight.mmc_at(eta.abs())?.sqrt();
    }
    bound *= h;
    let env = weight.envelope();
    let envelope_bound = if env.regular {
        let mut acc = 0.0;
        for (eta, g) in grid.points().zip(kernel.samples()) {
            acc += g * (env.mu_w * eta.abs() / 2.0).exp();
        }
        env.c_w.sqrt() * h * acc
    } else {
        f64::INFINITY
    };
    Ok(OperatorNormCert { alpha, bound, envelope_bound, carrier_shifted: weight.is_shifted() })
}

/// Apply the mollifier and return the smoothed signal with its norm
/// certificate against the supplied weight analysis.
pub fn mollify(x: &Signal, alpha: f64, weight: &WeightAnalysis) -> Result<(Signal, OperatorNormCert)> {
    if weight.grid() != &x.grid {
        return Err(Error::GridMismatch);
    }
    let kernel = MollifierKernel::new(alpha, &x.grid)?;
    let smoothed = convolve_with_kernel(x, &kernel)?;
    let cert = mollifier_cert(alpha, weight)?;
    Ok((smoothed, cert))
}

/// Pointwise Gaussian multiplier `e^{-(pi/a) xi^2} x(xi)`; a contraction in
/// every weighted norm (the multiplier never exceeds 1).
pub fn gauss_multiply(x: &Signal, alpha: f64) -> Result<Signal> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::invalid(format!("multiplier scale alpha = {alpha} must be positive")));
    }
    let values = x
        .grid
        .points()
        .zip(&x.values)
        .map(|(xi, v)| v * (-(PI / alpha) * xi * xi).exp())
        .collect();
    Signal::new(x.grid, values)
}

/// Order of the approximate-identity composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompositeOrder {
    /// `I_a (M_a x)`: multiply first, then mollify
    Im,
    /// `M_a (I_a x)`: mollify first, then multiply
    Mi,
}

/// Apply the composite `C_a` in the requested order.
pub fn composite_apply(x: &Signal, alpha: f64, order: CompositeOrder) -> Result<Signal> {
    let kernel = MollifierKernel::new(alpha, &x.grid)?;
    match order {
        CompositeOrder::Im => convolve_with_kernel(&gauss_multiply(x, alpha)?, &kernel),
        CompositeOrder::Mi => gauss_multiply(&convolve_with_kernel(x, &kernel)?, alpha),
    }
}

/// `||C_a x - x||_{L^2(w dxi)}` for the chosen composition order; tends to
/// zero along growing alpha for regular weights and well-truncated signals.
pub fn composite_identity_error(
    x: &Signal,
    alpha: f64,
    weight: &WeightSpec,
    order: CompositeOrder,
) -> Result<f64> {
    let w = weight.sample_on(&x.grid)?;
    let y = composite_apply(x, alpha, order)?;
    let diff: Vec<Complex64> = y.values.iter().zip(&x.values).map(|(a, b)| a - b).collect();
    Ok(quad::weighted_norm_sq(x.grid.step(), &diff, &w).sqrt())
}

/// `||I_a x - x||_{L^2(w dxi)}`, the plain mollifier error.
pub fn mollifier_identity_error(x: &Signal, alpha: f64, weight: &WeightSpec) -> Result<f64> {
    let w = weight.sample_on(&x.grid)?;
    let kernel = MollifierKernel::new(alpha, &x.grid)?;
    let y = convolve_with_kernel(x, &kernel)?;
    let diff: Vec<Complex64> = y.values.iter().zip(&x.values).map(|(a, b)| a - b).collect();
    Ok(quad::weighted_norm_sq(x.grid.step(), &diff, &w).sqrt())
}
