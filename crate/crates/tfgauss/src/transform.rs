//! Discrete realization of the ordinary-frequency unitary transform pair
//!
//! ```text
//!   xhat(w) = int x(t) e^{-2 pi i w t} dt        x(t) = int y(w) e^{+2 pi i t w} dw
//! ```
//!
//! on centered grids.  The raw index-based FFT computes sums against
//! `e^{-2 pi i m k / N}`; with `t_k = (k - N/2) h` and `w_m = (m - N/2) dw`,
//! `dw = 1/(N h)`, the exponent factors as
//! `e^{-2 pi i m k / N} (-1)^{m+k} e^{-i pi N / 2}`, so the quadrature sum
//! `h * sum_k x(t_k) e^{-2 pi i w_m t_k}` is an FFT with `(-1)^k` pre- and
//! `(-1)^m` post-twiddles and one global phase.  The pair is mutually inverse
//! to rounding error and spectrally accurate for well-truncated inputs.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{Grid, Signal, Spectrum};

fn check_grid(grid: &Grid) -> Result<()> {
    let n = grid.count();
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::NonPowerOfTwo { count: n });
    }
    Ok(())
}

// e^{-i pi N/2}; real and self-conjugate for even N, so it serves both
// transform directions.  N is a multiple of 4 in practice but N % 4 == 2 is
// handled rather than silently assumed.
fn corner_phase(n: usize) -> Complex64 {
    let re = match n % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => unreachable!("count is a power of two >= 4"),
    };
    Complex64::new(re, 0.0)
}

fn twiddled_fft(values: &[Complex64], scale: f64, phase: Complex64, forward: bool) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { *v } else { -*v })
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let fft = if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    };
    fft.process(&mut buf);
    for (m, v) in buf.iter_mut().enumerate() {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        *v *= phase * (scale * sign);
    }
    buf
}

/// Quadrature approximation of the transform integral on the reciprocal grid.
pub fn forward_ft(x: &Signal) -> Result<Spectrum> {
    check_grid(&x.grid)?;
    let n = x.grid.count();
    let values = twiddled_fft(&x.values, x.grid.step(), corner_phase(n), true);
    Spectrum::new(x.grid.reciprocal(), values)
}

/// Quadrature approximation of the inverse transform integral.
pub fn inverse_ft(y: &Spectrum) -> Result<Signal> {
    check_grid(&y.grid)?;
    let n = y.grid.count();
    // rustfft's inverse is the unnormalized conjugate sum; the quadrature
    // weight is the frequency step dw = y.grid.step().
    let values = twiddled_fft(&y.values, y.grid.step(), corner_phase(n), false);
    Signal::new(y.grid.reciprocal(), values)
}

/// Circular quadrature convolution on a centered grid:
/// `y_k = step * sum_j kernel_j values_{k-j}` with both factors indexed by
/// centered sample position (wraparound at the window edges).  Used for the
/// mollifier on either the time or the frequency grid.
pub(crate) fn circular_convolve(
    kernel: &[Complex64],
    values: &[Complex64],
    step: f64,
) -> Vec<Complex64> {
    let n = kernel.len();
    assert_eq!(values.len(), n);
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut a: Vec<Complex64> = kernel.to_vec();
    let mut b: Vec<Complex64> = values.to_vec();
    fft.process(&mut a);
    fft.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    ifft.process(&mut a);
    // index arithmetic: centered kernel index j and signal index k - j + N/2
    let scale = step / n as f64;
    (0..n)
        .map(|k| a[(k + n / 2) % n] * scale)
        .collect()
}

/// Relative gap between the two sides of the Parseval equality,
/// `| ||x||^2 - ||xhat||^2 | / ||x||^2`.
///
/// Meaningful (< 1e-8) when the signal keeps essentially all of its mass
/// inside the half-window in both domains; truncation is the caller's
/// responsibility.
pub fn parseval_gap(x: &Signal) -> Result<f64> {
    let time_norm = x.l2_norm_sq();
    if time_norm == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let freq_norm = forward_ft(x)?.l2_norm_sq();
    Ok((time_norm - freq_norm).abs() / time_norm)
}
