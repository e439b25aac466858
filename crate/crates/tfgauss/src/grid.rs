//! Centered uniform grids and sampled functions on them.
//!
//! A grid covers `[-L, L)` with `N = 2L/h` samples at `xi_k = -L + k h`,
//! `N` a power of two.  Its reciprocal covers the frequency window
//! `[-1/(2h), 1/(2h))` with the same sample count and step `1/(N h)`, which
//! is exactly the resolution the discrete transform pair needs.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    halfwidth: f64,
    step: f64,
    count: usize,
}

impl Grid {
    /// Build a grid from halfwidth and step; `2L/h` must be a power of two.
    pub fn new(halfwidth: f64, step: f64) -> Result<Self> {
        if !(halfwidth.is_finite() && halfwidth > 0.0) {
            return Err(Error::BadGrid {
                msg: format!("halfwidth {halfwidth} must be finite and positive"),
            });
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::BadGrid {
                msg: format!("step {step} must be finite and positive"),
            });
        }
        let ratio = 2.0 * halfwidth / step;
        let count = ratio.round() as usize;
        if (ratio - count as f64).abs() > 1e-9 * ratio {
            return Err(Error::BadGrid {
                msg: format!("2L/h = {ratio} is not an integer"),
            });
        }
        if count < 4 || !count.is_power_of_two() {
            return Err(Error::NonPowerOfTwo { count });
        }
        Ok(Grid { halfwidth, step, count })
    }

    /// Grid with `2^log2_count` samples on `[-halfwidth, halfwidth)`.
    pub fn with_log2_count(halfwidth: f64, log2_count: u32) -> Result<Self> {
        let count = 1usize << log2_count;
        Grid::new(halfwidth, 2.0 * halfwidth / count as f64)
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Sample location `xi_k = -L + k h`.
    pub fn point(&self, k: usize) -> f64 {
        -self.halfwidth + k as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.point(k))
    }

    /// Index of a grid point, if `xi` is one (within 1e-12 of a multiple).
    pub fn index_of(&self, xi: f64) -> Option<usize> {
        let pos = (xi + self.halfwidth) / self.step;
        let k = pos.round();
        if (pos - k).abs() <= 1e-12 * (1.0 + pos.abs()) && k >= 0.0 && (k as usize) < self.count {
            Some(k as usize)
        } else {
            None
        }
    }

    /// The reciprocal (frequency) grid: step `1/(N h)`, halfwidth `1/(2h)`.
    pub fn reciprocal(&self) -> Grid {
        Grid {
            halfwidth: 0.5 / self.step,
            step: 1.0 / (self.count as f64 * self.step),
            count: self.count,
        }
    }
}

/// Uniformly sampled complex-valued function on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub grid: Grid,
    pub values: Vec<Complex64>,
}

/// Uniformly sampled complex-valued function on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub grid: Grid,
    pub values: Vec<Complex64>,
}

fn checked_values(grid: &Grid, values: Vec<Complex64>) -> Result<Vec<Complex64>> {
    if values.len() != grid.count() {
        return Err(Error::GridMismatch);
    }
    if let Some(v) = values.iter().find(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::invalid(format!("non-finite sample {v}")));
    }
    Ok(values)
}

impl Signal {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        Ok(Signal { values: checked_values(&grid, values)?, grid })
    }

    pub fn zeros(grid: Grid) -> Self {
        Signal { values: vec![Complex64::default(); grid.count()], grid }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        Signal { grid, values }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |t| Complex64::new(f(t), 0.0))
    }

    /// Plain `L^2(dt)` squared norm by grid quadrature.
    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.step() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }
}

impl Spectrum {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        Ok(Spectrum { values: checked_values(&grid, values)?, grid })
    }

    pub fn zeros(grid: Grid) -> Self {
        Spectrum { values: vec![Complex64::default(); grid.count()], grid }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        Spectrum { grid, values }
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.step() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }
}

/// Quadrature helpers shared by the weighted-norm code paths.
pub(crate) mod quad {
    use num_complex::Complex64;

    /// `step * sum |v_k|^2 w_k`
    pub fn weighted_norm_sq(step: f64, values: &[Complex64], weights: &[f64]) -> f64 {
        step * values
            .iter()
            .zip(weights)
            .map(|(v, w)| v.norm_sqr() * w)
            .sum::<f64>()
    }

    /// `step * sum a_k conj(b_k) w_k`
    pub fn weighted_dot(step: f64, a: &[Complex64], b: &[Complex64], weights: &[f64]) -> Complex64 {
        step * a
            .iter()
            .zip(b)
            .zip(weights)
            .map(|((x, y), w)| x * y.conj() * w)
            .sum::<Complex64>()
    }
}
