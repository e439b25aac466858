//! The weighted time-frequency space: a pair of admissible weights
//! `(w_T, w_Omega)` over a grid, with the squared norm
//!
//! ```text
//!   ||x||^2_H = int |x(t)|^2 w_T(t) dt + int |xhat(w)|^2 w_Omega(w) dw,
//! ```
//!
//! the matching inner product, and the empirical embedding ratio
//! `||x||^2_{L^2} / ||x||^2_H`.  The theoretical embedding constant rests
//! on an uncertainty-type inequality whose absolute constant is not
//! computable, so only observed lower bounds are ever reported.
//! Construction enforces the two admissibility hypotheses: both weights
//! non-degenerate, and both `1 + w` regular.

use num_complex::Complex64;
use serde::Serialize;

use crate::atoms::GaussianAtom;
use crate::error::{Error, Result};
use crate::grid::{quad, Grid, Signal};
use crate::transform::forward_ft;
use crate::weights::{check_nondegeneracy, NonDegeneracyReport, WeightAnalysis, WeightSpec};

/// An admissible weight pair over a grid, with the analysis products the
/// operator and approximation layers need.
#[derive(Debug, Clone)]
pub struct SpacePair {
    grid: Grid,
    w_time: WeightSpec,
    w_freq: WeightSpec,
    time_samples: Vec<f64>,
    freq_samples: Vec<f64>,
    nondeg_time: NonDegeneracyReport,
    nondeg_freq: NonDegeneracyReport,
    analysis_time: WeightAnalysis,
    analysis_freq: WeightAnalysis,
}

/// Largest observed `||x||^2_{L^2} / ||x||^2_H` over a test family: an
/// empirical lower bound for the embedding constant (never an upper bound;
/// the absolute constant behind it is not computable).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EmbeddingEstimate {
    pub b_hat: f64,
    pub family_size: usize,
    pub argmax: usize,
}

impl SpacePair {
    /// Validate the hypotheses and build the pair; `Err(Validation)` names
    /// the first failed condition (e.g. Hardy-type weights fail regularity
    /// of `1 + w`).
    pub fn new(
        w_time: WeightSpec,
        w_freq: WeightSpec,
        grid: Grid,
        epsilon_time: f64,
        epsilon_freq: f64,
    ) -> Result<Self> {
        let pair = Self::build(w_time, w_freq, grid, epsilon_time, epsilon_freq)?;
        if !pair.nondeg_time.passes {
            return Err(Error::validation(format!(
                "non-degeneracy failed for w_T: sublevel set {{w < {}}} covers the whole window",
                pair.nondeg_time.epsilon
            )));
        }
        if !pair.nondeg_freq.passes {
            return Err(Error::validation(format!(
                "non-degeneracy failed for w_Omega: sublevel set {{w < {}}} covers the whole window",
                pair.nondeg_freq.epsilon
            )));
        }
        if !pair.analysis_time.is_regular() {
            return Err(Error::validation(
                "regularity failed for 1 + w_T: multiplicative modulus of continuity blows up",
            ));
        }
        if !pair.analysis_freq.is_regular() {
            return Err(Error::validation(
                "regularity failed for 1 + w_Omega: multiplicative modulus of continuity blows up",
            ));
        }
        Ok(pair)
    }

    /// Build without gating on the hypothesis checks (the `--force` path);
    /// the reports still record what failed.
    pub fn new_unchecked(
        w_time: WeightSpec,
        w_freq: WeightSpec,
        grid: Grid,
        epsilon_time: f64,
        epsilon_freq: f64,
    ) -> Result<Self> {
        Self::build(w_time, w_freq, grid, epsilon_time, epsilon_freq)
    }

    fn build(
        w_time: WeightSpec,
        w_freq: WeightSpec,
        grid: Grid,
        epsilon_time: f64,
        epsilon_freq: f64,
    ) -> Result<Self> {
        let freq_grid = grid.reciprocal();
        let time_samples = w_time.sample_on(&grid)?;
        let freq_samples = w_freq.sample_on(&freq_grid)?;
        let nondeg_time = check_nondegeneracy(&w_time, epsilon_time, grid.step())?;
        let nondeg_freq = check_nondegeneracy(&w_freq, epsilon_freq, freq_grid.step())?;
        let analysis_time = WeightAnalysis::of_one_plus(&w_time, &grid)?;
        let analysis_freq = WeightAnalysis::of_one_plus(&w_freq, &freq_grid)?;
        Ok(SpacePair {
            grid,
            w_time,
            w_freq,
            time_samples,
            freq_samples,
            nondeg_time,
            nondeg_freq,
            analysis_time,
            analysis_freq,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn freq_grid(&self) -> Grid {
        self.grid.reciprocal()
    }

    pub fn w_time(&self) -> &WeightSpec {
        &self.w_time
    }

    pub fn w_freq(&self) -> &WeightSpec {
        &self.w_freq
    }

    /// `w_T` sampled on the time grid.
    pub fn time_weight_samples(&self) -> &[f64] {
        &self.time_samples
    }

    /// `w_Omega` sampled on the frequency grid.
    pub fn freq_weight_samples(&self) -> &[f64] {
        &self.freq_samples
    }

    pub fn nondegeneracy_time(&self) -> NonDegeneracyReport {
        self.nondeg_time
    }

    pub fn nondegeneracy_freq(&self) -> NonDegeneracyReport {
        self.nondeg_freq
    }

    /// Analysis of `1 + w_T` on the time grid.
    pub fn analysis_time(&self) -> &WeightAnalysis {
        &self.analysis_time
    }

    /// Analysis of `1 + w_Omega` on the frequency grid.
    pub fn analysis_freq(&self) -> &WeightAnalysis {
        &self.analysis_freq
    }

    /// Whether both weights satisfy the completeness-theorem hypotheses.
    pub fn hypotheses_hold(&self) -> bool {
        self.nondeg_time.passes
            && self.nondeg_freq.passes
            && self.analysis_time.is_regular()
            && self.analysis_freq.is_regular()
    }

    fn check_grid(&self, x: &Signal) -> Result<()> {
        if x.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Squared space norm by quadrature: time term plus weighted spectral term.
    pub fn h_norm_sq(&self, x: &Signal) -> Result<f64> {
        self.check_grid(x)?;
        let spec = forward_ft(x)?;
        Ok(quad::weighted_norm_sq(self.grid.step(), &x.values, &self.time_samples)
            + quad::weighted_norm_sq(spec.grid.step(), &spec.values, &self.freq_samples))
    }

    /// Space inner product; conjugate-symmetric and sesquilinear.
    pub fn h_inner(&self, a: &Signal, b: &Signal) -> Result<Complex64> {
        self.check_grid(a)?;
        self.check_grid(b)?;
        let fa = forward_ft(a)?;
        let fb = forward_ft(b)?;
        Ok(quad::weighted_dot(self.grid.step(), &a.values, &b.values, &self.time_samples)
            + quad::weighted_dot(fa.grid.step(), &fa.values, &fb.values, &self.freq_samples))
    }

    /// Max of `||x||^2_{L^2} / ||x||^2_H` over the family.
    pub fn embedding_estimate(&self, family: &[Signal]) -> Result<EmbeddingEstimate> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut b_hat = f64::NEG_INFINITY;
        let mut argmax = 0;
        for (i, x) in family.iter().enumerate() {
            let h_norm = self.h_norm_sq(x)?;
            if h_norm <= 0.0 || h_norm.is_nan() {
                return Err(Error::ZeroSignal);
            }
            let ratio = x.l2_norm_sq() / h_norm;
            if ratio > b_hat {
                b_hat = ratio;
                argmax = i;
            }
        }
        Ok(EmbeddingEstimate { b_hat, family_size: family.len(), argmax })
    }
}

/// Default embedding test family: Gaussians on a 5x5 grid, scales
/// log-uniform in `[1/4, 4]`, centers uniform in `[-2, 2]`.
pub fn default_embedding_family(_grid: &Grid) -> Vec<GaussianAtom> {
    let mut atoms = Vec::with_capacity(25);
    for p in -2..=2 {
        for tau in -2..=2 {
            atoms.push(GaussianAtom::new(2f64.powi(p), tau as f64).expect("valid atom"));
        }
    }
    atoms
}
