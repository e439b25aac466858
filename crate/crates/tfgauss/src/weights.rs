//! Weight functions on the line and the admissibility conditions:
//! non-negativity, non-degeneracy (small sublevel sets), and regularity via
//! the multiplicative modulus of continuity
//!
//! ```text
//!   M_w(delta) = sup { w(xi') / w(xi'') : |xi' - xi''| <= delta },
//! ```
//!
//! estimated as a finite sup over grid pairs.  A regular weight admits an
//! exponential envelope `M_w(delta) <= C_w exp(mu_w delta)`, which in turn
//! pins the weight itself between `w(0) C_w^{-1} e^{-mu_w |xi|}` and
//! `w(0) C_w e^{mu_w |xi|}` on the grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Classification threshold for "infinite" modulus values: the dichotomy
/// (finite for all delta, or infinite for all delta) makes any large cutoff
/// safe on a truncated window.
pub const DEFAULT_BLOWUP_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `w(xi) = level`
    Constant { level: f64 },
    /// `w(xi) = |xi|^exponent`
    Power { exponent: f64 },
    /// `w(xi) = exp(rate * |xi|)`
    ExpAbs { rate: f64 },
    /// `w(xi) = exp(rate * xi^2)` -- the Hardy-type weights
    GaussSquare { rate: f64 },
    /// `w(xi) = (2 pi xi)^(2 order)` -- the Sobolev frequency weight
    SobolevOmega { order: u32 },
    /// Uniformly sampled table starting at `start` with spacing `step`
    Table { start: f64, step: f64, values: Vec<f64> },
}

/// A weight function together with its truncation window `[-L, L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub domain_halfwidth: f64,
}

impl WeightSpec {
    pub fn new(kind: WeightKind, domain_halfwidth: f64) -> Result<Self> {
        if !(domain_halfwidth.is_finite() && domain_halfwidth > 0.0) {
            return Err(Error::invalid("domain halfwidth must be positive"));
        }
        match &kind {
            WeightKind::Constant { level } => {
                if !(level.is_finite() && *level >= 0.0) {
                    return Err(Error::invalid("constant level must be finite and >= 0"));
                }
            }
            WeightKind::Power { exponent } => {
                if !(exponent.is_finite() && *exponent > 0.0) {
                    return Err(Error::invalid("power exponent must be positive"));
                }
            }
            WeightKind::ExpAbs { rate } | WeightKind::GaussSquare { rate } => {
                if !rate.is_finite() {
                    return Err(Error::invalid("rate must be finite"));
                }
            }
            WeightKind::SobolevOmega { order } => {
                if *order == 0 {
                    return Err(Error::invalid("sobolev order must be >= 1"));
                }
            }
            WeightKind::Table { start, step, values } => {
                if values.is_empty() {
                    return Err(Error::invalid("table weight has no samples"));
                }
                if !(step.is_finite() && *step > 0.0) || !start.is_finite() {
                    return Err(Error::invalid("table start/step must be finite, step > 0"));
                }
                for (i, v) in values.iter().enumerate() {
                    let xi = start + i as f64 * step;
                    if !v.is_finite() {
                        return Err(Error::NonFiniteWeight { xi });
                    }
                    if *v < 0.0 {
                        return Err(Error::NegativeWeight { xi, value: *v });
                    }
                }
            }
        }
        Ok(WeightSpec { kind, domain_halfwidth })
    }

    pub fn constant(level: f64, halfwidth: f64) -> Result<Self> {
        Self::new(WeightKind::Constant { level }, halfwidth)
    }

    pub fn power(exponent: f64, halfwidth: f64) -> Result<Self> {
        Self::new(WeightKind::Power { exponent }, halfwidth)
    }

    pub fn exp_abs(rate: f64, halfwidth: f64) -> Result<Self> {
        Self::new(WeightKind::ExpAbs { rate }, halfwidth)
    }

    pub fn gauss_square(rate: f64, halfwidth: f64) -> Result<Self> {
        Self::new(WeightKind::GaussSquare { rate }, halfwidth)
    }

    pub fn sobolev_omega(order: u32, halfwidth: f64) -> Result<Self> {
        Self::new(WeightKind::SobolevOmega { order }, halfwidth)
    }

    /// Same weight on a different truncation window.
    pub fn with_halfwidth(&self, halfwidth: f64) -> Result<Self> {
        Self::new(self.kind.clone(), halfwidth)
    }

    /// Evaluate the weight; table kinds use nearest-sample lookup.  Analytic
    /// presets that overflow near the window edge saturate at `f64::MAX`
    /// (the function is finite there; the float just cannot carry it), which
    /// lets fast-growing weights flow into the regularity check instead of
    /// aborting the sampling.
    pub fn eval(&self, xi: f64) -> Result<f64> {
        if xi.abs() > self.domain_halfwidth * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain { xi, halfwidth: self.domain_halfwidth });
        }
        let v = match &self.kind {
            WeightKind::Constant { level } => *level,
            WeightKind::Power { exponent } => xi.abs().powf(*exponent),
            WeightKind::ExpAbs { rate } => (rate * xi.abs()).exp(),
            WeightKind::GaussSquare { rate } => (rate * xi * xi).exp(),
            WeightKind::SobolevOmega { order } => {
                (2.0 * std::f64::consts::PI * xi).powi(2 * *order as i32)
            }
            WeightKind::Table { start, step, values } => {
                let pos = (xi - start) / step;
                let idx = (pos.round().max(0.0) as usize).min(values.len() - 1);
                values[idx]
            }
        };
        let v = if v == f64::INFINITY && !matches!(self.kind, WeightKind::Table { .. }) {
            f64::MAX
        } else {
            v
        };
        if !v.is_finite() {
            return Err(Error::NonFiniteWeight { xi });
        }
        if v < 0.0 {
            return Err(Error::NegativeWeight { xi, value: v });
        }
        Ok(v)
    }

    /// Samples on the half-open scan grid `xi_j = -L + j h`, `j = 0..2L/h`.
    pub fn sample_scan(&self, step: f64) -> Result<Vec<f64>> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid("scan step must be positive"));
        }
        let count = (2.0 * self.domain_halfwidth / step).round() as usize;
        if count < 2 {
            return Err(Error::invalid("scan grid needs at least two points"));
        }
        (0..count)
            .map(|j| self.eval(-self.domain_halfwidth + j as f64 * step))
            .collect()
    }

    /// Samples at the nodes of a transform grid (must fit in the domain).
    pub fn sample_on(&self, grid: &Grid) -> Result<Vec<f64>> {
        if grid.halfwidth() > self.domain_halfwidth * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain {
                xi: grid.halfwidth(),
                halfwidth: self.domain_halfwidth,
            });
        }
        grid.points().map(|xi| self.eval(xi)).collect()
    }
}

/// Estimated multiplicative modulus of continuity on a delta table.
#[derive(Debug, Clone, Serialize)]
pub struct MmcCurve {
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
    pub grid_step: f64,
}

/// Exponential envelope `M_w(delta) <= c_w exp(mu_w delta)` of a modulus
/// curve, or the non-regular verdict.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegularityEnvelope {
    pub c_w: f64,
    pub mu_w: f64,
    pub regular: bool,
}

/// Grid estimate of the sublevel-set measure `mes { w < epsilon }`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NonDegeneracyReport {
    pub epsilon: f64,
    pub sublevel_measure: f64,
    pub passes: bool,
}

/// Per-offset running sup of the two-sided sample ratio: entry `d` is the
/// estimate of `M_w(d h)`.  Cost is O(n^2 / 2) over the scan grid, which
/// starts at `start` with spacing `step`.
fn mmc_offset_profile(samples: &[f64], max_offset: usize, start: f64, step: f64) -> Result<Vec<f64>> {
    for (j, v) in samples.iter().enumerate() {
        if *v <= 0.0 {
            return Err(Error::ZeroWeightSample { xi: start + j as f64 * step });
        }
    }
    let n = samples.len();
    let max_offset = max_offset.min(n - 1);
    let sups: Vec<f64> = (1..=max_offset)
        .into_par_iter()
        .map(|d| {
            let mut best = 1.0f64;
            for j in 0..n - d {
                let r = samples[j + d] / samples[j];
                let two_sided = if r >= 1.0 { r } else { 1.0 / r };
                if two_sided > best {
                    best = two_sided;
                }
            }
            best
        })
        .collect();
    let mut profile = Vec::with_capacity(max_offset + 1);
    profile.push(1.0);
    let mut run = 1.0f64;
    for s in sups {
        run = run.max(s);
        profile.push(run);
    }
    Ok(profile)
}

/// Estimate `M_w` at the requested deltas by a sup over grid pairs with
/// separation at most delta (step `h`).  This lower-bounds the true sup;
/// on analytic presets whose sup is attained on-grid it is exact.
pub fn estimate_mmc(spec: &WeightSpec, deltas: &[f64], h: f64) -> Result<MmcCurve> {
    if deltas.is_empty() {
        return Err(Error::EmptyCurve);
    }
    for pair in deltas.windows(2) {
        if pair[1] < pair[0] {
            return Err(Error::invalid("deltas must be ascending"));
        }
    }
    if deltas[0] < 0.0 {
        return Err(Error::invalid("deltas must be >= 0"));
    }
    let samples = spec.sample_scan(h)?;
    let offsets: Vec<usize> = deltas
        .iter()
        .map(|d| ((d / h) * (1.0 + 1e-12)).floor() as usize)
        .collect();
    let max_offset = *offsets.iter().max().unwrap();
    let profile = mmc_offset_profile(&samples, max_offset, -spec.domain_halfwidth, h)?;
    let values = offsets
        .iter()
        .map(|d| profile[(*d).min(profile.len() - 1)])
        .collect();
    Ok(MmcCurve { deltas: deltas.to_vec(), values, grid_step: h })
}

/// Fit the exponential envelope: non-regular if any tabulated value blows up,
/// otherwise the least-squares slope of `log M` vs delta (clamped to >= 0)
/// with the smallest constant dominating every tabulated point.
pub fn fit_envelope(curve: &MmcCurve, blowup_threshold: f64) -> Result<RegularityEnvelope> {
    let pts: Vec<(f64, f64)> = curve
        .deltas
        .iter()
        .zip(&curve.values)
        .filter(|(d, _)| **d > 0.0)
        .map(|(d, v)| (*d, *v))
        .collect();
    if pts.is_empty() {
        return Err(Error::EmptyCurve);
    }
    if pts.iter().any(|(_, v)| !v.is_finite() || *v > blowup_threshold) {
        return Ok(RegularityEnvelope { c_w: f64::INFINITY, mu_w: f64::INFINITY, regular: false });
    }
    let n = pts.len() as f64;
    let mean_d = pts.iter().map(|(d, _)| d).sum::<f64>() / n;
    let mean_l = pts.iter().map(|(_, v)| v.ln()).sum::<f64>() / n;
    let var = pts.iter().map(|(d, _)| (d - mean_d).powi(2)).sum::<f64>();
    let cov = pts
        .iter()
        .map(|(d, v)| (d - mean_d) * (v.ln() - mean_l))
        .sum::<f64>();
    let mu = if var > 0.0 { (cov / var).max(0.0) } else { 0.0 };
    let c = pts
        .iter()
        .map(|(d, v)| v * (-mu * d).exp())
        .fold(1.0f64, f64::max);
    Ok(RegularityEnvelope { c_w: c, mu_w: mu, regular: true })
}

/// Measure the sublevel set `{ w < epsilon }` on the half-open scan grid.
/// Passes when at least one sample clears epsilon, i.e. the sublevel set is
/// not the whole truncated window.
pub fn check_nondegeneracy(spec: &WeightSpec, epsilon: f64, h: f64) -> Result<NonDegeneracyReport> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let samples = spec.sample_scan(h)?;
    let below = samples.iter().filter(|w| **w < epsilon).count();
    Ok(NonDegeneracyReport {
        epsilon,
        sublevel_measure: h * below as f64,
        passes: below < samples.len(),
    })
}

/// A weight sampled on a transform grid together with its analysis products:
/// the dense per-offset modulus profile and the fitted envelope.
///
/// The carrier is either the weight itself (needs strict positivity) or
/// `1 + w`, which is how weights that touch zero enter the regularity
/// hypotheses.
#[derive(Debug, Clone)]
pub struct WeightAnalysis {
    spec: WeightSpec,
    shifted: bool,
    grid: Grid,
    carrier: Vec<f64>,
    profile: Vec<f64>,
    envelope: RegularityEnvelope,
}

/// Delta range for the regularity classification and slope fit.  The
/// finite-vs-infinite dichotomy shows up at small separations; the far end
/// of a dense profile (deltas up to the window width) legitimately exceeds
/// any fixed threshold even for regular weights like e^{|xi|}.
const ENVELOPE_FIT_DELTA_MAX: f64 = 4.0;

impl WeightAnalysis {
    fn build(spec: &WeightSpec, grid: &Grid, shifted: bool) -> Result<Self> {
        let raw = spec.sample_on(grid)?;
        let carrier: Vec<f64> = if shifted { raw.iter().map(|w| 1.0 + w).collect() } else { raw };
        let h = grid.step();
        let profile = mmc_offset_profile(&carrier, grid.count() - 1, -grid.halfwidth(), h)?;
        // classify and fit the slope on the restricted range, then tighten
        // the constant so the envelope dominates the whole tabulated profile
        let fit_len = (((ENVELOPE_FIT_DELTA_MAX / h) as usize) + 1).min(profile.len());
        let fit_curve = MmcCurve {
            deltas: (0..fit_len).map(|d| d as f64 * h).collect(),
            values: profile[..fit_len].to_vec(),
            grid_step: h,
        };
        let mut envelope = fit_envelope(&fit_curve, DEFAULT_BLOWUP_THRESHOLD)?;
        if envelope.regular {
            envelope.c_w = profile
                .iter()
                .enumerate()
                .map(|(d, v)| v * (-envelope.mu_w * d as f64 * h).exp())
                .fold(envelope.c_w.max(1.0), f64::max);
        }
        Ok(WeightAnalysis { spec: spec.clone(), shifted, grid: *grid, carrier, profile, envelope })
    }

    /// Analyze the weight itself; errors with `ZeroWeightSample` unless it is
    /// strictly positive on the grid.
    pub fn of_weight(spec: &WeightSpec, grid: &Grid) -> Result<Self> {
        Self::build(spec, grid, false)
    }

    /// Analyze `1 + w`, the carrier used by the space hypotheses.
    pub fn of_one_plus(spec: &WeightSpec, grid: &Grid) -> Result<Self> {
        Self::build(spec, grid, true)
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Carrier samples (w or 1+w) on the grid.
    pub fn carrier(&self) -> &[f64] {
        &self.carrier
    }

    pub fn envelope(&self) -> RegularityEnvelope {
        self.envelope
    }

    pub fn is_regular(&self) -> bool {
        self.envelope.regular
    }

    /// Dense modulus curve, one entry per grid offset.
    pub fn curve(&self) -> MmcCurve {
        MmcCurve {
            deltas: (0..self.profile.len())
                .map(|d| d as f64 * self.grid.step())
                .collect(),
            values: self.profile.clone(),
            grid_step: self.grid.step(),
        }
    }

    /// Modulus estimate at `delta`, rounded up to the next tabulated offset
    /// (conservative: the profile is nondecreasing).
    pub fn mmc_at(&self, delta: f64) -> Result<f64> {
        if delta < 0.0 {
            return Err(Error::invalid("delta must be >= 0"));
        }
        let idx = ((delta / self.grid.step()) * (1.0 - 1e-12)).ceil() as usize;
        self.profile
            .get(idx)
            .copied()
            .ok_or(Error::MissingMmc { delta })
    }

    /// Like `mmc_at`, but beyond the tabulated range fall back to the
    /// envelope `C e^{mu delta}` (which dominates the whole table).
    pub fn mmc_at_or_envelope(&self, delta: f64) -> Result<f64> {
        match self.mmc_at(delta) {
            Ok(v) => Ok(v),
            Err(Error::MissingMmc { .. }) if self.envelope.regular => {
                Ok(self.envelope.c_w * (self.envelope.mu_w * delta).exp())
            }
            Err(e) => Err(e),
        }
    }

    /// Carrier value at xi = 0.
    pub fn carrier_at_zero(&self) -> f64 {
        self.carrier[self.grid.count() / 2]
    }

    /// Constants `(C, mu)` with `w(xi) <= C e^{mu |xi|}` on the grid, derived
    /// from the carrier envelope (`w <= carrier <= carrier(0) C e^{mu|xi|}`).
    pub fn growth_constants(&self) -> (f64, f64) {
        (
            self.carrier_at_zero() * self.envelope.c_w,
            self.envelope.mu_w,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const L: f64 = 16.0;
    const H: f64 = 1.0 / 128.0;

    #[test]
    fn eval_presets() {
        let c = WeightSpec::constant(1.0, L).unwrap();
        assert_eq!(c.eval(3.7).unwrap(), 1.0);
        let s = WeightSpec::sobolev_omega(1, L).unwrap();
        assert_relative_eq!(
            s.eval(1.0).unwrap(),
            (2.0 * std::f64::consts::PI).powi(2),
            max_relative = 1e-15
        );
        let e = WeightSpec::exp_abs(1.0, L).unwrap();
        assert_relative_eq!(e.eval(-2.0).unwrap(), std::f64::consts::E.powi(2), max_relative = 1e-15);
    }

    #[test]
    fn eval_rejects_out_of_domain_and_negative_tables() {
        let c = WeightSpec::constant(1.0, 4.0).unwrap();
        assert!(matches!(c.eval(5.0), Err(Error::OutOfDomain { .. })));
        let bad = WeightSpec::new(
            WeightKind::Table { start: -1.0, step: 1.0, values: vec![1.0, -0.5, 1.0] },
            1.0,
        );
        assert!(matches!(bad, Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn table_nearest_lookup() {
        let t = WeightSpec::new(
            WeightKind::Table { start: -1.0, step: 0.5, values: vec![4.0, 3.0, 2.0, 3.5, 5.0] },
            1.0,
        )
        .unwrap();
        assert_eq!(t.eval(-0.4).unwrap(), 3.0); // nearest to -0.5
        assert_eq!(t.eval(0.2).unwrap(), 2.0); // nearest to 0.0
        assert_eq!(t.eval(1.0).unwrap(), 5.0);
    }

    #[test]
    fn mmc_exp_abs_attains_e() {
        let e = WeightSpec::exp_abs(1.0, L).unwrap();
        let curve = estimate_mmc(&e, &[0.0, 1.0], H).unwrap();
        assert_eq!(curve.values[0], 1.0);
        assert_relative_eq!(curve.values[1], std::f64::consts::E, max_relative = 1e-6);
    }

    #[test]
    fn mmc_constant_is_one() {
        let c = WeightSpec::constant(1.0, L).unwrap();
        let curve = estimate_mmc(&c, &[0.0, 5.0], H).unwrap();
        assert_eq!(curve.values, vec![1.0, 1.0]);
    }

    #[test]
    fn mmc_requires_strict_positivity() {
        // the sobolev preset vanishes at 0, the power preset too
        let s = WeightSpec::sobolev_omega(1, L).unwrap();
        assert!(matches!(
            estimate_mmc(&s, &[1.0], H),
            Err(Error::ZeroWeightSample { .. })
        ));
        let p = WeightSpec::power(2.0, L).unwrap();
        assert!(matches!(
            estimate_mmc(&p, &[1.0], H),
            Err(Error::ZeroWeightSample { .. })
        ));
    }

    #[test]
    fn mmc_monotone_and_submultiplicative_on_grid_multiples() {
        let e = WeightSpec::exp_abs(0.7, L).unwrap();
        // grid-multiple deltas so the offset chain decomposes exactly
        let deltas: Vec<f64> = (0..=32).map(|k| k as f64 * 8.0 * H).collect();
        let curve = estimate_mmc(&e, &deltas, H).unwrap();
        for w in curve.values.windows(2) {
            assert!(w[1] >= w[0]);
        }
        for i in 0..curve.deltas.len() {
            for j in 0..curve.deltas.len() {
                if i + j < curve.deltas.len() {
                    assert!(
                        curve.values[i + j]
                            <= curve.values[i] * curve.values[j] * (1.0 + 1e-9),
                        "submultiplicativity failed at {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn mmc_inverse_symmetry_exact_on_dyadic_tables() {
        // powers of two have exact reciprocals, making both scans bit-equal
        let values: Vec<f64> = (0..256).map(|k| 2.0f64.powi((k % 11) - 5)).collect();
        let recip: Vec<f64> = values.iter().map(|v| 1.0 / v).collect();
        let w = WeightSpec::new(
            WeightKind::Table { start: -1.0, step: 1.0 / 128.0, values },
            1.0,
        )
        .unwrap();
        let winv = WeightSpec::new(
            WeightKind::Table { start: -1.0, step: 1.0 / 128.0, values: recip },
            1.0,
        )
        .unwrap();
        let deltas = [0.0, 0.25, 0.5, 1.0];
        let a = estimate_mmc(&w, &deltas, 1.0 / 128.0).unwrap();
        let b = estimate_mmc(&winv, &deltas, 1.0 / 128.0).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn envelope_constant_weight() {
        let c = WeightSpec::constant(1.0, L).unwrap();
        let curve = estimate_mmc(&c, &[0.5, 1.0, 2.0, 4.0], H).unwrap();
        let env = fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD).unwrap();
        assert!(env.regular);
        assert_eq!(env.c_w, 1.0);
        assert_eq!(env.mu_w, 0.0);
    }

    #[test]
    fn envelope_exp_abs_rate_recovered() {
        let e = WeightSpec::exp_abs(1.0, L).unwrap();
        let deltas: Vec<f64> = (1..=16).map(|k| k as f64 * 0.25).collect();
        let curve = estimate_mmc(&e, &deltas, H).unwrap();
        let env = fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD).unwrap();
        assert!(env.regular);
        assert!((env.mu_w - 1.0).abs() < 0.05, "mu = {}", env.mu_w);
        assert!(env.c_w >= 1.0 && env.c_w < 1.01);
    }

    #[test]
    fn envelope_rejects_gauss_square() {
        // Hardy-type weight at L = 10: the delta table reaching 4 sees
        // ratios around e^{4(2L-4)} >> 1e12
        let g = WeightSpec::gauss_square(1.0, 10.0).unwrap();
        let curve = estimate_mmc(&g, &[0.5, 1.0, 2.0, 4.0], H).unwrap();
        let env = fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD).unwrap();
        assert!(!env.regular);
    }

    #[test]
    fn envelope_needs_positive_deltas() {
        let curve = MmcCurve { deltas: vec![0.0], values: vec![1.0], grid_step: H };
        assert!(matches!(
            fit_envelope(&curve, DEFAULT_BLOWUP_THRESHOLD),
            Err(Error::EmptyCurve)
        ));
    }

    #[test]
    fn nondegeneracy_examples() {
        let c = WeightSpec::constant(1.0, L).unwrap();
        let rep = check_nondegeneracy(&c, 0.5, H).unwrap();
        assert_eq!(rep.sublevel_measure, 0.0);
        assert!(rep.passes);

        let p = WeightSpec::power(2.0, 10.0).unwrap();
        let rep = check_nondegeneracy(&p, 1.0, 1e-3).unwrap();
        assert!((rep.sublevel_measure - 2.0).abs() <= 2e-3, "measure {}", rep.sublevel_measure);
        assert!(rep.passes);

        let z = WeightSpec::new(
            WeightKind::Table { start: -10.0, step: 0.01, values: vec![0.0; 2000] },
            10.0,
        )
        .unwrap();
        let rep = check_nondegeneracy(&z, 0.5, 0.01).unwrap();
        assert_relative_eq!(rep.sublevel_measure, 20.0, max_relative = 1e-12);
        assert!(!rep.passes);
    }

    #[test]
    fn analysis_envelope_bounds_weight_profile_on_grid() {
        // dense profile makes the McEa/McEb bounds literal on the grid
        let grid = Grid::with_log2_count(L, 11).unwrap();
        for spec in [
            WeightSpec::exp_abs(0.5, L).unwrap(),
            WeightSpec::constant(2.0, L).unwrap(),
            WeightSpec::sobolev_omega(1, L).unwrap(),
        ] {
            let analysis = WeightAnalysis::of_one_plus(&spec, &grid).unwrap();
            assert!(analysis.is_regular());
            let env = analysis.envelope();
            let w0 = analysis.carrier_at_zero();
            for (xi, w) in grid.points().zip(analysis.carrier()) {
                let up = w0 * env.c_w * (env.mu_w * xi.abs()).exp();
                let dn = w0 / env.c_w * (-env.mu_w * xi.abs()).exp();
                assert!(*w <= up * (1.0 + 1e-12), "upper bound fails at {xi}");
                assert!(dn * (1.0 - 1e-12) <= *w, "lower bound fails at {xi}");
            }
        }
    }

    #[test]
    fn analysis_rejects_hardy_weight() {
        let grid = Grid::with_log2_count(L, 11).unwrap();
        let spec = WeightSpec::gauss_square(1.0, L).unwrap();
        let analysis = WeightAnalysis::of_one_plus(&spec, &grid).unwrap();
        assert!(!analysis.is_regular());
    }

    #[test]
    fn mmc_at_is_conservative_lookup() {
        let grid = Grid::with_log2_count(L, 10).unwrap();
        let spec = WeightSpec::exp_abs(1.0, L).unwrap();
        let analysis = WeightAnalysis::of_weight(&spec, &grid).unwrap();
        let exact = analysis.mmc_at(1.0).unwrap();
        assert_relative_eq!(exact, std::f64::consts::E, max_relative = 1e-9);
        // off-multiple deltas round up
        let up = analysis.mmc_at(1.0 + 0.25 * grid.step()).unwrap();
        assert!(up >= exact);
        // beyond-range falls back to the envelope
        let beyond = 2.0 * L + 5.0;
        assert!(matches!(analysis.mmc_at(beyond), Err(Error::MissingMmc { .. })));
        let env_val = analysis.mmc_at_or_envelope(beyond).unwrap();
        assert!(env_val >= (beyond * 0.99).exp() * 0.9);
    }
}
