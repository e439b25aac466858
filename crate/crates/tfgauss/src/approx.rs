//! Constructive density experiments: finite Gaussian (or windowed)
//! dictionaries in the weighted space, Gram-matrix least squares, orthogonal
//! greedy pursuit, and the completeness witness that reproduces the proof's
//! limit relations
//!
//! ```text
//!   term1(a) = <f, I_a M_a f>_{L^2(w_T dt)}      -> <f, f>_{L^2(w_T dt)}
//!   term2(a) = <fhat, M_a I_a fhat>_{L^2(w_O dw)} -> <fhat, fhat>_{L^2(w_O dw)}
//! ```
//!
//! with each term also evaluated as the raw iterated double integral, so the
//! interchange of integration order is checked numerically rather than
//! assumed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::atoms::{GaussianAtom, WindowSpec};
use crate::error::{Error, Result};
use crate::grid::{quad, Signal, Spectrum};
use crate::transform::{circular_convolve, forward_ft};
use crate::wspace::SpacePair;

const PI: f64 = std::f64::consts::PI;

/// A finite dictionary of `(alpha, tau)` atoms over a space pair, with the
/// atom signals and spectra precomputed (closed forms for Gaussians,
/// interpolated scalings for a sampled window).
#[derive(Debug, Clone)]
pub struct Dictionary {
    sp: SpacePair,
    labels: Vec<(f64, f64)>,
    signals: Vec<Signal>,
    spectra: Vec<Spectrum>,
}

impl Dictionary {
    /// Gaussian dictionary; every atom must fit the window (center inside,
    /// outside mass below 1e-10).
    pub fn gaussian(sp: SpacePair, atoms: &[GaussianAtom]) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let grid = *sp.grid();
        let mut labels = Vec::with_capacity(atoms.len());
        let mut signals = Vec::with_capacity(atoms.len());
        let mut spectra = Vec::with_capacity(atoms.len());
        for atom in atoms {
            atom.validate_on(&grid)?;
            labels.push((atom.alpha, atom.tau));
            signals.push(atom.signal(&grid));
            spectra.push(atom.spectrum(&grid));
        }
        Ok(Dictionary { sp, labels, signals, spectra })
    }

    /// Cartesian-product Gaussian dictionary over scale and center grids.
    pub fn gaussian_grid(sp: SpacePair, alpha_grid: &[f64], tau_grid: &[f64]) -> Result<Self> {
        let mut atoms = Vec::with_capacity(alpha_grid.len() * tau_grid.len());
        for a in alpha_grid {
            for t in tau_grid {
                atoms.push(GaussianAtom::new(*a, *t)?);
            }
        }
        Self::gaussian(sp, &atoms)
    }

    /// Dictionary of scaled shifts `alpha g(alpha (t - tau))` of a sampled
    /// window; the window and its transform are read by linear interpolation
    /// (`ghat(w/alpha) e^{-2 pi i tau w}` on the spectral side).
    pub fn windowed(
        sp: SpacePair,
        window: &WindowSpec,
        alpha_grid: &[f64],
        tau_grid: &[f64],
    ) -> Result<Self> {
        if alpha_grid.is_empty() || tau_grid.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let grid = *sp.grid();
        let freq = grid.reciprocal();
        let mut labels = Vec::new();
        let mut signals = Vec::new();
        let mut spectra = Vec::new();
        for &alpha in alpha_grid {
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(Error::invalid("window atom scale must be positive"));
            }
            for &tau in tau_grid {
                labels.push((alpha, tau));
                signals.push(Signal::from_fn(grid, |t| {
                    alpha * interp(&window.g.grid, &window.g.values, alpha * (t - tau))
                }));
                spectra.push(Spectrum::from_fn(freq, |w| {
                    interp(&window.g_hat.grid, &window.g_hat.values, w / alpha)
                        * Complex64::from_polar(1.0, -2.0 * PI * tau * w)
                }));
            }
        }
        Ok(Dictionary { sp, labels, signals, spectra })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `(alpha, tau)` labels in dictionary order.
    pub fn labels(&self) -> &[(f64, f64)] {
        &self.labels
    }

    pub fn space(&self) -> &SpacePair {
        &self.sp
    }

    fn inner(&self, i: usize, j: usize) -> Complex64 {
        pair_inner(
            &self.sp,
            &self.signals[i].values,
            &self.spectra[i].values,
            &self.signals[j].values,
            &self.spectra[j].values,
        )
    }

    fn inner_with(&self, f: &Signal, f_hat: &Spectrum, j: usize) -> Complex64 {
        pair_inner(
            &self.sp,
            &f.values,
            &f_hat.values,
            &self.signals[j].values,
            &self.spectra[j].values,
        )
    }

    /// `f - sum c_i g_i` assembled in the time domain.
    fn reconstruct_residual(&self, f: &Signal, coeffs: &[Complex64]) -> Signal {
        let mut values = f.values.clone();
        for (c, s) in coeffs.iter().zip(&self.signals) {
            for (v, g) in values.iter_mut().zip(&s.values) {
                *v -= c * g;
            }
        }
        Signal { grid: *self.sp.grid(), values }
    }
}

fn interp(grid: &crate::grid::Grid, values: &[Complex64], x: f64) -> Complex64 {
    let pos = (x + grid.halfwidth()) / grid.step();
    if pos < 0.0 || pos > (values.len() - 1) as f64 {
        return Complex64::default();
    }
    let lo = pos.floor() as usize;
    if lo + 1 >= values.len() {
        return values[lo];
    }
    let frac = pos - lo as f64;
    values[lo] * (1.0 - frac) + values[lo + 1] * frac
}

/// `<a, b>_H` from precomputed time and spectral samples.
fn pair_inner(
    sp: &SpacePair,
    a_time: &[Complex64],
    a_freq: &[Complex64],
    b_time: &[Complex64],
    b_freq: &[Complex64],
) -> Complex64 {
    let h = sp.grid().step();
    let dw = sp.freq_grid().step();
    quad::weighted_dot(h, a_time, b_time, sp.time_weight_samples())
        + quad::weighted_dot(dw, a_freq, b_freq, sp.freq_weight_samples())
}

/// Approximation outcome: coefficients over the dictionary order (or the
/// selected atoms for greedy), the reconstructed residual norm, the
/// per-iteration residual trace, and the condition estimate of the
/// (regularized) Gram matrix.
#[derive(Debug, Clone)]
pub struct ApproxReport {
    pub atoms: Vec<(f64, f64)>,
    pub coefficients: Vec<Complex64>,
    pub residual_h_norm: f64,
    pub residual_trace: Vec<f64>,
    pub gram_condition: f64,
}

/// Gram matrix with entries `(i, j) = <g_i, g_j>_H`; conjugate-symmetric
/// positive semidefinite up to quadrature roundoff.
pub fn gram_matrix(d: &Dictionary) -> DMatrix<Complex64> {
    let n = d.len();
    let entries: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| d.inner(i, j)).collect())
        .collect();
    let mut m = DMatrix::from_element(n, n, Complex64::default());
    for i in 0..n {
        for (off, v) in entries[i].iter().enumerate() {
            let j = i + off;
            m[(i, j)] = *v;
            if i != j {
                m[(j, i)] = v.conj();
            }
        }
    }
    m
}

/// Extreme eigenvalues of a Hermitian matrix (values are real).
fn eigen_range(m: &DMatrix<Complex64>) -> (f64, f64) {
    let eig = m.clone().symmetric_eigen();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in eig.eigenvalues.iter() {
        min = min.min(*v);
        max = max.max(*v);
    }
    (min, max)
}

/// Ridge default used by the batch runner: `1e-10 * trace(G) / n`.
pub fn default_ridge(gram: &DMatrix<Complex64>) -> f64 {
    let n = gram.nrows();
    if n == 0 {
        return 0.0;
    }
    1e-10 * gram.diagonal().iter().map(|v| v.re).sum::<f64>() / n as f64
}

fn solve_normal_equations(
    gram: &DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    ridge: f64,
) -> Result<(DVector<Complex64>, f64)> {
    let n = gram.nrows();
    let (min_eig, max_eig) = eigen_range(gram);
    if ridge == 0.0 && min_eig < 1e-12 * max_eig {
        return Err(Error::SingularGram { min_eig, max_eig });
    }
    // normal equations read sum_j <g_j, g_k> c_j = <f, g_k>; the system
    // matrix is the conjugate of the Gram as specified
    let mut a = gram.conjugate();
    for i in 0..n {
        a[(i, i)] += Complex64::new(ridge, 0.0);
    }
    let condition = (max_eig + ridge) / (min_eig + ridge);
    let solved = a
        .clone()
        .cholesky()
        .map(|ch| ch.solve(rhs))
        .or_else(|| a.lu().solve(rhs))
        .ok_or(Error::SingularGram { min_eig, max_eig })?;
    Ok((solved, condition))
}

/// Ridge-regularized least squares over the dictionary; the residual norm
/// comes from an explicit reconstruction, not from normal-equation algebra.
pub fn least_squares_fit(f: &Signal, d: &Dictionary, ridge: f64) -> Result<ApproxReport> {
    if !(ridge.is_finite() && ridge >= 0.0) {
        return Err(Error::invalid("ridge must be finite and >= 0"));
    }
    if f.grid != *d.sp.grid() {
        return Err(Error::GridMismatch);
    }
    let f_hat = forward_ft(f)?;
    let gram = gram_matrix(d);
    let rhs = DVector::from_iterator(d.len(), (0..d.len()).map(|j| d.inner_with(f, &f_hat, j)));
    let (coeffs, condition) = solve_normal_equations(&gram, &rhs, ridge)?;
    let coefficients: Vec<Complex64> = coeffs.iter().copied().collect();
    let residual = d.reconstruct_residual(f, &coefficients);
    let residual_h_norm = d.sp.h_norm_sq(&residual)?.sqrt();
    Ok(ApproxReport {
        atoms: d.labels.clone(),
        coefficients,
        residual_h_norm,
        residual_trace: vec![residual_h_norm],
        gram_condition: condition,
    })
}

/// Orthogonal greedy pursuit over a Gaussian candidate grid: at each step
/// pick the atom with the largest normalized correlation against the
/// residual (ties broken by |tau| asc, tau asc, alpha asc with a 1e-12
/// relative tie window), then refit all selected coefficients.
pub fn greedy_pursuit(
    f: &Signal,
    sp: &SpacePair,
    alpha_grid: &[f64],
    tau_grid: &[f64],
    n_atoms: usize,
) -> Result<ApproxReport> {
    if alpha_grid.is_empty() || tau_grid.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n_atoms == 0 {
        return Err(Error::invalid("n_atoms must be >= 1"));
    }
    if f.grid != *sp.grid() {
        return Err(Error::GridMismatch);
    }
    let mut candidates = Vec::with_capacity(alpha_grid.len() * tau_grid.len());
    for a in alpha_grid {
        for t in tau_grid {
            candidates.push(GaussianAtom::new(*a, *t)?);
        }
    }
    let grid = *sp.grid();
    for c in &candidates {
        c.validate_on(&grid)?;
    }
    let cand_signals: Vec<Signal> = candidates.iter().map(|c| c.signal(&grid)).collect();
    let cand_spectra: Vec<Spectrum> = candidates.iter().map(|c| c.spectrum(&grid)).collect();
    let cand_norms: Vec<f64> = (0..candidates.len())
        .map(|i| {
            pair_inner(sp, &cand_signals[i].values, &cand_spectra[i].values,
                       &cand_signals[i].values, &cand_spectra[i].values)
                .re
                .sqrt()
        })
        .collect();

    let mut selected: Vec<usize> = Vec::new();
    let mut residual = f.clone();
    let mut res_prev = sp.h_norm_sq(f)?.sqrt();
    let mut trace = Vec::new();
    let mut coefficients: Vec<Complex64> = Vec::new();
    let mut condition = 1.0;

    for iteration in 0..n_atoms.min(candidates.len()) {
        let residual_hat = forward_ft(&residual)?;
        let scores: Vec<f64> = (0..candidates.len())
            .into_par_iter()
            .map(|i| {
                if selected.contains(&i) || cand_norms[i] == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    pair_inner(sp, &residual.values, &residual_hat.values,
                               &cand_signals[i].values, &cand_spectra[i].values)
                        .norm()
                        / cand_norms[i]
                }
            })
            .collect();
        let best_score = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if best_score <= 0.0 || !best_score.is_finite() || res_prev == 0.0 {
            return Err(Error::StagnatedPursuit { iteration });
        }
        let tie_floor = best_score * (1.0 - 1e-12);
        let pick = (0..candidates.len())
            .filter(|i| scores[*i] >= tie_floor)
            .min_by(|&a, &b| {
                let ka = (candidates[a].tau.abs(), candidates[a].tau, candidates[a].alpha);
                let kb = (candidates[b].tau.abs(), candidates[b].tau, candidates[b].alpha);
                ka.partial_cmp(&kb).unwrap()
            })
            .expect("nonempty tie set");
        selected.push(pick);

        let subset: Vec<GaussianAtom> = selected.iter().map(|i| candidates[*i]).collect();
        let sub_dict = Dictionary::gaussian(sp.clone(), &subset)?;
        let fit = least_squares_fit(f, &sub_dict, 0.0)?;
        let res_new = fit.residual_h_norm;
        if res_prev - res_new < 1e-14 * res_prev {
            return Err(Error::StagnatedPursuit { iteration });
        }
        residual = sub_dict.reconstruct_residual(f, &fit.coefficients);
        coefficients = fit.coefficients;
        condition = fit.gram_condition;
        trace.push(res_new);
        res_prev = res_new;
    }

    Ok(ApproxReport {
        atoms: selected.iter().map(|i| (candidates[*i].alpha, candidates[*i].tau)).collect(),
        coefficients,
        residual_h_norm: res_prev,
        residual_trace: trace,
        gram_condition: condition,
    })
}

/// The witness curves along an alpha schedule: operator-route and
/// direct-double-integral values of both bilinear forms, the targets they
/// converge to, and the Schur integrability diagnostics `I(a), I_1(a),
/// I_inf(a)` of the bounding kernels.
#[derive(Debug, Clone)]
pub struct WitnessCurves {
    pub alphas: Vec<f64>,
    pub term1: Vec<Complex64>,
    pub term2: Vec<Complex64>,
    pub term1_direct: Vec<Complex64>,
    pub term2_direct: Vec<Complex64>,
    pub target1: f64,
    pub target2: f64,
    pub i_alpha: Vec<f64>,
    pub i1_alpha: Vec<f64>,
    pub i_inf_alpha: Vec<f64>,
}

impl WitnessCurves {
    /// Relative disagreement between the two integration orders at index i,
    /// measured against the target scale.
    pub fn fubini_gap(&self, i: usize) -> f64 {
        let scale = (self.target1 + self.target2).max(f64::MIN_POSITIVE);
        ((self.term1[i] - self.term1_direct[i]).norm()
            + (self.term2[i] - self.term2_direct[i]).norm())
            / scale
    }
}

/// Reproduce the proof's limit relations for a concrete member of the space.
pub fn completeness_witness(f: &Signal, sp: &SpacePair, alphas: &[f64]) -> Result<WitnessCurves> {
    if alphas.is_empty() || alphas.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::invalid("alphas must be a nonempty ascending list"));
    }
    if f.grid != *sp.grid() {
        return Err(Error::GridMismatch);
    }
    let h_norm = sp.h_norm_sq(f)?;
    if !h_norm.is_finite() {
        return Err(Error::NotInSpace);
    }
    let grid = *sp.grid();
    let freq = sp.freq_grid();
    let h = grid.step();
    let dw = freq.step();
    let w_t = sp.time_weight_samples();
    let w_o = sp.freq_weight_samples();
    let f_hat = forward_ft(f)?;

    let target1 = quad::weighted_norm_sq(h, &f.values, w_t);
    let target2 = quad::weighted_norm_sq(dw, &f_hat.values, w_o);

    let times: Vec<f64> = grid.points().collect();
    let freqs: Vec<f64> = freq.points().collect();
    let (c_t, mu_t) = sp.analysis_time().growth_constants();
    let (c_o, mu_o) = sp.analysis_freq().growth_constants();

    let mut curves = WitnessCurves {
        alphas: alphas.to_vec(),
        term1: Vec::new(),
        term2: Vec::new(),
        term1_direct: Vec::new(),
        term2_direct: Vec::new(),
        target1,
        target2,
        i_alpha: Vec::new(),
        i1_alpha: Vec::new(),
        i_inf_alpha: Vec::new(),
    };

    for &alpha in alphas {
        let sa = alpha.sqrt();

        // operator route, time side: <f, I_a M_a f>_{w_T}
        let multiplied: Vec<Complex64> = times
            .iter()
            .zip(&f.values)
            .map(|(t, v)| v * (-(PI / alpha) * t * t).exp())
            .collect();
        let kernel_t: Vec<Complex64> = times
            .iter()
            .map(|t| Complex64::new(sa * (-PI * alpha * t * t).exp(), 0.0))
            .collect();
        let smoothed = circular_convolve(&kernel_t, &multiplied, h);
        curves
            .term1
            .push(quad::weighted_dot(h, &f.values, &smoothed, w_t));

        // the frequency-side smoothing G_a * fhat equals the transform of
        // the multiplied signal (the proof's own reduction); evaluating it
        // that way keeps the kernel resolved for every alpha, whereas the
        // frequency lattice (step 1/2L) under-resolves G_a once alpha is
        // large
        let i_fhat = forward_ft(&Signal::new(grid, multiplied.clone())?)?;

        // direct route, time side: outer integral over tau
        let inner_t: Vec<Complex64> = times
            .par_iter()
            .map(|tau| {
                let mut acc = Complex64::default();
                for ((t, v), w) in times.iter().zip(&f.values).zip(w_t) {
                    acc += v * (sa * (-PI * alpha * (t - tau).powi(2)).exp() * w);
                }
                acc * h
            })
            .collect();
        let term1_direct: Complex64 = h * times
            .iter()
            .zip(&inner_t)
            .zip(&f.values)
            .map(|((tau, inner), fv)| {
                inner * (-(PI / alpha) * tau * tau).exp() * fv.conj()
            })
            .sum::<Complex64>();
        curves.term1_direct.push(term1_direct);

        // operator route, frequency side: <fhat, M_a I_a fhat>_{w_Omega}
        let damped: Vec<Complex64> = freqs
            .iter()
            .zip(&i_fhat.values)
            .map(|(w, v)| v * (-(PI / alpha) * w * w).exp())
            .collect();
        curves
            .term2
            .push(quad::weighted_dot(dw, &f_hat.values, &damped, w_o));

        // direct route, frequency side: inner integral over omega, outer over tau
        let inner_o: Vec<Complex64> = times
            .par_iter()
            .map(|tau| {
                let mut acc = Complex64::default();
                for ((w, v), wt) in freqs.iter().zip(&f_hat.values).zip(w_o) {
                    acc += v
                        * Complex64::from_polar(
                            (-(PI / alpha) * w * w).exp() * wt,
                            2.0 * PI * tau * w,
                        );
                }
                acc * dw
            })
            .collect();
        let term2_direct: Complex64 = h * times
            .iter()
            .zip(&inner_o)
            .zip(&f.values)
            .map(|((tau, inner), fv)| {
                inner * (-(PI / alpha) * tau * tau).exp() * fv.conj()
            })
            .sum::<Complex64>();
        curves.term2_direct.push(term2_direct);

        // Schur integrability diagnostics of the bounding kernels
        let i_alpha = c_t
            * sa
            * (mu_t * mu_t * alpha / (4.0 * PI)).exp()
            * h
            * times
                .iter()
                .map(|xi| (-PI * alpha * xi * xi + mu_t * xi.abs()).exp())
                .sum::<f64>();
        let i1 = c_o
            * dw
            * freqs
                .iter()
                .map(|w| (-(PI / alpha) * w * w + mu_o * w.abs()).exp())
                .sum::<f64>();
        let i_inf = c_o
            * (mu_o * mu_o * alpha / (4.0 * PI)).exp()
            * h
            * times
                .iter()
                .map(|tau| (-(PI / alpha) * tau * tau).exp())
                .sum::<f64>();
        curves.i_alpha.push(i_alpha);
        curves.i1_alpha.push(i1);
        curves.i_inf_alpha.push(i_inf);
    }

    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::weights::WeightSpec;
    use approx::assert_relative_eq;

    fn grid() -> Grid {
        Grid::with_log2_count(16.0, 12).unwrap()
    }

    fn const_pair() -> SpacePair {
        SpacePair::new(
            WeightSpec::constant(1.0, 16.0).unwrap(),
            WeightSpec::constant(1.0, 64.0).unwrap(),
            grid(),
            0.5,
            0.5,
        )
        .unwrap()
    }

    fn sobolev_pair() -> SpacePair {
        SpacePair::new(
            WeightSpec::constant(1.0, 16.0).unwrap(),
            WeightSpec::sobolev_omega(1, 64.0).unwrap(),
            grid(),
            0.5,
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn gram_single_atom() {
        let d = Dictionary::gaussian(const_pair(), &[GaussianAtom::new(1.0, 0.0).unwrap()]).unwrap();
        let g = gram_matrix(&d);
        assert_relative_eq!(g[(0, 0)].re, 2.0f64.sqrt(), max_relative = 1e-9);
        assert!(g[(0, 0)].im.abs() < 1e-14);
    }

    #[test]
    fn gram_diagonal_is_sqrt_two_alpha_for_every_center() {
        let d = Dictionary::gaussian(
            const_pair(),
            &[
                GaussianAtom::new(1.0, 0.0).unwrap(),
                GaussianAtom::new(1.0, 1.5).unwrap(),
                GaussianAtom::new(4.0, -2.0).unwrap(),
                GaussianAtom::new(4.0, 1.0).unwrap(),
            ],
        )
        .unwrap();
        let g = gram_matrix(&d);
        for (i, (alpha, _)) in d.labels().iter().enumerate() {
            assert_relative_eq!(g[(i, i)].re, (2.0 * alpha).sqrt(), max_relative = 1e-9);
        }
    }

    #[test]
    fn gram_duplicate_atoms_flagged_singular() {
        let atoms = [GaussianAtom::new(1.0, 0.0).unwrap(), GaussianAtom::new(1.0, 0.0).unwrap()];
        let d = Dictionary::gaussian(const_pair(), &atoms).unwrap();
        let g = gram_matrix(&d);
        let (min_eig, _) = super::eigen_range(&g);
        assert!(min_eig.abs() < 1e-10);
        let f = GaussianAtom::new(1.0, 0.0).unwrap().signal(d.space().grid());
        assert!(matches!(
            least_squares_fit(&f, &d, 0.0),
            Err(Error::SingularGram { .. })
        ));
    }

    #[test]
    fn atom_reproduces_itself() {
        let sp = const_pair();
        let d = Dictionary::gaussian(
            sp.clone(),
            &[GaussianAtom::new(4.0, 0.5).unwrap(), GaussianAtom::new(1.0, -2.0).unwrap()],
        )
        .unwrap();
        let f = GaussianAtom::new(4.0, 0.5).unwrap().signal(sp.grid());
        let report = least_squares_fit(&f, &d, 0.0).unwrap();
        assert!(report.residual_h_norm < 1e-8, "residual {}", report.residual_h_norm);
        assert_relative_eq!(report.coefficients[0].re, 1.0, epsilon = 1e-8);
        assert!(report.coefficients[1].norm() < 1e-8);
    }

    #[test]
    fn exact_combination_recovered() {
        let sp = sobolev_pair();
        let d = Dictionary::gaussian(
            sp.clone(),
            &[
                GaussianAtom::new(1.0, -1.0).unwrap(),
                GaussianAtom::new(9.0, 1.0).unwrap(),
                GaussianAtom::new(4.0, 0.0).unwrap(),
            ],
        )
        .unwrap();
        let g1 = GaussianAtom::new(1.0, -1.0).unwrap().signal(sp.grid());
        let g9 = GaussianAtom::new(9.0, 1.0).unwrap().signal(sp.grid());
        let f = Signal::new(
            *sp.grid(),
            g1.values
                .iter()
                .zip(&g9.values)
                .map(|(a, b)| 2.0 * a + 3.0 * b)
                .collect(),
        )
        .unwrap();
        let gram = gram_matrix(&d);
        let report = least_squares_fit(&f, &d, default_ridge(&gram)).unwrap();
        assert!(report.residual_h_norm < 1e-6, "residual {}", report.residual_h_norm);
        assert_relative_eq!(report.coefficients[0].re, 2.0, epsilon = 1e-6);
        assert_relative_eq!(report.coefficients[1].re, 3.0, epsilon = 1e-6);
        assert!(report.coefficients[2].norm() < 1e-6);
    }

    #[test]
    fn residual_orthogonal_to_dictionary_with_zero_ridge() {
        let sp = sobolev_pair();
        let d = Dictionary::gaussian_grid(sp.clone(), &[1.0, 4.0], &[-1.0, 0.0, 1.0]).unwrap();
        let f = Signal::from_real_fn(*sp.grid(), |t| {
            if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 }
        });
        let report = least_squares_fit(&f, &d, 0.0).unwrap();
        let residual = d.reconstruct_residual(&f, &report.coefficients);
        let f_norm = sp.h_norm_sq(&f).unwrap().sqrt();
        let residual_hat = forward_ft(&residual).unwrap();
        for j in 0..d.len() {
            let overlap = d.inner_with(&residual, &residual_hat, j).norm();
            assert!(overlap < 1e-8 * f_norm, "atom {j}: overlap {overlap:e}");
        }
    }

    #[test]
    fn superset_never_increases_residual() {
        let sp = sobolev_pair();
        let f = Signal::from_real_fn(*sp.grid(), |t| {
            if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 }
        });
        let small = Dictionary::gaussian_grid(sp.clone(), &[1.0, 4.0], &[-1.0, 0.0, 1.0]).unwrap();
        let big = Dictionary::gaussian_grid(sp.clone(), &[1.0, 4.0], &[-1.0, -0.5, 0.0, 0.5, 1.0])
            .unwrap();
        let r_small = least_squares_fit(&f, &small, 0.0).unwrap().residual_h_norm;
        let r_big = least_squares_fit(&f, &big, 0.0).unwrap().residual_h_norm;
        assert!(r_big <= r_small + 1e-10, "{r_big} vs {r_small}");
    }

    #[test]
    fn greedy_selects_target_atom_first() {
        let sp = const_pair();
        let f = GaussianAtom::new(1.0, 0.0).unwrap().signal(sp.grid());
        let report = greedy_pursuit(&f, &sp, &[1.0, 2.0], &[-1.0, 0.0, 1.0], 1).unwrap();
        assert_eq!(report.atoms, vec![(1.0, 0.0)]);
        assert!(report.residual_h_norm < 1e-8);
    }

    #[test]
    fn greedy_two_atoms_with_tie_break() {
        let sp = const_pair();
        let g_left = GaussianAtom::new(1.0, -1.0).unwrap().signal(sp.grid());
        let g_right = GaussianAtom::new(1.0, 1.0).unwrap().signal(sp.grid());
        let f = Signal::new(
            *sp.grid(),
            g_left.values.iter().zip(&g_right.values).map(|(a, b)| a + b).collect(),
        )
        .unwrap();
        let report =
            greedy_pursuit(&f, &sp, &[0.5, 1.0, 2.0], &[-2.0, -1.0, 0.0, 1.0, 2.0], 2).unwrap();
        // symmetric target: the documented tie-break picks tau = -1 first
        assert_eq!(report.atoms, vec![(1.0, -1.0), (1.0, 1.0)]);
        assert!(report.residual_h_norm < 1e-6, "residual {}", report.residual_h_norm);
        assert!(report.residual_trace[1] <= report.residual_trace[0]);
    }

    #[test]
    fn greedy_stagnates_on_exhausted_target() {
        let sp = const_pair();
        let f = GaussianAtom::new(1.0, 0.0).unwrap().signal(sp.grid());
        let err = greedy_pursuit(&f, &sp, &[1.0, 4.0], &[-1.0, 0.0, 1.0], 3).unwrap_err();
        assert!(matches!(err, Error::StagnatedPursuit { iteration } if iteration >= 1));
    }

    #[test]
    fn greedy_refit_is_least_squares_optimal() {
        let sp = const_pair();
        let f = Signal::from_real_fn(*sp.grid(), |t| {
            if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 }
        });
        let report = greedy_pursuit(&f, &sp, &[1.0, 4.0], &[-1.0, 0.0, 1.0], 3).unwrap();
        let atoms: Vec<GaussianAtom> = report
            .atoms
            .iter()
            .map(|(a, t)| GaussianAtom::new(*a, *t).unwrap())
            .collect();
        let d = Dictionary::gaussian(sp.clone(), &atoms).unwrap();
        let ls = least_squares_fit(&f, &d, 0.0).unwrap();
        assert!(report.residual_h_norm >= ls.residual_h_norm - 1e-12);
        assert_relative_eq!(report.residual_h_norm, ls.residual_h_norm, max_relative = 1e-9);
    }

    #[test]
    fn witness_converges_from_below_with_tight_fubini_gap() {
        let sp = const_pair();
        let f = GaussianAtom::new(1.0, 0.0).unwrap().signal(sp.grid());
        let curves = completeness_witness(&f, &sp, &[1.0, 4.0, 16.0, 64.0]).unwrap();
        assert_relative_eq!(curves.target1, 1.0 / 2.0f64.sqrt(), max_relative = 1e-9);
        assert_relative_eq!(curves.target2, 1.0 / 2.0f64.sqrt(), max_relative = 1e-9);
        for i in 0..curves.alphas.len() {
            assert!(curves.term1[i].re < curves.target1);
            assert!(curves.term2[i].re < curves.target2);
            if i > 0 {
                assert!(curves.term1[i].re > curves.term1[i - 1].re);
                assert!(curves.term2[i].re > curves.term2[i - 1].re);
            }
            assert!(curves.fubini_gap(i) < 1e-9, "gap {} at {i}", curves.fubini_gap(i));
            assert!(curves.i_alpha[i].is_finite());
            assert!(curves.i1_alpha[i].is_finite());
            assert!(curves.i_inf_alpha[i].is_finite());
        }
    }

    #[test]
    fn witness_zero_signal_gives_zero_terms() {
        let sp = const_pair();
        let curves = completeness_witness(&Signal::zeros(*sp.grid()), &sp, &[1.0, 4.0]).unwrap();
        assert_eq!(curves.target1, 0.0);
        assert!(curves.term1.iter().all(|v| v.norm() == 0.0));
        assert!(curves.term2.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn windowed_dictionary_matches_gaussian_atoms() {
        // the gaussian window generates alpha e^{-pi alpha^2 (t-tau)^2},
        // i.e. the alpha^2 atoms of the closed-form family
        let sp = const_pair();
        let window = WindowSpec::new(Signal::from_real_fn(*sp.grid(), |t| (-PI * t * t).exp()))
            .unwrap();
        let dw = Dictionary::windowed(sp.clone(), &window, &[2.0], &[0.5]).unwrap();
        let closed = GaussianAtom::new(4.0, 0.5).unwrap().signal(sp.grid());
        let max_err = dw.signals[0]
            .values
            .iter()
            .zip(&closed.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        // linear interpolation on the sampled window limits the agreement
        assert!(max_err < 1e-4, "max_err = {max_err:e}");
        let f = GaussianAtom::new(4.0, 0.5).unwrap().signal(sp.grid());
        let report = least_squares_fit(&f, &dw, 0.0).unwrap();
        assert!(report.residual_h_norm < 1e-3, "residual {}", report.residual_h_norm);
    }
}
