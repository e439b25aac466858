//! Weighted time-frequency spaces on a sampled line.
//!
//! Given two admissible weights `w_T(t)` and `w_Omega(w)`, the space under
//! study collects the signals with finite
//!
//! ```text
//!   ||x||^2 = int |x(t)|^2 w_T(t) dt + int |xhat(w)|^2 w_Omega(w) dw,
//! ```
//!
//! where `xhat` is the ordinary-frequency Fourier transform.  This crate
//! discretizes that picture on centered power-of-two grids and provides:
//!
//! - [`weights`]: weight presets and tables, the non-degeneracy check, the
//!   multiplicative modulus of continuity and its exponential envelope;
//! - [`transform`]: the unitary transform pair with spectral quadrature
//!   accuracy and a Parseval gap meter;
//! - [`wspace`]: validated weight pairs, weighted norms and inner products,
//!   and empirical embedding ratios;
//! - [`atoms`]: Gaussian dictionary atoms with closed-form transforms,
//!   generalized-window admissibility checks, and Schur kernel bounds;
//! - [`operators`]: shift, Gaussian mollifier and Gaussian multiplier
//!   families with weighted-norm certificates and approximate-identity
//!   error curves;
//! - [`approx`]: Gram least squares, orthogonal greedy pursuit over
//!   `(alpha, tau)` grids, and the completeness witness curves;
//! - [`run`]: the batch front end behind the `tfgauss` binary.
//!
//! The `examples/` directory walks through each capability; `cargo run -p
//! tfgauss -- <subcommand> --config <file>` drives the same machinery from
//! TOML configs.

pub mod approx;
pub mod atoms;
pub mod config;
pub mod error;
pub mod grid;
pub mod io;
pub mod operators;
pub mod run;
pub mod transform;
pub mod weights;
pub mod wspace;

pub use approx::{
    completeness_witness, default_ridge, gram_matrix, greedy_pursuit, least_squares_fit,
    ApproxReport, Dictionary, WitnessCurves,
};
pub use atoms::{check_window, schur_bound, GaussianAtom, SchurKernel, WindowReport, WindowSpec};
pub use error::{Error, Result};
pub use grid::{Grid, Signal, Spectrum};
pub use operators::{
    composite_identity_error, gauss_multiply, mollifier_cert, mollify, shift, CompositeOrder,
    MollifierKernel, OperatorNormCert,
};
pub use transform::{forward_ft, inverse_ft, parseval_gap};
pub use weights::{
    check_nondegeneracy, estimate_mmc, fit_envelope, MmcCurve, NonDegeneracyReport,
    RegularityEnvelope, WeightAnalysis, WeightKind, WeightSpec,
};
pub use wspace::{default_embedding_family, EmbeddingEstimate, SpacePair};
