//! Curvature, Hardy-inequality, and spectral-gap estimates on warped-product
//! cones and spindles, cross-checked against numerical eigenvalues computed
//! by separation of variables and one-dimensional weighted finite-volume
//! discretizations.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`] — the generalized trigonometric functions `sin_ell`/`cos_ell`
//!   and their singular combinations, with series fallbacks near zero;
//! * [`linalg`] — symmetric tridiagonal eigensolvers (Sturm bisection,
//!   inverse iteration) plus a dense Jacobi oracle;
//! * [`radial`] — weighted Sturm–Liouville discretization on graded grids;
//! * [`eigen`] — model-level eigenvalue drivers: spindle gaps, Schrödinger
//!   ground states, and Hardy-type form bounds;
//! * [`models`] — cone/spindle model types, curvature bounds, and a catalog
//!   of worked examples;
//! * [`hardy`] — Hardy weights, their combination rules, and discrete
//!   verification;
//! * [`bochner`] — pointwise matrix algebra for curvature-dimension
//!   self-improvement;
//! * [`estimates`] — closed-form spectral-gap estimates and the machinery
//!   relating them to numerics;
//! * [`report`] — structured output (JSON / CSV / table) shared by the CLI.

pub mod bochner;
pub mod eigen;
pub mod error;
pub mod estimates;
pub mod hardy;
pub mod linalg;
pub mod modelfile;
pub mod models;
pub mod radial;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
