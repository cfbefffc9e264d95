//! Numerical laboratory for the prime geodesic theorem on the modular
//! surface.
//!
//! The crate computes the arithmetic and analytic objects that appear in
//! the study of the error term E(x) = Psi(x) - x: counting functions and
//! Kloosterman sums, quadratic Dirichlet and Zagier L-series, indefinite
//! binary quadratic forms and the geodesic counting function, character
//! and mean-value sums, spectral exponential sums over Maass eigenvalues,
//! and the exponent calculus tying a subconvexity exponent theta to the
//! error-term exponent 5/8 + theta/4.

pub mod analysis;
pub mod cli;
pub mod arith;
pub mod config;
pub mod counting;
pub mod error;
pub mod lseries;
pub mod par;
pub mod quad;
pub mod quadforms;
pub mod report;
pub mod special;
pub mod spectral;
pub mod sums;

pub use error::{LabError, Result};
