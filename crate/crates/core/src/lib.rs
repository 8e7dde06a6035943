//! Finite-dimensional geometry of positive-definite matrices under the
//! Schatten-p Finsler metric.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a cyclic Jacobi eigensolver for
//!   Hermitian matrices, spectral matrix functions, singular values, polar
//!   decomposition, Schatten norms and the Loewner order.
//! - [`manifold`]: points of the positive cone with an attached exponent,
//!   distances, geodesics, exponential/logarithm maps, the congruence action
//!   `g·a = (g⁻¹)* a g⁻¹`, and margin checkers for the p-Busemann and
//!   exponential-metric-increasing inequalities.
//! - [`action`]: group presentations, orbits, circumcenters, fixed points,
//!   unitarizers and commutant / invariant-subspace analysis.
//! - [`norms`]: norms sandwiched between Hilbert norms, change of variables,
//!   isometry tests, polar duals, the sets `C⁻`/`C⁺` and the rigidity pipeline.
//!
//! [`battery`] and [`report`] hold the seeded property batteries and the
//! JSON-lines report format shared by the command-line tool and the tests.

pub mod action;
pub mod battery;
mod error;
pub mod json;
pub mod linalg;
pub mod manifold;
pub mod norms;
pub mod par;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{
    CVector, ComplexMatrix, Exponent, HermitianMatrix, InvertibleMatrix, SpectralDecomposition, C64,
};
pub use manifold::PPoint;
