use thiserror::Error;

/// Errors raised by the geometry, action and norm routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian: defect {defect:e} exceeds tolerance {tol:e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("eigenvalue {eigenvalue:e} lies outside the admissible domain {domain}")]
    Domain { eigenvalue: f64, domain: &'static str },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("matrix is numerically singular: smallest singular value {sigma_min:e} (largest {sigma_max:e})")]
    Singular { sigma_min: f64, sigma_max: f64 },

    #[error("{solver} did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        solver: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("circumcenter did not converge after {} iterations (radius {:e}, last step {:e})", .0.iterations, .0.radius, .0.residual)]
    CircumcenterNotConverged(Box<crate::action::CircumcenterResult>),

    #[error("exponent mismatch: {left} vs {right}")]
    ExponentMismatch { left: f64, right: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("orbit exceeded the point cap of {cap}")]
    Budget { cap: usize },

    #[error("orbit possibly unbounded: {points} points after truncation, displacement {displacement:e}")]
    OrbitUnbounded { points: usize, displacement: f64 },

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
