//! Dense complex linear algebra: Hermitian eigendecomposition, spectral
//! functions, singular values and Schatten norms.

mod eigen;
mod functions;
mod hermitian;
mod matrix;
mod norms;

pub use eigen::{eig_tol, hermitian_eig, SpectralDecomposition};
pub use functions::{apply_spectral, matrix_function, Domain};
pub use hermitian::{HermitianMatrix, HERMITIAN_TOL};
pub use matrix::{quadratic_form, real_vector, CVector, ComplexMatrix, C64};
pub use norms::{
    lp_norm, operator_norm, polar_decompose, psd_order_check, schatten_norm,
    schatten_norm_hermitian, singular_values, Exponent, InvertibleMatrix, OrderCheck,
    PolarDecomposition, ORDER_TOL, SINGULARITY_TOL,
};

