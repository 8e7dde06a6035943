use std::ops::{Add, Sub};

use super::eigen::{hermitian_eig, SpectralDecomposition};
use super::functions::{matrix_function, Domain};
use super::matrix::{ComplexMatrix, CVector, C64};
use crate::error::{Error, Result};

/// Relative tolerance on `‖M − M*‖∞` accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// A complex matrix equal to its adjoint.
///
/// Construction rejects inputs whose Hermitian defect exceeds
/// `1e-10·‖M‖∞` and symmetrises the rest via `(M + M*)/2`, recording the size
/// of the correction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
    correction: f64,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        let tol = HERMITIAN_TOL * m.max_abs();
        if defect > tol {
            return Err(Error::NotHermitian { defect, tol });
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrises a matrix known to be Hermitian up to rounding, such as a
    /// congruence `x* a x` of a Hermitian `a`.
    pub(crate) fn symmetrize(m: ComplexMatrix) -> Self {
        let correction = m.hermitian_defect() / 2.0;
        let n = m.n();
        let inner = m.as_matrix();
        let sym = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(inner[(i, i)].re, 0.0)
            } else {
                (inner[(i, j)] + inner[(j, i)].conj()) * 0.5
            }
        });
        Self {
            m: ComplexMatrix::from_raw(sym),
            correction,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: ComplexMatrix::identity(n),
            correction: 0.0,
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(d)?)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    /// `v v*`.
    pub fn outer(v: &CVector) -> Self {
        let n = v.len();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        Self::symmetrize(ComplexMatrix::from_raw(m))
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_complex(self) -> ComplexMatrix {
        self.m
    }

    /// Size of the symmetrising correction applied at construction.
    pub fn correction(&self) -> f64 {
        self.correction
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        hermitian_eig(self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::symmetrize(self.m.scale(s))
    }

    pub fn shift(&self, s: f64) -> Self {
        Self::symmetrize(&self.m + &ComplexMatrix::identity(self.n()).scale(s))
    }

    /// `x* self x`.
    pub fn congruence(&self, x: &ComplexMatrix) -> Self {
        Self::symmetrize(&(&x.adjoint() * &self.m) * x)
    }

    /// `x self x` for Hermitian `x`.
    pub fn sandwich(&self, x: &HermitianMatrix) -> Self {
        Self::symmetrize(&(&x.m * &self.m) * &x.m)
    }

    pub fn exp(&self) -> Result<Self> {
        matrix_function(self, f64::exp, Domain::Real)
    }

    pub fn log(&self) -> Result<Self> {
        matrix_function(self, f64::ln, Domain::Positive)
    }

    pub fn powf(&self, t: f64) -> Result<Self> {
        matrix_function(self, |x| x.powf(t), Domain::Positive)
    }

    pub fn sqrt(&self) -> Result<Self> {
        matrix_function(self, f64::sqrt, Domain::NonNegative)
    }

    pub fn inv_sqrt(&self) -> Result<Self> {
        matrix_function(self, |x| 1.0 / x.sqrt(), Domain::Positive)
    }

    pub fn inverse(&self) -> Result<Self> {
        matrix_function(self, |x| 1.0 / x, Domain::Positive)
    }

    /// `⟨self ξ, ξ⟩`.
    pub fn quadratic_form(&self, v: &CVector) -> f64 {
        super::matrix::quadratic_form(&self.m, v)
    }

    /// Real Frobenius inner product `tr(self · other)`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.m.frobenius_dot(&other.m)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::symmetrize(&self.m + &rhs.m)
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::symmetrize(&self.m - &rhs.m)
    }
}
