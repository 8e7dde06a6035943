use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CVector = DVector<C64>;

/// A square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(inner: DMatrix<C64>) -> Result<Self> {
        if !inner.is_square() {
            return Err(Error::Dimension {
                expected: inner.nrows(),
                found: inner.ncols(),
            });
        }
        if inner.nrows() == 0 {
            return Err(Error::Parameter("matrix dimension must be positive".into()));
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                let z = inner[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(inner))
    }

    /// Wraps the result of arithmetic on already-validated matrices.
    pub(crate) fn from_raw(inner: DMatrix<C64>) -> Self {
        debug_assert!(inner.is_square());
        Self(inner)
    }

    /// Builds a matrix from row-major real and (optional) imaginary parts.
    pub fn from_rows(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let n = re.len();
        if n == 0 {
            return Err(Error::Parameter("matrix dimension must be positive".into()));
        }
        for row in re {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if let Some(im) = im {
            if im.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: im.len(),
                });
            }
            for row in im {
                if row.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        found: row.len(),
                    });
                }
            }
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            C64::new(re[i][j], im.map_or(0.0, |im| im[i][j]))
        });
        Self::new(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(rows, None)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::new(DMatrix::from_fn(n, n, f))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn from_real_diagonal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { C64::new(d[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &k in perm {
            if k >= n || seen[k] {
                return Err(Error::Parameter(format!("{perm:?} is not a permutation")));
            }
            seen[k] = true;
        }
        Ok(Self(DMatrix::from_fn(n, n, |i, j| {
            if perm[j] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entry modulus; the `‖·‖∞` used for all tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real part of the Frobenius inner product `tr(self* other)`.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.0 * v
    }

    /// `‖M − M*‖∞`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n();
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                d = d.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// `‖M*M − I‖∞`.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.0.adjoint() * &self.0;
        (g - DMatrix::identity(self.n(), self.n()))
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Inverse by LU; singular inputs are reported with a crude conditioning
    /// estimate. Use [`super::InvertibleMatrix`] for the calibrated check.
    pub fn try_inverse(&self) -> Result<Self> {
        let inv = self.0.clone().try_inverse().ok_or(Error::Singular {
            sigma_min: 0.0,
            sigma_max: self.max_abs(),
        })?;
        Self::new(inv).map_err(|_| Error::Singular {
            sigma_min: 0.0,
            sigma_max: self.max_abs(),
        })
    }

    /// Rows of real and imaginary parts, as used by the JSON schema.
    pub fn to_rows(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let n = self.n();
        let re = (0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)].im).collect())
            .collect();
        (re, im)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// Builds a complex vector from real parts.
pub fn real_vector(v: &[f64]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|&x| C64::new(x, 0.0)))
}

/// `⟨a v, v⟩`, real part; for Hermitian `a` this is the quadratic form.
pub fn quadratic_form(a: &ComplexMatrix, v: &CVector) -> f64 {
    v.dotc(&a.apply(v)).re
}
