use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    apply_spectral, Domain, Exponent, HermitianMatrix, SpectralDecomposition,
};

/// A positive-definite Hermitian matrix carrying the Schatten exponent of the
/// metric it lives in. The spectral decomposition is computed once and reused
/// for every square root, inverse and logarithm.
#[derive(Clone, Debug)]
pub struct PPoint {
    a: HermitianMatrix,
    p: Exponent,
    eig: SpectralDecomposition,
}

impl PPoint {
    pub fn new(a: HermitianMatrix, p: Exponent) -> Result<Self> {
        let eig = a.eig()?;
        if !(eig.min() > 0.0) {
            return Err(Error::Domain {
                eigenvalue: eig.min(),
                domain: Domain::Positive.name(),
            });
        }
        Ok(Self { a, p, eig })
    }

    pub fn identity(n: usize, p: Exponent) -> Self {
        Self::new(HermitianMatrix::identity(n), p).expect("identity is positive")
    }

    pub fn from_real_diagonal(d: &[f64], p: Exponent) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(d)?, p)
    }

    /// `exp(x)`, always positive definite.
    pub fn exp_of(x: &HermitianMatrix, p: Exponent) -> Result<Self> {
        Self::new(x.exp()?, p)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn with_exponent(&self, p: Exponent) -> Self {
        Self {
            p,
            ..self.clone()
        }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.a
    }

    pub fn eig(&self) -> &SpectralDecomposition {
        &self.eig
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eig.min()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eig.max()
    }

    pub fn sqrt(&self) -> HermitianMatrix {
        self.spectral(f64::sqrt)
    }

    pub fn inv_sqrt(&self) -> HermitianMatrix {
        self.spectral(|x| 1.0 / x.sqrt())
    }

    pub fn inverse_matrix(&self) -> HermitianMatrix {
        self.spectral(|x| 1.0 / x)
    }

    pub fn log(&self) -> HermitianMatrix {
        self.spectral(f64::ln)
    }

    pub fn powf(&self, t: f64) -> HermitianMatrix {
        self.spectral(|x| x.powf(t))
    }

    /// Any function of the eigenvalues; the domain was checked at construction.
    pub fn spectral(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        apply_spectral(&self.eig, f, Domain::Positive).expect("eigenvalues are positive")
    }

    pub fn inverse(&self) -> Self {
        let eig = SpectralDecomposition {
            eigenvalues: self.eig.eigenvalues.iter().rev().map(|x| 1.0 / x).collect(),
            eigenvectors: reversed_columns(&self.eig.eigenvectors),
        };
        Self {
            a: self.inverse_matrix(),
            p: self.p,
            eig,
        }
    }

    /// `‖a − I‖_p`; finite for every point at finite dimension.
    pub fn identity_defect(&self) -> f64 {
        crate::linalg::lp_norm(self.eig.eigenvalues.iter().map(|x| x - 1.0), self.p)
    }

    /// `‖log a‖_p`, the distance to the identity.
    pub fn log_norm(&self) -> f64 {
        crate::linalg::lp_norm(self.eig.eigenvalues.iter().map(|x| x.ln()), self.p)
    }

    pub(crate) fn check_compatible(&self, other: &PPoint) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: other.n(),
            });
        }
        if self.p != other.p {
            return Err(Error::ExponentMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }
}

fn reversed_columns(v: &crate::linalg::ComplexMatrix) -> crate::linalg::ComplexMatrix {
    let n = v.n();
    crate::linalg::ComplexMatrix::from_fn(n, |i, j| v.get(i, n - 1 - j)).expect("finite")
}

impl PartialEq for PPoint {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.a == other.a
    }
}

/// A Hermitian direction attached to a base point.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub base: PPoint,
    pub x: HermitianMatrix,
}

impl TangentVector {
    pub fn new(base: PPoint, x: HermitianMatrix) -> Result<Self> {
        if base.n() != x.n() {
            return Err(Error::Dimension {
                expected: base.n(),
                found: x.n(),
            });
        }
        Ok(Self { base, x })
    }
}

/// Exponent `r = max{p, 2}` and constant `c_r` of the semi-parallelogram law.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BusemannParams {
    pub p: f64,
    pub r: f64,
    pub c_r: f64,
}

impl BusemannParams {
    pub fn new(p: Exponent) -> Self {
        let p = p.get();
        if p <= 2.0 {
            Self { p, r: 2.0, c_r: p - 1.0 }
        } else {
            Self {
                p,
                r: p,
                c_r: 2f64.powf(-(p - 2.0)),
            }
        }
    }
}

/// Both sides of a checked inequality `lhs ≤ rhs` and `margin = rhs − lhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarginRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl MarginRecord {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            margin: rhs - lhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_indefinite_and_caches_spectrum() {
        let p = Exponent::new(2.0).unwrap();
        let bad = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap();
        assert!(matches!(PPoint::new(bad, p), Err(Error::Domain { .. })));
        let a = PPoint::from_real_diagonal(&[4.0, 1.0], p).unwrap();
        assert_eq!(a.eig().eigenvalues, vec![1.0, 4.0]);
        let inv = a.inverse();
        assert_eq!(inv.eig().eigenvalues, vec![0.25, 1.0]);
        assert!((&inv.eig().reconstruct() - inv.matrix().as_complex()).max_abs() < 1e-15);
        assert!((a.identity_defect() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn busemann_constants_agree_at_two() {
        let at = |p: f64| BusemannParams::new(Exponent::new(p).unwrap());
        assert_eq!(at(1.5), BusemannParams { p: 1.5, r: 2.0, c_r: 0.5 });
        assert_eq!(at(2.0).c_r, 1.0);
        assert_eq!(at(3.0), BusemannParams { p: 3.0, r: 3.0, c_r: 0.5 });
        assert!((at(2.0 + 1e-12).c_r - 1.0).abs() < 1e-11);
    }
}
