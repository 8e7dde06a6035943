//! Spectral functional calculus on Hermitian matrices.

use super::eigen::SpectralDecomposition;
use super::hermitian::HermitianMatrix;
use crate::error::{Error, Result};

/// Eigenvalue interval on which a scalar function may be applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Real,
    Positive,
    NonNegative,
}

impl Domain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::Real => x.is_finite(),
            Domain::Positive => x > 0.0,
            Domain::NonNegative => x >= 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Domain::Real => "(-inf, inf)",
            Domain::Positive => "(0, inf)",
            Domain::NonNegative => "[0, inf)",
        }
    }
}

/// `V f(Λ) V*` for `M = V Λ V*`, after checking every eigenvalue lies in `domain`.
pub fn matrix_function(
    m: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
    domain: Domain,
) -> Result<HermitianMatrix> {
    apply_spectral(&m.eig()?, f, domain)
}

/// Functional calculus on an existing decomposition.
pub fn apply_spectral(
    eig: &SpectralDecomposition,
    f: impl Fn(f64) -> f64,
    domain: Domain,
) -> Result<HermitianMatrix> {
    if let Some(&bad) = eig.eigenvalues.iter().find(|&&x| !domain.contains(x)) {
        return Err(Error::Domain {
            eigenvalue: bad,
            domain: domain.name(),
        });
    }
    Ok(HermitianMatrix::symmetrize(eig.map_values(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::sampling;
    use nalgebra::DMatrix;

    fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).max_abs() / b.max_abs()
    }

    /// Eigen-free square root: Denman–Beavers iteration
    /// `Y ← (Y + Z⁻¹)/2, Z ← (Z + Y⁻¹)/2` with `Y → A^{1/2}`.
    fn denman_beavers_sqrt(a: &ComplexMatrix) -> ComplexMatrix {
        let mut y = a.as_matrix().clone();
        let mut z = DMatrix::identity(a.n(), a.n());
        for _ in 0..100 {
            let yi = y.clone().try_inverse().unwrap();
            let zi = z.clone().try_inverse().unwrap();
            let ny = (&y + zi).map(|v| v * 0.5);
            let nz = (&z + yi).map(|v| v * 0.5);
            let delta = (&ny - &y).iter().fold(0.0f64, |m, v| m.max(v.norm()));
            y = ny;
            z = nz;
            if delta < 1e-15 {
                break;
            }
        }
        ComplexMatrix::new(y).unwrap()
    }

    #[test]
    fn log_of_diagonal() {
        let e = std::f64::consts::E;
        let m = HermitianMatrix::from_real_diagonal(&[e, 1.0 / e]).unwrap();
        let l = m.log().unwrap();
        let expect = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap();
        assert!((l.as_complex() - &expect).max_abs() < 1e-15);
    }

    #[test]
    fn sqrt_squared_is_identity_map() {
        let mut rng = sampling::rng(3);
        let a = sampling::random_positive(&mut rng, 6, 0.8);
        let r = a.sqrt().unwrap();
        let sq = r.as_complex() * r.as_complex();
        assert!(rel(&sq, a.as_complex()) < 1e-10);
    }

    #[test]
    fn sqrt_matches_denman_beavers_oracle() {
        let mut rng = sampling::rng(5);
        for _ in 0..5 {
            let a = sampling::random_positive(&mut rng, 6, 0.8);
            let ours = a.powf(0.5).unwrap();
            let oracle = denman_beavers_sqrt(a.as_complex());
            assert!((ours.as_complex() - &oracle).max_abs() < 1e-8);
        }
    }

    #[test]
    fn result_commutes_with_input() {
        let mut rng = sampling::rng(9);
        let a = sampling::random_positive(&mut rng, 5, 1.0);
        let l = a.log().unwrap();
        let c1 = a.as_complex() * l.as_complex();
        let c2 = l.as_complex() * a.as_complex();
        assert!((&c1 - &c2).max_abs() < 1e-10 * c1.max_abs());
    }

    #[test]
    fn exp_after_log_round_trips() {
        let mut rng = sampling::rng(13);
        for n in [2, 4, 7] {
            let a = sampling::random_positive(&mut rng, n, 1.0);
            let back = a.log().unwrap().exp().unwrap();
            assert!(rel(back.as_complex(), a.as_complex()) < 1e-8);
        }
    }

    #[test]
    fn log_of_indefinite_reports_offending_eigenvalue() {
        let m = HermitianMatrix::from_real_diagonal(&[2.0, -0.5]).unwrap();
        match m.log() {
            Err(Error::Domain { eigenvalue, .. }) => assert_eq!(eigenvalue, -0.5),
            other => panic!("expected domain error, got {other:?}"),
        }
    }
}
