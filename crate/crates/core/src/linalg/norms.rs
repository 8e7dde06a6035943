//! Singular values, Schatten norms, polar decomposition and the Loewner order.

use serde::{Deserialize, Serialize};

use super::eigen::SpectralDecomposition;
use super::hermitian::HermitianMatrix;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Relative threshold below which the smallest singular value counts as zero.
pub const SINGULARITY_TOL: f64 = 1e-12;

/// Relative slack accepted by [`psd_order_check`].
pub const ORDER_TOL: f64 = 1e-10;

/// A Schatten exponent `p` with `1 < p < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::Parameter(format!(
                "Schatten exponent must lie in (1, inf), got {p}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

/// `(Σ |x_i|^p)^{1/p}`, scaled by the largest entry to avoid overflow.
pub fn lp_norm(values: impl IntoIterator<Item = f64>, p: Exponent) -> f64 {
    let values: Vec<f64> = values.into_iter().map(f64::abs).collect();
    let top = values.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let p = p.get();
    let s: f64 = values.iter().map(|x| (x / top).powf(p)).sum();
    top * s.powf(1.0 / p)
}

/// Singular values in descending order, read off the Hermitian dilation
/// `[[0, M], [M*, 0]]` whose spectrum is `±μ_i`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.n();
    let inner = m.as_matrix();
    let dilation = nalgebra::DMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => inner[(i, j - n)],
        (false, true) => inner[(j, i - n)].conj(),
        _ => C64::new(0.0, 0.0),
    });
    let h = HermitianMatrix::symmetrize(ComplexMatrix::from_raw(dilation));
    let eig = h.eig()?;
    Ok(eig.eigenvalues[n..]
        .iter()
        .rev()
        .map(|&x| x.max(0.0))
        .collect())
}

/// Schatten p-norm `(Σ μ_i^p)^{1/p}` of an arbitrary square matrix.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    let p = Exponent::new(p)?;
    Ok(lp_norm(singular_values(m)?, p))
}

/// Schatten p-norm of a Hermitian matrix from its eigenvalues.
pub fn schatten_norm_hermitian(m: &HermitianMatrix, p: Exponent) -> Result<f64> {
    Ok(lp_norm(m.eig()?.eigenvalues, p))
}

/// Operator norm, the largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?[0])
}

/// A square matrix together with its inverse, validated once against
/// [`SINGULARITY_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct InvertibleMatrix {
    m: ComplexMatrix,
    inv: ComplexMatrix,
}

impl InvertibleMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_conditioning(&m)?;
        let inv = m.try_inverse()?;
        Ok(Self { m, inv })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: ComplexMatrix::identity(n),
            inv: ComplexMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.inv
    }

    pub fn inverted(&self) -> Self {
        Self {
            m: self.inv.clone(),
            inv: self.m.clone(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: &self.m * &other.m,
            inv: &other.inv * &self.inv,
        }
    }

    /// `self · x · self⁻¹`.
    pub fn conjugate(&self, x: &Self) -> Self {
        self.compose(x).compose(&self.inverted())
    }
}

fn check_conditioning(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let sv = singular_values(m)?;
    let (max, min) = (sv[0], *sv.last().unwrap());
    if max == 0.0 || min <= SINGULARITY_TOL * max {
        return Err(Error::Singular {
            sigma_min: min,
            sigma_max: max,
        });
    }
    Ok(sv)
}

/// `g = u·p` with `u` unitary and `p` positive definite.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub u: ComplexMatrix,
    pub p: HermitianMatrix,
}

/// Polar decomposition `p = (g*g)^{1/2}`, `u = g p⁻¹`.
pub fn polar_decompose(g: &ComplexMatrix) -> Result<PolarDecomposition> {
    check_conditioning(g)?;
    let gram = HermitianMatrix::symmetrize(&g.adjoint() * g);
    let eig = gram.eig()?;
    let p = super::functions::apply_spectral(&eig, f64::sqrt, super::Domain::Positive)?;
    let p_inv = super::functions::apply_spectral(&eig, |x| 1.0 / x.sqrt(), super::Domain::Positive)?;
    let u = g * p_inv.as_complex();
    Ok(PolarDecomposition { u, p })
}

/// Outcome of a Loewner-order comparison `a ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderCheck {
    pub holds: bool,
    /// Smallest eigenvalue of `b − a`.
    pub margin: f64,
}

/// Tests `a ≤ b` through the smallest eigenvalue of `b − a`.
pub fn psd_order_check(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<OrderCheck> {
    let (d, _) = order_gap(a, b)?;
    let scale = a.as_complex().max_abs().max(b.as_complex().max_abs()).max(1.0);
    Ok(OrderCheck {
        holds: d.min() >= -ORDER_TOL * scale,
        margin: d.min(),
    })
}

/// Spectral decomposition of `b − a` plus the tolerance scale.
pub(crate) fn order_gap(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(SpectralDecomposition, f64)> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    let scale = a.as_complex().max_abs().max(b.as_complex().max_abs()).max(1.0);
    Ok(((b - a).eig()?, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn brute_force_singular_values(m: &ComplexMatrix) -> Vec<f64> {
        let gram = HermitianMatrix::symmetrize(&m.adjoint() * m);
        let mut v: Vec<f64> = gram.eig().unwrap().eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
        v.reverse();
        v
    }

    #[test]
    fn hand_computed_schatten_norms() {
        let d = ComplexMatrix::from_real_diagonal(&[3.0, -4.0]).unwrap();
        assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-14);
        assert!(schatten_norm(&d, 1.0).is_err());
        assert!(schatten_norm(&d, f64::INFINITY).is_err());
        // Any p > 1 is admissible, however close to one.
        assert!(schatten_norm(&d, 1.0001).is_ok());
        let i4 = ComplexMatrix::identity(4);
        assert!((schatten_norm(&i4, 2.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn schatten_matches_brute_force() {
        let mut rng = sampling::rng(21);
        let m = sampling::random_complex(&mut rng, 5);
        let oracle = brute_force_singular_values(&m).iter().map(|x| x.powi(3)).sum::<f64>().cbrt();
        assert!((schatten_norm(&m, 3.0).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn singular_values_examples() {
        let mut rng = sampling::rng(1);
        let u = sampling::random_unitary(&mut rng, 4);
        for s in singular_values(&u).unwrap() {
            assert!((s - 1.0).abs() < 1e-12);
        }
        let d = ComplexMatrix::from_real_diagonal(&[-2.0, 1.0]).unwrap();
        let sv = singular_values(&d).unwrap();
        assert!((sv[0] - 2.0).abs() < 1e-15 && (sv[1] - 1.0).abs() < 1e-15);

        let m = sampling::random_complex(&mut rng, 4);
        let ours = singular_values(&m).unwrap();
        let oracle = brute_force_singular_values(&m);
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(ours.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn polar_examples() {
        let mut rng = sampling::rng(2);
        let a = sampling::random_positive(&mut rng, 3, 0.7);
        let pd = polar_decompose(a.as_complex()).unwrap();
        assert!((&pd.u - &ComplexMatrix::identity(3)).max_abs() < 1e-10);
        assert!((pd.p.as_complex() - a.as_complex()).max_abs() < 1e-10);

        let u = sampling::random_unitary(&mut rng, 3);
        let pd = polar_decompose(&u).unwrap();
        assert!((&pd.u - &u).max_abs() < 1e-10);
        assert!((pd.p.as_complex() - &ComplexMatrix::identity(3)).max_abs() < 1e-10);

        let g = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.5, 0.0]]).unwrap();
        let pd = polar_decompose(&g).unwrap();
        let p = ComplexMatrix::from_real_diagonal(&[0.5, 2.0]).unwrap();
        let swap = ComplexMatrix::permutation(&[1, 0]).unwrap();
        assert!((pd.p.as_complex() - &p).max_abs() < 1e-14);
        assert!((&pd.u - &swap).max_abs() < 1e-14);
    }

    #[test]
    fn polar_rejects_singular() {
        let g = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(polar_decompose(&g), Err(Error::Singular { .. })));
    }

    #[test]
    fn order_examples() {
        let i = HermitianMatrix::identity(2);
        let r = psd_order_check(&i, &i.scale(2.0)).unwrap();
        assert!(r.holds && (r.margin - 1.0).abs() < 1e-15);
        let a = HermitianMatrix::from_real_diagonal(&[2.0, 1.0]).unwrap();
        let b = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]).unwrap();
        let r = psd_order_check(&a, &b).unwrap();
        assert!(!r.holds && (r.margin + 1.0).abs() < 1e-15);

        let mut rng = sampling::rng(4);
        let a = sampling::random_hermitian(&mut rng, 4, 1.0);
        let v = sampling::random_unit_vector(&mut rng, 4);
        let b = &a + &HermitianMatrix::outer(&v);
        assert!(psd_order_check(&a, &b).unwrap().holds);
    }
}
