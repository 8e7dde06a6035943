//! Hermitian commutant `{X = X* : gX = Xg for every generator}` and the
//! invariant subspaces its eigenspaces provide.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, CVector, ComplexMatrix, HermitianMatrix, C64};

use super::group::GroupPresentation;

/// Real orthonormal basis of the `n²`-dimensional space of Hermitian
/// matrices: `E_ii`, then `(E_ij + E_ji)/√2` and `i(E_ij − E_ji)/√2` for `i < j`.
fn hermitian_basis(n: usize) -> Vec<ComplexMatrix> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let zero = C64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        out.push(ComplexMatrix::from_fn(n, |a, b| if a == i && b == i { C64::new(1.0, 0.0) } else { zero }).unwrap());
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(
                ComplexMatrix::from_fn(n, |a, b| {
                    if (a, b) == (i, j) || (a, b) == (j, i) {
                        C64::new(r, 0.0)
                    } else {
                        zero
                    }
                })
                .unwrap(),
            );
            out.push(
                ComplexMatrix::from_fn(n, |a, b| {
                    if (a, b) == (i, j) {
                        C64::new(0.0, r)
                    } else if (a, b) == (j, i) {
                        C64::new(0.0, -r)
                    } else {
                        zero
                    }
                })
                .unwrap(),
            );
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantAnalysis {
    /// Frobenius-orthonormal basis, `I/√n` first.
    #[serde(skip)]
    pub basis: Vec<HermitianMatrix>,
    pub dimension: usize,
    /// Eigenvalues of `Σ_g ad_g* ad_g` on Hermitian matrices, ascending.
    pub spectrum: Vec<f64>,
    pub null_threshold: f64,
    /// Smallest non-null eigenvalue divided by the threshold.
    pub gap_ratio: f64,
    /// Set when an eigenvalue lies within a factor 10 of the threshold.
    pub inconclusive: bool,
}

impl CommutantAnalysis {
    /// Commutant reduced to the scalars, decided with a clear spectral gap.
    pub fn is_irreducible(&self) -> bool {
        self.dimension == 1 && !self.inconclusive
    }
}

/// Null space of `X ↦ (gX − Xg)_g` restricted to Hermitian `X`.
pub fn commutant_analysis(group: &GroupPresentation) -> Result<CommutantAnalysis> {
    let n = group.n();
    let basis = hermitian_basis(n);
    let dim = basis.len();
    // Real Gram matrix of the stacked commutator maps in the Hermitian basis.
    let mut images: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let g = g.matrix();
        images.push(basis.iter().map(|b| &(g * b) - &(b * g)).collect());
    }
    let gram = ComplexMatrix::from_fn(dim, |k, l| {
        C64::new(images.iter().map(|im| im[k].frobenius_dot(&im[l])).sum(), 0.0)
    })?;
    let eig = hermitian_eig(&HermitianMatrix::new(gram)?)?;
    let top = eig.max().max(1.0);
    let null_threshold = 1e-9 * n as f64 * top;
    let null: Vec<usize> = (0..dim).filter(|&k| eig.eigenvalues[k] <= null_threshold).collect();
    let gap_ratio = eig
        .eigenvalues
        .iter()
        .find(|&&l| l > null_threshold)
        .map_or(f64::INFINITY, |l| l / null_threshold);
    let inconclusive = eig
        .eigenvalues
        .iter()
        .any(|&l| l > null_threshold / 10.0 && l < 10.0 * null_threshold);

    let mut found: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(n).scale(1.0 / (n as f64).sqrt())];
    for &k in &null {
        let v = eig.column(k);
        let mut x = ComplexMatrix::zeros(n);
        for (c, b) in v.iter().zip(&basis) {
            x = &x + &b.scale(c.re);
        }
        for q in &found {
            let proj = q.frobenius_dot(&x);
            x = &x - &q.scale(proj);
        }
        let norm = x.frobenius();
        if norm > 1e-6 {
            found.push(x.scale(1.0 / norm));
        }
    }
    let basis: Vec<HermitianMatrix> = found.into_iter().map(HermitianMatrix::new).collect::<Result<_>>()?;
    Ok(CommutantAnalysis {
        dimension: basis.len(),
        basis,
        spectrum: eig.eigenvalues,
        null_threshold,
        gap_ratio,
        inconclusive,
    })
}

pub fn commutant_basis(group: &GroupPresentation) -> Result<Vec<HermitianMatrix>> {
    Ok(commutant_analysis(group)?.basis)
}

#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    /// Orthonormal basis vectors.
    pub basis: Vec<CVector>,
    /// `max_g ‖(I − Q) g Q‖∞` with `Q` the orthogonal projector.
    pub leak: f64,
    /// Eigenvalue of the commutant element whose eigenspace this is.
    pub eigenvalue: f64,
}

impl InvariantSubspace {
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.basis[0].len();
        ComplexMatrix::from_fn(n, |i, j| self.basis.iter().map(|v| v[i] * v[j].conj()).sum()).expect("finite")
    }
}

/// A proper invariant subspace of a unitary group, or `None` when the
/// commutant is trivial.
///
/// The subspace is the smallest eigenspace of the first non-scalar commutant
/// element, lowest eigenvalue first among equal sizes.
pub fn invariant_subspace(group: &GroupPresentation, tol: f64) -> Result<Option<InvariantSubspace>> {
    let defect = group.unitarity_defect();
    if defect > 1e-9 {
        return Err(Error::Precondition(format!(
            "invariant_subspace needs unitary generators (defect {defect:e})"
        )));
    }
    let analysis = commutant_analysis(group)?;
    if analysis.dimension <= 1 {
        return Ok(None);
    }
    let x = &analysis.basis[1];
    let eig = x.eig()?;
    let cluster_tol = 1e-6;
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=eig.n() {
        if k == eig.n() || eig.eigenvalues[k] - eig.eigenvalues[k - 1] > cluster_tol {
            clusters.push((start, k));
            start = k;
        }
    }
    let &(lo, hi) = clusters
        .iter()
        .min_by_key(|(lo, hi)| (hi - lo, *lo))
        .expect("at least one cluster");
    let sub = InvariantSubspace {
        basis: (lo..hi).map(|k| eig.column(k)).collect(),
        leak: 0.0,
        eigenvalue: eig.eigenvalues[lo],
    };
    let q = sub.projector();
    let comp = &ComplexMatrix::identity(group.n()) - &q;
    let leak = group
        .generators()
        .iter()
        .map(|g| (&(&comp * g.matrix()) * &q).max_abs())
        .fold(0.0, f64::max);
    if leak > tol {
        return Err(Error::NotConverged {
            solver: "invariant subspace",
            iterations: 1,
            residual: leak,
        });
    }
    Ok(Some(InvariantSubspace { leak, ..sub }))
}
