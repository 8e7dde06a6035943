//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! composite transform `J = W R` is unitary and annihilates `a_pq`.

use std::cmp::Ordering;

use nalgebra::DMatrix;

use super::hermitian::HermitianMatrix;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// `1e-11·n`, the accuracy target for reconstruction and orthogonality.
pub fn eig_tol(n: usize) -> f64 {
    1e-11 * n as f64
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `‖V Λ V* − M‖∞`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        (&self.reconstruct() - m).max_abs()
    }

    /// `‖V* V − I‖∞`.
    pub fn orthogonality_residual(&self) -> f64 {
        self.eigenvectors.unitarity_defect()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }

    /// `V f(Λ) V*` without any domain check.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_matrix();
        let n = self.n();
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= fl;
            }
        }
        ComplexMatrix::from_raw(scaled * v.adjoint())
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.n() - 1]
    }

    pub fn column(&self, j: usize) -> super::CVector {
        self.eigenvectors.as_matrix().column(j).into_owned()
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
pub fn hermitian_eig(m: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = m.n();
    let mut a: DMatrix<C64> = m.as_complex().as_matrix().clone();
    let mut v: DMatrix<C64> = DMatrix::identity(n, n);
    let scale = m.as_complex().frobenius();

    let mut converged = n == 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        if off_diagonal(&a) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, sweeps);
            }
        }
        sweeps += 1;
    }
    if !converged && off_diagonal(&a) <= 1e-15 * scale {
        converged = true;
    }

    // `+ 0.0` folds a stray -0.0 into +0.0 before sorting.
    let eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)].re + 0.0).collect();
    let decomposition = sorted(eigenvalues, v);

    let tol = eig_tol(n);
    let residual = decomposition.reconstruction_residual(m.as_complex());
    let ortho = decomposition.orthogonality_residual();
    let bound = tol * m.as_complex().max_abs();
    if !converged || residual > bound || ortho > tol {
        return Err(Error::NotConverged {
            solver: "hermitian Jacobi",
            iterations: sweeps,
            residual: residual.max(off_diagonal(&a)),
        });
    }
    Ok(decomposition)
}

fn off_diagonal(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut DMatrix<C64>, v: &mut DMatrix<C64>, p: usize, q: usize, sweep: usize) {
    let apq = a[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Negligible pivots are zeroed outright once the sweep has settled.
    if sweep > 3 && app.abs() + 1e3 * abs == app.abs() && aqq.abs() + 1e3 * abs == aqq.abs() {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / abs;
    let theta = (aqq - app) / (2.0 * abs);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Normalises eigenvector phases and sorts ascending, breaking exact ties by
/// descending lexicographic order of the (phase-fixed) eigenvectors.
fn sorted(eigenvalues: Vec<f64>, mut v: DMatrix<C64>) -> SpectralDecomposition {
    let n = eigenvalues.len();
    for j in 0..n {
        let mut best = 0;
        let mut best_abs = -1.0;
        for i in 0..n {
            let m = v[(i, j)].norm();
            if m > best_abs * (1.0 + 1e-12) {
                best = i;
                best_abs = m;
            }
        }
        if best_abs > 0.0 {
            let rot = v[(best, j)].conj() / best_abs;
            for i in 0..n {
                v[(i, j)] *= rot;
            }
            v[(best, j)] = C64::new(v[(best, j)].re, 0.0);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        eigenvalues[x]
            .total_cmp(&eigenvalues[y])
            .then_with(|| lexicographic_desc(&v, x, y))
    });
    let values = order.iter().map(|&k| eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    SpectralDecomposition {
        eigenvalues: values,
        eigenvectors: ComplexMatrix::from_raw(vectors),
    }
}

fn lexicographic_desc(v: &DMatrix<C64>, x: usize, y: usize) -> Ordering {
    for i in 0..v.nrows() {
        let (a, b) = (v[(i, x)], v[(i, y)]);
        let ord = b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}
