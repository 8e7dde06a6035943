//! Small explicit groups and norms used by the demos and tests.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Exponent, HermitianMatrix, C64};
use crate::manifold::PPoint;

use super::spec::NormSpec;

/// Real symmetric circulant matrix with first row `row`.
pub fn circulant(row: &[f64]) -> Result<HermitianMatrix> {
    let n = row.len();
    for k in 1..n {
        if row[k] != row[n - k] {
            return Err(Error::Parameter("circulant row must satisfy row[k] = row[n − k]".into()));
        }
    }
    HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| C64::new(row[(j + n - i) % n], 0.0))?)
}

/// `e_j ↦ e_{j+1 mod n}`.
pub fn cyclic_shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::permutation(&(0..n).map(|j| (j + 1) % n).collect::<Vec<_>>()).expect("valid permutation")
}

/// Transposition of the first two coordinates.
pub fn transposition(n: usize) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    ComplexMatrix::permutation(&perm).expect("valid permutation")
}

/// Generators of the symmetric group acting on coordinates.
pub fn symmetric_group(n: usize) -> Vec<ComplexMatrix> {
    if n < 2 {
        return vec![ComplexMatrix::identity(n)];
    }
    vec![cyclic_shift(n), transposition(n)]
}

/// Generators of the signed permutation group: the symmetric group plus
/// `diag(−1, 1, …, 1)`.
pub fn signed_permutations(n: usize) -> Vec<ComplexMatrix> {
    let mut gens = symmetric_group(n);
    let mut d = vec![1.0; n];
    d[0] = -1.0;
    gens.push(ComplexMatrix::from_real_diagonal(&d).expect("finite"));
    gens
}

/// `‖ξ‖² = ‖ξ‖₂² + κ max_i |ξ_i|²`, as the max over forms `I + κ e_i e_i*`.
pub fn coordinate_max(n: usize, kappa: f64, p: Exponent) -> Result<NormSpec> {
    let forms = (0..n)
        .map(|i| {
            let mut d = vec![1.0; n];
            d[i] += kappa;
            PPoint::from_real_diagonal(&d, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NormSpec::Max(forms))
}

/// `max(‖ξ‖₂, ‖ξ‖_b)` for a positive circulant `b`.
pub fn circulant_max(row: &[f64], p: Exponent) -> Result<NormSpec> {
    let b = PPoint::new(circulant(row)?, p)?;
    Ok(NormSpec::Max(vec![PPoint::identity(row.len(), p), b]))
}
