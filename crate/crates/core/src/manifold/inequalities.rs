use crate::error::Result;
use crate::linalg::{schatten_norm, schatten_norm_hermitian, ComplexMatrix, Exponent, InvertibleMatrix};

use super::geometry::{distance, geodesic, relative};
use super::point::{BusemannParams, MarginRecord, PPoint};

/// Semi-parallelogram law at `x` for the segment `[g0, g1]`:
/// `d(x, m)^r ≤ ½(d(x,g0)^r + d(x,g1)^r) − ¼ c_r d(g0,g1)^r` with `m` the midpoint.
pub fn busemann_margin(x: &PPoint, g0: &PPoint, g1: &PPoint) -> Result<MarginRecord> {
    x.check_compatible(g0)?;
    x.check_compatible(g1)?;
    let BusemannParams { r, c_r, .. } = BusemannParams::new(x.p());
    let mid = geodesic(g0, g1, 0.5)?;
    let d0 = distance(x, g0)?.powf(r);
    let d1 = distance(x, g1)?.powf(r);
    let d01 = distance(g0, g1)?.powf(r);
    let dm = distance(x, &mid)?.powf(r);
    Ok(MarginRecord::new(dm, 0.5 * (d0 + d1) - 0.25 * c_r * d01))
}

/// `‖log a − log b‖_p ≤ d_p(a, b)`.
pub fn emi_margin(a: &PPoint, b: &PPoint) -> Result<MarginRecord> {
    a.check_compatible(b)?;
    let flat = schatten_norm_hermitian(&(&a.log() - &b.log()), a.p())?;
    Ok(MarginRecord::new(flat, distance(a, b)?))
}

/// `‖g*g − I‖_p`.
pub fn ext_group_defect(g: &ComplexMatrix, p: f64) -> Result<f64> {
    let gram = &g.adjoint() * g;
    schatten_norm(&(&gram - &ComplexMatrix::identity(g.n())), p)
}

/// `g = V* a^{1/2}` with `V` the eigenvectors of `a^{-1/2} b a^{-1/2}`, so
/// that `g·a = I` and `g·b = diag(d)` with `d` ascending.
pub fn normalize_pair(a: &PPoint, b: &PPoint) -> Result<(InvertibleMatrix, Vec<f64>)> {
    a.check_compatible(b)?;
    let eig = relative(a, b).eig()?;
    let g = &eig.eigenvectors.adjoint() * a.sqrt().as_complex();
    Ok((InvertibleMatrix::new(g)?, eig.eigenvalues))
}

/// Exponent shared by a set of points, or the first mismatch.
pub(crate) fn common_exponent(points: &[PPoint]) -> Result<Exponent> {
    let first = points.first().ok_or_else(|| crate::Error::Parameter("empty point set".into()))?;
    for q in &points[1..] {
        first.check_compatible(q)?;
    }
    Ok(first.p())
}
