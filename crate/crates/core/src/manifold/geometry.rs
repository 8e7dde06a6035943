use crate::error::Result;
use crate::linalg::{lp_norm, schatten_norm_hermitian, HermitianMatrix, InvertibleMatrix, SpectralDecomposition};

use super::point::{PPoint, TangentVector};

/// `a^{-1/2} b a^{-1/2}`.
pub(crate) fn relative(a: &PPoint, b: &PPoint) -> HermitianMatrix {
    b.matrix().sandwich(&a.inv_sqrt())
}

/// `d_p(a, b) = ‖log(a^{-1/2} b a^{-1/2})‖_p`.
pub fn distance(a: &PPoint, b: &PPoint) -> Result<f64> {
    a.check_compatible(b)?;
    let eig = relative(a, b).eig()?;
    Ok(lp_norm(eig.eigenvalues.iter().map(|x| x.max(f64::MIN_POSITIVE).ln()), a.p()))
}

/// The geodesic `t ↦ a^{1/2} c^t a^{1/2}` with `c = a^{-1/2} b a^{-1/2}`,
/// prepared once for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Geodesic {
    start: PPoint,
    half: HermitianMatrix,
    c: SpectralDecomposition,
}

impl Geodesic {
    pub fn new(a: &PPoint, b: &PPoint) -> Result<Self> {
        a.check_compatible(b)?;
        let c = relative(a, b).eig()?;
        Ok(Self {
            start: a.clone(),
            half: a.sqrt(),
            c,
        })
    }

    pub fn at(&self, t: f64) -> Result<PPoint> {
        let ct = crate::linalg::apply_spectral(
            &self.c,
            |x| x.max(f64::MIN_POSITIVE).powf(t),
            crate::linalg::Domain::Real,
        )?;
        PPoint::new(ct.sandwich(&self.half), self.start.p())
    }

    /// Length of the whole segment, `d_p(a, b)`.
    pub fn length(&self) -> f64 {
        lp_norm(self.c.eigenvalues.iter().map(|x| x.max(f64::MIN_POSITIVE).ln()), self.start.p())
    }

    /// Whether `t` lies outside `[0, 1]`, where the formula is an extension.
    pub fn extrapolates(t: f64) -> bool {
        !(0.0..=1.0).contains(&t)
    }
}

/// `γ_{a,b}(t)`; any real `t` is accepted, see [`Geodesic::extrapolates`].
pub fn geodesic(a: &PPoint, b: &PPoint, t: f64) -> Result<PPoint> {
    Geodesic::new(a, b)?.at(t)
}

/// `a^{1/2} log(a^{-1/2} b a^{-1/2}) a^{1/2}`, the initial velocity of `γ_{a,b}`.
pub fn log_map(a: &PPoint, b: &PPoint) -> Result<TangentVector> {
    a.check_compatible(b)?;
    let l = relative(a, b).log()?;
    TangentVector::new(a.clone(), l.sandwich(&a.sqrt()))
}

/// `a^{1/2} exp(a^{-1/2} X a^{-1/2}) a^{1/2}`, inverse of [`log_map`].
pub fn exp_map(v: &TangentVector) -> Result<PPoint> {
    let a = &v.base;
    let e = v.x.sandwich(&a.inv_sqrt()).exp()?;
    PPoint::new(e.sandwich(&a.sqrt()), a.p())
}

/// `‖X‖_a = ‖a^{-1/2} X a^{-1/2}‖_p`.
pub fn finsler_norm(v: &TangentVector) -> Result<f64> {
    schatten_norm_hermitian(&v.x.sandwich(&v.base.inv_sqrt()), v.base.p())
}

/// `σ_a(b) = a b⁻¹ a`.
pub fn cartan_symmetry(a: &PPoint, b: &PPoint) -> Result<PPoint> {
    a.check_compatible(b)?;
    PPoint::new(b.inverse_matrix().sandwich(a.matrix()), a.p())
}

/// `g·a = (g⁻¹)* a g⁻¹`.
pub fn group_act(g: &InvertibleMatrix, a: &PPoint) -> Result<PPoint> {
    if g.n() != a.n() {
        return Err(crate::Error::Dimension {
            expected: a.n(),
            found: g.n(),
        });
    }
    PPoint::new(a.matrix().congruence(g.inverse()), a.p())
}
