use crate::error::{Error, Result};
use crate::linalg::{CVector, Exponent, InvertibleMatrix};
use crate::manifold::{group_act, PPoint};

/// A norm on `ℂⁿ` built from Hilbert forms `‖ξ‖_a = ⟨aξ, ξ⟩^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    Hilbert(PPoint),
    /// `max_i ‖ξ‖_{b_i}`.
    Max(Vec<PPoint>),
    /// `ξ ↦ ‖g⁻¹ξ‖_inner`.
    Pushforward { g: InvertibleMatrix, inner: Box<NormSpec> },
}

/// `‖ξ‖_a`.
pub fn hilbert_norm(a: &PPoint, xi: &CVector) -> f64 {
    a.matrix().quadratic_form(xi).max(0.0).sqrt()
}

impl NormSpec {
    /// Checks that every constituent has the same dimension and exponent.
    pub fn validate(&self) -> Result<()> {
        self.forms().map(|_| ())
    }

    pub fn n(&self) -> usize {
        match self {
            NormSpec::Hilbert(a) => a.n(),
            NormSpec::Max(bs) => bs[0].n(),
            NormSpec::Pushforward { g, .. } => g.n(),
        }
    }

    pub fn p(&self) -> Exponent {
        match self {
            NormSpec::Hilbert(a) => a.p(),
            NormSpec::Max(bs) => bs[0].p(),
            NormSpec::Pushforward { inner, .. } => inner.p(),
        }
    }

    pub fn is_hilbert_variant(&self) -> bool {
        matches!(self, NormSpec::Hilbert(_))
    }

    /// Forms `b_i` with `‖ξ‖ = max_i ‖ξ‖_{b_i}`; push-forwards are resolved
    /// through the action `g·b = (g⁻¹)* b g⁻¹`.
    pub fn forms(&self) -> Result<Vec<PPoint>> {
        let forms = match self {
            NormSpec::Hilbert(a) => vec![a.clone()],
            NormSpec::Max(bs) => {
                if bs.is_empty() {
                    return Err(Error::Parameter("a max norm needs at least one form".into()));
                }
                bs.clone()
            }
            NormSpec::Pushforward { g, inner } => {
                if g.n() != inner.n() {
                    return Err(Error::Dimension { expected: g.n(), found: inner.n() });
                }
                inner.forms()?.iter().map(|b| group_act(g, b)).collect::<Result<_>>()?
            }
        };
        crate::manifold::common_exponent(&forms)?;
        Ok(forms)
    }

    pub fn eval(&self, xi: &CVector) -> Result<f64> {
        if xi.len() != self.n() {
            return Err(Error::Dimension { expected: self.n(), found: xi.len() });
        }
        Ok(match self {
            NormSpec::Hilbert(a) => hilbert_norm(a, xi),
            NormSpec::Max(bs) => bs.iter().map(|b| hilbert_norm(b, xi)).fold(0.0, f64::max),
            NormSpec::Pushforward { g, inner } => inner.eval(&g.inverse().apply(xi))?,
        })
    }

    /// `ξ ↦ ‖g⁻¹ξ‖`, resolved to a Hilbert or max spec.
    pub fn change_of_variables(&self, g: &InvertibleMatrix) -> Result<NormSpec> {
        if g.n() != self.n() {
            return Err(Error::Dimension { expected: self.n(), found: g.n() });
        }
        Ok(match self {
            NormSpec::Hilbert(a) => NormSpec::Hilbert(group_act(g, a)?),
            NormSpec::Max(bs) => NormSpec::Max(bs.iter().map(|b| group_act(g, b)).collect::<Result<_>>()?),
            // ‖h⁻¹g⁻¹ξ‖_inner = ‖(gh)⁻¹ξ‖_inner
            NormSpec::Pushforward { g: h, inner } => inner.change_of_variables(&g.compose(h))?,
        })
    }

    /// Index of a form dominating all others, if there is one. A max of
    /// forms is a Hilbert norm exactly when such a form exists.
    pub fn dominating_form(&self) -> Result<Option<usize>> {
        let forms = self.forms()?;
        for (j, top) in forms.iter().enumerate() {
            let mut all = true;
            for b in &forms {
                if !crate::linalg::psd_order_check(b.matrix(), top.matrix())?.holds {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Hilbert form equal to this norm, when it is one.
    pub fn as_hilbert(&self) -> Result<Option<PPoint>> {
        Ok(self.dominating_form()?.map(|j| self.forms().expect("validated")[j].clone()))
    }
}

/// `norm_eval` as a free function.
pub fn norm_eval(spec: &NormSpec, xi: &CVector) -> Result<f64> {
    spec.eval(xi)
}

pub fn change_of_variables(spec: &NormSpec, g: &InvertibleMatrix) -> Result<NormSpec> {
    spec.change_of_variables(g)
}

/// Polar dual of a Hilbert spec, `‖·‖_a° = ‖·‖_{a⁻¹}`.
pub fn hilbert_dual(spec: &NormSpec) -> Result<Option<NormSpec>> {
    Ok(spec.as_hilbert()?.map(|a| NormSpec::Hilbert(a.inverse())))
}

