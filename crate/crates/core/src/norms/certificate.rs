use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{psd_order_check, schatten_norm_hermitian, InvertibleMatrix};
use crate::manifold::PPoint;

use super::membership::{cminus_membership, cplus_membership, Evidence, SearchBudget, Status};
use super::spec::NormSpec;

/// Hilbert forms with `‖·‖_lower ≤ ‖·‖ ≤ ‖·‖_upper`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosenessCertificate {
    #[serde(skip)]
    pub lower: PPoint,
    #[serde(skip)]
    pub upper: PPoint,
    /// `‖upper − lower‖_p`.
    pub schatten_defect: f64,
    /// How the lower bound was established; the upper bound is always exact.
    pub lower_evidence: Evidence,
}

impl ClosenessCertificate {
    /// Verifies both inequalities and `lower ≤ upper` against `spec`.
    pub fn new(spec: &NormSpec, lower: PPoint, upper: PPoint, budget: &SearchBudget) -> Result<Self> {
        lower.check_compatible(&upper)?;
        if lower.n() != spec.n() {
            return Err(Error::Dimension { expected: spec.n(), found: lower.n() });
        }
        if !psd_order_check(lower.matrix(), upper.matrix())?.holds {
            return Err(Error::Precondition("certificate needs lower ≤ upper".into()));
        }
        let up = cplus_membership(spec, &upper)?;
        if !up.holds() {
            return Err(Error::Precondition(format!(
                "‖·‖ ≤ ‖·‖_upper fails (margin {:e})",
                up.margin
            )));
        }
        let low = cminus_membership(spec, &lower, budget)?;
        let lower_evidence = match low.status {
            Status::Holds => Evidence::Proved,
            Status::Undecided => Evidence::SampledConsistent,
            Status::Fails => {
                return Err(Error::Precondition(format!(
                    "‖·‖_lower ≤ ‖·‖ fails (margin {:e})",
                    low.margin
                )))
            }
        };
        let schatten_defect = schatten_norm_hermitian(&(upper.matrix() - lower.matrix()), lower.p())?;
        Ok(Self {
            lower,
            upper,
            schatten_defect,
            lower_evidence,
        })
    }
}

/// A change of variables bringing the lower bound to the identity.
#[derive(Clone, Debug)]
pub struct Normalization {
    /// `g = a^{-1/2}`; the new norm is `ξ ↦ ‖gξ‖`.
    pub g: InvertibleMatrix,
    pub spec: NormSpec,
    /// `c = a^{-1/2} b a^{-1/2} ≥ I`.
    pub c: PPoint,
    /// `(I, c)`, re-verified against the new spec.
    pub certificate: ClosenessCertificate,
    /// `‖c − I‖_p`.
    pub defect: f64,
}

pub fn normalize_to_standard(spec: &NormSpec, cert: &ClosenessCertificate) -> Result<Normalization> {
    let a = &cert.lower;
    let half = a.sqrt();
    let inv_half = a.inv_sqrt();
    let g = InvertibleMatrix::new(inv_half.as_complex().clone())?;
    // ‖gξ‖ = ‖(g⁻¹)⁻¹ξ‖.
    let new_spec = spec.change_of_variables(&InvertibleMatrix::new(half.into_complex())?)?;
    let c = PPoint::new(cert.upper.matrix().sandwich(&inv_half), a.p())?;
    let id = PPoint::identity(a.n(), a.p());
    let certificate = ClosenessCertificate::new(&new_spec, id, c.clone(), &SearchBudget::default())?;
    Ok(Normalization {
        g,
        spec: new_spec,
        defect: c.identity_defect(),
        c,
        certificate,
    })
}
