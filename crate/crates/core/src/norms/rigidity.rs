use serde::Serialize;

use crate::action::{
    commutant_analysis, conjugated_unitarity_defect, cotas_bound_check, displacement, invariant_subspace, unitarize,
    CotasRecord, GroupPresentation, UnitarizationResult, UnitarizeConfig,
};
use crate::error::{Error, Result};
use crate::linalg::InvertibleMatrix;
use crate::manifold::PPoint;

use super::certificate::{normalize_to_standard, ClosenessCertificate};
use super::membership::{is_isometry, Evidence, IsometryMode, SearchBudget};
use super::spec::NormSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RigidityConfig {
    pub unitarize: UnitarizeConfig,
    pub isometry: IsometryMode,
    pub search: SearchBudget,
    /// Largest accepted unitarity defect of `s⁻¹Hs`.
    pub tol: f64,
}

impl Default for RigidityConfig {
    fn default() -> Self {
        Self {
            unitarize: UnitarizeConfig::default(),
            isometry: IsometryMode::default(),
            search: SearchBudget::default(),
            tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryUnitarizationReport {
    pub isometry_evidence: Vec<Evidence>,
    /// `‖c − I‖_p` after normalization.
    pub normalization_defect: f64,
    /// Bound on `‖h*h − I‖_p` for each normalized generator.
    pub cotas: Vec<CotasRecord>,
    pub unitarization: UnitarizationResult,
    /// `max_h ‖(s⁻¹hs)*(s⁻¹hs) − I‖∞` over the original generators.
    pub unitarity_defect: f64,
    /// Dimension of the fixed-point set of the unitarized group, which is
    /// the positive part of its Hermitian commutant.
    pub fixed_point_dimension: usize,
    /// Every positive multiple of the identity is fixed at finite dimension,
    /// so the fixed point is never unique; only its direction can be.
    pub scalar_fixed_points_only: bool,
}

#[derive(Clone, Debug)]
pub struct IsometryUnitarization {
    /// Positive `s` with `s⁻¹Hs` unitary.
    pub s: PPoint,
    /// `ξ ↦ ‖sξ‖`, whose isometries are `s⁻¹Hs`.
    pub spec: NormSpec,
    pub certificate: ClosenessCertificate,
    pub group: GroupPresentation,
    pub report: IsometryUnitarizationReport,
}

/// Unitarizes a group of isometries of a norm squeezed between two Hilbert
/// norms: normalize the lower bound to `I`, bound the normalized generators
/// by `c`, find a fixed point of the action and take `s = e^{-1/2}`.
pub fn unitarize_isometries(
    spec: &NormSpec,
    isoms: &GroupPresentation,
    cert: &ClosenessCertificate,
    cfg: &RigidityConfig,
) -> Result<IsometryUnitarization> {
    if isoms.n() != spec.n() {
        return Err(Error::Dimension { expected: spec.n(), found: isoms.n() });
    }
    let mut isometry_evidence = Vec::with_capacity(isoms.generators().len());
    for (k, h) in isoms.generators().iter().enumerate() {
        let v = is_isometry(spec, h, &cfg.isometry)?;
        if !v.holds() {
            return Err(Error::Precondition(format!("generator {k} is not an isometry (margin {:e})", v.margin)));
        }
        isometry_evidence.push(v.evidence);
    }

    let norm = normalize_to_standard(spec, cert)?;
    // Isometries of ξ ↦ ‖gξ‖ are g⁻¹Hg.
    let normalized = isoms.conjugated(&norm.g).with_exponent(norm.c.p());
    let cotas = normalized
        .generators()
        .iter()
        .map(|h| cotas_bound_check(h, &norm.c))
        .collect::<Result<Vec<_>>>()?;

    let unitarization = unitarize(&normalized, &cfg.unitarize)?;
    // A fixed point e' of g⁻¹Hg gives the fixed point g·e' of H.
    let e = crate::manifold::group_act(&norm.g, &unitarization.fixed_point)?;
    let s = PPoint::new(e.inv_sqrt(), e.p())?;
    let unitarity_defect = conjugated_unitarity_defect(isoms, &s);
    if unitarity_defect > cfg.tol {
        return Err(Error::NotConverged {
            solver: "isometry unitarization",
            iterations: unitarization.iterations,
            residual: unitarity_defect,
        });
    }

    let s_inv = InvertibleMatrix::new(s.inverse_matrix().into_complex())?;
    let new_spec = spec.change_of_variables(&s_inv)?;
    let s_mat = s.matrix().as_complex();
    let lower = PPoint::new(cert.lower.matrix().congruence(s_mat), s.p())?;
    let upper = PPoint::new(cert.upper.matrix().congruence(s_mat), s.p())?;
    let certificate = ClosenessCertificate::new(&new_spec, lower, upper, &cfg.search)?;
    let s_inv_s = InvertibleMatrix::new(s.matrix().as_complex().clone())?;
    let group = isoms.conjugated(&s_inv_s);
    let commutant = commutant_analysis(&group)?;
    Ok(IsometryUnitarization {
        report: IsometryUnitarizationReport {
            isometry_evidence,
            normalization_defect: norm.defect,
            cotas,
            unitarization,
            unitarity_defect,
            fixed_point_dimension: commutant.dimension,
            scalar_fixed_points_only: commutant.dimension == 1,
        },
        s,
        spec: new_spec,
        certificate,
        group,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityKind {
    /// The norm is a Hilbert norm.
    HilbertConsistent,
    /// Non-Hilbert, with a non-scalar commutant: invariant subspaces and
    /// non-scalar fixed points exist.
    NonHilbertReducible,
    /// Non-Hilbert although the isometry group has scalar commutant, which
    /// cannot happen in infinite dimension.
    NonHilbertIrreducible,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityVerdict {
    pub kind: RigidityKind,
    pub message: String,
    pub commutant_dimension: usize,
    pub gap_ratio: f64,
    pub commutant_inconclusive: bool,
    pub invariant_subspace_dimension: Option<usize>,
    /// `λ₁, λ₂` with `‖·‖_{λ₁} ≤ ‖·‖ ≤ ‖·‖_{λ₂}` after unitarization.
    pub scalar_sandwich: (f64, f64),
    pub unitarity_defect: f64,
    /// Displacement of a non-scalar fixed point `I + εX`, `X` in the commutant.
    pub nonscalar_fixed_point_displacement: Option<f64>,
}

pub fn rigidity_check(
    spec: &NormSpec,
    isoms: &GroupPresentation,
    cert: &ClosenessCertificate,
    cfg: &RigidityConfig,
) -> Result<RigidityVerdict> {
    let u = unitarize_isometries(spec, isoms, cert, cfg)?;
    let analysis = commutant_analysis(&u.group)?;
    let forms = u.spec.forms()?;
    let lambda1 = forms.iter().map(PPoint::min_eigenvalue).fold(0.0, f64::max);
    let lambda2 = forms.iter().map(PPoint::max_eigenvalue).fold(0.0, f64::max);
    let hilbert = u.spec.dominating_form()?.is_some();

    let invariant_subspace_dimension = if analysis.dimension > 1 {
        invariant_subspace(&u.group, 1e-6)?.map(|s| s.basis.len())
    } else {
        None
    };
    let nonscalar_fixed_point_displacement = match analysis.basis.get(1) {
        Some(x) => {
            let spread = x.eig()?;
            let eps = 0.5 / spread.eigenvalues.iter().map(|l| l.abs()).fold(1e-300, f64::max);
            let point = PPoint::new(x.scale(eps).shift(1.0), u.group.p())?;
            Some(displacement(&u.group, &point)?)
        }
        None => None,
    };
    let (kind, message) = if hilbert {
        (RigidityKind::HilbertConsistent, "Hilbert, consistent".to_string())
    } else if analysis.dimension > 1 {
        (
            RigidityKind::NonHilbertReducible,
            format!(
                "non-Hilbert invariant norm exists at finite n; fixed-point set = positive part of a {}-dimensional commutant",
                analysis.dimension
            ),
        )
    } else {
        (
            RigidityKind::NonHilbertIrreducible,
            "trivial commutant yet non-Hilbert norm at finite n".to_string(),
        )
    };
    Ok(RigidityVerdict {
        kind,
        message,
        commutant_dimension: analysis.dimension,
        gap_ratio: analysis.gap_ratio,
        commutant_inconclusive: analysis.inconclusive,
        invariant_subspace_dimension,
        scalar_sandwich: (lambda1, lambda2),
        unitarity_defect: u.report.unitarity_defect,
        nonscalar_fixed_point_displacement,
    })
}
