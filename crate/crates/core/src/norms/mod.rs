//! Norms squeezed between Hilbert norms: change of variables, isometries,
//! polar duals, the sets `C⁻ = {a : ‖·‖_a ≤ ‖·‖}` and
//! `C⁺ = {a : ‖·‖ ≤ ‖·‖_a}`, and the unitarization of isometry groups.

mod certificate;
pub mod constructions;
mod convexity;
mod dual;
mod membership;
mod rigidity;
mod spec;

pub use certificate::{normalize_to_standard, ClosenessCertificate, Normalization};
pub use convexity::{
    convexity_margin, cset_closed_convex_battery, random_below, random_cplus_point, CsetFailure, CsetReport,
};
pub use dual::{polar_dual_eval, polarc_check, DualEstimate, DualSolver, PolarcReport};
pub use membership::{
    cminus_membership, cplus_membership, is_isometry, Evidence, IsometryMode, MembershipVerdict, SearchBudget, Status,
};
pub use rigidity::{
    rigidity_check, unitarize_isometries, IsometryUnitarization, IsometryUnitarizationReport, RigidityConfig,
    RigidityKind, RigidityVerdict,
};
pub use spec::{change_of_variables, hilbert_dual, hilbert_norm, norm_eval, NormSpec};
