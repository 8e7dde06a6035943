//! Group actions on positive matrices: orbits, circumcenters, fixed points,
//! unitarizers and commutants.

mod bounds;
mod circumcenter;
mod commutant;
mod group;
mod orbit;
mod simplex_qp;
mod unitarize;

pub use bounds::{
    bounded_family_check, certify_constants, cotas_bound_check, orbit_bound_constants, BoundedFamilyReport,
    CotasRecord, GridCertificate, OrbitBoundConstants, GRID_POINTS,
};
pub use circumcenter::{circumcenter, radius, CircumcenterConfig, CircumcenterResult, StepSchedule};
pub use commutant::{commutant_analysis, commutant_basis, invariant_subspace, CommutantAnalysis, InvariantSubspace};
pub use group::GroupPresentation;
pub use orbit::{displacement, orbit_ball, Orbit, OrbitConfig, ORBIT_POINT_CAP};
pub use unitarize::{
    conjugate_generators, conjugated_unitarity_defect, fixed_point_check, unitarize, FixedPointCheck,
    UnitarizationResult, UnitarizeConfig,
};
