use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::manifold::{distance, group_act, PPoint};

use super::circumcenter::{circumcenter, radius, CircumcenterConfig};
use super::group::GroupPresentation;
use super::orbit::{check_point, displacement, orbit_ball, OrbitConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitarizeConfig {
    pub orbit: OrbitConfig,
    pub circumcenter: CircumcenterConfig,
    /// Largest displacement of the candidate fixed point accepted when the
    /// orbit enumeration was truncated.
    pub tol: f64,
}

impl Default for UnitarizeConfig {
    fn default() -> Self {
        Self {
            orbit: OrbitConfig::default(),
            circumcenter: CircumcenterConfig::default(),
            tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitarizationResult {
    /// Circumcenter `e` of the orbit of the identity.
    #[serde(skip)]
    pub fixed_point: PPoint,
    /// `s = e^{-1/2}`; one of many positive unitarizers.
    #[serde(skip)]
    pub unitarizer: PPoint,
    pub displacement: f64,
    /// `max_h ‖(s⁻¹hs)*(s⁻¹hs) − I‖∞` over the generators.
    pub unitarity_defect: f64,
    pub orbit_size: usize,
    pub orbit_truncated: bool,
    pub radius: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// `max_h ‖(s⁻¹hs)*(s⁻¹hs) − I‖∞` over the generators of `group`.
pub fn conjugated_unitarity_defect(group: &GroupPresentation, s: &PPoint) -> f64 {
    let s_m = s.matrix().as_complex();
    let s_inv = s.inverse_matrix();
    group
        .generators()
        .iter()
        .map(|h| (&(s_inv.as_complex() * h.matrix()) * s_m).unitarity_defect())
        .fold(0.0, f64::max)
}

/// Re-centering rounds after the first circumcenter.
const RECENTER_ROUNDS: usize = 4;

/// Replaces `e` by the circumcenter of its own orbit while the displacement
/// keeps dropping.
///
/// Every such circumcenter is a fixed point, and once `e` is nearly fixed its
/// orbit is tiny, so the solver's relative accuracy turns into a much smaller
/// displacement. A single solve on the orbit of `I` leaves a displacement of
/// order the square root of the radius error when fewer points are active
/// than the dimension.
fn recenter(group: &GroupPresentation, mut e: PPoint, cfg: &UnitarizeConfig) -> Result<(PPoint, f64)> {
    let mut disp = displacement(group, &e)?;
    for _ in 0..RECENTER_ROUNDS {
        if disp <= cfg.orbit.dedup_tol {
            break;
        }
        let orbit = orbit_ball(group, &e, &cfg.orbit)?;
        let Ok(next) = circumcenter(&orbit.points, &cfg.circumcenter) else {
            break;
        };
        let d = displacement(group, &next.center)?;
        if d >= disp {
            break;
        }
        e = next.center;
        disp = d;
    }
    Ok((e, disp))
}

/// Fixed point of the action from the circumcenter of the orbit of `I`, and
/// the unitarizer `s = e^{-1/2}` it induces.
pub fn unitarize(group: &GroupPresentation, cfg: &UnitarizeConfig) -> Result<UnitarizationResult> {
    let id = PPoint::identity(group.n(), group.p());
    let orbit = orbit_ball(group, &id, &cfg.orbit)?;
    let center = match circumcenter(&orbit.points, &cfg.circumcenter) {
        Ok(c) => c,
        Err(Error::CircumcenterNotConverged(best)) if orbit.truncated => {
            return Err(Error::OrbitUnbounded {
                points: orbit.len(),
                displacement: displacement(group, &best.center)?,
            })
        }
        Err(e) => return Err(e),
    };
    let (e, disp) = recenter(group, center.center, cfg)?;
    if orbit.truncated && disp > cfg.tol {
        return Err(Error::OrbitUnbounded {
            points: orbit.len(),
            displacement: disp,
        });
    }
    let s = PPoint::new(e.inv_sqrt(), group.p())?;
    let r = radius(&e, &orbit.points)?;
    Ok(UnitarizationResult {
        unitarity_defect: conjugated_unitarity_defect(group, &s),
        fixed_point: e,
        unitarizer: s,
        displacement: disp,
        orbit_size: orbit.len(),
        orbit_truncated: orbit.truncated,
        radius: r,
        iterations: center.iterations,
        residual: center.residual,
    })
}

/// Both sides of the equivalence "s⁻¹Hs is unitary ⟺ s⁻² is fixed by H".
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FixedPointCheck {
    pub is_unitarizer: bool,
    pub is_fixed_point_of_s_minus_2: bool,
    pub agree: bool,
    /// `max_h ‖(s⁻¹hs)*(s⁻¹hs) − I‖∞`.
    pub unitarity_defect: f64,
    /// `max_h d_p(h·s⁻², s⁻²)`.
    pub displacement: f64,
}

pub fn fixed_point_check(s: &PPoint, group: &GroupPresentation, tol: f64) -> Result<FixedPointCheck> {
    check_point(group, s)?;
    let defect = conjugated_unitarity_defect(group, s);
    let e = PPoint::new(s.powf(-2.0), s.p())?;
    let mut disp: f64 = 0.0;
    for h in group.generators() {
        disp = disp.max(distance(&group_act(h, &e)?, &e)?);
    }
    let is_unitarizer = defect <= tol;
    let is_fixed = disp <= tol;
    Ok(FixedPointCheck {
        is_unitarizer,
        is_fixed_point_of_s_minus_2: is_fixed,
        agree: is_unitarizer == is_fixed,
        unitarity_defect: defect,
        displacement: disp,
    })
}

/// `s⁻¹ g s` for every generator.
pub fn conjugate_generators(group: &GroupPresentation, s: &HermitianMatrix) -> Result<Vec<ComplexMatrix>> {
    let s_inv = s.inverse()?;
    Ok(group
        .generators()
        .iter()
        .map(|h| &(s_inv.as_complex() * h.matrix()) * s.as_complex())
        .collect())
}
