use crate::error::{Error, Result};
use crate::manifold::{distance, group_act, PPoint};
use crate::par;

use super::group::GroupPresentation;

/// Default bound on the number of distinct orbit points.
pub const ORBIT_POINT_CAP: usize = 20_000;

/// Breadth-first truncation of an orbit `{h·base : |h| ≤ max_word_len}`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub base: PPoint,
    /// Distinct points in discovery order; `points[0]` is the base.
    pub points: Vec<PPoint>,
    /// Length of the shortest word reaching each point.
    pub word_lengths: Vec<usize>,
    /// Set when the last level still produced new points.
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct OrbitConfig {
    pub max_word_len: usize,
    pub dedup_tol: f64,
    pub point_cap: usize,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            max_word_len: 8,
            dedup_tol: 1e-9,
            point_cap: ORBIT_POINT_CAP,
        }
    }
}

/// Whether `b` lies within `tol` of `a` in `d_p`.
///
/// `d_p(a, b) ≤ tol` forces `‖b − a‖ ≤ λ_max(a)(e^tol − 1)` in operator norm,
/// so a larger entry difference rules the pair out without an eigensolve.
fn within(a: &PPoint, b: &PPoint, tol: f64) -> Result<bool> {
    let bound = a.max_eigenvalue() * tol.exp_m1();
    let gap = (b.matrix().as_complex() - a.matrix().as_complex()).max_abs();
    if gap > 2.0 * bound + 1e-14 * a.max_eigenvalue() {
        return Ok(false);
    }
    Ok(distance(a, b)? <= tol)
}

pub fn orbit_ball(group: &GroupPresentation, base: &PPoint, cfg: &OrbitConfig) -> Result<Orbit> {
    if cfg.max_word_len == 0 {
        return Err(Error::Parameter("max_word_len must be at least 1".into()));
    }
    check_point(group, base)?;
    let base = base.clone();
    let letters = group.letters();
    let mut points = vec![base.clone()];
    let mut word_lengths = vec![0];
    let mut frontier = vec![0usize];
    let mut truncated = false;

    for level in 1..=cfg.max_word_len {
        let jobs = frontier.len() * letters.len();
        let candidates = par::map_indexed(jobs, |k| {
            let x = &points[frontier[k / letters.len()]];
            group_act(&letters[k % letters.len()], x)
        });
        let mut next = Vec::new();
        for c in candidates {
            let c = c?;
            let mut seen = false;
            for q in &points {
                if within(q, &c, cfg.dedup_tol)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                if points.len() >= cfg.point_cap {
                    return Err(Error::Budget { cap: cfg.point_cap });
                }
                next.push(points.len());
                points.push(c);
                word_lengths.push(level);
            }
        }
        truncated = !next.is_empty();
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(Orbit {
        base,
        points,
        word_lengths,
        truncated,
    })
}

/// `max_g d_p(g·a, a)` over the generators.
pub fn displacement(group: &GroupPresentation, a: &PPoint) -> Result<f64> {
    check_point(group, a)?;
    let mut worst: f64 = 0.0;
    for g in group.generators() {
        worst = worst.max(distance(&group_act(g, a)?, a)?);
    }
    Ok(worst)
}

pub(crate) fn check_point(group: &GroupPresentation, a: &PPoint) -> Result<()> {
    if a.n() != group.n() {
        return Err(Error::Dimension {
            expected: group.n(),
            found: a.n(),
        });
    }
    if a.p() != group.p() {
        return Err(Error::ExponentMismatch {
            left: group.p().get(),
            right: a.p().get(),
        });
    }
    Ok(())
}
