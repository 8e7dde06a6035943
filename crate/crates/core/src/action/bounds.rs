use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{lp_norm, psd_order_check, schatten_norm_hermitian, Exponent, HermitianMatrix, InvertibleMatrix};
use crate::manifold::PPoint;

/// Default resolution of the scalar grid certificate.
pub const GRID_POINTS: usize = 1_000_000;

/// Comparison constants between `‖h*h − I‖_p` and `‖log(h*h)‖_p`.
///
/// `d1` is the best constant with `|log x| ≤ d1|x − 1|` on `[(C+1)⁻¹, C+1]`
/// and `d2` the best constant with `|log x| ≥ d2|x − 1|` on `[e^{-C}, e^C]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitBoundConstants {
    pub c: f64,
    pub d1: f64,
    pub d2: f64,
    pub p: f64,
}

/// Outcome of checking both constants on a uniform grid over each interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridCertificate {
    pub points: usize,
    /// Largest `|log x|/|x − 1|` seen on `[(C+1)⁻¹, C+1]`.
    pub max_ratio: f64,
    /// Smallest `|log x|/|x − 1|` seen on `[e^{-C}, e^C]`.
    pub min_ratio: f64,
    pub d1_holds: bool,
    pub d2_holds: bool,
    /// Relative distance from each constant to the grid extremum.
    pub d1_gap: f64,
    pub d2_gap: f64,
}

impl GridCertificate {
    pub fn holds(&self) -> bool {
        self.d1_holds && self.d2_holds
    }
}

pub fn orbit_bound_constants(c: f64, p: Exponent) -> Result<OrbitBoundConstants> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Parameter(format!("orbit bound C must be positive and finite, got {c}")));
    }
    // |log x|/|x − 1| decreases on (0, ∞), so the extremes sit at the endpoints.
    let d1 = (c + 1.0) * c.ln_1p() / c;
    let d2 = c / c.exp_m1();
    Ok(OrbitBoundConstants { c, d1, d2, p: p.get() })
}

fn ratio(x: f64) -> Option<f64> {
    let dx = x - 1.0;
    (dx != 0.0).then(|| x.ln().abs() / dx.abs())
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |k| if k + 1 == points { hi } else { lo + step * k as f64 })
}

/// Checks `d1` and `d2` against `points` grid samples on each interval.
pub fn certify_constants(k: &OrbitBoundConstants, points: usize) -> GridCertificate {
    let points = points.max(2);
    let rel = 1e-12;
    let max_ratio = grid(1.0 / (k.c + 1.0), k.c + 1.0, points)
        .filter_map(ratio)
        .fold(0.0, f64::max);
    let min_ratio = grid((-k.c).exp(), k.c.exp(), points)
        .filter_map(ratio)
        .fold(f64::INFINITY, f64::min);
    GridCertificate {
        points,
        max_ratio,
        min_ratio,
        d1_holds: max_ratio <= k.d1 * (1.0 + rel),
        d2_holds: min_ratio >= k.d2 * (1.0 - rel),
        d1_gap: (k.d1 - max_ratio).abs() / k.d1,
        d2_gap: (min_ratio - k.d2).abs() / k.d2,
    }
}

/// Matrix-level check of both directions on a family closed under inversion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundedFamilyReport {
    /// `sup ‖h*h − I‖_p` over the family and its inverses.
    pub sup_defect: f64,
    /// `sup ‖log(h*h)‖_p` over the family.
    pub sup_log: f64,
    /// Smallest `D1·sup_defect − ‖log(h*h)‖_p`.
    pub forward_margin: f64,
    /// Smallest `sup_log/D2(sup_log) − ‖h*h − I‖_p`.
    pub converse_margin: f64,
}

impl BoundedFamilyReport {
    pub fn holds(&self, slack: f64) -> bool {
        self.forward_margin >= -slack && self.converse_margin >= -slack
    }
}

pub fn bounded_family_check(family: &[InvertibleMatrix], p: Exponent) -> Result<BoundedFamilyReport> {
    let mut closed: Vec<InvertibleMatrix> = family.to_vec();
    closed.extend(family.iter().map(InvertibleMatrix::inverted));
    let mut defects = Vec::with_capacity(closed.len());
    let mut logs = Vec::with_capacity(closed.len());
    for h in &closed {
        let gram = HermitianMatrix::identity(h.n()).congruence(h.matrix());
        let eig = gram.eig()?;
        defects.push(lp_norm(eig.eigenvalues.iter().map(|s| s - 1.0), p));
        logs.push(lp_norm(eig.eigenvalues.iter().map(|s| s.ln()), p));
    }
    let sup_defect = defects.iter().cloned().fold(0.0, f64::max);
    let sup_log = logs.iter().cloned().fold(0.0, f64::max);
    let mut forward_margin = f64::INFINITY;
    let mut converse_margin = f64::INFINITY;
    if sup_defect > 0.0 {
        let k = orbit_bound_constants(sup_defect, p)?;
        for l in &logs {
            forward_margin = forward_margin.min(k.d1 * sup_defect - l);
        }
    }
    if sup_log > 0.0 {
        let k = orbit_bound_constants(sup_log, p)?;
        for d in &defects {
            converse_margin = converse_margin.min(sup_log / k.d2 - d);
        }
    }
    Ok(BoundedFamilyReport {
        sup_defect,
        sup_log,
        forward_margin,
        converse_margin,
    })
}

/// `‖h*h − I‖_p ≤ 2^{1/p+1} ‖c − I‖_p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CotasRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Checks the bound for one element `h` of a group all of whose members
/// satisfy `g*g ≤ c`. Both `h*h ≤ c` and `(h⁻¹)*h⁻¹ ≤ c` are required, since
/// the bound relies on the inverse lying in the same group.
pub fn cotas_bound_check(h: &InvertibleMatrix, c: &PPoint) -> Result<CotasRecord> {
    let n = c.n();
    if h.n() != n {
        return Err(Error::Dimension { expected: n, found: h.n() });
    }
    let id = HermitianMatrix::identity(n);
    if !psd_order_check(&id, c.matrix())?.holds {
        return Err(Error::Precondition("c ≥ I fails".into()));
    }
    let gram = id.congruence(h.matrix());
    if !psd_order_check(&gram, c.matrix())?.holds {
        return Err(Error::Precondition("h*h ≤ c fails".into()));
    }
    let inv_gram = id.congruence(h.inverse());
    if !psd_order_check(&inv_gram, c.matrix())?.holds {
        return Err(Error::Precondition("(h⁻¹)*h⁻¹ ≤ c fails".into()));
    }
    let p = c.p();
    let lhs = schatten_norm_hermitian(&(&gram - &id), p)?;
    let rhs = 2f64.powf(1.0 / p.get() + 1.0) * c.identity_defect();
    Ok(CotasRecord {
        lhs,
        rhs,
        margin: rhs - lhs,
        holds: lhs <= rhs + 1e-9,
    })
}
