//! Polar dual `‖ξ‖° = sup{|⟨ξ, η⟩| : ‖η‖ ≤ 1}` of a max of Hilbert forms.
//!
//! The unit ball is `∩_i {η*b_iη ≤ 1}`, and Lagrangian duality gives
//! `‖ξ‖° = min_{ν ∈ Δ} (ξ* B_ν⁻¹ ξ)^{1/2}` with `B_ν = Σ ν_i b_i`. Every `ν`
//! yields an upper bound, and `η = B_ν⁻¹ξ` a feasible direction whose value
//! `|⟨ξ, η⟩|/‖η‖` is a lower bound; the solver closes the gap between them by
//! projected gradient descent over the simplex.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::VectorJson;
use crate::linalg::{CVector, ComplexMatrix, HermitianMatrix};
use crate::manifold::PPoint;
use crate::sampling;

use super::membership::{cplus_membership, MembershipVerdict};
use super::spec::{hilbert_norm, NormSpec};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualSolver {
    /// Starting points: the barycenter, then random points of the simplex.
    pub restarts: usize,
    pub steps: usize,
    /// Relative gap `(upper − lower)/upper` accepted as converged.
    pub tol: f64,
    pub seed: u64,
}

impl Default for DualSolver {
    fn default() -> Self {
        Self {
            restarts: 16,
            steps: 500,
            tol: 1e-8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualEstimate {
    /// Certified lower bound, attained by `witness`.
    pub lower: f64,
    /// Upper bound from weak duality.
    pub upper: f64,
    /// `upper − lower`.
    pub gap: f64,
    pub converged: bool,
    pub restarts_used: usize,
    /// A direction `η` with `|⟨ξ, η⟩| = lower · ‖η‖`.
    pub witness: Option<VectorJson>,
}

impl DualEstimate {
    pub fn value(&self) -> f64 {
        self.lower
    }
}

struct Evaluation {
    f: f64,
    y: CVector,
    /// `y* b_i y`, minus the gradient of `f`.
    g: Vec<f64>,
}

fn evaluate(forms: &[HermitianMatrix], nu: &[f64], xi: &CVector) -> Result<Evaluation> {
    let n = xi.len();
    let mut b = ComplexMatrix::zeros(n);
    for (w, f) in nu.iter().zip(forms) {
        if *w > 0.0 {
            b = &b + &f.as_complex().scale(*w);
        }
    }
    let chol = b.as_matrix().clone().cholesky().ok_or(Error::NotConverged {
        solver: "polar dual",
        iterations: 0,
        residual: f64::NAN,
    })?;
    let y = chol.solve(xi);
    let f = xi.dotc(&y).re;
    let g = forms.iter().map(|m| m.quadratic_form(&y)).collect();
    Ok(Evaluation { f, y, g })
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u: Vec<f64> = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, x) in u.iter().enumerate() {
        cumulative += x;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Lower bound from `η = y`: `⟨ξ, y⟩ / max_i (y* b_i y)^{1/2}`.
fn lower_bound(e: &Evaluation) -> f64 {
    let top = e.g.iter().cloned().fold(0.0, f64::max);
    if top > 0.0 {
        e.f / top.sqrt()
    } else {
        0.0
    }
}

pub fn polar_dual_eval(spec: &NormSpec, xi: &CVector, solver: &DualSolver) -> Result<DualEstimate> {
    let forms = spec.forms()?;
    if xi.len() != spec.n() {
        return Err(Error::Dimension { expected: spec.n(), found: xi.len() });
    }
    if xi.norm() == 0.0 {
        return Ok(DualEstimate {
            lower: 0.0,
            upper: 0.0,
            gap: 0.0,
            converged: true,
            restarts_used: 0,
            witness: None,
        });
    }
    if forms.len() == 1 {
        let a = &forms[0];
        let value = hilbert_norm(&a.inverse(), xi);
        let eta = a.inverse_matrix().as_complex().apply(xi);
        return Ok(DualEstimate {
            lower: value,
            upper: value,
            gap: 0.0,
            converged: true,
            restarts_used: 0,
            witness: Some(VectorJson::from_vector(&eta)),
        });
    }

    let mats: Vec<HermitianMatrix> = forms.iter().map(|b| b.matrix().clone()).collect();
    let m = mats.len();
    let mut rng = sampling::rng(solver.seed);
    let mut best_lower = (0.0, None::<CVector>);
    let mut best_upper = f64::INFINITY;
    let mut restarts_used = 0;
    for r in 0..solver.restarts.max(1) {
        restarts_used = r + 1;
        let mut nu: Vec<f64> = if r == 0 {
            vec![1.0 / m as f64; m]
        } else {
            let raw: Vec<f64> = (0..m).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let s: f64 = raw.iter().sum();
            raw.iter().map(|x| x / s).collect()
        };
        let mut e = evaluate(&mats, &nu, xi)?;
        let mut step = 1.0 / e.g.iter().cloned().fold(1e-300, f64::max);
        for _ in 0..solver.steps {
            let lower = lower_bound(&e);
            if lower > best_lower.0 {
                best_lower = (lower, Some(e.y.clone()));
            }
            best_upper = best_upper.min(e.f.sqrt());
            if best_upper - best_lower.0 <= solver.tol * best_upper {
                break;
            }
            // Gradient of f is −g; backtrack until f decreases.
            let mut accepted = false;
            for _ in 0..60 {
                let trial: Vec<f64> = nu.iter().zip(&e.g).map(|(w, g)| w + step * g).collect();
                let trial = project_simplex(&trial);
                let next = evaluate(&mats, &trial, xi)?;
                if next.f < e.f {
                    nu = trial;
                    e = next;
                    step *= 2.0;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        let lower = lower_bound(&e);
        if lower > best_lower.0 {
            best_lower = (lower, Some(e.y.clone()));
        }
        best_upper = best_upper.min(e.f.sqrt());
        if best_upper - best_lower.0 <= solver.tol * best_upper {
            break;
        }
    }
    let (lower, witness) = best_lower;
    let upper = best_upper.max(lower);
    Ok(DualEstimate {
        lower,
        upper,
        gap: upper - lower,
        converged: upper - lower <= solver.tol * upper,
        restarts_used,
        witness: witness.as_ref().map(VectorJson::from_vector),
    })
}

/// Cross-check of `a ∈ C⁺(‖·‖)` against `a⁻¹ ∈ C⁻(‖·‖°)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolarcReport {
    pub cplus: MembershipVerdict,
    pub samples: usize,
    pub seed: u64,
    /// Directions where `‖ζ‖_{a⁻¹} > ‖ζ‖°` is certified by the dual upper bound.
    pub dual_violations: usize,
    /// Directions where `‖ζ‖_{a⁻¹} ≤ ‖ζ‖°` is certified by the dual lower bound.
    pub dual_consistent: usize,
    /// Directions left open by the solver gap.
    pub dual_unresolved: usize,
    /// Smallest `lower(‖ζ‖°) − ‖ζ‖_{a⁻¹}` over the directions.
    pub min_margin: f64,
    /// Whether the direction dual to the membership witness shows a
    /// certified violation; `None` when there is no witness.
    pub witness_direction_violated: Option<bool>,
    pub contradiction: bool,
}

fn relative_slack(x: f64) -> f64 {
    1e-9 * x.abs().max(1e-12)
}

pub fn polarc_check(spec: &NormSpec, a: &PPoint, samples: usize, seed: u64, solver: &DualSolver) -> Result<PolarcReport> {
    let cplus = cplus_membership(spec, a)?;
    let forms = spec.forms()?;
    let a_inv = a.inverse();
    let mut rng = sampling::rng(seed);
    let mut directions: Vec<CVector> = (0..samples).map(|_| sampling::random_unit_vector(&mut rng, a.n())).collect();

    // A supporting functional at the witness w: ζ = b_j w / ‖w‖ with b_j
    // active. Then ‖ζ‖° ≤ 1 while ‖ζ‖_{a⁻¹} ≥ ‖w‖/‖w‖_a > 1.
    let witness_zeta = match cplus.witness_vector() {
        Some(w) => {
            let norm = spec.eval(&w)?;
            let j = forms
                .iter()
                .enumerate()
                .map(|(j, b)| (hilbert_norm(b, &w), j))
                .fold((f64::NEG_INFINITY, 0), |x, y| if y.0 > x.0 { y } else { x })
                .1;
            let zeta = forms[j].matrix().as_complex().apply(&w).unscale(norm);
            directions.push(zeta.clone());
            Some(zeta)
        }
        None => None,
    };

    let mut report = PolarcReport {
        cplus: cplus.clone(),
        samples,
        seed,
        dual_violations: 0,
        dual_consistent: 0,
        dual_unresolved: 0,
        min_margin: f64::INFINITY,
        witness_direction_violated: None,
        contradiction: false,
    };
    for (k, zeta) in directions.iter().enumerate() {
        let dual = polar_dual_eval(spec, zeta, &DualSolver { seed: solver.seed.wrapping_add(k as u64), ..*solver })?;
        let lhs = hilbert_norm(&a_inv, zeta);
        report.min_margin = report.min_margin.min(dual.lower - lhs);
        let violated = lhs > dual.upper + relative_slack(lhs);
        let consistent = lhs <= dual.lower + relative_slack(lhs);
        if violated {
            report.dual_violations += 1;
        } else if consistent {
            report.dual_consistent += 1;
        } else {
            report.dual_unresolved += 1;
        }
        if cplus.holds() && violated {
            report.contradiction = true;
        }
        let is_witness = witness_zeta.is_some() && k == directions.len() - 1;
        if is_witness {
            report.witness_direction_violated = Some(violated);
            // The witness direction must not be certified consistent.
            if lhs <= dual.lower - relative_slack(lhs) {
                report.contradiction = true;
            }
        }
    }
    Ok(report)
}
