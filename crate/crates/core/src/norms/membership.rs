use serde::Serialize;

use crate::error::Result;
use crate::json::VectorJson;
use crate::linalg::{psd_order_check, CVector, HermitianMatrix, InvertibleMatrix};
use crate::manifold::PPoint;
use crate::sampling;

use super::spec::{hilbert_norm, NormSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Proved,
    SampledConsistent,
    RefutedWithWitness,
    Inconclusive,
}

/// Random search effort: `samples` unit vectors drawn from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { samples: 256, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub status: Status,
    pub evidence: Evidence,
    /// For order tests the smallest eigenvalue of the relevant difference;
    /// for sampled tests the worst observed slack over unit vectors.
    pub margin: f64,
    pub witness: Option<VectorJson>,
    pub budget: Option<SearchBudget>,
}

impl MembershipVerdict {
    fn proved(margin: f64) -> Self {
        Self {
            status: Status::Holds,
            evidence: Evidence::Proved,
            margin,
            witness: None,
            budget: None,
        }
    }

    fn refuted(margin: f64, witness: &CVector, budget: Option<SearchBudget>) -> Self {
        Self {
            status: Status::Fails,
            evidence: Evidence::RefutedWithWitness,
            margin,
            witness: Some(VectorJson::from_vector(witness)),
            budget,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn witness_vector(&self) -> Option<CVector> {
        self.witness.as_ref().map(VectorJson::to_vector)
    }
}

/// Relative tolerance used when comparing norm values on a witness.
const WITNESS_TOL: f64 = 1e-9;

/// Eigenvector of the smallest eigenvalue of `b − a`, with that eigenvalue.
fn lowest_direction(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(f64, CVector)> {
    let eig = (b - a).eig()?;
    Ok((eig.eigenvalues[0], eig.column(0)))
}

/// `a ∈ C⁺`, i.e. `‖·‖ ≤ ‖·‖_a`. Decided exactly: it holds iff every form
/// `b_i ≤ a`.
pub fn cplus_membership(spec: &NormSpec, a: &PPoint) -> Result<MembershipVerdict> {
    let forms = spec.forms()?;
    let mut margin = f64::INFINITY;
    let mut worst: Option<CVector> = None;
    for b in &forms {
        let check = psd_order_check(b.matrix(), a.matrix())?;
        if check.margin < margin {
            margin = check.margin;
            if !check.holds {
                worst = Some(lowest_direction(b.matrix(), a.matrix())?.1);
            }
        }
    }
    match worst {
        None => Ok(MembershipVerdict::proved(margin)),
        Some(v) => Ok(MembershipVerdict::refuted(margin, &v, None)),
    }
}

/// Worst of `⟨(a − b_i)ξ, ξ⟩` over the forms: positive means `ξ` shows
/// `‖ξ‖_a > ‖ξ‖`.
fn violation(diffs: &[HermitianMatrix], xi: &CVector) -> (f64, usize) {
    diffs
        .iter()
        .enumerate()
        .map(|(i, d)| (d.quadratic_form(xi), i))
        .fold((f64::INFINITY, 0), |best, cur| if cur.0 < best.0 { cur } else { best })
}

/// Projected ascent of `min_i ⟨(a − b_i)ξ, ξ⟩` on the unit sphere.
fn ascend(diffs: &[HermitianMatrix], mut xi: CVector, steps: usize) -> CVector {
    let scale = diffs.iter().map(|d| d.as_complex().max_abs()).fold(1e-300, f64::max);
    let mut eta = 0.5 / scale;
    let mut value = violation(diffs, &xi).0;
    for _ in 0..steps {
        let (_, i) = violation(diffs, &xi);
        let grad = diffs[i].as_complex().apply(&xi);
        let mut trial = &xi + grad * crate::C64::new(eta, 0.0);
        let norm = trial.norm();
        trial.unscale_mut(norm);
        let v = violation(diffs, &trial).0;
        if v > value {
            xi = trial;
            value = v;
            eta *= 1.5;
        } else {
            eta *= 0.5;
            if eta * scale < 1e-12 {
                break;
            }
        }
    }
    xi
}

/// `a ∈ C⁻`, i.e. `‖·‖_a ≤ ‖·‖`.
///
/// Exact for Hilbert norms. For a max of forms `a ≤ b_i` for some `i` proves
/// membership; otherwise a seeded search over random directions, the top
/// eigenvectors of each `a − b_i` and local ascent looks for `ξ` with
/// `‖ξ‖_a > ‖ξ‖`. Without a witness the verdict is `undecided`.
pub fn cminus_membership(spec: &NormSpec, a: &PPoint, budget: &SearchBudget) -> Result<MembershipVerdict> {
    let forms = spec.forms()?;
    let mut best_margin = f64::NEG_INFINITY;
    for b in &forms {
        let check = psd_order_check(a.matrix(), b.matrix())?;
        if check.holds {
            return Ok(MembershipVerdict::proved(check.margin));
        }
        best_margin = best_margin.max(check.margin);
    }
    if forms.len() == 1 {
        let (_, v) = lowest_direction(a.matrix(), forms[0].matrix())?;
        return Ok(MembershipVerdict::refuted(best_margin, &v, None));
    }

    let diffs: Vec<HermitianMatrix> = forms.iter().map(|b| a.matrix() - b.matrix()).collect();
    let mut candidates: Vec<CVector> = Vec::new();
    for d in &diffs {
        let eig = d.eig()?;
        candidates.push(eig.column(eig.n() - 1));
    }
    let mut rng = sampling::rng(budget.seed);
    for _ in 0..budget.samples {
        candidates.push(sampling::random_unit_vector(&mut rng, a.n()));
    }
    // Keep the most promising starts for local ascent.
    let mut scored: Vec<(f64, usize)> = candidates
        .iter()
        .enumerate()
        .map(|(k, v)| (violation(&diffs, v).0, k))
        .collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut best = (f64::NEG_INFINITY, candidates[0].clone());
    for &(_, k) in scored.iter().take(8) {
        let v = ascend(&diffs, candidates[k].clone(), 200);
        let val = violation(&diffs, &v).0;
        if val > best.0 {
            best = (val, v);
        }
    }
    let (val, xi) = best;
    let lhs = hilbert_norm(a, &xi);
    let rhs = spec.eval(&xi)?;
    if val > 0.0 && lhs > rhs * (1.0 + WITNESS_TOL) {
        return Ok(MembershipVerdict::refuted(-val, &xi, Some(*budget)));
    }
    Ok(MembershipVerdict {
        status: Status::Undecided,
        evidence: Evidence::Inconclusive,
        margin: -val,
        witness: None,
        budget: Some(*budget),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum IsometryMode {
    /// Exact form test where one applies, sampling otherwise.
    ExactWhenPossible { samples: usize, seed: u64 },
    /// Sampling only.
    Sampled { samples: usize, seed: u64 },
}

impl Default for IsometryMode {
    fn default() -> Self {
        IsometryMode::ExactWhenPossible { samples: 256, seed: 0 }
    }
}

/// Whether `{h* b_i h}` equals `{b_j}` as multisets within `tol`.
fn forms_permuted(forms: &[PPoint], h: &InvertibleMatrix, tol: f64) -> bool {
    let moved: Vec<HermitianMatrix> = forms.iter().map(|b| b.matrix().congruence(h.matrix())).collect();
    let mut used = vec![false; forms.len()];
    for m in &moved {
        let scale = m.as_complex().max_abs().max(1.0);
        let hit = forms.iter().enumerate().find(|(j, b)| {
            !used[*j] && (m.as_complex() - b.matrix().as_complex()).max_abs() <= tol * scale
        });
        match hit {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// `|‖hξ‖ − ‖ξ‖| / ‖ξ‖` at unit `ξ`.
fn isometry_gap(spec: &NormSpec, h: &InvertibleMatrix, xi: &CVector) -> Result<f64> {
    let base = spec.eval(xi)?;
    Ok((spec.eval(&h.matrix().apply(xi))? - base).abs() / base)
}

/// Whether `‖hξ‖ = ‖ξ‖` for every `ξ`.
///
/// Hilbert norms are tested exactly through `h* a h = a`. For a max of forms
/// a permutation of the forms by `h ↦ h* b h` proves the identity; otherwise
/// the verdict rests on sampled vectors, the standard basis and the
/// eigenvectors of the form differences.
pub fn is_isometry(spec: &NormSpec, h: &InvertibleMatrix, mode: &IsometryMode) -> Result<MembershipVerdict> {
    let forms = spec.forms()?;
    let n = spec.n();
    if h.n() != n {
        return Err(crate::Error::Dimension { expected: n, found: h.n() });
    }
    let tol = 1e-9;
    let (samples, seed, exact) = match *mode {
        IsometryMode::ExactWhenPossible { samples, seed } => (samples, seed, true),
        IsometryMode::Sampled { samples, seed } => (samples, seed, false),
    };
    if exact && forms_permuted(&forms, h, tol) {
        return Ok(MembershipVerdict::proved(0.0));
    }

    let mut candidates: Vec<CVector> = (0..n)
        .map(|i| CVector::from_fn(n, |k, _| crate::C64::new(if k == i { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    for b in &forms {
        let moved = b.matrix().congruence(h.matrix());
        for c in &forms {
            let eig = (&moved - c.matrix()).eig()?;
            candidates.push(eig.column(0));
            candidates.push(eig.column(n - 1));
        }
    }
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        candidates.push(sampling::random_unit_vector(&mut rng, n));
    }
    let budget = Some(SearchBudget { samples, seed });
    let mut worst = (0.0, 0usize);
    for (k, xi) in candidates.iter().enumerate() {
        let gap = isometry_gap(spec, h, xi)?;
        if gap > worst.0 {
            worst = (gap, k);
        }
    }
    if worst.0 > tol {
        return Ok(MembershipVerdict::refuted(-worst.0, &candidates[worst.1], budget));
    }
    Ok(MembershipVerdict {
        status: Status::Holds,
        evidence: Evidence::SampledConsistent,
        margin: -worst.0,
        witness: None,
        budget,
    })
}
