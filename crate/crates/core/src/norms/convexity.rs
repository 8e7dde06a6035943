use serde::Serialize;

use crate::error::Result;
use crate::json::VectorJson;
use crate::linalg::{CVector, InvertibleMatrix};
use crate::manifold::{geodesic, group_act, PPoint};
use crate::{par, sampling};

use super::membership::{cminus_membership, cplus_membership, SearchBudget, Status};
use super::spec::NormSpec;

/// `(1−t)φ_ξ(a) + tφ_ξ(b) − φ_ξ(γ_{a,b}(t))` with `φ_ξ(x) = ⟨xξ, ξ⟩`.
pub fn convexity_margin(a: &PPoint, b: &PPoint, t: f64, xi: &CVector) -> Result<f64> {
    let phi = |x: &PPoint| x.matrix().quadratic_form(xi);
    let g = geodesic(a, b, t)?;
    Ok((1.0 - t) * phi(a) + t * phi(b) - phi(&g))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsetFailure {
    /// `"cplus_geodesic"`, `"cminus_geodesic"` or `"isometry_invariance"`.
    pub kind: &'static str,
    pub probe: usize,
    pub t: f64,
    pub margin: f64,
    pub witness: Option<VectorJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsetReport {
    pub samples: usize,
    pub seed: u64,
    pub cplus_probes: usize,
    pub cplus_failures: usize,
    pub cminus_probes: usize,
    pub cminus_proved: usize,
    pub cminus_undecided: usize,
    pub cminus_failures: usize,
    pub isometry_probes: usize,
    pub isometry_failures: usize,
    pub first_failure: Option<CsetFailure>,
}

impl CsetReport {
    pub fn passes(&self) -> bool {
        self.cplus_failures == 0 && self.cminus_failures == 0 && self.isometry_failures == 0
    }
}

/// A random point of `C⁺`: `r + λI` with `λ` just large enough that every
/// form lies below it.
pub fn random_cplus_point(forms: &[PPoint], rng: &mut sampling::SampleRng, slack: f64) -> Result<PPoint> {
    let n = forms[0].n();
    let r = sampling::random_positive(rng, n, 0.5);
    let mut lift: f64 = 0.0;
    for b in forms {
        lift = lift.max((b.matrix() - &r).eig()?.max());
    }
    PPoint::new(r.shift(lift.max(0.0) + slack), forms[0].p())
}

/// A random point below the form `b`: `s·r` with `s` just small enough.
pub fn random_below(b: &PPoint, rng: &mut sampling::SampleRng, shrink: f64) -> Result<PPoint> {
    let r = sampling::random_ppoint(rng, b.n(), 0.5, b.p());
    let s = b.matrix().sandwich(&r.inv_sqrt()).eig()?.min();
    PPoint::new(r.matrix().scale(s * shrink), b.p())
}

enum Probe {
    Cplus { margin: f64, witness: Option<CVector>, t: f64 },
    Cminus { status: Status, margin: f64, witness: Option<CVector>, t: f64 },
    Isometry { ok: bool, margin: f64, witness: Option<CVector> },
}

/// Geodesic convexity of `C⁺` and of certified points of `C⁻`, and
/// invariance of `C⁺` under the given isometries, on `samples` probes each.
pub fn cset_closed_convex_battery(
    spec: &NormSpec,
    isometries: &[InvertibleMatrix],
    samples: usize,
    seed: u64,
) -> Result<CsetReport> {
    let forms = spec.forms()?;
    let probes = par::map_indexed(3 * samples, |k| -> Result<Probe> {
        let kind = k % 3;
        let mut rng = sampling::stream_rng(seed, "cset", k as u64);
        let t: f64 = rand::Rng::random_range(&mut rng, 0.01..0.99);
        match kind {
            0 => {
                let x = random_cplus_point(&forms, &mut rng, 1e-3)?;
                let y = random_cplus_point(&forms, &mut rng, 1e-3)?;
                let v = cplus_membership(spec, &geodesic(&x, &y, t)?)?;
                Ok(Probe::Cplus { margin: v.margin, witness: v.witness_vector(), t })
            }
            1 => {
                let i = rand::Rng::random_range(&mut rng, 0..forms.len());
                let j = rand::Rng::random_range(&mut rng, 0..forms.len());
                let x = random_below(&forms[i], &mut rng, 0.999)?;
                let y = random_below(&forms[j], &mut rng, 0.999)?;
                let budget = SearchBudget { samples: 64, seed: sampling::derive_seed(seed, "cset-search", k as u64) };
                let v = cminus_membership(spec, &geodesic(&x, &y, t)?, &budget)?;
                Ok(Probe::Cminus { status: v.status, margin: v.margin, witness: v.witness_vector(), t })
            }
            _ => {
                if isometries.is_empty() {
                    return Ok(Probe::Isometry { ok: true, margin: 0.0, witness: None });
                }
                let h = &isometries[(k / 3) % isometries.len()];
                let x = random_cplus_point(&forms, &mut rng, 1e-3)?;
                let v = cplus_membership(spec, &group_act(h, &x)?)?;
                Ok(Probe::Isometry { ok: v.holds(), margin: v.margin, witness: v.witness_vector() })
            }
        }
    });

    let mut report = CsetReport {
        samples,
        seed,
        cplus_probes: 0,
        cplus_failures: 0,
        cminus_probes: 0,
        cminus_proved: 0,
        cminus_undecided: 0,
        cminus_failures: 0,
        isometry_probes: 0,
        isometry_failures: 0,
        first_failure: None,
    };
    let record = |report: &mut CsetReport, kind, probe, t, margin, witness: Option<CVector>| {
        if report.first_failure.is_none() {
            report.first_failure = Some(CsetFailure {
                kind,
                probe,
                t,
                margin,
                witness: witness.as_ref().map(VectorJson::from_vector),
            });
        }
    };
    for (k, probe) in probes.into_iter().enumerate() {
        match probe? {
            Probe::Cplus { margin, witness, t } => {
                report.cplus_probes += 1;
                if witness.is_some() {
                    report.cplus_failures += 1;
                    record(&mut report, "cplus_geodesic", k, t, margin, witness);
                }
            }
            Probe::Cminus { status, margin, witness, t } => {
                report.cminus_probes += 1;
                match status {
                    Status::Holds => report.cminus_proved += 1,
                    Status::Undecided => report.cminus_undecided += 1,
                    Status::Fails => {
                        report.cminus_failures += 1;
                        record(&mut report, "cminus_geodesic", k, t, margin, witness);
                    }
                }
            }
            Probe::Isometry { ok, margin, witness } => {
                if isometries.is_empty() {
                    continue;
                }
                report.isometry_probes += 1;
                if !ok {
                    report.isometry_failures += 1;
                    record(&mut report, "isometry_invariance", k, 0.0, margin, witness);
                }
            }
        }
    }
    Ok(report)
}
