//! Seeded property batteries.
//!
//! Sample `i` of battery `name` draws from `stream_rng(seed, name, i)`, so a
//! failing sample can be replayed alone and results do not depend on the
//! thread count.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{bounded_family_check, cotas_bound_check, fixed_point_check, GroupPresentation};
use crate::error::Result;
use crate::json::MatrixJson;
use crate::linalg::{matrix_function, ComplexMatrix, Domain, Exponent, HermitianMatrix, InvertibleMatrix};
use crate::manifold::{busemann_margin, distance, emi_margin, geodesic, group_act, MarginRecord, PPoint};
use crate::report::CheckRecord;
use crate::sampling::{self, SampleRng};
use crate::{par, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BatteryConfig {
    pub n: usize,
    pub p: Exponent,
    pub samples: usize,
    pub seed: u64,
    /// Log-scale of sampled points.
    pub sigma: f64,
    /// Sample only pairwise commuting points, all diagonal in one basis.
    pub commuting: bool,
}

impl BatteryConfig {
    pub fn new(n: usize, p: Exponent, samples: usize, seed: u64) -> Self {
        Self {
            n,
            p,
            samples,
            seed,
            sigma: 0.5,
            commuting: false,
        }
    }
}

/// Result of one sample: a checked inequality, the slack allowed below zero
/// and the matrices needed to replay it.
struct Sample {
    record: MarginRecord,
    tol: f64,
    inputs: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryOutcome {
    pub name: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub failures: usize,
    /// Smallest margin over the samples.
    pub min_margin: f64,
    /// Largest `|margin|`, the quantity of interest for equality cases.
    pub max_abs_margin: f64,
    pub worst_index: usize,
    pub worst: MarginRecord,
    /// Inputs of the first failing sample.
    pub witness: Option<Value>,
}

impl BatteryOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_record(&self) -> CheckRecord {
        let mut r = CheckRecord::flag(self.name, self.passed());
        r.lhs = self.worst.lhs;
        r.rhs = self.worst.rhs;
        r.margin = self.min_margin;
        r = r.with_detail(json!({
            "samples": self.samples,
            "failures": self.failures,
            "max_abs_margin": self.max_abs_margin,
            "worst_index": self.worst_index,
        }));
        if let Some(w) = &self.witness {
            r = r.with_witness(w.clone());
        }
        r
    }
}

fn run<F>(name: &'static str, samples: usize, seed: u64, f: F) -> Result<BatteryOutcome>
where
    F: Fn(&mut SampleRng) -> Result<Sample> + Sync + Send,
{
    let results = par::map_indexed(samples, |i| f(&mut sampling::stream_rng(seed, name, i as u64)));
    let mut out = BatteryOutcome {
        name,
        samples,
        seed,
        failures: 0,
        min_margin: f64::INFINITY,
        max_abs_margin: 0.0,
        worst_index: 0,
        worst: MarginRecord::new(0.0, 0.0),
        witness: None,
    };
    for (i, s) in results.into_iter().enumerate() {
        let s = s?;
        let m = s.record.margin;
        if m < out.min_margin {
            out.min_margin = m;
            out.worst_index = i;
            out.worst = s.record;
        }
        out.max_abs_margin = out.max_abs_margin.max(m.abs());
        if !(m >= -s.tol) {
            out.failures += 1;
            if out.witness.is_none() {
                out.witness = Some(json!({
                    "index": i,
                    "seed": sampling::derive_seed(seed, name, i as u64),
                    "inputs": s.inputs.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>(),
                }));
            }
        }
    }
    Ok(out)
}

/// Points for one sample. The commuting sampler shares a basis drawn from
/// the root seed, so all of its points commute.
fn points(cfg: &BatteryConfig, rng: &mut SampleRng, count: usize) -> Vec<PPoint> {
    if !cfg.commuting {
        return (0..count).map(|_| sampling::random_ppoint(rng, cfg.n, cfg.sigma, cfg.p)).collect();
    }
    let basis = sampling::random_unitary(&mut sampling::stream_rng(cfg.seed, "commuting-basis", 0), cfg.n);
    (0..count)
        .map(|_| {
            let d: Vec<f64> = (0..cfg.n)
                .map(|_| (cfg.sigma * rng.sample::<f64, _>(rand_distr::StandardNormal)).exp())
                .collect();
            let h = HermitianMatrix::from_real_diagonal(&d).expect("finite").congruence(&basis.adjoint());
            PPoint::new(h, cfg.p).expect("positive diagonal")
        })
        .collect()
}

fn inputs(points: &[PPoint]) -> Vec<ComplexMatrix> {
    points.iter().map(|x| x.matrix().as_complex().clone()).collect()
}

/// Semi-parallelogram law on random triples.
pub fn busemann_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("busemann", cfg.samples, cfg.seed, |rng| {
        let pts = points(cfg, rng, 3);
        Ok(Sample {
            record: busemann_margin(&pts[0], &pts[1], &pts[2])?,
            tol: 1e-9,
            inputs: inputs(&pts),
        })
    })
}

/// `‖log a − log b‖_p ≤ d_p(a, b)` on random pairs.
pub fn emi_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("emi", cfg.samples, cfg.seed, |rng| {
        let pts = points(cfg, rng, 2);
        let record = emi_margin(&pts[0], &pts[1])?;
        Ok(Sample {
            tol: 1e-9 * (1.0 + record.rhs),
            record,
            inputs: inputs(&pts),
        })
    })
}

/// `d(a, c) ≤ d(a, b) + d(b, c)` on random triples.
pub fn triangle_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("triangle", cfg.samples, cfg.seed, |rng| {
        let pts = points(cfg, rng, 3);
        let lhs = distance(&pts[0], &pts[2])?;
        let rhs = distance(&pts[0], &pts[1])? + distance(&pts[1], &pts[2])?;
        Ok(Sample {
            record: MarginRecord::new(lhs, rhs),
            tol: 1e-9 * (1.0 + rhs),
            inputs: inputs(&pts),
        })
    })
}

/// `d(g·a, g·b) = d(a, b)` for `g` a random unitary or a random invertible
/// with equal odds. The record is
/// `|d(g·a, g·b) − d(a, b)| ≤ 1e-8 (1 + d(a, b))`.
pub fn isometry_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("isometry", cfg.samples, cfg.seed, |rng| {
        let pts = points(cfg, rng, 2);
        let unitary: bool = rng.random();
        let g = if unitary {
            InvertibleMatrix::new(sampling::random_unitary(rng, cfg.n))?
        } else {
            sampling::random_invertible(rng, cfg.n, cfg.sigma)
        };
        let d = distance(&pts[0], &pts[1])?;
        let moved = distance(&group_act(&g, &pts[0])?, &group_act(&g, &pts[1])?)?;
        let mut inputs = inputs(&pts);
        inputs.push(g.matrix().clone());
        Ok(Sample {
            record: MarginRecord::new((moved - d).abs(), 1e-8 * (1.0 + d)),
            tol: 0.0,
            inputs,
        })
    })
}

/// `d(γ(s), γ(t)) = |t − s| d(a, b)` at random `s, t ∈ [0, 1]`; the record
/// is the deviation against `1e-8 (1 + d(a, b))`.
pub fn geodesic_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("geodesic", cfg.samples, cfg.seed, |rng| {
        let pts = points(cfg, rng, 2);
        let s: f64 = rng.random();
        let t: f64 = rng.random();
        let d = distance(&pts[0], &pts[1])?;
        let gs = geodesic(&pts[0], &pts[1], s)?;
        let gt = geodesic(&pts[0], &pts[1], t)?;
        let dev = (distance(&gs, &gt)? - (t - s).abs() * d).abs();
        Ok(Sample {
            record: MarginRecord::new(dev, 1e-8 * (1.0 + d)),
            tol: 0.0,
            inputs: inputs(&pts),
        })
    })
}

/// Random `c ≥ I` and `h = w c^{t/2} v` with `w` unitary, `t ∈ [0, 1]` and
/// `v` unitary commuting with `c`, so that `h*h = c^t ≤ c` and
/// `(h⁻¹)*h⁻¹ = w c^{-t} w* ≤ I ≤ c`.
pub fn random_cotas_pair(rng: &mut SampleRng, n: usize, p: Exponent, sigma: f64) -> Result<(InvertibleMatrix, PPoint)> {
    let x = sampling::random_hermitian(rng, n, sigma);
    let c = PPoint::new(matrix_function(&x, |l| l.abs().exp(), Domain::Real)?, p)?;
    let t: f64 = rng.random();
    let phases: Vec<C64> = (0..n).map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
    let u = &c.eig().eigenvectors;
    let v = &(u * &ComplexMatrix::from_fn(n, |i, j| if i == j { phases[i] } else { C64::new(0.0, 0.0) })?) * &u.adjoint();
    let w = sampling::random_unitary(rng, n);
    let h = &(&w * c.powf(t / 2.0).as_complex()) * &v;
    Ok((InvertibleMatrix::new(h)?, c))
}

/// `‖h*h − I‖_p ≤ 2^{1/p+1} ‖c − I‖_p` on random admissible pairs.
pub fn cotas_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("cotas", cfg.samples, cfg.seed, |rng| {
        let (h, c) = random_cotas_pair(rng, cfg.n, cfg.p, cfg.sigma)?;
        let rec = cotas_bound_check(&h, &c)?;
        Ok(Sample {
            record: MarginRecord::new(rec.lhs, rec.rhs),
            tol: 1e-9,
            inputs: vec![h.matrix().clone(), c.matrix().as_complex().clone()],
        })
    })
}

/// Both directions of the comparison between `sup ‖h*h − I‖_p` and
/// `sup ‖log(h*h)‖_p` on families of three random invertibles.
pub fn bounded_family_battery(cfg: &BatteryConfig) -> Result<BatteryOutcome> {
    run("bounded_family", cfg.samples, cfg.seed, |rng| {
        let family: Vec<InvertibleMatrix> = (0..3).map(|_| sampling::random_invertible(rng, cfg.n, cfg.sigma)).collect();
        let r = bounded_family_check(&family, cfg.p)?;
        let margin = r.forward_margin.min(r.converse_margin);
        Ok(Sample {
            record: MarginRecord::new(-margin, 0.0),
            tol: 1e-9 * (1.0 + r.sup_defect + r.sup_log),
            inputs: family.iter().map(|g| g.matrix().clone()).collect(),
        })
    })
}

/// Agreement between "s⁻¹Hs is unitary" and "s⁻² is fixed by H". The group
/// is `s U s⁻¹` for random unitaries `U`; half the probes use that `s`, so
/// both sides hold, and half an unrelated positive matrix.
pub fn fixed_point_battery(cfg: &BatteryConfig, tol: f64) -> Result<BatteryOutcome> {
    run("fixed_point", cfg.samples, cfg.seed, |rng| {
        let s = sampling::random_ppoint(rng, cfg.n, cfg.sigma, cfg.p);
        let s_inv = InvertibleMatrix::new(s.matrix().as_complex().clone())?.inverted();
        let gens: Vec<InvertibleMatrix> = (0..2)
            .map(|_| InvertibleMatrix::new(sampling::random_unitary(rng, cfg.n)))
            .collect::<Result<_>>()?;
        let group = GroupPresentation::from_invertibles(gens, cfg.p, false)?.conjugated(&s_inv);
        let probe = if rng.random::<bool>() {
            s
        } else {
            sampling::random_ppoint(rng, cfg.n, cfg.sigma, cfg.p)
        };
        let check = fixed_point_check(&probe, &group, tol)?;
        let mut inputs = vec![probe.matrix().as_complex().clone()];
        inputs.extend(group.generators().iter().map(|g| g.matrix().clone()));
        Ok(Sample {
            record: MarginRecord::new(if check.agree { 0.0 } else { 1.0 }, 0.0),
            tol: 0.0,
            inputs,
        })
    })
}

/// The batteries run by the `busemann` command.
pub fn busemann_suite(cfg: &BatteryConfig) -> Result<Vec<BatteryOutcome>> {
    Ok(vec![
        busemann_battery(cfg)?,
        emi_battery(cfg)?,
        triangle_battery(cfg)?,
        isometry_battery(cfg)?,
        geodesic_battery(cfg)?,
    ])
}
