use std::path::Path;

use serde_json::{json, Value};

use schatten_geom::action::{
    commutant_analysis, displacement, fixed_point_check, invariant_subspace, unitarize, GroupPresentation,
    UnitarizeConfig,
};
use schatten_geom::battery::{busemann_suite, BatteryConfig};
use schatten_geom::json::{read_json, CertificateJson, GroupJson, MatrixJson, NormSpecJson};
use schatten_geom::manifold::{distance, geodesic, PPoint};
use schatten_geom::norms::constructions::{circulant, cyclic_shift, signed_permutations, symmetric_group};
use schatten_geom::norms::{
    cminus_membership, convexity_margin, cplus_membership, cset_closed_convex_battery, hilbert_norm,
    polar_dual_eval, polarc_check, random_cplus_point, rigidity_check, ClosenessCertificate, DualSolver, NormSpec,
    RigidityConfig, SearchBudget,
};
use schatten_geom::report::{CheckRecord, Report};
use schatten_geom::{par, sampling, ComplexMatrix, Error, Exponent, Result};

use crate::{Outcome, RunConfig};

fn matrix_json(m: &ComplexMatrix) -> Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrices serialize")
}

fn point_json(a: &PPoint) -> Value {
    matrix_json(a.matrix().as_complex())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn done(report: Report) -> Result<Outcome> {
    Ok(Outcome { report, unbounded: false })
}

fn unitarize_config(cfg: &RunConfig) -> UnitarizeConfig {
    let mut u = UnitarizeConfig::default();
    u.orbit.max_word_len = cfg.max_word_len;
    u.circumcenter.max_iter = cfg.max_iter;
    if let Some(t) = cfg.tol {
        u.tol = t;
    }
    u
}

fn load_group(cfg: &RunConfig, path: &Path) -> Result<GroupPresentation> {
    let group = read_json::<GroupJson>(path)?.to_group()?;
    Ok(match cfg.p {
        Some(p) => group.with_exponent(p),
        None => group,
    })
}

pub fn busemann(cfg: &RunConfig, commuting: bool) -> Result<Outcome> {
    let mut bc = BatteryConfig::new(cfg.n, cfg.p_or_two(), cfg.samples, cfg.seed);
    bc.commuting = commuting;
    let mut config = cfg.echo();
    config["commuting"] = json!(commuting);
    let mut report = Report::new("busemann", config);
    for outcome in busemann_suite(&bc)? {
        report.push(outcome.to_record());
    }
    done(report)
}

pub fn unitarize_cmd(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let group = load_group(cfg, path)?;
    let tol = cfg.tol.unwrap_or(1e-6);
    let ucfg = unitarize_config(cfg);
    let mut config = cfg.echo();
    config["group"] = json!(path.display().to_string());
    config["group_p"] = json!(group.p().get());
    let mut report = Report::new("unitarize", config);
    let result = match unitarize(&group, &ucfg) {
        Ok(r) => r,
        Err(Error::OrbitUnbounded { points, displacement }) => {
            report.push(CheckRecord::info(
                "orbit_unbounded",
                json!({
                    "points": points,
                    "displacement": displacement,
                    "max_word_len": cfg.max_word_len,
                    "hint": "raise --max-word-len or check that the group is bounded",
                }),
            ));
            return Ok(Outcome { report, unbounded: true });
        }
        Err(Error::Budget { cap }) => {
            report.push(CheckRecord::info(
                "orbit_point_cap",
                json!({ "cap": cap, "max_word_len": cfg.max_word_len }),
            ));
            return Ok(Outcome { report, unbounded: true });
        }
        Err(e) => return Err(e),
    };
    report.push(CheckRecord::le("fixed_point_displacement", result.displacement, 0.0, tol));
    report.push(CheckRecord::le("unitarity_defect", result.unitarity_defect, 0.0, tol));
    let check = fixed_point_check(&result.unitarizer, &group, tol)?;
    report.push(CheckRecord::flag("unitarizer_fixed_point_agree", check.agree).with_detail(to_value(&check)));
    report.push(CheckRecord::info(
        "unitarizer",
        json!({
            "s": point_json(&result.unitarizer),
            "fixed_point": point_json(&result.fixed_point),
            "orbit_size": result.orbit_size,
            "orbit_truncated": result.orbit_truncated,
            "radius": result.radius,
            "iterations": result.iterations,
        }),
    ));
    done(report)
}

/// Symmetric circulant row `(2, 0.3, 0.1, …, 0.1, 0.3)`.
fn demo_row(n: usize) -> Vec<f64> {
    let mut row = vec![0.1; n];
    row[0] = 2.0;
    row[1] = 0.3;
    row[n - 1] = 0.3;
    row
}

pub fn shift_demo(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n;
    if n < 3 {
        return Err(Error::Parameter(format!("shift-demo needs n ≥ 3, got {n}")));
    }
    let p = cfg.p_or_two();
    let tol = cfg.tol.unwrap_or(1e-9);
    let mut report = Report::new("shift-demo", cfg.echo());

    let shift = GroupPresentation::new(vec![cyclic_shift(n)], p, false)?;
    let a = commutant_analysis(&shift)?;
    report.push(
        CheckRecord::flag("shift_commutant_dimension", a.dimension == n && !a.inconclusive)
            .with_detail(json!({ "dimension": a.dimension, "expected": n, "gap_ratio": a.gap_ratio })),
    );
    report.push(CheckRecord::le("shift_commutant_gap", 1e3, a.gap_ratio, 0.0));

    let b = PPoint::new(circulant(&demo_row(n))?, p)?;
    let disp = displacement(&shift, &b)?;
    report.push(
        CheckRecord::le("circulant_fixed_point_displacement", disp, 0.0, tol)
            .with_detail(json!({ "point": point_json(&b), "distance_to_identity": distance(&b, &PPoint::identity(n, p))? })),
    );

    let sym = GroupPresentation::new(symmetric_group(n), p, false)?;
    let line = invariant_subspace(&sym, 1e-6)?;
    let ones_line = line.as_ref().is_some_and(|s| {
        s.basis.len() == 1 && {
            let v = &s.basis[0];
            let mean: schatten_geom::C64 = v.iter().sum::<schatten_geom::C64>() / n as f64;
            v.iter().all(|z| (z - mean).norm() < 1e-8) && mean.norm() > 1e-8
        }
    });
    report.push(CheckRecord::flag("symmetric_group_invariant_line", ones_line).with_detail(json!({
        "dimension": line.as_ref().map(|s| s.basis.len()),
        "leak": line.as_ref().map(|s| s.leak),
    })));

    let signed = GroupPresentation::new(signed_permutations(n), p, false)?;
    let a = commutant_analysis(&signed)?;
    report.push(
        CheckRecord::flag("signed_permutations_irreducible", a.is_irreducible())
            .with_detail(json!({ "dimension": a.dimension, "gap_ratio": a.gap_ratio })),
    );

    let mut rng = sampling::rng(cfg.seed);
    let mut gens = signed_permutations(n);
    gens.push(sampling::random_unitary(&mut rng, n));
    let generic = GroupPresentation::new(gens, p, false)?;
    let a = commutant_analysis(&generic)?;
    report.push(
        CheckRecord::flag("signed_permutations_plus_unitary_irreducible", a.is_irreducible())
            .with_detail(json!({ "dimension": a.dimension, "gap_ratio": a.gap_ratio })),
    );
    done(report)
}

pub fn norms_check(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let p = cfg.p_or_two();
    let spec = read_json::<NormSpecJson>(path)?.to_spec(p)?;
    let forms = spec.forms()?;
    let n = spec.n();
    let budget = SearchBudget { samples: 256, seed: cfg.seed };
    let probes = cfg.samples.min(200);
    let mut config = cfg.echo();
    config["spec"] = json!(path.display().to_string());
    let mut report = Report::new("norms-check", config);

    let dominating = spec.dominating_form()?;
    report.push(CheckRecord::info(
        "spec",
        json!({ "n": n, "forms": forms.len(), "hilbert": dominating.is_some(), "dominating_form": dominating }),
    ));

    // Intersection of C⁻ and C⁺: the dominating form for a Hilbert norm,
    // empty otherwise. Every form lies in C⁻; no form lies in C⁺.
    match dominating {
        Some(k) => {
            let a = &forms[k];
            let plus = cplus_membership(&spec, a)?;
            let minus = cminus_membership(&spec, a, &budget)?;
            report.push(
                CheckRecord::flag("intersection_singleton", plus.holds() && minus.holds())
                    .with_detail(json!({ "point": point_json(a), "cplus": to_value(&plus), "cminus": to_value(&minus) })),
            );
        }
        None => {
            let mut ok = true;
            let mut detail = Vec::new();
            for b in &forms {
                let plus = cplus_membership(&spec, b)?;
                let minus = cminus_membership(&spec, b, &budget)?;
                ok &= minus.holds() && plus.fails();
                detail.push(json!({ "cplus": to_value(&plus.status), "cminus": to_value(&minus.status) }));
            }
            report.push(CheckRecord::flag("intersection_empty", ok).with_detail(json!({ "forms": detail })));
        }
    }

    // Polar duality on one point inside C⁺ and one form outside it.
    let solver = DualSolver { seed: cfg.seed, ..DualSolver::default() };
    let mut rng = sampling::stream_rng(cfg.seed, "norms-check", 0);
    let mut candidates = vec![("cplus_point", random_cplus_point(&forms, &mut rng, 0.1)?)];
    if dominating.is_none() {
        candidates.push(("outside_point", forms[0].clone()));
    }
    for (label, a) in &candidates {
        let r = polarc_check(&spec, a, probes, cfg.seed, &solver)?;
        report.push(CheckRecord::flag(format!("polarc_{label}"), !r.contradiction).with_detail(to_value(&r)));
    }

    let cset = cset_closed_convex_battery(&spec, &[], probes, cfg.seed)?;
    report.push(CheckRecord::flag("cset_closed_convex", cset.passes()).with_detail(to_value(&cset)));

    let margins = par::map_indexed(cfg.samples, |k| -> Result<(f64, f64)> {
        let mut rng = sampling::stream_rng(cfg.seed, "convexity", k as u64);
        let a = sampling::random_ppoint(&mut rng, n, 0.7, p);
        let b = sampling::random_ppoint(&mut rng, n, 0.7, p);
        let t = (k as f64 + 0.5) / cfg.samples as f64;
        let xi = sampling::random_unit_vector(&mut rng, n);
        let scale = a.max_eigenvalue() + b.max_eigenvalue();
        Ok((convexity_margin(&a, &b, t, &xi)?, scale))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (worst, scale) = margins
        .iter()
        .copied()
        .fold((f64::INFINITY, 1.0), |acc, m| if m.0 < acc.0 { m } else { acc });
    report.push(CheckRecord::le("convexity_margin", 0.0, worst, 1e-10 * scale).with_detail(json!({ "samples": cfg.samples })));

    match dominating {
        Some(k) => {
            let a_inv = forms[k].inverse();
            let mut worst_rel: f64 = 0.0;
            for i in 0..probes.min(50) {
                let mut rng = sampling::stream_rng(cfg.seed, "hilbert-dual", i as u64);
                let xi = sampling::random_unit_vector(&mut rng, n);
                let est = polar_dual_eval(&spec, &xi, &solver)?;
                let exact = hilbert_norm(&a_inv, &xi);
                worst_rel = worst_rel.max((est.value() - exact).abs() / exact);
            }
            report.push(CheckRecord::le("hilbert_dual_exact", worst_rel, 0.0, 1e-9));
        }
        None => report.push(CheckRecord::info("hilbert_dual_exact", json!("not a Hilbert norm"))),
    }
    done(report)
}

pub fn rigidity(cfg: &RunConfig, spec: &Path, group: &Path, cert: &Path) -> Result<Outcome> {
    let group_json: GroupJson = read_json(group)?;
    let p = cfg.p_or(Exponent::new(group_json.p)?);
    let group = group_json.to_group()?.with_exponent(p);
    let spec: NormSpec = read_json::<NormSpecJson>(spec)?.to_spec(p)?;
    let (lower, upper) = read_json::<CertificateJson>(cert)?.to_bounds(p)?;
    let rcfg = RigidityConfig {
        unitarize: unitarize_config(cfg),
        search: SearchBudget { samples: 256, seed: cfg.seed },
        tol: cfg.tol.unwrap_or(1e-6),
        ..RigidityConfig::default()
    };
    let certificate = ClosenessCertificate::new(&spec, lower, upper, &rcfg.search)?;
    let mut report = Report::new("rigidity", cfg.echo());
    report.push(CheckRecord::info("certificate", to_value(&certificate)));
    let verdict = rigidity_check(&spec, &group, &certificate, &rcfg)?;
    report.push(CheckRecord::le("unitarity_defect", verdict.unitarity_defect, 0.0, rcfg.tol));
    if let Some(d) = verdict.nonscalar_fixed_point_displacement {
        report.push(CheckRecord::le("nonscalar_fixed_point_displacement", d, 0.0, rcfg.tol));
    }
    report.push(CheckRecord::info("verdict", to_value(&verdict)));
    done(report)
}

pub fn geodesic_cmd(cfg: &RunConfig, a: &Path, b: &Path, t: f64) -> Result<Outcome> {
    if !t.is_finite() {
        return Err(Error::Parameter(format!("--t must be finite, got {t}")));
    }
    let p = cfg.p_or_two();
    let pa = read_json::<MatrixJson>(a)?.to_ppoint(p)?;
    let pb = read_json::<MatrixJson>(b)?.to_ppoint(p)?;
    if pa.n() != pb.n() {
        return Err(Error::Dimension { expected: pa.n(), found: pb.n() });
    }
    let tol = cfg.tol.unwrap_or(1e-9);
    let mut config = cfg.echo();
    config["t"] = json!(t);
    let mut report = Report::new("geodesic", config);
    let d = distance(&pa, &pb)?;
    let g = geodesic(&pa, &pb, t)?;
    let scale = 1.0 + d;
    report.push(CheckRecord::le("distance_from_a", (distance(&pa, &g)? - t.abs() * d).abs(), 0.0, tol * scale));
    report.push(CheckRecord::le("distance_to_b", (distance(&g, &pb)? - (1.0 - t).abs() * d).abs(), 0.0, tol * scale));
    report.push(CheckRecord::info("geodesic", json!({ "distance": d, "point": point_json(&g) })));
    done(report)
}
