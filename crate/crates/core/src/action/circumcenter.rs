//! Minimax centers `argmin_x max_i d_p(x, a_i)` of finite point sets.
//!
//! Three stages, each warm-starting the next:
//!
//! 1. farthest-point marching `x ← γ_{x, a_f}(t_k)`;
//! 2. a monotone line search along farthest-point geodesics;
//! 3. prox-linear refinement. In normal coordinates `x' = x^{1/2} e^D x^{1/2}`
//!    each `½ d_p(x', a_i)²` is replaced by its linearisation
//!    `c_i − ⟨J_i, D⟩` plus a proximal term `σ/2 ‖D‖²`. The model's dual is a
//!    quadratic programme over the simplex, solved exactly, and `σ` is
//!    adapted by a trust-region ratio test.
//!
//! Stage 3 supplies the accuracy; marching alone converges too slowly to
//! resolve fixed points of orbits to `1e-6`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{lp_norm, ComplexMatrix, HermitianMatrix};
use crate::manifold::{common_exponent, distance, Geodesic, PPoint};
use crate::par;

use super::simplex_qp;

/// Step lengths `t_k` of the marching stage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum StepSchedule {
    /// `t_k = 1/(k + 2)`.
    Harmonic,
    /// A fixed fraction of the way to the farthest point.
    Constant(f64),
}

impl StepSchedule {
    fn at(self, k: usize) -> f64 {
        match self {
            StepSchedule::Harmonic => 1.0 / (k as f64 + 2.0),
            StepSchedule::Constant(t) => t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CircumcenterConfig {
    /// Stop once an accepted step moves the center by at most `tol` in `d_p`.
    pub tol: f64,
    /// Budget shared by all three stages.
    pub max_iter: usize,
    pub schedule: StepSchedule,
    /// Marching iterations before the line search takes over.
    pub march_iters: usize,
}

impl Default for CircumcenterConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 5000,
            schedule: StepSchedule::Harmonic,
            march_iters: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircumcenterResult {
    #[serde(skip)]
    pub center: PPoint,
    pub radius: f64,
    pub iterations: usize,
    /// Length of the last accepted step.
    pub residual: f64,
    /// Index of a point realising the radius.
    pub farthest: usize,
}

fn distances(x: &PPoint, points: &[PPoint]) -> Result<Vec<f64>> {
    par::map_indexed(points.len(), |i| distance(x, &points[i]))
        .into_iter()
        .collect()
}

/// First index attaining the maximum.
fn argmax(v: &[f64]) -> (usize, f64) {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &d)| if d > best.1 { (i, d) } else { best })
}

pub fn circumcenter(points: &[PPoint], cfg: &CircumcenterConfig) -> Result<CircumcenterResult> {
    common_exponent(points)?;
    if !(cfg.tol > 0.0) || cfg.max_iter == 0 {
        return Err(Error::Parameter("circumcenter needs tol > 0 and max_iter > 0".into()));
    }
    let mut x = points[0].clone();
    let mut dist = distances(&x, points)?;
    let mut iterations = 0;
    let mut residual = 0.0;
    if points.len() == 1 {
        return Ok(CircumcenterResult {
            center: x,
            radius: 0.0,
            iterations,
            residual,
            farthest: 0,
        });
    }

    // Stage 1: marching.
    let march = cfg.march_iters.min(cfg.max_iter);
    for k in 0..march {
        let (f, r) = argmax(&dist);
        let t = cfg.schedule.at(k);
        x = Geodesic::new(&x, &points[f])?.at(t)?;
        dist = distances(&x, points)?;
        iterations += 1;
        residual = t * r;
    }

    // Stage 2: shrinking-step line search toward the farthest point,
    // accepting only radius decreases.
    let mut best = (x, dist);
    let stage_limit = cfg.max_iter.min(iterations + (cfg.max_iter / 4).min(256));
    while iterations < stage_limit {
        let (f, r) = argmax(&best.1);
        let geo = Geodesic::new(&best.0, &points[f])?;
        let mut t = 0.5;
        let mut improved = false;
        while t * r > cfg.tol && iterations < stage_limit {
            iterations += 1;
            let y = geo.at(t)?;
            let dy = distances(&y, points)?;
            if argmax(&dy).1 < r {
                residual = t * r;
                improved = r - argmax(&dy).1 > cfg.tol;
                best = (y, dy);
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let (x, _) = best;

    // Stage 3: prox-linear refinement.
    refine(points, x, cfg, iterations, residual)
}

/// Linearisation data of `½ d_p(·, a_i)²` at a base point.
struct Linearisation {
    x: PPoint,
    half: HermitianMatrix,
    /// `½ d_i²`.
    c: Vec<f64>,
    /// Gradients `J_i` in normal coordinates at `x`.
    j: Vec<HermitianMatrix>,
    dist: Vec<f64>,
}

impl Linearisation {
    fn at(x: PPoint, points: &[PPoint]) -> Result<Self> {
        let half = x.sqrt();
        let inv_half = x.inv_sqrt();
        let p = x.p().get();
        let parts = par::map_indexed(points.len(), |i| -> Result<(f64, HermitianMatrix)> {
            let m = points[i].matrix().sandwich(&inv_half);
            let eig = m.eig()?;
            let logs: Vec<f64> = eig.eigenvalues.iter().map(|l| l.max(f64::MIN_POSITIVE).ln()).collect();
            let d = lp_norm(logs.iter().cloned(), x.p());
            if d == 0.0 {
                return Ok((0.0, HermitianMatrix::identity(x.n()).scale(0.0)));
            }
            let scale = d.powf(2.0 - p);
            let dual = crate::linalg::SpectralDecomposition {
                eigenvalues: logs.iter().map(|l| scale * l.signum() * l.abs().powf(p - 1.0)).collect(),
                eigenvectors: eig.eigenvectors.clone(),
            };
            let j = crate::linalg::apply_spectral(&dual, |v| v, crate::linalg::Domain::Real)?;
            Ok((d, j))
        });
        let mut c = Vec::with_capacity(points.len());
        let mut j = Vec::with_capacity(points.len());
        let mut dist = Vec::with_capacity(points.len());
        for part in parts {
            let (d, g) = part?;
            dist.push(d);
            c.push(0.5 * d * d);
            j.push(g);
        }
        Ok(Self {
            x,
            half,
            c,
            j,
            dist,
        })
    }

    fn value(&self) -> f64 {
        self.c.iter().cloned().fold(0.0, f64::max)
    }
}

/// Constraints whose value is within reach of the maximum: every point when
/// there are few, otherwise the largest ones.
const WORKING_SET_CAP: usize = 256;

fn working_set(lin: &Linearisation, forced: &[usize]) -> Vec<usize> {
    let m = lin.c.len();
    let mut idx: Vec<usize> = (0..m).collect();
    if m > WORKING_SET_CAP {
        idx.sort_by(|&a, &b| lin.c[b].total_cmp(&lin.c[a]).then(a.cmp(&b)));
        idx.truncate(WORKING_SET_CAP);
        for &f in forced {
            if !idx.contains(&f) {
                idx.push(f);
            }
        }
        idx.sort_unstable();
    }
    idx
}

fn refine(
    points: &[PPoint],
    x: PPoint,
    cfg: &CircumcenterConfig,
    mut iterations: usize,
    mut residual: f64,
) -> Result<CircumcenterResult> {
    let mut lin = Linearisation::at(x, points)?;
    let mut sigma = 1.0;
    let mut forced: Vec<usize> = Vec::new();
    let finish = |lin: &Linearisation, iterations, residual| {
        let (farthest, radius) = argmax(&lin.dist);
        CircumcenterResult {
            center: lin.x.clone(),
            radius,
            iterations,
            residual,
            farthest,
        }
    };

    loop {
        let f = lin.value();
        if f == 0.0 {
            return Ok(finish(&lin, iterations, 0.0));
        }
        if iterations >= cfg.max_iter {
            return Err(Error::CircumcenterNotConverged(Box::new(finish(&lin, iterations, residual))));
        }
        iterations += 1;

        let ws = working_set(&lin, &forced);
        let k = ws.len();
        let gram = DMatrix::from_fn(k, k, |a, b| lin.j[ws[a]].dot(&lin.j[ws[b]]) / sigma);
        let c: Vec<f64> = ws.iter().map(|&i| lin.c[i]).collect();
        let w = simplex_qp::solve(&gram, &c).w;

        let mut d = ComplexMatrix::zeros(lin.x.n());
        for (a, &i) in ws.iter().enumerate() {
            if w[a] > 0.0 {
                d = &d + &lin.j[i].as_complex().scale(w[a] / sigma);
            }
        }
        let d = HermitianMatrix::new(d)?;
        let dd = d.dot(&d);
        let model = lin
            .j
            .iter()
            .zip(&lin.c)
            .map(|(j, c)| c - j.dot(&d))
            .fold(f64::NEG_INFINITY, f64::max)
            + 0.5 * sigma * dd;
        let predicted = f - model;
        let step = crate::linalg::schatten_norm_hermitian(&d, lin.x.p())?;

        // The model sees no further progress at rounding level.
        if predicted <= 1e-15 * f || step <= 1e-3 * cfg.tol {
            return Ok(finish(&lin, iterations, step));
        }

        let moved = PPoint::new(d.exp()?.sandwich(&lin.half), lin.x.p())?;
        let next = Linearisation::at(moved, points)?;
        let actual = f - next.value();
        if actual >= 0.1 * predicted {
            if actual >= 0.75 * predicted {
                sigma = (sigma / 4.0).max(1e-12);
            }
            residual = step;
            lin = next;
            forced.clear();
            if step <= cfg.tol {
                return Ok(finish(&lin, iterations, residual));
            }
        } else {
            sigma *= 4.0;
            let (worst, _) = argmax(&next.c);
            if !forced.contains(&worst) {
                forced.push(worst);
            }
        }
    }
}

/// Radius of the ball around `x` containing every point.
pub fn radius(x: &PPoint, points: &[PPoint]) -> Result<f64> {
    Ok(argmax(&distances(x, points)?).1)
}
