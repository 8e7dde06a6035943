//! Convex quadratic programme over the probability simplex,
//! `min ½ wᵀQw − cᵀw` subject to `w ≥ 0, Σw = 1`, by a primal active-set
//! method. Sizes are tiny (one variable per active circumcenter constraint).

use nalgebra::{DMatrix, DVector};

pub(crate) struct SimplexQpSolution {
    pub w: Vec<f64>,
}

pub(crate) fn solve(q: &DMatrix<f64>, c: &[f64]) -> SimplexQpSolution {
    let m = c.len();
    let scale = (0..m).map(|i| q[(i, i)].abs()).fold(0.0, f64::max).max(1e-300);
    let delta = 1e-13 * scale;
    let q = q + DMatrix::identity(m, m) * delta;
    // Start at the vertex with the best objective.
    let start = (0..m)
        .min_by(|&a, &b| (0.5 * q[(a, a)] - c[a]).total_cmp(&(0.5 * q[(b, b)] - c[b])))
        .unwrap_or(0);
    let mut w = vec![0.0; m];
    w[start] = 1.0;
    let mut free = vec![start];

    for _ in 0..(10 * m + 100) {
        let (candidate, nu) = match kkt(&q, c, &free) {
            Some(sol) => sol,
            None => break,
        };
        let blocked = free
            .iter()
            .zip(&candidate)
            .filter(|(_, &v)| v < 0.0)
            .map(|(&i, &v)| (i, w[i] / (w[i] - v)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match blocked {
            None => {
                for (&i, &v) in free.iter().zip(&candidate) {
                    w[i] = v;
                }
                // Multipliers of the bound constraints at zero coordinates.
                let grad = &q * DVector::from_column_slice(&w);
                let mut worst: Option<(usize, f64)> = None;
                for i in 0..m {
                    if free.contains(&i) {
                        continue;
                    }
                    let mu = grad[i] - c[i] - nu;
                    if mu < -1e-14 * (1.0 + scale) && worst.is_none_or(|(_, best)| mu < best) {
                        worst = Some((i, mu));
                    }
                }
                match worst {
                    Some((i, _)) => {
                        free.push(i);
                        free.sort_unstable();
                    }
                    None => break,
                }
            }
            Some((blocking, alpha)) => {
                let alpha = alpha.clamp(0.0, 1.0);
                for (&i, &v) in free.iter().zip(&candidate) {
                    w[i] += alpha * (v - w[i]);
                }
                w[blocking] = 0.0;
                // A single free coordinate is pinned to 1, so `free` never empties.
                free.retain(|&i| i != blocking);
            }
        }
    }
    for v in &mut w {
        *v = v.max(0.0);
    }
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        for v in &mut w {
            *v /= total;
        }
    }
    SimplexQpSolution { w }
}

/// Equality-constrained minimiser on the free coordinates, with the
/// multiplier of `Σw = 1`.
fn kkt(q: &DMatrix<f64>, c: &[f64], free: &[usize]) -> Option<(Vec<f64>, f64)> {
    let k = free.len();
    let mut a = DMatrix::zeros(k + 1, k + 1);
    let mut b = DVector::zeros(k + 1);
    for (r, &i) in free.iter().enumerate() {
        for (s, &j) in free.iter().enumerate() {
            a[(r, s)] = q[(i, j)];
        }
        a[(r, k)] = -1.0;
        a[(k, r)] = 1.0;
        b[r] = c[i];
    }
    b[k] = 1.0;
    let x = a.lu().solve(&b)?;
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some((x.iter().take(k).cloned().collect(), x[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(q: &DMatrix<f64>, c: &[f64]) -> f64 {
        // Dense grid on the 2-simplex.
        let steps = 2000;
        let mut best = f64::INFINITY;
        for i in 0..=steps {
            for j in 0..=(steps - i) {
                let w = DVector::from_vec(vec![
                    i as f64 / steps as f64,
                    j as f64 / steps as f64,
                    (steps - i - j) as f64 / steps as f64,
                ]);
                let v = 0.5 * w.dot(&(q * &w)) - c.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>();
                best = best.min(v);
            }
        }
        best
    }

    #[test]
    fn matches_grid_minimum() {
        let cases = [
            (vec![2.0, 0.5, 0.1, 0.5, 1.0, 0.2, 0.1, 0.2, 3.0], vec![1.0, 0.3, -0.5]),
            (vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0], vec![0.2, 0.1, 0.0]),
            (vec![1.0, -1.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0], vec![0.5, 0.5, 0.5]),
        ];
        for (qv, c) in cases {
            let q = DMatrix::from_row_slice(3, 3, &qv);
            let sol = solve(&q, &c);
            let w = DVector::from_vec(sol.w.clone());
            assert!((w.sum() - 1.0).abs() < 1e-12 && w.iter().all(|&v| v >= 0.0));
            let val = 0.5 * w.dot(&(&q * &w)) - c.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>();
            assert!(val <= brute_force(&q, &c) + 1e-9, "{val}");
        }
    }
}
