//! Maximal-area affine image of one polygon inside another.

use nalgebra::{DMatrix, DVector, Matrix6, Vector6};
use serde::{Deserialize, Serialize};

use super::nnls::nnls;
use crate::error::{Error, Result};
use crate::par::{map_indexed, Execution};
use crate::polygon::{AffineMap, ConvexPolygon, Point};
use crate::sandwich::gauge_unchecked;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxVolume {
    /// `T` with `T(K) ⊂ L`.
    pub map: AffineMap,
    pub det: f64,
    /// Relative residual of the first-order optimality conditions.
    pub stationarity: f64,
    pub starts: usize,
}

const STARTS: usize = 8;

/// Maximises `det T` over affine `T` with `det T > 0` and `T(K) ⊂ L`.
///
/// Log-barrier Newton in the six map coefficients. `log det` is not concave
/// on general 2×2 matrices, so the ascent is restarted from several
/// rotations of `K` and the best local maximum kept; the identity rotation
/// is tried first and wins ties.
pub fn max_volume_position(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<MaxVolume> {
    max_volume_position_with(k, l, Execution::default())
}

pub fn max_volume_position_with(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    exec: Execution,
) -> Result<MaxVolume> {
    // Normalise both bodies to unit area about their centroids.
    let (ck, sk) = (k.centroid(), k.area().sqrt());
    let (cl, sl) = (l.centroid(), l.area().sqrt());
    let kn = k.translate(-ck).scale(1.0 / sk);
    let ln = l.translate(-cl).scale(1.0 / sl);
    let prob = Problem::new(&kn, &ln);
    let runs = map_indexed(STARTS, exec, |j| {
        let theta = std::f64::consts::TAU * j as f64 / STARTS as f64;
        prob.solve(prob.start(&kn, &ln, theta))
    });
    let best_det = runs
        .iter()
        .filter_map(|r| r.as_ref().map(|p| det6(p)))
        .fold(f64::NEG_INFINITY, f64::max);
    let p = runs
        .iter()
        .flatten()
        .find(|p| det6(p) >= best_det * (1.0 - 1e-9))
        .ok_or_else(|| Error::NonConverged("barrier ascent failed from every start".into()))?;
    let stationarity = prob.stationarity(p);
    if stationarity > 1e-6 {
        return Err(Error::NonConverged(format!(
            "stationarity residual {stationarity:.3e}"
        )));
    }
    // undo normalisation: x ↦ cl + sl · P((x − ck) / sk)
    let inner = AffineMap::new([[p[0], p[1]], [p[2], p[3]]], Point::new(p[4], p[5]));
    let map = AffineMap::homothety(sl, cl)
        .compose(&inner)
        .compose(&AffineMap::homothety(1.0 / sk, -ck * (1.0 / sk)));
    Ok(MaxVolume {
        det: map.det(),
        map,
        stationarity,
        starts: STARTS,
    })
}

fn det6(p: &Vector6<f64>) -> f64 {
    p[0] * p[3] - p[1] * p[2]
}

struct Problem {
    rows: Vec<(Vector6<f64>, f64)>,
}

impl Problem {
    fn new(k: &ConvexPolygon, l: &ConvexPolygon) -> Problem {
        let mut rows = Vec::new();
        for (n, h) in l.halfplanes() {
            for &q in k.vertices() {
                rows.push((
                    Vector6::new(n.x * q.x, n.x * q.y, n.y * q.x, n.y * q.y, n.x, n.y),
                    h,
                ));
            }
        }
        Problem { rows }
    }

    /// Rotated copy of `K` shrunk about its centroid until strictly inside.
    fn start(&self, k: &ConvexPolygon, l: &ConvexPolygon, theta: f64) -> Vector6<f64> {
        let (sn, cs) = theta.sin_cos();
        let g = k
            .vertices()
            .iter()
            .map(|&q| gauge_unchecked(l, Point::new(cs * q.x - sn * q.y, sn * q.x + cs * q.y)))
            .fold(0.0, f64::max);
        let s = 1.0 / (g * (1.0 + 1e-3));
        Vector6::new(s * cs, -s * sn, s * sn, s * cs, 0.0, 0.0)
    }

    fn slacks(&self, p: &Vector6<f64>) -> Option<Vec<f64>> {
        let s: Vec<f64> = self.rows.iter().map(|(g, b)| b - g.dot(p)).collect();
        (s.iter().all(|&v| v > 0.0) && det6(p) > 0.0).then_some(s)
    }

    fn value(&self, p: &Vector6<f64>, mu: f64) -> Option<f64> {
        let s = self.slacks(p)?;
        Some(det6(p).ln() + mu * s.iter().map(|v| v.ln()).sum::<f64>())
    }

    fn solve(&self, mut p: Vector6<f64>) -> Option<Vector6<f64>> {
        let mut mu = 1.0;
        while mu > 1e-13 {
            for _ in 0..100 {
                let s = self.slacks(&p)?;
                let det = det6(&p);
                let gd = Vector6::new(p[3], -p[2], -p[1], p[0], 0.0, 0.0) / det;
                let mut hess = -gd * gd.transpose();
                hess[(0, 3)] += 1.0 / det;
                hess[(3, 0)] += 1.0 / det;
                hess[(1, 2)] -= 1.0 / det;
                hess[(2, 1)] -= 1.0 / det;
                let mut grad = gd;
                for ((g, _), &si) in self.rows.iter().zip(&s) {
                    grad -= g * (mu / si);
                    hess -= g * g.transpose() * (mu / (si * si));
                }
                let dir = ascent_direction(&hess, &grad);
                let decrement = grad.dot(&dir);
                if decrement < 1e-15 {
                    break;
                }
                let f0 = self.value(&p, mu)?;
                let mut t = 1.0;
                loop {
                    let q = p + dir * t;
                    if let Some(f1) = self.value(&q, mu) {
                        if f1 >= f0 + 1e-4 * t * decrement {
                            p = q;
                            break;
                        }
                    }
                    t *= 0.5;
                    if t < 1e-14 {
                        break;
                    }
                }
                if t < 1e-14 {
                    break;
                }
            }
            mu *= 0.2;
        }
        Some(self.polish(p))
    }

    /// Snaps near-active constraints to equality by a minimum-norm step.
    fn polish(&self, p: Vector6<f64>) -> Vector6<f64> {
        let active: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.rows[i].1 - self.rows[i].0.dot(&p) < 1e-7)
            .collect();
        if active.is_empty() {
            return p;
        }
        let g = DMatrix::from_fn(active.len(), 6, |r, c| self.rows[active[r]].0[c]);
        let rhs = DVector::from_fn(active.len(), |r, _| {
            self.rows[active[r]].1 - self.rows[active[r]].0.dot(&p)
        });
        let Ok(step) = g.svd(true, true).solve(&rhs, 1e-10) else {
            return p;
        };
        let q = p + Vector6::from_iterator(step.iter().copied());
        let feasible = self.rows.iter().all(|(g, b)| b - g.dot(&q) >= -1e-13);
        if feasible && det6(&q) > 0.0 && (det6(&q) - det6(&p)).abs() <= 1e-8 * det6(&p) {
            q
        } else {
            p
        }
    }

    /// `‖∇ log det − Σ λ_i g_i‖ / ‖∇ log det‖` minimised over `λ ≥ 0` on the
    /// near-active constraints.
    fn stationarity(&self, p: &Vector6<f64>) -> f64 {
        let det = det6(p);
        let gd = Vector6::new(p[3], -p[2], -p[1], p[0], 0.0, 0.0) / det;
        let active: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.rows[i].1 - self.rows[i].0.dot(p) < 1e-6)
            .collect();
        if active.is_empty() {
            return 1.0;
        }
        let a = DMatrix::from_fn(6, active.len(), |r, c| self.rows[active[c]].0[r]);
        let b = DVector::from_iterator(6, gd.iter().copied());
        let (_, res) = nnls(&a, &b);
        res / gd.norm()
    }
}

/// Newton ascent step, regularised until the negated Hessian is positive
/// definite.
fn ascent_direction(hess: &Matrix6<f64>, grad: &Vector6<f64>) -> Vector6<f64> {
    let neg = -hess;
    let mut lambda = 0.0;
    let scale = neg.diagonal().amax().max(1e-12);
    for _ in 0..60 {
        let m = neg + Matrix6::identity() * lambda;
        if let Some(ch) = m.cholesky() {
            return ch.solve(grad);
        }
        lambda = if lambda == 0.0 {
            1e-10 * scale
        } else {
            lambda * 4.0
        };
    }
    grad / scale
}
