//! Extremal homothets of one polygon relative to another.
//!
//! Both problems are linear programs in three unknowns (a scale and a 2-D
//! translation) with one constraint per edge of the constraining polygon.
//! They are solved exactly by enumerating constraint triples, which is
//! cheap for the polygon sizes handled here and free of iteration
//! tolerances.

use crate::polygon::{ConvexPolygon, Point};

/// `max c·x` subject to `a_i·x ≤ b_i`, for a bounded feasible problem in
/// three unknowns. Returns the optimal vertex and value.
fn lp3_maximize(c: [f64; 3], rows: &[([f64; 3], f64)]) -> Option<([f64; 3], f64)> {
    let m = rows.len();
    let scale = rows.iter().fold(1.0f64, |s, (_, b)| s.max(b.abs()));
    let feas_tol = 1e-11 * scale;
    let mut best: Option<([f64; 3], f64)> = None;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let Some(x) = solve3(
                    [rows[i].0, rows[j].0, rows[k].0],
                    [rows[i].1, rows[j].1, rows[k].1],
                ) else {
                    continue;
                };
                let val = c[0] * x[0] + c[1] * x[1] + c[2] * x[2];
                if let Some((_, bv)) = best {
                    if val <= bv {
                        continue;
                    }
                }
                let feasible = rows
                    .iter()
                    .all(|(a, b)| a[0] * x[0] + a[1] * x[1] + a[2] * x[2] <= b + feas_tol);
                if feasible {
                    best = Some((x, val));
                }
            }
        }
    }
    best
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let norm = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if det.abs() <= 1e-12 * norm.powi(3) || det == 0.0 {
        return None;
    }
    let col = |k: usize| {
        let mut m = a;
        for r in 0..3 {
            m[r][k] = b[r];
        }
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    Some([col(0) / det, col(1) / det, col(2) / det])
}

/// Smallest `scale` with `body ⊂ scale · shape + shift`.
pub fn min_enclosing_homothet(shape: &ConvexPolygon, body: &ConvexPolygon) -> (f64, Point) {
    // h_e·R + ⟨n_e, w⟩ ≥ support(body, n_e), written as ≤ rows.
    let rows: Vec<([f64; 3], f64)> = shape
        .halfplanes()
        .map(|(n, h)| ([-h, -n.x, -n.y], -body.support_value(n)))
        .collect();
    let (x, _) = lp3_maximize([-1.0, 0.0, 0.0], &rows)
        .expect("enclosing homothet LP is feasible and bounded");
    (x[0], Point::new(x[1], x[2]))
}

/// Largest `scale` with `scale · shape + shift ⊂ body`.
pub fn max_inscribed_homothet(shape: &ConvexPolygon, body: &ConvexPolygon) -> (f64, Point) {
    let rows: Vec<([f64; 3], f64)> = body
        .halfplanes()
        .map(|(m, g)| ([shape.support_value(m), m.x, m.y], g))
        .collect();
    let (x, _) = lp3_maximize([1.0, 0.0, 0.0], &rows)
        .expect("inscribed homothet LP is feasible and bounded");
    (x[0], Point::new(x[1], x[2]))
}
