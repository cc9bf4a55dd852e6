use nalgebra::{DMatrix, DVector};

use super::nnls::nnls;
use super::ContactPair;
use crate::error::{Error, Result};
use crate::polygon::Point;
use crate::tolerance::{DELTA_W, TAU_CERT, TAU_GEOM};

/// Columns `(v uᵀ, u, v)` of the eight John equations.
fn system(pairs: &[ContactPair]) -> (DMatrix<f64>, DVector<f64>) {
    let a = DMatrix::from_fn(8, pairs.len(), |r, c| {
        let ContactPair { u, v, .. } = pairs[c];
        [
            v.x * u.x,
            v.x * u.y,
            v.y * u.x,
            v.y * u.y,
            u.x,
            u.y,
            v.x,
            v.y,
        ][r]
    });
    let b = DVector::from_vec(vec![1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    (a, b)
}

/// Non-negative `x` with `A x = b`, preferring the minimum-norm solution
/// when it is non-negative (so symmetric inputs get symmetric weights).
pub(crate) fn nonnegative_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> (Vec<f64>, f64) {
    if a.ncols() > 0 {
        if let Ok(x) = a.clone().svd(true, true).solve(b, 1e-12) {
            let res = (a * &x - b).norm();
            if res <= 1e-12 && x.iter().all(|&w| w >= 0.0) {
                return (x.iter().copied().collect(), res);
            }
        }
    }
    let (x, res) = nnls(a, b);
    (x.iter().copied().collect(), res)
}

/// Non-negative weights for the John equations. Weights below `δ_w` are
/// returned as zero; such pairs play no part in the certificate.
pub fn solve_john_weights(pairs: &[ContactPair]) -> Result<Vec<f64>> {
    let (a, b) = system(pairs);
    let (mut x, res) = nonnegative_solve(&a, &b);
    if res > TAU_CERT {
        return Err(Error::InfeasibleWeights(res));
    }
    for w in &mut x {
        if *w < DELTA_W {
            *w = 0.0;
        }
    }
    Ok(x)
}

/// Drops zero-weight pairs and merges pairs sharing the same `u` into one
/// pair carrying the summed weight and the weight-averaged `v`.
///
/// All John equations are linear in `a v`, so the merge preserves them
/// exactly, and the averaged `v` still supports both bodies at `u`.
pub fn merge_shared_contacts(
    pairs: &[ContactPair],
    weights: &[f64],
) -> (Vec<ContactPair>, Vec<f64>) {
    let mut out: Vec<(ContactPair, f64, Point)> = Vec::new();
    for (p, &w) in pairs.iter().zip(weights) {
        if w < DELTA_W {
            continue;
        }
        match out.iter_mut().find(|(q, _, _)| q.u.dist(p.u) <= TAU_GEOM) {
            Some((q, sw, sv)) => {
                *sw += w;
                *sv += p.v * w;
                q.slack_primal = q.slack_primal.max(p.slack_primal);
                q.slack_dual = q.slack_dual.max(p.slack_dual);
            }
            None => out.push((*p, w, p.v * w)),
        }
    }
    out.into_iter()
        .map(|(mut p, w, sv)| {
            p.v = sv * (1.0 / w);
            (p, w)
        })
        .unzip()
}


/// Removes linear dependencies among the weighted columns by moving along
/// null vectors until a weight vanishes (Carathéodory reduction).
pub(crate) fn reduce_support(
    pairs: Vec<ContactPair>,
    weights: Vec<f64>,
) -> (Vec<ContactPair>, Vec<f64>) {
    let (mut pairs, mut weights) = (pairs, weights);
    loop {
        let (a, _) = system(&pairs);
        let m = pairs.len();
        if m == 0 {
            return (pairs, weights);
        }
        let svd = a.clone().svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let smin_idx = (0..svd.singular_values.len())
            .min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
        let null: Option<Vec<f64>> = if m > svd.singular_values.len() {
            // more columns than rows: a null vector exists; take it from the
            // full decomposition of AᵀA
            let ata = a.transpose() * &a;
            let eig = ata.symmetric_eigen();
            let k = (0..m)
                .min_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]))
                .unwrap();
            Some(eig.eigenvectors.column(k).iter().copied().collect())
        } else {
            smin_idx
                .filter(|&i| svd.singular_values[i] < 1e-10)
                .map(|i| v_t.row(i).iter().copied().collect())
        };
        let Some(mut n) = null else {
            return (pairs, weights);
        };
        if n.iter().all(|&x| x <= 1e-14) {
            n.iter_mut().for_each(|x| *x = -*x);
        }
        let mut t = f64::INFINITY;
        let mut hit = 0;
        for i in 0..m {
            if n[i] > 1e-14 && weights[i] / n[i] < t {
                t = weights[i] / n[i];
                hit = i;
            }
        }
        if !t.is_finite() {
            return (pairs, weights);
        }
        for i in 0..m {
            weights[i] -= t * n[i];
        }
        weights[hit] = 0.0;
        let keep: Vec<usize> = (0..m).filter(|&i| weights[i] >= DELTA_W).collect();
        pairs = keep.iter().map(|&i| pairs[i]).collect();
        weights = keep.iter().map(|&i| weights[i]).collect();
    }
}
