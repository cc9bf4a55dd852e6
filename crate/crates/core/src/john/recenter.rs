use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::checks::check_john_certificate;
use super::contacts::extract_contacts;
use super::weights::{
    merge_shared_contacts, nonnegative_solve, reduce_support, solve_john_weights,
};
use super::{ContactPair, JohnCertificate};
use crate::error::{Error, Result};
use crate::polygon::{ConvexPolygon, Point};
use crate::tolerance::TAU_CERT;

fn contacts_or_none(k0: &ConvexPolygon, l0: &ConvexPolygon) -> Result<Vec<ContactPair>> {
    match extract_contacts(k0, l0, TAU_CERT) {
        Err(Error::NoContacts) => Err(Error::NoCertificate(f64::INFINITY)),
        other => other,
    }
}

fn shift_pairs(pairs: &[ContactPair], z: Point) -> Vec<ContactPair> {
    pairs
        .iter()
        .map(|p| ContactPair {
            u: p.u - z,
            v: p.v * (1.0 / (1.0 - p.v.dot(z))),
            ..*p
        })
        .collect()
}

/// Finds `z` with `K − z` in John's position inside `L − z`.
///
/// With `v_i` scaled against the centroid frame, writing
/// `a_i = c_i (1 − ⟨v_i, z⟩)` turns the John equations into the linear
/// system `Σ c_i v_i u_iᵀ = I`, `Σ c_i v_i = 0` in `c ≥ 0`, after which
/// `z = Σ c_i u_i / (1 + Σ c_i)` is determined. So a single non-negative
/// solve decides whether any recentring works.
pub fn recenter_search(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<(Point, JohnCertificate)> {
    let g = k.centroid();
    let k0 = k.translate(-g);
    let l0 = l.translate(-g);
    let pairs = contacts_or_none(&k0, &l0)?;
    let a = DMatrix::from_fn(6, pairs.len(), |r, c| {
        let ContactPair { u, v, .. } = pairs[c];
        [v.x * u.x, v.x * u.y, v.y * u.x, v.y * u.y, v.x, v.y][r]
    });
    let b = DVector::from_vec(vec![1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    let (c, res) = nonnegative_solve(&a, &b);
    if res > TAU_CERT {
        return Err(Error::NoCertificate(res));
    }
    let total: f64 = c.iter().sum();
    let z0 = pairs
        .iter()
        .zip(&c)
        .fold(Point::ORIGIN, |s, (p, &ci)| s + p.u * ci)
        * (1.0 / (1.0 + total));
    let shifted = shift_pairs(&pairs, z0);
    let weights: Vec<f64> = pairs
        .iter()
        .zip(&c)
        .map(|(p, &ci)| ci * (1.0 - p.v.dot(z0)))
        .collect();
    let (merged, w) = merge_shared_contacts(&shifted, &weights);
    let (merged, w) = reduce_support(merged, w);
    let z = g + z0;
    let cert = JohnCertificate::new(merged, w, z);
    let check = check_john_certificate(&cert);
    if !check.pass {
        return Err(Error::NoCertificate(check.worst));
    }
    Ok((z, cert))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecenter {
    pub z: Point,
    pub residual: f64,
    pub certificate: Option<JohnCertificate>,
}

fn residual_at(pairs: &[ContactPair], z: Point) -> f64 {
    if pairs.iter().any(|p| p.v.dot(z) >= 1.0) {
        return f64::INFINITY;
    }
    match solve_john_weights(&shift_pairs(pairs, z)) {
        Ok(_) => 0.0,
        Err(Error::InfeasibleWeights(r)) => r,
        Err(_) => f64::INFINITY,
    }
}

/// Direct search for `z` over a 61×61 grid covering `(2/3) K` about the
/// centroid, refined by coordinate descent with step halving to `1e-10`.
/// Slower than [`recenter_search`], which it cross-checks.
pub fn recenter_grid_search(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<GridRecenter> {
    let g = k.centroid();
    let k0 = k.translate(-g);
    let l0 = l.translate(-g);
    let pairs = contacts_or_none(&k0, &l0)?;
    let region = k0.scale(2.0 / 3.0);
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for q in region.vertices() {
        lo = Point::new(lo.x.min(q.x), lo.y.min(q.y));
        hi = Point::new(hi.x.max(q.x), hi.y.max(q.y));
    }
    let mut best = (residual_at(&pairs, Point::ORIGIN), Point::ORIGIN);
    const N: usize = 61;
    for i in 0..N {
        for j in 0..N {
            let z = Point::new(
                lo.x + (hi.x - lo.x) * i as f64 / (N - 1) as f64,
                lo.y + (hi.y - lo.y) * j as f64 / (N - 1) as f64,
            );
            if !region.contains_point(z, 0.0) {
                continue;
            }
            let r = residual_at(&pairs, z);
            if r < best.0 || (r == best.0 && (z.x, z.y) < (best.1.x, best.1.y)) {
                best = (r, z);
            }
        }
    }
    let mut step = (hi.x - lo.x).max(hi.y - lo.y) / (N - 1) as f64;
    while step > 1e-10 && best.0 > 0.0 {
        let mut moved = false;
        for d in [
            Point::new(step, 0.0),
            Point::new(-step, 0.0),
            Point::new(0.0, step),
            Point::new(0.0, -step),
        ] {
            let z = best.1 + d;
            let r = residual_at(&pairs, z);
            if r < best.0 {
                best = (r, z);
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    let (residual, z0) = best;
    let certificate = if residual <= TAU_CERT {
        let shifted = shift_pairs(&pairs, z0);
        solve_john_weights(&shifted).ok().map(|w| {
            let (p, w) = merge_shared_contacts(&shifted, &w);
            let (p, w) = reduce_support(p, w);
            JohnCertificate::new(p, w, g + z0)
        })
    } else {
        None
    };
    Ok(GridRecenter {
        z: g + z0,
        residual,
        certificate,
    })
}
