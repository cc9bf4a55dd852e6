use super::ContactPair;
use crate::error::{Error, Result};
use crate::polygon::{ConvexPolygon, Point};
use crate::sandwich::gauge_unchecked;
use crate::tolerance::TAU_GEOM;

/// Contact pairs of `K ⊂ L` (origin interior to `K`).
///
/// A vertex of `K` on an edge of `L` gives the pair (vertex, edge normal
/// scaled to `⟨u, v⟩ = 1`). A vertex of `L` lying on `K` gives one pair per
/// adjacent edge of `L`, the extreme rays of its normal cone. Edges of `K`
/// lying along edges of `L` contribute through their endpoints. Duplicates
/// within `τ_geom` are dropped; order follows the vertex order of `K`.
pub fn extract_contacts(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    tol: f64,
) -> Result<Vec<ContactPair>> {
    if k.halfplanes().any(|(_, h)| h <= TAU_GEOM) {
        return Err(Error::OriginNotInterior);
    }
    let planes: Vec<(Point, f64)> = l.halfplanes().collect();
    let mut out: Vec<ContactPair> = Vec::new();
    let mut push = |u: Point, n: Point| {
        let v = n * (1.0 / n.dot(u));
        if !out
            .iter()
            .any(|p| p.u.dist(u) <= TAU_GEOM && p.v.dist(v) <= TAU_GEOM)
        {
            let slack_primal = (gauge_unchecked(k, u) - 1.0)
                .abs()
                .max((gauge_unchecked(l, u) - 1.0).abs());
            let slack_dual = (k.support_value(v) - 1.0)
                .abs()
                .max((l.support_value(v) - 1.0).abs());
            out.push(ContactPair {
                u,
                v,
                slack_primal,
                slack_dual,
            });
        }
    };
    for &q in k.vertices() {
        for &(n, h) in &planes {
            if (n.dot(q) - h).abs() <= tol {
                push(q, n);
            }
        }
    }
    // vertices of L on the relative interior of an edge of K
    for i in 0..k.len() {
        let (a, b) = k.edge(i);
        let (m, g) = k.edge_halfplane(i);
        let len = a.dist(b);
        let dir = (b - a) * (1.0 / len);
        for &p in l.vertices() {
            let t = (p - a).dot(dir);
            if (m.dot(p) - g).abs() <= tol
                && t > tol
                && t < len - tol
                && l.support_value(m) <= g + tol
            {
                push(p, m);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoContacts);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_in_diamond_rotated() {
        // K = diamond, L = square: four vertex-on-vertex contacts, each
        // yielding both extreme rays of the square's normal cone.
        let k = ConvexPolygon::from_coords(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
            .unwrap();
        let l = ConvexPolygon::from_coords(&[[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])
            .unwrap();
        let c = extract_contacts(&k, &l, 1e-9).unwrap();
        assert_eq!(c.len(), 4);
        let c = extract_contacts(&l.scale(0.5), &k, 1e-9).unwrap();
        assert_eq!(c.len(), 4);
        for p in &c {
            assert!(
                (p.u.dot(p.v) - 1.0).abs() < 1e-14
                    && p.slack_primal < 1e-14
                    && p.slack_dual < 1e-14
            );
        }
    }

    #[test]
    fn strictly_inside_has_none() {
        let l = ConvexPolygon::regular(6, 1.0, Point::ORIGIN, 0.0).unwrap();
        assert_eq!(
            extract_contacts(&l.scale(0.5), &l, 1e-9),
            Err(Error::NoContacts)
        );
    }
}
