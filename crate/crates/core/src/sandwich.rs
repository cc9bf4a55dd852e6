//! Gauges, enclosing scales and the asymmetry constant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homothety::min_enclosing_homothet;
use crate::optim::NelderMead;
use crate::polygon::{contains, scale_negate, ConvexPolygon, Direction, Point};
use crate::tolerance::{TAU_CERT, TAU_GEOM};

fn require_origin_interior(p: &ConvexPolygon) -> Result<()> {
    if p.halfplanes().any(|(_, h)| h <= TAU_GEOM) {
        return Err(Error::OriginNotInterior);
    }
    Ok(())
}

/// Minkowski functional `inf{t ≥ 0 : q ∈ t P}`. Requires `0 ∈ int P`.
pub fn gauge(p: &ConvexPolygon, q: Point) -> Result<f64> {
    require_origin_interior(p)?;
    Ok(gauge_unchecked(p, q))
}

pub(crate) fn gauge_unchecked(p: &ConvexPolygon, q: Point) -> f64 {
    p.halfplanes()
        .map(|(n, h)| n.dot(q) / h)
        .fold(0.0, f64::max)
}

/// Smallest `r` with `L ⊂ r K`, together with the vertex of `L` and the
/// edge normal of `K` attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichRatio {
    pub r: f64,
    pub direction_witness: Direction,
    pub point_witness: Point,
}

pub fn min_enclosing_scale(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<SandwichRatio> {
    require_origin_interior(k)?;
    let planes: Vec<(Point, f64)> = k.halfplanes().collect();
    let mut best = (f64::NEG_INFINITY, Point::ORIGIN, planes[0].0);
    for &q in l.vertices() {
        for &(n, h) in &planes {
            let t = n.dot(q) / h;
            if t > best.0 {
                best = (t, q, n);
            }
        }
    }
    Ok(SandwichRatio {
        r: best.0.max(0.0),
        direction_witness: Direction::try_from(best.2)?,
        point_witness: best.1,
    })
}

impl SandwichRatio {
    /// `L ⊂ r K` holds, and fails once `r` is lowered by `1e-6`.
    pub fn verify(&self, k: &ConvexPolygon, l: &ConvexPolygon) -> bool {
        if !(self.r > 0.0) {
            return false;
        }
        let fits = contains(&k.scale(self.r), l, TAU_GEOM);
        let tight = self.r <= 1e-6 || !contains(&k.scale(self.r - 1e-6), l, 0.0);
        fits && tight
    }
}

/// `K ⊂ −r K + v` with `r` minimal. `center` is the point `c` with
/// `K − c ⊂ −r (K − c)`, so `v = (1 + r) c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Asymmetry {
    pub r: f64,
    pub v: Point,
    pub center: Point,
    pub verified: bool,
}

impl Asymmetry {
    fn new(k: &ConvexPolygon, r: f64, center: Point) -> Result<Self> {
        let v = center * (1.0 + r);
        let outer = scale_negate(k, r, v)?;
        let verified = contains(&outer, k, TAU_CERT);
        Ok(Asymmetry {
            r,
            v,
            center,
            verified,
        })
    }
}

/// Exact asymmetry constant from the enclosing-homothet linear program.
pub fn asymmetry_constant(k: &ConvexPolygon) -> Result<Asymmetry> {
    let neg = scale_negate(k, 1.0, Point::ORIGIN)?;
    let (r, w) = min_enclosing_homothet(&neg, k);
    Asymmetry::new(k, r, w * (1.0 / (1.0 + r)))
}

/// `max_q gauge_{−(K − c)}(q − c)` over vertices `q`; a large penalty
/// outside the interior.
fn asymmetry_at(k: &ConvexPolygon, c: Point) -> f64 {
    let mut r: f64 = 0.0;
    for (n, h) in k.halfplanes() {
        let hc = h - n.dot(c);
        if hc <= 0.0 {
            return 1e6 * (1.0 - hc);
        }
        for &q in k.vertices() {
            r = r.max(n.dot(c - q) / hc);
        }
    }
    r
}

/// Direct minimisation of `c ↦ r(c)` by Nelder–Mead from the centroid, the
/// points two thirds of the way to each vertex, and a few interior
/// barycentres. Slower than [`asymmetry_constant`], which it cross-checks.
pub fn asymmetry_constant_direct(k: &ConvexPolygon) -> Result<Asymmetry> {
    let g = k.centroid();
    let mut starts = vec![g];
    starts.extend(k.vertices().iter().map(|&q| g.lerp(q, 2.0 / 3.0)));
    let n = k.len();
    for i in 0..n {
        starts.push((g + k.vertex(i) + k.vertex(i + 1)) * (1.0 / 3.0));
    }
    starts.truncate(16);
    let nm = NelderMead {
        initial_size: 0.1 * k.diameter(),
        ..NelderMead::default()
    };
    let mut best = (f64::INFINITY, g);
    for s in starts {
        let res = nm.minimize(
            |x: &[f64]| asymmetry_at(k, Point::new(x[0], x[1])),
            &[s.x, s.y],
        );
        if res.f < best.0 {
            best = (res.f, Point::new(res.x[0], res.x[1]));
        }
    }
    Asymmetry::new(k, best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> ConvexPolygon {
        ConvexPolygon::regular(5, 1.0, Point::ORIGIN, 0.0).unwrap()
    }

    #[test]
    fn gauge_of_square() {
        let sq = ConvexPolygon::from_coords(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
            .unwrap();
        assert!((gauge(&sq, Point::new(0.5, -2.0)).unwrap() - 2.0).abs() < 1e-15);
        let off = sq.translate(Point::new(1.0, 0.0));
        assert_eq!(gauge(&off, Point::ORIGIN), Err(Error::OriginNotInterior));
    }

    #[test]
    fn enclosing_scale_triangle_in_negative() {
        let t = ConvexPolygon::regular(3, 1.0, Point::ORIGIN, 0.3).unwrap();
        let neg = scale_negate(&t, 1.0, Point::ORIGIN).unwrap();
        let s = min_enclosing_scale(&t, &neg).unwrap();
        assert!((s.r - 2.0).abs() < 1e-12);
        assert!(s.verify(&t, &neg));
    }

    #[test]
    fn asymmetry_of_triangle_and_symmetric() {
        let t = ConvexPolygon::from_coords(&[[0.0, 0.0], [3.0, 0.2], [1.0, 2.0]]).unwrap();
        let a = asymmetry_constant(&t).unwrap();
        assert!((a.r - 2.0).abs() < 1e-10 && a.verified);
        assert!(a.center.dist(t.centroid()) < 1e-9);
        let h = ConvexPolygon::regular(6, 1.0, Point::new(0.2, 0.1), 0.0).unwrap();
        let a = asymmetry_constant(&h).unwrap();
        assert!((a.r - 1.0).abs() < 1e-10 && a.verified);
    }

    #[test]
    fn pentagon_direct_matches_grid() {
        let p = pentagon();
        let direct = asymmetry_constant_direct(&p).unwrap();
        let exact = asymmetry_constant(&p).unwrap();
        assert!(
            (direct.r - exact.r).abs() < 1e-6,
            "{} vs {}",
            direct.r,
            exact.r
        );
        // regular pentagon: circumradius over inradius
        let expect = 1.0 / (std::f64::consts::PI / 5.0).cos();
        assert!((exact.r - expect).abs() < 1e-10);
        let mut grid = f64::INFINITY;
        for i in 0..=200 {
            for j in 0..=200 {
                let c = Point::new(-0.2 + 0.4 * i as f64 / 200.0, -0.2 + 0.4 * j as f64 / 200.0);
                grid = grid.min(asymmetry_at(&p, c));
            }
        }
        assert!(grid >= exact.r - 1e-12 && grid - exact.r < 1e-3);
    }
}
