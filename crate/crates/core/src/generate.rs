//! Seeded random polygons by class.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::polygon::{AffineMap, ConvexPolygon, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonClass {
    Triangle,
    Parallelogram,
    Quadrilateral,
    Pentagon,
    SymmetricHexagon,
    /// Centrally symmetric with 4 to 12 vertices.
    Symmetric,
    /// Any convex polygon with 4 to 9 vertices.
    NonTriangle,
}

impl PolygonClass {
    pub fn sample<R: Rng>(self, rng: &mut R) -> ConvexPolygon {
        let p = match self {
            PolygonClass::Triangle => random_ngon(rng, 3),
            PolygonClass::Parallelogram => square(),
            PolygonClass::Quadrilateral => random_ngon(rng, 4),
            PolygonClass::Pentagon => random_ngon(rng, 5),
            PolygonClass::SymmetricHexagon => random_symmetric(rng, 3),
            PolygonClass::Symmetric => {
                let k = rng.random_range(2..=6);
                random_symmetric(rng, k)
            }
            PolygonClass::NonTriangle => {
                let n = rng.random_range(4..=9);
                random_ngon(rng, n)
            }
        };
        random_affine(rng).apply_to(&p)
    }
}

fn square() -> ConvexPolygon {
    ConvexPolygon::from_coords(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
        .expect("square")
}

/// Convex `n`-gon from sorted random angles and radii, resampled until the
/// hull keeps all `n` points and no angle is nearly flat.
pub fn random_ngon<R: Rng>(rng: &mut R, n: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles
            .iter()
            .map(|&t| Point::polar(t) * rng.random_range(0.6..1.0))
            .collect();
        if let Ok(p) = ConvexPolygon::new(&pts) {
            if p.len() == n && well_shaped(&p) {
                return p;
            }
        }
    }
}

/// Centrally symmetric `2k`-gon about the origin.
pub fn random_symmetric<R: Rng>(rng: &mut R, k: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..k)
            .map(|_| rng.random_range(0.0..std::f64::consts::PI))
            .collect();
        angles.sort_by(f64::total_cmp);
        let half: Vec<Point> = angles
            .iter()
            .map(|&t| Point::polar(t) * rng.random_range(0.6..1.0))
            .collect();
        let pts: Vec<Point> = half
            .iter()
            .copied()
            .chain(half.iter().map(|&p| -p))
            .collect();
        if let Ok(p) = ConvexPolygon::new(&pts) {
            if p.len() == 2 * k && well_shaped(&p) {
                return p;
            }
        }
    }
}

/// Rejects slivers: every turn is at least ~3° and every edge is not tiny.
fn well_shaped(p: &ConvexPolygon) -> bool {
    let n = p.len();
    let d = p.diameter();
    (0..n).all(|i| {
        let (a, b, c) = (p.vertex(i), p.vertex(i + 1), p.vertex(i + 2));
        let e1 = b - a;
        let e2 = c - b;
        e1.norm() > 0.02 * d && e1.cross(e2) / (e1.norm() * e2.norm()) > 0.05
    }) && p.area() > 0.05 * d * d
}

/// Random orientation-preserving affine map with bounded distortion.
pub fn random_affine<R: Rng>(rng: &mut R) -> AffineMap {
    let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let s: f64 = rng.random_range(-0.5..0.5);
    let h = rng.random_range(-0.5..0.5);
    let scale = rng.random_range(0.5..2.0);
    let shear = AffineMap::linear(scale * s.exp(), scale * h, 0.0, scale * (-s).exp());
    let t = Point::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    AffineMap::translation(t).compose(&AffineMap::rotation(theta).compose(&shear))
}

impl AffineMap {
    /// Image of a polygon under a map known to be invertible.
    pub fn apply_to(&self, p: &ConvexPolygon) -> ConvexPolygon {
        crate::polygon::apply_affine(self, p).expect("invertible map")
    }
}
