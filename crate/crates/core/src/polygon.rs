//! Planar convex polygon primitives.
//!
//! Polygons are stored as strictly convex, counterclockwise vertex lists.
//! Every constructor canonicalizes its input through [`convex_hull`], so
//! collinear and duplicate vertices are dropped rather than rejected.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{TAU_DET, TAU_GEOM};

/// A point (or vector) of the plane. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta` (radians).
    #[inline]
    pub fn polar(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by a quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A nonzero vector, used for linear functionals `x ↦ ⟨x, d⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        if !(dx.is_finite() && dy.is_finite()) || (dx == 0.0 && dy == 0.0) {
            return Err(Error::DegenerateInput(format!(
                "zero or non-finite direction ({dx}, {dy})"
            )));
        }
        Ok(Self { dx, dy })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn vec(&self) -> Point {
        Point::new(self.dx, self.dy)
    }
}

impl TryFrom<Point> for Direction {
    type Error = Error;
    fn try_from(p: Point) -> Result<Self> {
        Direction::new(p.x, p.y)
    }
}

impl TryFrom<[f64; 2]> for Direction {
    type Error = Error;
    fn try_from(a: [f64; 2]) -> Result<Self> {
        Direction::new(a[0], a[1])
    }
}

impl From<Direction> for [f64; 2] {
    fn from(d: Direction) -> Self {
        [d.dx, d.dy]
    }
}

/// Affine map `p ↦ M p + t` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "AffineMapRepr", into = "AffineMapRepr")]
pub struct AffineMap {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    pub t1: f64,
    pub t2: f64,
}

#[derive(Serialize, Deserialize)]
struct AffineMapRepr {
    linear: [[f64; 2]; 2],
    translation: [f64; 2],
}

impl From<AffineMapRepr> for AffineMap {
    fn from(r: AffineMapRepr) -> Self {
        AffineMap {
            m11: r.linear[0][0],
            m12: r.linear[0][1],
            m21: r.linear[1][0],
            m22: r.linear[1][1],
            t1: r.translation[0],
            t2: r.translation[1],
        }
    }
}

impl From<AffineMap> for AffineMapRepr {
    fn from(m: AffineMap) -> Self {
        AffineMapRepr {
            linear: [[m.m11, m.m12], [m.m21, m.m22]],
            translation: [m.t1, m.t2],
        }
    }
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        m11: 1.0,
        m12: 0.0,
        m21: 0.0,
        m22: 1.0,
        t1: 0.0,
        t2: 0.0,
    };

    pub fn new(linear: [[f64; 2]; 2], translation: Point) -> Self {
        AffineMap {
            m11: linear[0][0],
            m12: linear[0][1],
            m21: linear[1][0],
            m22: linear[1][1],
            t1: translation.x,
            t2: translation.y,
        }
    }

    pub fn linear(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        AffineMap {
            m11,
            m12,
            m21,
            m22,
            t1: 0.0,
            t2: 0.0,
        }
    }

    pub fn translation(t: Point) -> Self {
        AffineMap {
            t1: t.x,
            t2: t.y,
            ..Self::IDENTITY
        }
    }

    /// Homothety `p ↦ s p + t`.
    pub fn homothety(s: f64, t: Point) -> Self {
        AffineMap {
            m11: s,
            m12: 0.0,
            m21: 0.0,
            m22: s,
            t1: t.x,
            t2: t.y,
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::linear(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn shift(&self) -> Point {
        Point::new(self.t1, self.t2)
    }

    pub fn linear_part(&self) -> AffineMap {
        AffineMap {
            t1: 0.0,
            t2: 0.0,
            ..*self
        }
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m11 * p.x + self.m12 * p.y + self.t1,
            self.m21 * p.x + self.m22 * p.y + self.t2,
        )
    }

    #[inline]
    pub fn apply_linear(&self, p: Point) -> Point {
        Point::new(
            self.m11 * p.x + self.m12 * p.y,
            self.m21 * p.x + self.m22 * p.y,
        )
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let t = self.apply(inner.shift());
        AffineMap {
            m11: self.m11 * inner.m11 + self.m12 * inner.m21,
            m12: self.m11 * inner.m12 + self.m12 * inner.m22,
            m21: self.m21 * inner.m11 + self.m22 * inner.m21,
            m22: self.m21 * inner.m12 + self.m22 * inner.m22,
            t1: t.x,
            t2: t.y,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.det();
        if d.abs() <= TAU_DET || !d.is_finite() {
            return Err(Error::SingularMap(d));
        }
        let lin = AffineMap::linear(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d);
        let t = lin.apply(-self.shift());
        Ok(AffineMap {
            t1: t.x,
            t2: t.y,
            ..lin
        })
    }

    /// The affine map sending `src[i]` to `dst[i]` for `i = 0, 1, 2`.
    pub fn from_triangles(src: [Point; 3], dst: [Point; 3]) -> Result<AffineMap> {
        let s = AffineMap::new(
            [
                [src[1].x - src[0].x, src[2].x - src[0].x],
                [src[1].y - src[0].y, src[2].y - src[0].y],
            ],
            src[0],
        );
        let d = AffineMap::new(
            [
                [dst[1].x - dst[0].x, dst[2].x - dst[0].x],
                [dst[1].y - dst[0].y, dst[2].y - dst[0].y],
            ],
            dst[0],
        );
        Ok(d.compose(&s.inverse()?))
    }

    /// Largest absolute entry difference, translation included.
    pub fn max_abs_diff(&self, o: &AffineMap) -> f64 {
        [
            self.m11 - o.m11,
            self.m12 - o.m12,
            self.m21 - o.m21,
            self.m22 - o.m22,
            self.t1 - o.t1,
            self.t2 - o.t2,
        ]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Strictly convex polygon with counterclockwise vertices.
///
/// Serialized as `{"vertices": [[x, y], ...]}`; any vertex order is accepted
/// on load and the hull is taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonRepr> for ConvexPolygon {
    type Error = Error;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        convex_hull(&r.vertices)
    }
}

impl From<ConvexPolygon> for PolygonRepr {
    fn from(p: ConvexPolygon) -> Self {
        PolygonRepr {
            vertices: p.vertices,
        }
    }
}

/// Convex hull by Andrew's monotone chain.
///
/// Points within [`TAU_GEOM`] of a hull edge through their neighbours are
/// treated as non-extreme and dropped.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("non-finite point {p}")));
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.dist(*b) <= TAU_GEOM);
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "{} distinct points",
            pts.len()
        )));
    }
    // `o → a → p` must turn strictly left by more than TAU_GEOM in distance.
    let keeps = |o: Point, a: Point, p: Point| {
        let base = (p - o).norm();
        (a - o).cross(p - o) < -TAU_GEOM * base || base == 0.0
    };
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && !keeps(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && !keeps(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    // the chain above is clockwise for `keeps` = right turn; flip to CCW
    hull.reverse();
    dedup_cyclic(&mut hull);
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("all points collinear".into()));
    }
    let poly = ConvexPolygon { vertices: hull };
    if poly.signed_area() <= 0.0 {
        return Err(Error::DegenerateInput("zero-area hull".into()));
    }
    Ok(poly)
}

fn dedup_cyclic(v: &mut Vec<Point>) {
    v.dedup_by(|a, b| a.dist(*b) <= TAU_GEOM);
    while v.len() > 1 && v[0].dist(v[v.len() - 1]) <= TAU_GEOM {
        v.pop();
    }
}

impl ConvexPolygon {
    /// Hull of `points`; see [`convex_hull`].
    pub fn new(points: &[Point]) -> Result<Self> {
        convex_hull(points)
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        let pts: Vec<Point> = coords.iter().map(|&c| c.into()).collect();
        convex_hull(&pts)
    }

    /// Regular `n`-gon with circumradius `radius`, center `center`, first
    /// vertex at angle `phase`.
    pub fn regular(n: usize, radius: f64, center: Point, phase: f64) -> Result<Self> {
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                center + Point::polar(phase + std::f64::consts::TAU * k as f64 / n as f64) * radius
            })
            .collect();
        convex_hull(&pts)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Outward unit normal of edge `i` and its offset `h` so the edge lies on
    /// `⟨x, n⟩ = h` and the polygon on `⟨x, n⟩ ≤ h`.
    pub fn edge_halfplane(&self, i: usize) -> (Point, f64) {
        let (a, b) = self.edge(i);
        let d = b - a;
        let n = Point::new(d.y, -d.x) * (1.0 / d.norm());
        (n, n.dot(a))
    }

    pub fn halfplanes(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        (0..self.len()).map(move |i| self.edge_halfplane(i))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn signed_area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Shoelace area; strictly positive for valid polygons.
    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let o = self.vertices[0];
        let mut acc = Point::ORIGIN;
        let mut total = 0.0;
        for i in 1..self.len() - 1 {
            let a = self.vertices[i] - o;
            let b = self.vertices[i + 1] - o;
            let w = a.cross(b);
            acc += (a + b) * (w / 3.0);
            total += w;
        }
        o + acc * (1.0 / total)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, &p) in self.vertices.iter().enumerate() {
            for &q in &self.vertices[i + 1..] {
                d = d.max(p.dist(q));
            }
        }
        d
    }

    /// Support value `max ⟨p, d⟩` and the lowest-index vertex attaining it.
    pub fn support(&self, d: Direction) -> (f64, Point) {
        let (v, i) = self.support_index(d.vec());
        (v, self.vertices[i])
    }

    /// Support value and argmax index for an arbitrary vector.
    pub fn support_index(&self, d: Point) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, p) in self.vertices.iter().enumerate() {
            let v = p.dot(d);
            if v > best.0 {
                best = (v, i);
            }
        }
        best
    }

    pub fn support_value(&self, d: Point) -> f64 {
        self.support_index(d).0
    }

    /// Smallest edge slack `h − ⟨q, n⟩` (negative when `q` is outside).
    pub fn point_slack(&self, q: Point) -> f64 {
        self.halfplanes()
            .map(|(n, h)| h - n.dot(q))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, q: Point, tol: f64) -> bool {
        self.point_slack(q) >= -tol
    }

    /// Worst slack of `inner`'s vertices against `self`'s edges.
    pub fn containment_slack(&self, inner: &ConvexPolygon) -> f64 {
        inner
            .vertices
            .iter()
            .map(|&q| self.point_slack(q))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translate(&self, t: Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&p| p + t).collect(),
        }
    }

    /// Homothety `p ↦ s p` about the origin, `s > 0`.
    pub fn scale(&self, s: f64) -> ConvexPolygon {
        assert!(s > 0.0, "scale factor must be positive");
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&p| p * s).collect(),
        }
    }

    /// Centre of symmetry, if the polygon is centrally symmetric within `tol`.
    pub fn symmetry_center(&self, tol: f64) -> Option<Point> {
        let n = self.len();
        if n % 2 == 1 {
            return None;
        }
        let h = n / 2;
        let o = (self.vertices[0] + self.vertices[h]) * 0.5;
        let ok = (0..h).all(|i| ((self.vertices[i] + self.vertices[i + h]) * 0.5).dist(o) <= tol);
        ok.then_some(o)
    }

    /// Vertex-set equality within `tol`, ignoring the starting index.
    pub fn same_vertices(&self, o: &ConvexPolygon, tol: f64) -> bool {
        self.len() == o.len()
            && self
                .vertices
                .iter()
                .all(|p| o.vertices.iter().any(|q| p.dist(*q) <= tol))
            && o.vertices
                .iter()
                .all(|p| self.vertices.iter().any(|q| p.dist(*q) <= tol))
    }

    /// Builds a polygon from vertices already known to be strictly convex
    /// and CCW. Falls back to the hull if they are not.
    pub(crate) fn from_ccw(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        let strictly_convex = n >= 3
            && (0..n).all(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                (b - a).cross(c - b) > TAU_GEOM * (c - a).norm() && a.dist(b) > TAU_GEOM
            });
        if strictly_convex {
            Ok(ConvexPolygon { vertices })
        } else {
            convex_hull(&vertices)
        }
    }
}

pub(crate) fn shoelace(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

/// True iff every vertex of `inner` satisfies every edge inequality of
/// `outer` with slack at least `−tol`.
pub fn contains(outer: &ConvexPolygon, inner: &ConvexPolygon, tol: f64) -> bool {
    outer.containment_slack(inner) >= -tol
}

/// Image of `p` under `t`; orientation restored when `det t < 0`.
pub fn apply_affine(t: &AffineMap, p: &ConvexPolygon) -> Result<ConvexPolygon> {
    let d = t.det();
    if d.abs() <= TAU_DET || !d.is_finite() {
        return Err(Error::SingularMap(d));
    }
    let mut v: Vec<Point> = p.vertices.iter().map(|&q| t.apply(q)).collect();
    if d < 0.0 {
        v.reverse();
    }
    ConvexPolygon::from_ccw(v)
}

/// Polar body `{x : ⟨x, y⟩ ≤ 1 ∀ y ∈ p}`.
///
/// Edge `i` of `p` (unit normal `n`, offset `h`) becomes vertex `n / h`, so
/// the result is again counterclockwise.
pub fn polar(p: &ConvexPolygon) -> Result<ConvexPolygon> {
    let planes: Vec<(Point, f64)> = p.halfplanes().collect();
    if planes.iter().any(|&(_, h)| h <= TAU_GEOM) {
        return Err(Error::OriginNotInterior);
    }
    ConvexPolygon::from_ccw(planes.into_iter().map(|(n, h)| n * (1.0 / h)).collect())
}

/// Vertex-wise `q ↦ −λ q + v`.
pub fn scale_negate(p: &ConvexPolygon, lambda: f64, v: Point) -> Result<ConvexPolygon> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::DegenerateInput(format!("homothety ratio {lambda}")));
    }
    // −λI has determinant λ² > 0: orientation is preserved.
    ConvexPolygon::from_ccw(p.vertices.iter().map(|&q| q * (-lambda) + v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::from_coords(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
    }

    #[test]
    fn hull_of_square_keeps_corners() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let h = ConvexPolygon::from_coords(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert!((h.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
            [0.5, 0.5],
            [0.5, 0.0],
            [1.0, 0.3],
        ];
        let h = ConvexPolygon::from_coords(&pts).unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn hull_rejects_degenerate_inputs() {
        assert!(matches!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 1.0]]).is_err());
        assert!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]).is_err()
        );
        assert!(ConvexPolygon::from_coords(&[[0.0, f64::NAN], [1.0, 0.0], [0.0, 1.0]]).is_err());
    }

    #[test]
    fn polar_of_square_is_diamond() {
        let d = polar(&square()).unwrap();
        let diamond =
            ConvexPolygon::from_coords(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
                .unwrap();
        assert!(d.same_vertices(&diamond, 1e-12));
        assert!(polar(&d).unwrap().same_vertices(&square(), 1e-12));
    }

    #[test]
    fn polar_requires_interior_origin() {
        let off = square().translate(Point::new(1.0, 0.0));
        assert_eq!(polar(&off), Err(Error::OriginNotInterior));
    }

    #[test]
    fn support_breaks_ties_by_lowest_index() {
        let sq = square();
        let (v, p) = sq.support(Direction::new(1.0, 0.0).unwrap());
        assert_eq!(v, 1.0);
        let first = sq.vertices().iter().position(|q| q.x == 1.0).unwrap();
        assert_eq!(p, sq.vertices()[first]);
    }

    #[test]
    fn containment_basics() {
        let sq = square();
        assert!(contains(&sq, &sq, 0.0));
        assert!(!contains(&sq, &sq.scale(2.0), 1e-9));
        assert!(contains(&sq.scale(2.0), &sq, 0.0));
    }

    #[test]
    fn affine_images() {
        let sq = square();
        assert_eq!(apply_affine(&AffineMap::IDENTITY, &sq).unwrap(), sq);
        let neg = apply_affine(&AffineMap::linear(-1.0, 0.0, 0.0, -1.0), &sq).unwrap();
        assert!(neg.same_vertices(&sq, 0.0));
        let refl = apply_affine(&AffineMap::linear(-1.0, 0.0, 0.0, 2.0), &sq).unwrap();
        assert!(refl.signed_area() > 0.0);
        assert!((refl.area() - 8.0).abs() < 1e-12);
        assert!(matches!(
            apply_affine(&AffineMap::linear(1.0, 2.0, 2.0, 4.0), &sq),
            Err(Error::SingularMap(_))
        ));
    }

    #[test]
    fn scale_negate_cases() {
        let sq = square();
        assert!(scale_negate(&sq, -1.0, Point::ORIGIN)
            .unwrap()
            .same_vertices(&sq, 0.0));
        let tri =
            ConvexPolygon::regular(3, 1.0, Point::ORIGIN, std::f64::consts::FRAC_PI_2).unwrap();
        let big = scale_negate(&tri, 2.0, Point::ORIGIN).unwrap();
        for &u in tri.vertices() {
            assert!(big.vertices().iter().any(|&q| q.dist(u * -2.0) < 1e-12));
        }
        assert!((big.area() - 4.0 * tri.area()).abs() < 1e-12);
        assert!(scale_negate(&sq, 0.0, Point::ORIGIN).is_err());
    }

    #[test]
    fn area_of_unit_shapes() {
        let tri = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.area(), 0.5);
        let c = tri.centroid();
        assert!(c.dist(Point::new(1.0 / 3.0, 1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn affine_inverse_and_triangles() {
        let m = AffineMap::new([[2.0, 1.0], [0.5, 3.0]], Point::new(1.0, -2.0));
        let id = m.compose(&m.inverse().unwrap());
        assert!(id.max_abs_diff(&AffineMap::IDENTITY) < 1e-14);
        let src = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let dst = src.map(|p| m.apply(p));
        assert!(
            AffineMap::from_triangles(src, dst)
                .unwrap()
                .max_abs_diff(&m)
                < 1e-14
        );
    }

    #[test]
    fn polygon_json_takes_hull() {
        let p: ConvexPolygon =
            serde_json::from_str(r#"{"vertices": [[0,0],[1,1],[1,0],[0,1],[0.5,0.5]]}"#).unwrap();
        assert_eq!(p.len(), 4);
        let m: AffineMap =
            serde_json::from_str(r#"{"linear": [[1,2],[3,4]], "translation": [5,6]}"#).unwrap();
        assert_eq!((m.m12, m.m21, m.t2), (2.0, 3.0, 6.0));
    }

    #[test]
    fn symmetry_center_detection() {
        let hex = ConvexPolygon::regular(6, 1.0, Point::new(2.0, 3.0), 0.1).unwrap();
        assert!(
            hex.symmetry_center(1e-9)
                .unwrap()
                .dist(Point::new(2.0, 3.0))
                < 1e-12
        );
        let tri = ConvexPolygon::regular(3, 1.0, Point::ORIGIN, 0.0).unwrap();
        assert!(tri.symmetry_center(1e-9).is_none());
    }
}
