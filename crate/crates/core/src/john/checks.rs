use serde::{Deserialize, Serialize, Serializer};

use super::{residuals, solve_john_weights, ContactPair, JohnCertificate};
use crate::error::{Error, Result};
use crate::polygon::{convex_hull, polar, scale_negate, ConvexPolygon, Direction, Point};
use crate::tolerance::{DELTA_W, TAU_CERT, TAU_GEOM};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub pass: bool,
    pub m: usize,
    pub residual_identity: f64,
    pub residual_u: f64,
    pub residual_v: f64,
    /// `max |⟨u_i, v_i⟩ − 1|`.
    pub residual_pairing: f64,
    pub weight_sum: f64,
    pub min_weight: f64,
    /// Largest of the residuals and `|Σ a_i − 2|`.
    pub worst: f64,
}

/// Recomputes every residual of `cert` from its pairs and weights.
pub fn check_john_certificate(cert: &JohnCertificate) -> CertificateCheck {
    check_john_certificate_with(cert, TAU_CERT)
}

/// [`check_john_certificate`] with residuals compared against `tol`.
pub fn check_john_certificate_with(cert: &JohnCertificate, tol: f64) -> CertificateCheck {
    let m = cert.pairs.len();
    let (ri, ru, rv) = if cert.weights.len() == m {
        residuals(&cert.pairs, &cert.weights)
    } else {
        (f64::MAX, f64::MAX, f64::MAX)
    };
    let rp = cert
        .pairs
        .iter()
        .map(|p| (p.u.dot(p.v) - 1.0).abs())
        .fold(0.0, f64::max);
    let weight_sum: f64 = cert.weights.iter().sum();
    let min_weight = cert.weights.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = [ri, ru, rv, rp, (weight_sum - 2.0).abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let finite = cert
        .pairs
        .iter()
        .all(|p| p.u.is_finite() && p.v.is_finite());
    let pass = finite && worst <= tol && min_weight >= DELTA_W && (3..=6).contains(&m);
    CertificateCheck {
        pass,
        m,
        residual_identity: ri,
        residual_u: ru,
        residual_v: rv,
        residual_pairing: rp,
        weight_sum,
        min_weight: if m == 0 { 0.0 } else { min_weight },
        worst,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub pass: bool,
    pub weights: Vec<f64>,
    /// `⟨u_i, v_j⟩` for `i ≠ j`, row-major.
    pub cross: Vec<(usize, usize, f64)>,
    pub worst: f64,
}

/// Rigidity of three-pair certificates: `a_i = 2/3`, `⟨u_i, v_j⟩ = −1/2`.
pub fn lemma4_check(cert: &JohnCertificate) -> Result<Lemma4Report> {
    if cert.pairs.len() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            got: cert.pairs.len(),
        });
    }
    let mut worst: f64 = cert
        .weights
        .iter()
        .map(|a| (a - 2.0 / 3.0).abs())
        .fold(0.0, f64::max);
    let mut cross = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let c = cert.pairs[i].u.dot(cert.pairs[j].v);
                worst = worst.max((c + 0.5).abs());
                cross.push((i, j, c));
            }
        }
    }
    Ok(Lemma4Report {
        pass: worst <= TAU_CERT,
        weights: cert.weights.clone(),
        cross,
        worst,
    })
}

/// Number of boundary coincidences, or an overlap of positive length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactSet {
    Finite(usize),
    Segment,
}

impl Serialize for ContactSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ContactSet::Finite(n) => s.serialize_u64(*n as u64),
            ContactSet::Segment => s.serialize_str("segment"),
        }
    }
}

impl<'de> Deserialize<'de> for ContactSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "segment" => Ok(ContactSet::Segment),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|n| ContactSet::Finite(n as usize))
                .ok_or_else(|| serde::de::Error::custom("bad count")),
            other => Err(serde::de::Error::custom(format!("bad contact set {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlmpReport {
    pub holds: bool,
    /// Least slack of `L − z` inside `−2(K − z)`.
    pub worst_slack: f64,
    /// Points of `∂(L − z) ∩ ∂(−2(K − z))`.
    pub contacts: Vec<Point>,
    pub s: ContactSet,
}

/// Boundary coincidences of `inner ⊂ outer`: vertices of either polygon on
/// the other's boundary, and whether some edges overlap along a segment.
pub(crate) fn boundary_contacts(
    inner: &ConvexPolygon,
    outer: &ConvexPolygon,
    tol: f64,
) -> (Vec<Point>, bool) {
    let mut pts: Vec<Point> = Vec::new();
    let mut add = |p: Point| {
        if !pts.iter().any(|q| q.dist(p) <= tol.max(TAU_GEOM)) {
            pts.push(p);
        }
    };
    for &p in inner.vertices() {
        if outer.point_slack(p).abs() <= tol {
            add(p);
        }
    }
    for &q in outer.vertices() {
        if inner.point_slack(q).abs() <= tol {
            add(q);
        }
    }
    let mut segment = false;
    for (a, b) in inner.edges() {
        for (c, d) in outer.edges() {
            let on = |p: Point| {
                let dir = d - c;
                let len = dir.norm();
                (dir.cross(p - c) / len).abs() <= tol
                    && (p - c).dot(dir) / len >= -tol
                    && (p - c).dot(dir) / len <= len + tol
            };
            if on(a) && on(b) {
                segment = true;
            }
            // overlap via the outer edge's endpoints lying on the inner edge
            let on_inner = |p: Point| {
                let dir = b - a;
                let len = dir.norm();
                (dir.cross(p - a) / len).abs() <= tol
                    && (p - a).dot(dir) / len >= -tol
                    && (p - a).dot(dir) / len <= len + tol
            };
            let hits = [on(a), on(b), on_inner(c), on_inner(d)];
            let pts_on: Vec<Point> = [a, b, c, d]
                .into_iter()
                .zip(hits)
                .filter(|(_, h)| *h)
                .map(|(p, _)| p)
                .collect();
            if pts_on.len() >= 2 {
                let span = pts_on
                    .iter()
                    .flat_map(|p| pts_on.iter().map(move |q| p.dist(*q)))
                    .fold(0.0, f64::max);
                if span > tol.max(1e-6) {
                    segment = true;
                }
            }
        }
    }
    (pts, segment)
}

/// `L ⊂ −2K` in the certificate's frame, with the boundary coincidences.
pub fn check_glmp(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    cert: &JohnCertificate,
) -> Result<GlmpReport> {
    let chk = check_john_certificate(cert);
    if !chk.pass {
        return Err(Error::CertificateInvalid(chk.worst));
    }
    let kz = k.translate(-cert.recenter);
    let lz = l.translate(-cert.recenter);
    let outer = scale_negate(&kz, 2.0, Point::ORIGIN)?;
    let worst_slack = outer.containment_slack(&lz);
    let (contacts, segment) = boundary_contacts(&lz, &outer, TAU_CERT);
    let s = if segment {
        ContactSet::Segment
    } else {
        ContactSet::Finite(contacts.len())
    };
    Ok(GlmpReport {
        holds: worst_slack >= -TAU_CERT,
        worst_slack,
        contacts,
        s,
    })
}

/// Distance from `q` to the convex hull of `pts` (`f64::MAX` when empty).
pub(crate) fn hull_distance(pts: &[Point], q: Point) -> f64 {
    if pts.is_empty() {
        return f64::MAX;
    }
    if let Ok(h) = convex_hull(pts) {
        if h.area() > 1e-14 && h.contains_point(q, 0.0) {
            return 0.0;
        }
    }
    let mut d = pts.iter().map(|p| p.dist(q)).fold(f64::INFINITY, f64::min);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.min(segment_distance(pts[i], pts[j], q));
        }
    }
    d
}

fn segment_distance(a: Point, b: Point, q: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return a.dist(q);
    }
    let t = ((q - a).dot(ab) / len2).clamp(0.0, 1.0);
    a.lerp(b, t).dist(q)
}

/// Greedily drops pairs whose `u` (or `v`) lies in the hull of the others,
/// as long as the remaining pairs still admit John weights.
pub fn irredundant_pairs(pairs: &[ContactPair]) -> Result<Vec<ContactPair>> {
    solve_john_weights(pairs)?;
    let mut cur = pairs.to_vec();
    'outer: loop {
        let redundant: Vec<usize> = (0..cur.len()).filter(|&i| is_redundant(&cur, i)).collect();
        if redundant.is_empty() {
            return Ok(cur);
        }
        for &i in &redundant {
            let mut rest = cur.clone();
            rest.remove(i);
            if solve_john_weights(&rest).is_ok() {
                cur = rest;
                continue 'outer;
            }
        }
        return Err(Error::InfeasibleWeights(f64::NAN));
    }
}

pub(crate) fn is_redundant(pairs: &[ContactPair], i: usize) -> bool {
    let others = |f: fn(&ContactPair) -> Point| -> Vec<Point> {
        pairs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| f(p))
            .collect()
    };
    hull_distance(&others(|p| p.u), pairs[i].u) <= TAU_GEOM
        || hull_distance(&others(|p| p.v), pairs[i].v) <= TAU_GEOM
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityConditionsReport {
    pub x: Point,
    /// Scaled so that `⟨x, w⟩ = −2`.
    pub w: Direction,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub holds_convu: bool,
    pub holds_convv: bool,
    pub holds_xv: bool,
    pub worst_violation: f64,
    /// `|A| ≥ 3` or `|B| ≥ 3`: three of the `v_i` (resp. `u_i`) lie on one
    /// line, which irredundant pairs rule out.
    pub collinear_flag: bool,
    pub collinearity_residual: f64,
}

/// Evaluates the three equality conditions at a contact point `x` of
/// `∂L ∩ ∂(−2K)`, given in the certificate's frame. Every minimiser `w`
/// of `⟨x, ·⟩` over `K°` yields one report.
pub fn equality_conditions(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    cert: &JohnCertificate,
    x: Point,
) -> Result<Vec<EqualityConditionsReport>> {
    let kz = k.translate(-cert.recenter);
    let lz = l.translate(-cert.recenter);
    let kp = polar(&kz)?;
    let vals: Vec<f64> = kp.vertices().iter().map(|p| x.dot(*p)).collect();
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if min > -2.0 + TAU_CERT {
        return Err(Error::NotAContactPoint(min + 2.0));
    }
    if lz.point_slack(x).abs() > TAU_CERT {
        return Err(Error::NotAContactPoint(lz.point_slack(x)));
    }
    let mut out = Vec::new();
    for (p, &val) in kp.vertices().iter().zip(&vals) {
        if val > min + TAU_CERT {
            continue;
        }
        let w = *p * (-2.0 / val);
        let (mut set_a, mut set_b) = (Vec::new(), Vec::new());
        for (i, pr) in cert.pairs.iter().enumerate() {
            if pr.u.dot(w) < 1.0 - TAU_CERT {
                set_a.push(i);
            } else {
                set_b.push(i);
            }
        }
        let us: Vec<Point> = set_b.iter().map(|&i| cert.pairs[i].u).collect();
        let vs: Vec<Point> = set_a.iter().map(|&i| cert.pairs[i].v).collect();
        let r_convu = hull_distance(&us, x * -0.5);
        let r_convv = hull_distance(&vs, w * -0.5);
        let r_xv = vs
            .iter()
            .map(|v| (x.dot(*v) - 1.0).abs())
            .fold(0.0, f64::max);
        let collinear_flag = set_a.len() >= 3 || set_b.len() >= 3;
        let collinearity_residual = if set_a.len() >= 3 {
            r_xv
        } else if set_b.len() >= 3 {
            us.iter()
                .map(|u| (u.dot(w) - 1.0).abs())
                .fold(0.0, f64::max)
        } else {
            0.0
        };
        out.push(EqualityConditionsReport {
            x,
            w: Direction::try_from(w)?,
            set_a,
            set_b,
            holds_convu: r_convu <= TAU_CERT,
            holds_convv: r_convv <= TAU_CERT,
            holds_xv: r_xv <= TAU_CERT,
            worst_violation: r_convu.max(r_convv).max(r_xv),
            collinear_flag,
            collinearity_residual,
        });
    }
    Ok(out)
}

/// Convex hull of a finite planar set, possibly degenerate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HullShape {
    Empty,
    Point { p: Point },
    Segment { a: Point, b: Point },
    Polygon { polygon: ConvexPolygon },
}

impl HullShape {
    pub(crate) fn of(pts: &[Point]) -> HullShape {
        match pts.len() {
            0 => HullShape::Empty,
            _ => match convex_hull(pts) {
                Ok(polygon) => HullShape::Polygon { polygon },
                Err(_) => {
                    // collinear: keep the two extreme points
                    let mut best = (pts[0], pts[0], 0.0);
                    for &a in pts {
                        for &b in pts {
                            if a.dist(b) > best.2 {
                                best = (a, b, a.dist(b));
                            }
                        }
                    }
                    if best.2 <= TAU_GEOM {
                        HullShape::Point { p: pts[0] }
                    } else {
                        HullShape::Segment {
                            a: best.0,
                            b: best.1,
                        }
                    }
                }
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualHullReport {
    pub holds: bool,
    /// Common support functionals, scaled to support value 1.
    pub points: Vec<Point>,
    pub hull: HullShape,
    pub distance: f64,
}

/// Whether `0 ∈ conv(∂inner° ∩ ∂outer°)` for `inner ⊂ outer` with the
/// origin interior to `inner`.
///
/// Edges of `outer` touched by `inner` contribute their polar vertex;
/// vertices of `outer` lying in `inner` contribute their whole polar edge.
pub fn dual_contact_hull_check(
    inner: &ConvexPolygon,
    outer: &ConvexPolygon,
) -> Result<DualHullReport> {
    if inner.halfplanes().any(|(_, h)| h <= TAU_GEOM) {
        return Err(Error::OriginNotInterior);
    }
    let planes: Vec<(Point, f64)> = outer.halfplanes().collect();
    let n = planes.len();
    let mut touched = vec![false; n];
    for (i, &(nrm, h)) in planes.iter().enumerate() {
        if (inner.support_value(nrm) - h).abs() <= TAU_CERT {
            touched[i] = true;
        }
    }
    // vertex i of outer joins edges i − 1 and i
    for i in 0..n {
        if inner.point_slack(outer.vertex(i)) >= -TAU_CERT {
            touched[(i + n - 1) % n] = true;
            touched[i] = true;
        }
    }
    let points: Vec<Point> = (0..n)
        .filter(|&i| touched[i])
        .map(|i| planes[i].0 * (1.0 / planes[i].1))
        .collect();
    let distance = hull_distance(&points, Point::ORIGIN);
    let hull = HullShape::of(&points);
    Ok(DualHullReport {
        holds: distance <= TAU_CERT,
        points,
        hull,
        distance,
    })
}
