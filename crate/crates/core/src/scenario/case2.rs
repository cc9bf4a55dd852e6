//! Four contact pairs with four or two outer contacts, and the pentagon
//! remark.

use crate::distance::{banach_mazur_distance, grunbaum_distance, DistanceOptions};
use crate::error::{Error, Result};
use crate::john::{
    boundary_contacts, check_glmp, check_john_certificate, dual_contact_hull_check, hull_distance,
    recenter_search,
};
use crate::polygon::{apply_affine, scale_negate, AffineMap, ConvexPolygon, Point};
use crate::sandwich::asymmetry_constant;
use crate::scenario::{Assertion, ScenarioReport};
use crate::tolerance::{TAU_CERT, TAU_DET, TAU_GEOM};

/// `m = 4`, `s = 2`: outer contacts `x`, `y`; `u₃, u₄` the pairs whose
/// contact lines meet at `x`, `u₁, u₂` those meeting at `y`, with
/// `u₁u₂ ∥ u₃u₄`.
#[derive(Debug, Clone)]
pub struct Case2bConfig {
    pub k: ConvexPolygon,
    pub l: ConvexPolygon,
    pub x: Point,
    pub y: Point,
    pub u: [Point; 4],
}

impl Default for Case2bConfig {
    fn default() -> Self {
        let k = ConvexPolygon::from_coords(&[
            [1.0, -1.0],
            [1.0, 1.0],
            [0.0, 1.4],
            [-1.0, 1.0],
            [-1.0, -1.0],
            [0.0, -1.4],
        ])
        .expect("fixture");
        let l = ConvexPolygon::from_coords(&[
            [2.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.6],
            [-1.0, 1.0],
            [-2.0, 0.0],
            [-1.0, -1.0],
            [0.0, -1.6],
            [1.0, -1.0],
        ])
        .expect("fixture");
        Case2bConfig {
            k,
            l,
            x: Point::new(2.0, 0.0),
            y: Point::new(-2.0, 0.0),
            u: [
                Point::new(-1.0, 1.0),
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
            ],
        }
    }
}

/// True iff the open segments `(p, q)` and `(r, s)` cross at one point.
fn crosses(p: Point, q: Point, r: Point, s: Point) -> bool {
    let d1 = (q - p).cross(r - p);
    let d2 = (q - p).cross(s - p);
    let d3 = (s - r).cross(p - r);
    let d4 = (s - r).cross(q - r);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Shrinks by `λ = 1 − ε/|x − o|` along `x − y` about the midpoint `o` and
/// stretches across by the least `μ` that moves every `T(u_i)` across the
/// line through `u_i` and its outer contact by `ε·10⁻²`.
pub fn case2b_trapezoid_perturb(
    cfg: &Case2bConfig,
    eps: f64,
) -> Result<(ConvexPolygon, Vec<Assertion>)> {
    let o = (cfg.x + cfg.y) * 0.5;
    let half = cfg.x.dist(o);
    if !(0.0..half).contains(&eps) {
        return Err(Error::ParameterOutOfRange(format!("eps = {eps}")));
    }
    let d = (cfg.x - o) * (1.0 / half);
    let e = d.perp();
    let lambda = 1.0 - eps / half;
    let margin = eps * 1e-2;
    let map = |mu: f64| {
        let m = |q: Point| d * (lambda * q.dot(d)) + e * (mu * q.dot(e));
        let (c1, c2) = (m(Point::new(1.0, 0.0)), m(Point::new(0.0, 1.0)));
        let lin = AffineMap::linear(c1.x, c2.x, c1.y, c2.y);
        AffineMap::new([[lin.m11, lin.m12], [lin.m21, lin.m22]], o - lin.apply(o))
    };
    // T(u_i) beyond the line through u_i and its outer contact
    let beyond = |t: &AffineMap, u: Point, corner: Point| {
        let mut n = (u - corner).perp();
        n = n * (1.0 / n.norm());
        if n.dot(o - corner) > 0.0 {
            n = n * -1.0;
        }
        n.dot(t.apply(u) - corner)
    };
    let corners = [cfg.y, cfg.y, cfg.x, cfg.x];
    let outside = |mu: f64| {
        let t = map(mu);
        cfg.u
            .iter()
            .zip(corners)
            .all(|(&u, c)| beyond(&t, u, c) >= margin)
    };
    let mu = if eps == 0.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (1.0, 2.0);
        if !outside(hi) {
            return Err(Error::EpsilonTooLarge(eps));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if outside(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let t = map(mu);
    let neg2k = scale_negate(&cfg.k, 2.0, Point::ORIGIN)?;
    let lp = apply_affine(&t, &cfg.l)?;
    let overshoot = -neg2k.containment_slack(&lp);
    if overshoot > TAU_CERT {
        return Err(Error::EpsilonTooLarge(eps));
    }
    let tu: Vec<Point> = cfg.u.iter().map(|&u| t.apply(u)).collect();
    let (tx, ty) = (t.apply(cfg.x), t.apply(cfg.y));
    let mut out = vec![Assertion::flag(
        "map is orientation preserving and invertible",
        t.det() > TAU_DET,
    )];
    let dir = cfg.u[0] - cfg.u[1];
    let parallel =
        ((tu[0] - tu[1]).cross(dir).abs() + (tu[3] - tu[2]).cross(dir).abs()) / dir.norm();
    out.push(Assertion::new(
        "T(u1)T(u2), T(u3)T(u4) parallel to u1u2",
        parallel,
    ));
    if eps > 0.0 {
        let (s_lo, s_hi) = (cfg.u[0].dot(d), cfg.u[3].dot(d));
        let between = tu
            .iter()
            .all(|p| p.dot(d) > s_lo.min(s_hi) && p.dot(d) < s_lo.max(s_hi));
        out.push(Assertion::flag(
            "T(u_i) strictly between the lines u1u2 and u3u4",
            between,
        ));
        let bullet2 = hull_distance(&[cfg.x, cfg.u[2], cfg.u[3]], tx)
            .max(hull_distance(&[cfg.y, cfg.u[0], cfg.u[1]], ty));
        out.push(Assertion::new(
            "T(x) ∈ conv{x,u3,u4}, T(y) ∈ conv{y,u1,u2}",
            bullet2,
        ));
        let crossing = [
            (tx, tu[2], cfg.x, cfg.u[2]),
            (tx, tu[3], cfg.x, cfg.u[3]),
            (ty, tu[0], cfg.y, cfg.u[0]),
            (ty, tu[1], cfg.y, cfg.u[1]),
        ]
        .iter()
        .all(|&(p, q, r, s)| crosses(p, q, r, s));
        out.push(Assertion::flag(
            "image edges cross [x,u3], [x,u4], [y,u1], [y,u2]",
            crossing,
        ));
    }
    out.push(Assertion::new(
        "|x − T(x)| = ε",
        (cfg.x.dist(tx) - eps).abs(),
    ));
    out.push(Assertion::inside("K ⊂ L'", &lp, &cfg.k));
    out.push(Assertion::new("L' ⊂ −2K", overshoot));
    let (contacts, segment) = boundary_contacts(&lp, &neg2k, TAU_GEOM);
    out.push(Assertion::new(
        "no contacts of ∂L' and ∂(−2K)",
        contacts.len() as f64 + if segment { 1.0 } else { 0.0 },
    ));
    let dual = dual_contact_hull_check(&lp, &neg2k)?;
    out.push(Assertion::separated(
        "0 ∉ conv(∂L'° ∩ ∂(−2K)°)",
        dual.distance,
    ));
    Ok((lp, out))
}

pub(crate) fn case2b_report(
    k: Option<ConvexPolygon>,
    l: Option<ConvexPolygon>,
    eps: f64,
) -> Result<ScenarioReport> {
    let mut cfg = Case2bConfig::default();
    if let Some(k) = k {
        cfg.k = k;
    }
    if let Some(l) = l {
        cfg.l = l;
    }
    let mut rep = ScenarioReport::new("case2b");
    rep.parameters.insert("eps".into(), eps);
    let (z, cert) = recenter_search(&cfg.k, &cfg.l)?;
    rep.check(Assertion::new("John position at 0", z.norm()));
    rep.check(Assertion::new(
        "certificate",
        check_john_certificate(&cert).worst,
    ));
    let glmp = check_glmp(&cfg.k, &cfg.l, &cert)?;
    rep.check(Assertion::new(
        "two outer contacts x, y",
        (glmp.contacts.len() as f64 - 2.0).abs(),
    ));
    let (lp, checks) = case2b_trapezoid_perturb(&cfg, eps)?;
    rep.extend(checks);
    rep.body("K", &cfg.k);
    rep.body("L", &cfg.l);
    rep.body("L'", &lp);
    rep.body("−2K", &scale_negate(&cfg.k, 2.0, Point::ORIGIN)?);
    rep.point("x", cfg.x);
    rep.point("y", cfg.y);
    for (i, &u) in cfg.u.iter().enumerate() {
        rep.point(&format!("u{}", i + 1), u);
    }
    Ok(rep)
}

/// Distances come from a numerical search; compare them at the engine's
/// accuracy rather than at `τ_cert`.
fn excess(r: f64, target: f64) -> f64 {
    ((r - target).abs() - ENGINE_TOL).max(0.0)
}

const ENGINE_TOL: f64 = 1e-3;

/// Four outer contacts: checks that the diamond-in-square configuration
/// has quadrilateral bodies and that a parallelogram is at Grünbaum distance
/// 2 from a triangle.
pub fn case2a_check(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    opts: &DistanceOptions,
) -> Result<Vec<Assertion>> {
    let mut out = vec![Assertion::flag(
        "K and L are quadrilaterals",
        k.len() == 4 && l.len() == 4,
    )];
    let (z, cert) = recenter_search(k, l)?;
    out.push(Assertion::new("John position at 0", z.norm()));
    out.push(Assertion::new(
        "four pairs",
        (cert.len() as f64 - 4.0).abs(),
    ));
    out.push(Assertion::new(
        "certificate",
        check_john_certificate(&cert).worst,
    ));
    let glmp = check_glmp(k, l, &cert)?;
    out.push(Assertion::new("L ⊂ −2K", (-glmp.worst_slack).max(0.0)));
    out.push(Assertion::new(
        "four outer contacts",
        (glmp.contacts.len() as f64 - 4.0).abs(),
    ));
    let tri = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])?;
    let g = grunbaum_distance(l, &tri, opts)?;
    out.push(Assertion::flag("d_G witness verified", g.verified));
    out.push(Assertion::new(
        "d_G(parallelogram, triangle) = 2 within 1e-3",
        excess(g.r, 2.0),
    ));
    Ok(out)
}

pub(crate) fn case2a_report(seed: u64, restarts: usize) -> Result<ScenarioReport> {
    let k = ConvexPolygon::from_coords(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])?;
    let l = ConvexPolygon::from_coords(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])?;
    let opts = DistanceOptions {
        seed,
        restarts,
        ..Default::default()
    };
    let mut rep = ScenarioReport::new("case2a");
    rep.extend(case2a_check(&k, &l, &opts)?);
    rep.body("K", &k);
    rep.body("L", &l);
    rep.body("−2K", &scale_negate(&k, 2.0, Point::ORIGIN)?);
    Ok(rep)
}

/// Regular pentagon against a triangle: Banach–Mazur distance `1 + √5/2`,
/// Grünbaum distance 2.
pub(crate) fn pentagon_report(seed: u64, restarts: usize) -> Result<ScenarioReport> {
    let pent = ConvexPolygon::regular(5, 1.0, Point::ORIGIN, std::f64::consts::FRAC_PI_2)?;
    let tri = ConvexPolygon::regular(3, 1.0, Point::ORIGIN, std::f64::consts::FRAC_PI_2)?;
    let opts = DistanceOptions {
        seed,
        restarts,
        ..Default::default()
    };
    let mut rep = ScenarioReport::new("remark_pentagon");
    let bm = banach_mazur_distance(&pent, &tri, &opts)?;
    rep.check(Assertion::flag(
        "Banach–Mazur witness verified",
        bm.verified,
    ));
    rep.check(Assertion::new(
        "d(pentagon, triangle) = 1 + √5/2 within 1e-3",
        excess(bm.r, 1.0 + 5f64.sqrt() / 2.0),
    ));
    let g = grunbaum_distance(&pent, &tri, &opts)?;
    rep.check(Assertion::flag("Grünbaum witness verified", g.verified));
    rep.check(Assertion::new(
        "d_G(pentagon, triangle) = 2 within 1e-3",
        excess(g.r, 2.0),
    ));
    let asym = asymmetry_constant(&tri)?;
    rep.check(Assertion::new("triangle asymmetry 2", (asym.r - 2.0).abs()));
    let inner = pent.translate(bm.shift_inner);
    rep.body("K + u", &inner);
    rep.body("L", &apply_affine(&bm.map, &tri.translate(bm.shift_outer))?);
    rep.body("r(K + u)", &inner.scale(bm.r));
    rep.parameters.insert("d".into(), bm.r);
    rep.parameters.insert("d_G".into(), g.r);
    Ok(rep)
}
