//! Three contact pairs: the stretch about `u₃`, the shift-then-stretch
//! variant and the trapezoid map.

use crate::error::{Error, Result};
use crate::john::boundary_contacts;
use crate::john::dual_contact_hull_check;
use crate::polygon::{apply_affine, AffineMap, ConvexPolygon, Point};
use crate::scenario::frame::{build_case1_frame, case1b_default, case1c_default};
use crate::scenario::{Assertion, ScenarioReport};
use crate::tolerance::{TAU_CERT, TAU_DET, TAU_GEOM};

const S3: f64 = 1.732_050_807_568_877_2;

/// `k`-th point of the 2-D Halton sequence (bases 2 and 3), `k ≥ 1`.
pub fn halton(k: usize) -> (f64, f64) {
    (radical_inverse(k, 2), radical_inverse(k, 3))
}

fn radical_inverse(mut k: usize, base: usize) -> f64 {
    let (mut x, mut f) = (0.0, 1.0 / base as f64);
    while k > 0 {
        x += f * (k % base) as f64;
        k /= base;
        f /= base as f64;
    }
    x
}

fn det_assertion(t: &AffineMap) -> Assertion {
    Assertion::flag(
        "map is orientation preserving and invertible",
        t.det() > TAU_DET,
    )
}

/// Stretch about `center` (a frame point `u_i`): factor `1 − ε` towards the
/// opposite vertex and a factor `f > 1` along the side. `f` is the least
/// value that pushes the other two frame points outside `conv{a,b,c}` by
/// `ε·10⁻²` and keeps them inside the image of `L`; the latter needs
/// `f ≥ (1−ε)/(1−2ε)`.
pub fn case1b_stretch(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    center: Point,
    eps: f64,
) -> Result<(ConvexPolygon, Vec<Assertion>)> {
    if !(eps >= 0.0) {
        return Err(Error::ParameterOutOfRange(format!("eps = {eps}")));
    }
    if eps >= 0.5 {
        return Err(Error::EpsilonTooLarge(eps));
    }
    let frame = build_case1_frame(k, l)?;
    let i = frame
        .u
        .iter()
        .position(|u| u.dist(center) < TAU_GEOM)
        .ok_or_else(|| {
            Error::PreconditionViolated(format!("stretch center {center} is not a frame point"))
        })?;
    let ev = center * -1.0;
    let eh = ev.perp();
    let margin = eps * 1e-2;
    let pushed: Vec<Point> = (0..3).filter(|&j| j != i).map(|j| frame.u[j]).collect();
    // side of abc opposite to -2u_j has outer normal u_j at level 1
    let mut f: f64 = 1.0;
    for &p in &pushed {
        let d = p - center;
        let base = center + ev * ((1.0 - eps) * d.dot(ev));
        let gain = d.dot(eh) * eh.dot(p);
        f = f.max((1.0 + margin - base.dot(p)) / gain);
    }
    // the images of the sides [u_j, −2u_i] ⊂ ∂L must still pass outside u_j
    f = f.max((1.0 - eps) / (1.0 - 2.0 * eps) + margin);
    let m = |q: Point| eh * (f * q.dot(eh)) + ev * ((1.0 - eps) * q.dot(ev));
    let (c1, c2) = (m(Point::new(1.0, 0.0)), m(Point::new(0.0, 1.0)));
    let lin = AffineMap::linear(c1.x, c2.x, c1.y, c2.y);
    let t = AffineMap::new(
        [[lin.m11, lin.m12], [lin.m21, lin.m22]],
        center - lin.apply(center),
    );
    let lp = apply_affine(&t, l)?;
    let overshoot = -frame.neg2k.containment_slack(&lp);
    if overshoot > TAU_CERT {
        return Err(Error::EpsilonTooLarge(eps));
    }
    let mut out = vec![det_assertion(&t)];
    out.push(Assertion::inside("K ⊂ L'", &lp, k));
    out.push(Assertion::new("L' ⊂ −2K", overshoot));
    for (j, &p) in pushed.iter().enumerate() {
        let beyond = t.apply(p).dot(p) - 1.0;
        out.push(Assertion::new(
            format!("pushed point {} leaves conv{{a,b,c}}", j + 1),
            margin * (1.0 - 1e-9) - beyond,
        ));
    }
    let dual = dual_contact_hull_check(&lp, &frame.neg2k)?;
    out.push(Assertion::separated(
        "0 ∉ conv(∂L'° ∩ ∂(−2K)°)",
        dual.distance,
    ));
    Ok((lp, out))
}

pub(crate) fn stretch_report(
    k: Option<ConvexPolygon>,
    l: Option<ConvexPolygon>,
    eps: f64,
) -> Result<ScenarioReport> {
    let (dk, dl) = case1b_default();
    let (k, l) = (k.unwrap_or(dk), l.unwrap_or(dl));
    let frame = build_case1_frame(&k, &l)?;
    let mut rep = ScenarioReport::new("case1b_stretch");
    rep.parameters.insert("eps".into(), eps);
    rep.extend(frame.certificate_assertions());
    let before = dual_contact_hull_check(&l, &frame.neg2k)?;
    rep.check(Assertion::new(
        "0 ∈ conv(∂L° ∩ ∂(−2K)°) before",
        before.distance,
    ));
    let (lp, checks) = case1b_stretch(&k, &l, frame.u[2], eps)?;
    rep.extend(checks);
    rep.body("K", &k);
    rep.body("L", &l);
    rep.body("L'", &lp);
    rep.body("−2K", &frame.neg2k);
    for (name, p) in frame.labelled_points() {
        rep.point(name, p);
    }
    Ok(rep)
}

/// `T(x, y) = ((1−ε)/(1−2ε)·x, (1−ε)·y)`.
pub fn shift_stretch_map(eps: f64) -> AffineMap {
    AffineMap::linear((1.0 - eps) / (1.0 - 2.0 * eps), 0.0, 0.0, 1.0 - eps)
}

/// The shift-then-stretch variant, in the coordinates centred at the shifted
/// `u₃'` with unit side `[u₁, u₂]`: `T(x, y) = ((1−ε)/(1−2ε)·x, (1−ε)·y)`.
///
/// `samples` quasi-random points of `{0 ≤ x₀ ≤ r, y₀ ≥ 0, √3x₀ + y₀ < √3}`
/// plus the vertices of that region are tested against the line `bc`.
pub fn case1b_shift_stretch(eps: f64, r: f64, samples: usize) -> Result<ScenarioReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::PreconditionViolated(format!(
            "r = {r} not in (0, 1)"
        )));
    }
    if !(eps > 0.0 && eps < (1.0 - r) / 2.0) {
        return Err(Error::PreconditionViolated(format!(
            "eps = {eps} not in (0, (1 − r)/2) = (0, {})",
            (1.0 - r) / 2.0
        )));
    }
    let t = shift_stretch_map(eps);
    let sx = t.m11;
    let a = Point::new(eps - 1.0, 0.0);
    let b = Point::new(1.0 + eps, 0.0);
    let c = Point::new(eps, S3);
    let cp = Point::new(0.0, S3);
    let u1p = Point::new(0.5, S3 / 2.0);
    let u2p = Point::new(-0.5, S3 / 2.0);
    let tc = t.apply(cp);

    let mut rep = ScenarioReport::new("case1b_shift");
    rep.parameters.insert("eps".into(), eps);
    rep.parameters.insert("r".into(), r);
    rep.parameters.insert("samples".into(), samples as f64);
    rep.check(det_assertion(&t));

    // T(c') = a + s (c − a) with 0 < s < 1
    let ac = c - a;
    let s = (tc - a).dot(ac) / ac.dot(ac);
    let off_line = (tc - a).cross(ac).abs() / ac.norm();
    let outside = if s > TAU_GEOM && s < 1.0 - TAU_GEOM {
        0.0
    } else {
        1.0
    };
    rep.check(Assertion::new(
        "T(c') interior to [a, c]",
        off_line + outside,
    ));

    for (name, p) in [("u1'", u1p), ("u2'", u2p)] {
        let residual = (p - tc).cross(t.apply(p) - tc).abs();
        rep.check(Assertion::new(
            format!("T(c'), {name}, T({name}) collinear"),
            residual,
        ));
    }

    // ⟨T(x₀, y₀), normal of bc⟩ ≤ √3(1 + ε)
    let lhs = |x0: f64, y0: f64| sx * S3 * x0 + (1.0 - eps) * y0;
    let rhs = S3 * (1.0 + eps);
    let region = [(0.0, 0.0), (r, 0.0), (r, S3 * (1.0 - r)), (0.0, S3)];
    let at_vertices = region
        .iter()
        .map(|&(x, y)| lhs(x, y) - rhs)
        .fold(f64::NEG_INFINITY, f64::max);
    rep.check(Assertion::new(
        "image left of bc at region vertices",
        at_vertices,
    ));
    let mut worst = f64::NEG_INFINITY;
    let mut used = 0;
    let mut k = 1;
    while used < samples {
        let (hx, hy) = halton(k);
        k += 1;
        let (x0, y0) = (hx * r, hy * S3);
        if S3 * x0 + y0 >= S3 {
            continue;
        }
        used += 1;
        worst = worst.max(lhs(x0, y0) - rhs);
    }
    if samples > 0 {
        rep.check(Assertion::new(
            format!("image left of bc at {samples} sampled points"),
            worst,
        ));
    }

    let tri = |p: [Point; 3]| ConvexPolygon::new(&p);
    rep.body("abc", &tri([a, b, c])?);
    rep.body(
        "L'' ∩ corner",
        &apply_affine(
            &t,
            &tri([
                Point::ORIGIN,
                Point::new(r, 0.0),
                Point::new(r, S3 * (1.0 - r)),
            ])?,
        )?,
    );
    for (name, p) in [
        ("a", a),
        ("b", b),
        ("c", c),
        ("c'", cp),
        ("T(c')", tc),
        ("u1'", u1p),
        ("u2'", u2p),
    ] {
        rep.point(name, p);
    }
    Ok(rep)
}

/// Affine map fixing `b`, sending `c` to `c' ∈ [b, c]` with `|c − c'| = ε`
/// and `u₃` along `[b, a]`, scaled so that `T(u₂)`, `u₂`, `c'` are collinear.
/// It is diagonal in the oblique basis `(c − b, a − b)` at `b`.
pub fn case1c_trapezoid_map(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    eps: f64,
) -> Result<(ConvexPolygon, Vec<Assertion>)> {
    let frame = build_case1_frame(k, l)?;
    let [_, u2, u3] = frame.u;
    let (a, b, c) = (frame.a, frame.b, frame.c);
    let beta = 1.0 - eps / b.dist(c);
    if !(beta > 0.5 + 1e-3) {
        return Err(Error::ParameterOutOfRange(format!("eps = {eps}")));
    }
    let alpha = beta / (2.0 * beta - 1.0);
    let cp = b + (c - b) * beta;
    let u3p = b + (a - b) * (0.5 * alpha);
    let t = AffineMap::from_triangles([b, c, u3], [b, cp, u3p])?;
    let u2p = t.apply(u2);
    let collinear = (u2 - cp).cross(u2p - cp).abs();
    if collinear > TAU_CERT {
        return Err(Error::InconsistentConditions(collinear));
    }
    let lp = apply_affine(&t, l)?;
    let overshoot = -frame.neg2k.containment_slack(&lp);
    if overshoot > TAU_CERT {
        return Err(Error::EpsilonTooLarge(eps));
    }
    let mut out = vec![det_assertion(&t)];
    out.push(Assertion::new("T(u2), u2, c' collinear", collinear));
    let ratio = (t.apply(u2).dist(u3p) / cp.dist(b) - 0.5).abs();
    out.push(Assertion::new("trapezoid base ratio 1/2", ratio));
    let s = (u3p - a).dot(b - a) / (b - a).dot(b - a);
    let interior = if s > TAU_GEOM && s < 1.0 - TAU_GEOM {
        0.0
    } else {
        1.0
    };
    out.push(Assertion::new(
        "T(u3) interior to [a, b]",
        (u3p - a).cross(b - a).abs() + interior,
    ));
    if eps > 0.0 {
        out.push(Assertion::new(
            "T(u2) outside conv{a,b,c}",
            TAU_GEOM - (-frame.abc.point_slack(u2p)),
        ));
    }
    out.push(Assertion::inside("K ⊂ L'", &lp, k));
    out.push(Assertion::new("L' ⊂ −2K", overshoot));
    let (contacts, _) = boundary_contacts(&lp, &frame.neg2k, TAU_GEOM);
    // every contact on [b, a], none at a
    let worst = contacts
        .iter()
        .map(|&x| {
            let d = crate::john::hull_distance(&[b, a], x);
            if x.dist(a) < TAU_GEOM {
                1.0
            } else {
                d
            }
        })
        .fold(0.0, f64::max);
    out.push(Assertion::new("contacts within [b, a)", worst));
    Ok((lp, out))
}

pub(crate) fn trapezoid_report(
    k: Option<ConvexPolygon>,
    l: Option<ConvexPolygon>,
    eps: f64,
) -> Result<ScenarioReport> {
    let (dk, dl) = case1c_default();
    let (k, l) = (k.unwrap_or(dk), l.unwrap_or(dl));
    let frame = build_case1_frame(&k, &l)?;
    let mut rep = ScenarioReport::new("case1c");
    rep.parameters.insert("eps".into(), eps);
    rep.extend(frame.certificate_assertions());
    let (lp, checks) = case1c_trapezoid_map(&k, &l, eps)?;
    rep.extend(checks);
    if eps > 0.0 {
        let dual = dual_contact_hull_check(&lp, &frame.neg2k)?;
        rep.check(Assertion::separated(
            "0 ∉ conv(∂L'° ∩ ∂(−2K)°)",
            dual.distance,
        ));
    }
    rep.body("K", &k);
    rep.body("L", &l);
    rep.body("L'", &lp);
    rep.body("−2K", &frame.neg2k);
    for (name, p) in frame.labelled_points() {
        rep.point(name, p);
    }
    Ok(rep)
}
