//! The equilateral frame shared by the three-contact cases.

use crate::error::{Error, Result};
use crate::john::{
    check_glmp, check_john_certificate, lemma4_check, recenter_search, ContactPair, JohnCertificate,
};
use crate::polygon::{scale_negate, ConvexPolygon, Point};
use crate::scenario::{Assertion, ScenarioReport};
use crate::tolerance::TAU_CERT;

const S3: f64 = 1.732_050_807_568_877_2;

/// `u_i` equally spaced on the unit circle with `u₁ = (0, 1)`;
/// `a = −2u₁`, `b = −2u₂`, `c = −2u₃`, so `u₁` is the midpoint of `[b, c]`.
#[derive(Debug, Clone)]
pub struct Case1Frame {
    pub u: [Point; 3],
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub k: ConvexPolygon,
    pub l: ConvexPolygon,
    pub neg2k: ConvexPolygon,
    pub abc: ConvexPolygon,
}

pub(crate) fn frame_points() -> [Point; 3] {
    [
        Point::new(0.0, 1.0),
        Point::new(-S3 / 2.0, -0.5),
        Point::new(S3 / 2.0, -0.5),
    ]
}

impl Case1Frame {
    /// The certificate `(u_i, u_i)` with weights `2/3` at `z = 0`.
    pub fn certificate(&self) -> JohnCertificate {
        JohnCertificate::new(
            self.u.iter().map(|&u| ContactPair::new(u, u)).collect(),
            vec![2.0 / 3.0; 3],
            Point::ORIGIN,
        )
    }

    pub fn labelled_points(&self) -> Vec<(&'static str, Point)> {
        vec![
            ("u1", self.u[0]),
            ("u2", self.u[1]),
            ("u3", self.u[2]),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
        ]
    }

    /// Certificate validity plus the supporting-line conditions
    /// `h_L(u_i) = 1`, `u_i ∈ ∂K`.
    pub(crate) fn certificate_assertions(&self) -> Vec<Assertion> {
        let check = check_john_certificate(&self.certificate());
        let mut out = vec![Assertion::new(
            "john certificate (u_i, u_i), a = 2/3",
            check.worst,
        )];
        for (i, &u) in self.u.iter().enumerate() {
            let support = (self.l.support_value(u) - 1.0)
                .abs()
                .max((self.k.support_value(u) - 1.0).abs());
            out.push(Assertion::new(
                format!("u{} on both boundaries with normal u{}", i + 1, i + 1),
                support,
            ));
        }
        out
    }
}

/// Checks `conv{u_i} ⊂ K ⊂ L ⊂ conv{a,b,c} ⊂ −2K ⊂ conv{4u_i}`.
pub fn build_case1_frame(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<Case1Frame> {
    let u = frame_points();
    let (a, b, c) = (u[0] * -2.0, u[1] * -2.0, u[2] * -2.0);
    let tri = ConvexPolygon::new(&u)?;
    let abc = ConvexPolygon::new(&[a, b, c])?;
    let big = ConvexPolygon::new(&[u[0] * 4.0, u[1] * 4.0, u[2] * 4.0])?;
    let neg2k = scale_negate(k, 2.0, Point::ORIGIN)?;
    let chain: [(&str, &ConvexPolygon, &ConvexPolygon); 5] = [
        ("conv{u_i} ⊂ K", k, &tri),
        ("K ⊂ L", l, k),
        ("L ⊂ conv{a,b,c}", &abc, l),
        ("conv{a,b,c} ⊂ −2K", &neg2k, &abc),
        ("−2K ⊂ conv{4u_i}", &big, &neg2k),
    ];
    for (name, outer, inner) in chain {
        if outer.containment_slack(inner) < -TAU_CERT {
            return Err(Error::ChainViolated(name.to_string()));
        }
    }
    Ok(Case1Frame {
        u,
        a,
        b,
        c,
        k: k.clone(),
        l: l.clone(),
        neg2k,
        abc,
    })
}

/// Three-contact configuration with contacts `{c, u₃}` of `∂L` and `∂(−2K)`.
pub fn case1b_default() -> (ConvexPolygon, ConvexPolygon) {
    let u = frame_points();
    let c = u[2] * -2.0;
    let k = ConvexPolygon::new(&[u[0], u[1], u[0] * -0.7, u[2], u[1] * -0.7]).expect("fixture");
    let mut lv = k.vertices().to_vec();
    lv.push(c);
    let l = ConvexPolygon::new(&lv).expect("fixture");
    (k, l)
}

/// Contacts `{b, c}`, `[b, c]` a chord of `∂(−2K)` with vertical supporting
/// lines at both ends.
pub fn case1c_default() -> (ConvexPolygon, ConvexPolygon) {
    let u = frame_points();
    let (b, c) = (u[1] * -2.0, u[2] * -2.0);
    let k = ConvexPolygon::new(&[
        u[0],
        Point::new(-S3 / 2.0, 0.3),
        u[1],
        Point::new(0.0, -0.6),
        u[2],
        Point::new(S3 / 2.0, 0.3),
    ])
    .expect("fixture");
    let l = ConvexPolygon::new(&[u[2], b, c, u[1], Point::new(0.0, -0.75)]).expect("fixture");
    (k, l)
}

pub(crate) fn case1a_report() -> Result<ScenarioReport> {
    let tri = ConvexPolygon::new(&frame_points())?;
    let f = build_case1_frame(&tri, &tri)?;
    let mut rep = ScenarioReport::new("case1a");
    rep.check(Assertion::flag("inclusion chain", true));
    rep.check(Assertion::flag(
        "−2K = conv{a,b,c}",
        f.neg2k.same_vertices(&f.abc, 1e-12),
    ));
    let (z, cert) = recenter_search(&f.k, &f.l)?;
    rep.check(Assertion::new("recentered at 0", z.norm()));
    rep.check(Assertion::flag("three contact pairs", cert.len() == 3));
    rep.check(Assertion::new(
        "lemma 4 pattern",
        lemma4_check(&cert)?.worst,
    ));
    let glmp = check_glmp(&f.k, &f.l, &cert)?;
    rep.check(Assertion::new("L ⊂ −2K", (-glmp.worst_slack).max(0.0)));
    rep.check(Assertion::flag(
        "three outer contacts",
        glmp.contacts.len() == 3,
    ));
    // each contact is the midpoint of a side of abc
    let worst =
        f.u.iter()
            .map(|u| {
                glmp.contacts
                    .iter()
                    .map(|c| c.dist(*u))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
    rep.check(Assertion::new("outer contacts are the u_i", worst));
    rep.body("K", &f.k);
    rep.body("L", &f.l);
    rep.body("−2K", &f.neg2k);
    for (name, p) in f.labelled_points() {
        rep.point(name, p);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_frames_satisfy_chain() {
        let (k, l) = case1b_default();
        let f = build_case1_frame(&k, &l).unwrap();
        assert!(f.certificate_assertions().iter().all(|a| a.pass));
        let (k, l) = case1c_default();
        let f = build_case1_frame(&k, &l).unwrap();
        assert!(
            f.certificate_assertions().iter().all(|a| a.pass),
            "{:?}",
            f.certificate_assertions()
        );
    }

    #[test]
    fn chain_violation_is_named() {
        let (k, _) = case1b_default();
        let l = k.scale(1.5);
        match build_case1_frame(&k, &l) {
            Err(Error::ChainViolated(s)) => assert_eq!(s, "L ⊂ conv{a,b,c}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn case1a_passes() {
        let r = case1a_report().unwrap();
        assert!(r.pass, "{:?}", r.failures());
    }
}
