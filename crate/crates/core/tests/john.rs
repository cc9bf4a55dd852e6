use bmforge_core::john::*;
use bmforge_core::polygon::{ConvexPolygon, Point};
use bmforge_core::Error;
use std::f64::consts::{FRAC_PI_2, TAU};

fn u(i: usize) -> Point {
    Point::polar(FRAC_PI_2 + i as f64 * TAU / 3.0)
}

fn triangle() -> ConvexPolygon {
    ConvexPolygon::new(&[u(0), u(1), u(2)]).unwrap()
}

fn hexagon() -> ConvexPolygon {
    ConvexPolygon::new(&[u(0), u(1), u(2), -u(0), -u(1), -u(2)]).unwrap()
}

fn square() -> ConvexPolygon {
    ConvexPolygon::from_coords(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap()
}

#[test]
fn equilateral_in_hexagon_certificate() {
    let (z, cert) = recenter_search(&triangle(), &hexagon()).unwrap();
    assert!(z.norm() < 1e-12, "{z:?}");
    assert_eq!(cert.len(), 3);
    for (p, a) in cert.pairs.iter().zip(&cert.weights) {
        assert!((a - 2.0 / 3.0).abs() < 1e-12);
        assert!(p.v.dist(p.u) < 1e-12, "{p:?}");
    }
    let l4 = lemma4_check(&cert).unwrap();
    assert!(l4.pass, "{l4:?}");
    let g = check_glmp(&triangle(), &hexagon(), &cert).unwrap();
    assert!(g.holds);
    assert_eq!(g.s, ContactSet::Finite(3));
    for i in 0..3 {
        assert!(g.contacts.iter().any(|c| c.dist(u(i)) < 1e-9));
    }
    let eq = equality_conditions(&triangle(), &hexagon(), &cert, u(0)).unwrap();
    assert!(!eq.is_empty());
    for r in &eq {
        assert!(r.holds_convu && r.holds_convv && r.holds_xv, "{r:?}");
    }
}

#[test]
fn square_self_certificate() {
    let (z, cert) = recenter_search(&square(), &square()).unwrap();
    assert!(z.norm() < 1e-12);
    assert_eq!(cert.len(), 4);
    for a in &cert.weights {
        assert!((a - 0.5).abs() < 1e-12);
    }
    assert!(matches!(lemma4_check(&cert), Err(Error::WrongArity { .. })));
    let g = check_glmp(&square(), &square(), &cert).unwrap();
    assert!(g.holds && g.s == ContactSet::Finite(0));
}

#[test]
fn strictly_inside_has_no_certificate() {
    assert!(matches!(
        recenter_search(&square().scale(0.5), &square()),
        Err(Error::NoCertificate(_))
    ));
}

#[test]
fn grid_route_agrees() {
    let g = recenter_grid_search(&triangle(), &hexagon()).unwrap();
    assert!(g.residual <= 1e-7 && g.certificate.is_some(), "{g:?}");
}

#[test]
fn maxvol_then_certificate_random() {
    let k =
        ConvexPolygon::from_coords(&[[0.0, 0.0], [2.0, 0.1], [2.5, 1.0], [1.0, 2.2], [-0.3, 1.1]])
            .unwrap();
    let l = ConvexPolygon::from_coords(&[
        [-1.0, -1.0],
        [3.0, -0.5],
        [3.2, 2.0],
        [0.0, 3.0],
        [-1.5, 1.0],
    ])
    .unwrap();
    let mv = max_volume_position(&k, &l).unwrap();
    let kk = bmforge_core::polygon::apply_affine(&mv.map, &k).unwrap();
    let (_, cert) = recenter_search(&kk, &l).unwrap();
    let chk = check_john_certificate(&cert);
    assert!(chk.pass, "{chk:?}");
    let g = check_glmp(&kk, &l, &cert).unwrap();
    assert!(g.holds, "{g:?}");
}

#[test]
fn dual_hull_examples() {
    let h = hexagon();
    assert!(dual_contact_hull_check(&h, &h).unwrap().holds);
    let r = dual_contact_hull_check(&h.scale(0.5), &h).unwrap();
    assert!(!r.holds && r.points.is_empty());
}
