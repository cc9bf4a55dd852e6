//! Four contact pairs with three outer contacts: a symmetric outer body is a
//! parallelogram.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::john::boundary_contacts;
use crate::polygon::{convex_hull, scale_negate, ConvexPolygon, Point};
use crate::scenario::{Assertion, ScenarioReport};
use crate::tolerance::{TAU_CERT, TAU_GEOM};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case3Input {
    pub l: ConvexPolygon,
    /// Outer contacts `x₁, x₂, x₃` and the fourth corner `x₄`.
    pub x: [Point; 4],
}

/// Checks that the centre of `L` is the midpoint of `[x₁, x₃]`, that
/// `2o − x₂ = x₄`, and that `L = conv{x₁, x₂, x₃, x₄}`.
pub fn case3_parallelogram_deduction(l: &ConvexPolygon, x: [Point; 4]) -> Result<Vec<Assertion>> {
    let o = l.symmetry_center(TAU_CERT).ok_or(Error::NotSymmetric)?;
    if x[0].dist(x[2]) < TAU_GEOM {
        return Err(Error::DegenerateInput("x1 = x3".into()));
    }
    let mut out = vec![
        Assertion::new(
            "centre is the midpoint of [x1, x3]",
            o.dist((x[0] + x[2]) * 0.5),
        ),
        Assertion::new("2o − x2 = x4", (o * 2.0 - x[1]).dist(x[3])),
    ];
    let same = match convex_hull(&x) {
        Ok(hull) => hull.same_vertices(l, TAU_GEOM),
        Err(_) => false,
    };
    out.push(Assertion::flag("L = conv{x1, x2, x3, x4}", same));
    Ok(out)
}

/// The unit square with `−2K` touching it at three corners.
pub fn case3_default() -> (ConvexPolygon, ConvexPolygon, [Point; 4]) {
    let neg2k = ConvexPolygon::from_coords(&[
        [2.0, 0.0],
        [0.0, 2.0],
        [-2.0, 0.0],
        [-2.0, -1.0],
        [-1.0, -2.0],
        [0.0, -2.0],
    ])
    .expect("fixture");
    let k = scale_negate(&neg2k, 0.5, Point::ORIGIN).expect("fixture");
    let l = ConvexPolygon::from_coords(&[[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])
        .expect("fixture");
    let x = [
        Point::new(1.0, -1.0),
        Point::new(1.0, 1.0),
        Point::new(-1.0, 1.0),
        Point::new(-1.0, -1.0),
    ];
    (k, l, x)
}

pub(crate) fn case3_report(l_override: Option<ConvexPolygon>) -> Result<ScenarioReport> {
    let (k, dl, x) = case3_default();
    let mut rep = ScenarioReport::new("case3");
    let neg2k = scale_negate(&k, 2.0, Point::ORIGIN)?;
    let l = match l_override {
        Some(l) => l,
        None => {
            rep.check(Assertion::inside("K ⊂ L", &dl, &k));
            rep.check(Assertion::inside("L ⊂ −2K", &neg2k, &dl));
            let (contacts, _) = boundary_contacts(&dl, &neg2k, TAU_GEOM);
            let on = |p: Point| contacts.iter().any(|c| c.dist(p) < TAU_GEOM);
            rep.check(Assertion::flag(
                "contacts are exactly x1, x2, x3",
                contacts.len() == 3 && on(x[0]) && on(x[1]) && on(x[2]),
            ));
            dl
        }
    };
    rep.extend(case3_parallelogram_deduction(&l, x)?);
    rep.body("K", &k);
    rep.body("L", &l);
    rep.body("−2K", &neg2k);
    for (i, &p) in x.iter().enumerate() {
        rep.point(&format!("x{}", i + 1), p);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_is_not_a_parallelogram() {
        let h = ConvexPolygon::regular(6, 1.0, Point::ORIGIN, 0.0).unwrap();
        let v = h.vertices();
        let r = case3_parallelogram_deduction(&h, [v[0], v[1], v[3], v[4]]).unwrap();
        assert!(r[0].pass && r[1].pass && !r[2].pass, "{r:?}");
    }

    #[test]
    fn asymmetric_or_degenerate_inputs() {
        let tri = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        let p = Point::new(1.0, 0.0);
        assert_eq!(
            case3_parallelogram_deduction(&tri, [p; 4]).unwrap_err(),
            Error::NotSymmetric
        );
        let (_, l, _) = case3_default();
        assert!(matches!(
            case3_parallelogram_deduction(&l, [p; 4]),
            Err(Error::DegenerateInput(_))
        ));
    }
}
