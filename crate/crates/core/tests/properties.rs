//! Property tests against brute-force oracles.

use bmforge_core::distance::{banach_mazur_distance, DistanceOptions};
use bmforge_core::generate::{random_affine, random_ngon, random_symmetric};
use bmforge_core::john::max_volume_position;
use bmforge_core::polygon::{
    apply_affine, contains, convex_hull, polar, AffineMap, ConvexPolygon, Point,
};
use bmforge_core::sandwich::{asymmetry_constant, gauge};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn points() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..24)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

fn in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s = [
        (b - a).cross(p - a),
        (c - b).cross(p - b),
        (a - c).cross(p - c),
    ];
    s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0)
}

/// Extreme points by Carathéodory: not inside any triangle of the others.
fn extreme_points(pts: &[Point]) -> Vec<Point> {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            let others: Vec<Point> = (0..n).filter(|&j| j != i).map(|j| pts[j]).collect();
            let m = others.len();
            !(0..m).any(|a| {
                (a + 1..m).any(|b| {
                    (b + 1..m).any(|c| in_triangle(pts[i], others[a], others[b], others[c]))
                })
            })
        })
        .map(|i| pts[i])
        .collect()
}

/// `inf{t : q ∈ t P}` by bisection on membership.
fn gauge_bisect(p: &ConvexPolygon, q: Point) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while !p.contains_point(q * (1.0 / hi), 0.0) {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid > 0.0 && p.contains_point(q * (1.0 / mid), 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn polygon(seed: u64) -> ConvexPolygon {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.random_range(3..=8);
    let p = random_ngon(&mut r, n);
    p.translate(-p.centroid())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_vertices_are_the_extreme_points(pts in points()) {
        let Ok(hull) = convex_hull(&pts) else { return Ok(()) };
        let ext = extreme_points(&pts);
        for p in &ext {
            prop_assert!(hull.vertices().iter().any(|q| q.dist(*p) <= 1e-9), "missing {p}");
        }
        for &q in hull.vertices() {
            prop_assert!(pts.iter().any(|p| p.dist(q) == 0.0));
        }
        for p in &pts {
            prop_assert!(hull.contains_point(*p, 1e-9));
        }
    }

    #[test]
    fn polar_support_is_the_gauge(seed in any::<u64>(), theta in 0.0..std::f64::consts::TAU) {
        let k = polygon(seed);
        let kp = polar(&k).unwrap();
        let x = Point::polar(theta) * 3.0;
        let support = kp.vertices().iter().map(|y| x.dot(*y)).fold(f64::MIN, f64::max);
        let g = gauge_bisect(&k, x);
        prop_assert!((support - g).abs() <= 1e-9 * g.max(1.0), "{support} vs {g}");
        prop_assert!((gauge(&k, x).unwrap() - g).abs() <= 1e-9 * g.max(1.0));
    }

    #[test]
    fn polar_reverses_inclusion(seed in any::<u64>(), s in 0.1..0.99f64) {
        let l = polygon(seed);
        let k = l.scale(s);
        prop_assert!(contains(&polar(&k).unwrap(), &polar(&l).unwrap(), 1e-9));
    }

    #[test]
    fn asymmetry_is_the_grid_minimum(seed in any::<u64>()) {
        let k = polygon(seed);
        let a = asymmetry_constant(&k).unwrap();
        prop_assert!(a.verified);
        prop_assert!(a.r >= 1.0 - 1e-9 && a.r <= 2.0 + 1e-9, "{}", a.r);
        // r(c) = max over vertices q of the gauge of c − q in K − c
        let r_at = |c: Point| {
            let kc = k.translate(-c);
            k.vertices().iter().map(|&q| gauge_bisect(&kc, c - q)).fold(0.0, f64::max)
        };
        prop_assert!((r_at(a.center) - a.r).abs() <= 1e-7);
        let (lo, hi) = k.vertices().iter().fold(
            (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN)),
            |(lo, hi), p| (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
        );
        for i in 1..12 {
            for j in 1..12 {
                let c = Point::new(lo.x + (hi.x - lo.x) * i as f64 / 12.0, lo.y + (hi.y - lo.y) * j as f64 / 12.0);
                if k.point_slack(c) > 1e-6 {
                    prop_assert!(r_at(c) >= a.r - 1e-7);
                }
            }
        }
    }
}

/// Largest `s` with `s A K + t ⊂ L`, translation matching centroids.
fn feasible_det(k: &ConvexPolygon, l: &ConvexPolygon, a: &AffineMap) -> f64 {
    let place = |s: f64| {
        let m = AffineMap::linear(s * a.m11, s * a.m12, s * a.m21, s * a.m22);
        let img = apply_affine(&m, k).unwrap();
        img.translate(l.centroid() - img.centroid())
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while contains(l, &place(hi), 0.0) {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid > 0.0 && contains(l, &place(mid), 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo * lo * a.det()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn maxvol_beats_sampled_placements(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let nk = r.random_range(3..=6);
        let k = random_ngon(&mut r, nk);
        let nl = r.random_range(3..=7);
        let l = random_ngon(&mut r, nl);
        let mv = max_volume_position(&k, &l).unwrap();
        prop_assert!(contains(&l, &apply_affine(&mv.map, &k).unwrap(), 1e-7));
        for _ in 0..200 {
            let a = random_affine(&mut r).linear_part();
            prop_assert!(mv.det >= feasible_det(&k, &l, &a) * (1.0 - 1e-6));
        }
    }

    #[test]
    fn banach_mazur_is_symmetric(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let nk = r.random_range(3..=6);
        let k = random_ngon(&mut r, nk);
        let half = r.random_range(2..=4);
        let l = random_symmetric(&mut r, half);
        let opts = DistanceOptions { restarts: 32, maxvol_start: false, ..Default::default() };
        let d1 = banach_mazur_distance(&k, &l, &opts).unwrap();
        let d2 = banach_mazur_distance(&l, &k, &opts).unwrap();
        prop_assert!(d1.verified && d2.verified);
        prop_assert!((d1.r - d2.r).abs() <= 2e-3, "{} vs {}", d1.r, d2.r);
        let same = banach_mazur_distance(&k, &random_affine(&mut r).apply_to(&k), &opts).unwrap();
        prop_assert!(same.r <= 1.0 + 1e-6, "{}", same.r);
    }
}
