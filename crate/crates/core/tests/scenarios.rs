use std::path::PathBuf;

use bmforge_core::error::Error;
use bmforge_core::io;
use bmforge_core::john::dual_contact_hull_check;
use bmforge_core::polygon::{scale_negate, ConvexPolygon, Point};
use bmforge_core::scenario::*;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/scenarios")
}

#[test]
fn every_committed_fixture_passes() {
    let mut seen = Vec::new();
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let report = run_scenario_json(&io::read_text(&path).unwrap()).unwrap();
        assert!(report.pass, "{}: {:?}", path.display(), report.failures());
        assert!(report.svg().starts_with("<svg"));
        seen.push(report.id);
    }
    seen.sort();
    let mut ids: Vec<String> = SCENARIO_IDS.iter().map(|s| s.to_string()).collect();
    ids.sort();
    assert_eq!(seen, ids);
}

#[test]
fn unknown_ids_and_parameters_are_rejected() {
    assert_eq!(
        run_scenario_json(r#"{"id": "case9"}"#).unwrap_err(),
        Error::UnknownScenario("case9".into())
    );
    let bad = run_scenario(&ScenarioSpec::new("case1c").with("r", 0.5));
    assert!(matches!(bad, Err(Error::ParameterOutOfRange(_))), "{bad:?}");
    let neg = run_scenario(&ScenarioSpec::new("case2b").with("eps", -0.1));
    assert!(matches!(neg, Err(Error::ParameterOutOfRange(_))));
}

#[test]
fn replay_is_bit_identical() {
    for id in ["case1b_shift", "case2b", "remark_pentagon"] {
        let a = io::to_json(&run_scenario(&ScenarioSpec::new(id)).unwrap());
        let b = io::to_json(&run_scenario(&ScenarioSpec::new(id)).unwrap());
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn stretch_examples() {
    let (k, l) = case1b_default();
    let f = build_case1_frame(&k, &l).unwrap();
    let (lp, checks) = case1b_stretch(&k, &l, f.u[2], 0.02).unwrap();
    assert!(checks.iter().all(|a| a.pass), "{checks:?}");
    assert!(!lp.same_vertices(&l, 1e-6));

    let (lp, _) = case1b_stretch(&k, &l, f.u[2], 0.0).unwrap();
    assert!(lp.same_vertices(&l, 1e-15));
    assert!(dual_contact_hull_check(&lp, &f.neg2k).unwrap().holds);

    assert_eq!(
        case1b_stretch(&k, &l, f.u[2], 0.5).unwrap_err(),
        Error::EpsilonTooLarge(0.5)
    );
    assert!(matches!(
        case1b_stretch(&k, &l, f.u[2], 0.3),
        Err(Error::EpsilonTooLarge(_))
    ));
}

#[test]
fn shift_stretch_examples() {
    let r = case1b_shift_stretch(0.05, 0.8, 10_000).unwrap();
    assert!(r.pass, "{:?}", r.failures());
    assert!(
        shift_stretch_map(1e-8).max_abs_diff(&bmforge_core::polygon::AffineMap::IDENTITY) < 1e-7
    );
    let tiny = case1b_shift_stretch(1e-8, 0.8, 100).unwrap();
    assert!(tiny
        .assertions
        .iter()
        .filter(|a| a.name.contains("collinear"))
        .all(|a| a.residual <= 1e-6));
    assert!(matches!(
        case1b_shift_stretch(0.15, 0.8, 10),
        Err(Error::PreconditionViolated(_))
    ));
    assert!(matches!(
        case1b_shift_stretch(0.01, 1.0, 10),
        Err(Error::PreconditionViolated(_))
    ));
}

/// Direct evaluation of the displayed inequality on a 20×20 parameter grid.
#[test]
fn shift_stretch_inequality_grid() {
    let s3 = 3f64.sqrt();
    for i in 0..20 {
        let r = 0.02 + 0.96 * i as f64 / 19.0;
        for j in 0..20 {
            let eps = (1.0 - r) / 2.0 * (j as f64 + 0.5) / 20.0;
            let rep = case1b_shift_stretch(eps, r, 500).unwrap();
            assert!(rep.pass, "eps {eps} r {r}: {:?}", rep.failures());
            // oracle: the worst point of the region is one of its vertices
            let lhs = |x: f64, y: f64| (1.0 - eps) / (1.0 - 2.0 * eps) * s3 * x + (1.0 - eps) * y;
            let worst = [(0.0, 0.0), (r, 0.0), (r, s3 * (1.0 - r)), (0.0, s3)]
                .iter()
                .map(|&(x, y)| lhs(x, y))
                .fold(f64::MIN, f64::max);
            assert!(worst <= s3 * (1.0 + eps) + 1e-12);
        }
    }
}

#[test]
fn shift_stretch_rejects_points_outside_precondition() {
    for i in 0..5 {
        let r = 0.1 + 0.2 * i as f64;
        let eps = (1.0 - r) / 2.0 + 0.01 * i as f64;
        assert!(
            matches!(
                case1b_shift_stretch(eps, r, 10),
                Err(Error::PreconditionViolated(_))
            ),
            "{eps} {r}"
        );
    }
}

#[test]
fn trapezoid_examples() {
    let (k, l) = case1c_default();
    let (_, checks) = case1c_trapezoid_map(&k, &l, 0.02).unwrap();
    assert!(checks.iter().all(|a| a.pass), "{checks:?}");
    let ratio = checks.iter().find(|a| a.name.contains("ratio")).unwrap();
    assert!(ratio.residual <= 1e-7);
    let (lp, _) = case1c_trapezoid_map(&k, &l, 0.0).unwrap();
    assert!(lp.same_vertices(&l, 1e-12));
}

#[test]
fn trapezoid_perturbation_removes_contacts() {
    let cfg = Case2bConfig::default();
    let (_, checks) = case2b_trapezoid_perturb(&cfg, 0.01).unwrap();
    assert!(checks.iter().all(|a| a.pass), "{checks:?}");
    let (lp, checks) = case2b_trapezoid_perturb(&cfg, 0.0).unwrap();
    assert!(lp.same_vertices(&cfg.l, 1e-15));
    let count = checks
        .iter()
        .find(|a| a.name.starts_with("no contacts"))
        .unwrap();
    assert_eq!(count.residual, 2.0);
}

#[test]
fn parallelogram_deduction() {
    let (_, l, x) = case3_default();
    assert!(case3_parallelogram_deduction(&l, x)
        .unwrap()
        .iter()
        .all(|a| a.pass));
    let hex = ConvexPolygon::regular(6, 1.0, Point::ORIGIN, 0.0).unwrap();
    let v = hex.vertices();
    let r = case3_parallelogram_deduction(&hex, [v[0], v[1], v[3], v[4]]).unwrap();
    assert!(!r[2].pass);
}

#[test]
fn small_epsilon_sweep() {
    for id in ["case1b_stretch", "case1c", "case2b"] {
        let sweep = epsilon_threshold(&ScenarioSpec::new(id), 0.45, 12).unwrap();
        assert!(sweep.eps0 > 1e-3, "{sweep:?}");
        assert!(sweep.monotone(), "{sweep:?}");
    }
}

#[test]
fn scenario_maps_keep_orientation() {
    for id in SCENARIO_IDS {
        let rep = run_scenario(&ScenarioSpec::new(id)).unwrap();
        if let Some(a) = rep.assertions.iter().find(|a| a.name.starts_with("map is")) {
            assert!(a.pass, "{id}");
        }
    }
    let (k, _) = case1b_default();
    assert!(scale_negate(&k, 2.0, Point::ORIGIN).is_ok());
}
