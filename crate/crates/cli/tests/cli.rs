use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bmforge_core::io::{DistanceRecord, JohnRecord};
use bmforge_core::scenario::ScenarioReport;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bmforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmforge"))
        .args(args)
        .env_remove("BMFORGE_SEED")
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn grunbaum_square_triangle() {
    let (sq, tri) = (
        fixture("polygons/square.json"),
        fixture("polygons/triangle.json"),
    );
    let o = bmforge(&["distance", path(&sq), path(&tri), "--grunbaum"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rec: DistanceRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert!((rec.report.r - 2.0).abs() < 3e-3 && rec.report.verified);
    // round trip
    assert!(rec.recheck());
}

#[test]
fn same_file_twice_is_distance_one() {
    let p = fixture("polygons/pentagon.json");
    let o = bmforge(&["distance", path(&p), path(&p), "--restarts", "8"]);
    assert_eq!(code(&o), 0);
    let rec: DistanceRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert!((rec.report.r - 1.0).abs() < 1e-6, "{}", rec.report.r);
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0, 0], [1, 0]").unwrap();
    let o = bmforge(&[
        "distance",
        path(&bad),
        path(&fixture("polygons/square.json")),
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&bmforge(&["john", path(&missing), path(&bad)])), 1);
}

#[test]
fn csv_batch_has_fixed_columns() {
    let (sq, tri) = (
        fixture("polygons/square.json"),
        fixture("polygons/triangle.json"),
    );
    let o = bmforge(&[
        "distance",
        path(&sq),
        path(&tri),
        path(&tri),
        path(&sq),
        "--format",
        "csv",
        "--restarts",
        "8",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k_file,l_file,mode,r,sign,verified,restarts_used,seconds"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn json_output_is_deterministic_and_seed_env_overrides() {
    let (sq, tri) = (
        fixture("polygons/pentagon.json"),
        fixture("polygons/triangle.json"),
    );
    let args = [
        "distance",
        path(&sq),
        path(&tri),
        "--restarts",
        "6",
        "--seed",
        "3",
    ];
    let a = bmforge(&args);
    let b = bmforge(&args);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_bmforge"))
        .args(["distance", path(&sq), path(&tri), "--restarts", "6"])
        .env("BMFORGE_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn john_equilateral_in_hexagon() {
    let o = bmforge(&[
        "john",
        path(&fixture("polygons/equilateral.json")),
        path(&fixture("polygons/hexagon.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rec: JohnRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rec.certificate.len(), 3);
    assert!(rec
        .certificate
        .weights
        .iter()
        .all(|a| (a - 2.0 / 3.0).abs() < 1e-6));
    assert!(rec.recheck() && rec.glmp.holds);
}

#[test]
fn john_square_in_itself() {
    let sq = fixture("polygons/square.json");
    let o = bmforge(&["john", path(&sq), path(&sq)]);
    assert_eq!(code(&o), 0);
    let rec: JohnRecord = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rec.certificate.len(), 4);
}

#[test]
fn strictly_nested_without_maxvol_has_no_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.json");
    std::fs::write(
        &small,
        r#"{"vertices": [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]}"#,
    )
    .unwrap();
    let sq = fixture("polygons/square.json");
    assert_eq!(
        code(&bmforge(&["john", path(&small), path(&sq), "--no-maxvol"])),
        3
    );
    assert_eq!(code(&bmforge(&["john", path(&small), path(&sq)])), 0);
}

#[test]
fn replay_every_fixture() {
    let dir = fixture("scenarios");
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .collect();
    files.sort();
    let mut args = vec!["replay".to_string()];
    args.extend(files.iter().cloned());
    let o = bmforge(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reports: Vec<ScenarioReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.len(), files.len());
    assert!(reports.iter().all(|r| r.pass));
}

#[test]
fn replay_reports_unknown_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    std::fs::write(&f, r#"{"id": "case9", "parameters": {}, "bodies": {}}"#).unwrap();
    let o = bmforge(&["replay", path(&f)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("case9"));
}

#[test]
fn symmetric_search_stays_below_three_halves() {
    let o = bmforge(&[
        "search",
        "--budget",
        "100",
        "--pair",
        "symmetric:symmetric",
        "--top",
        "100",
        "--seed",
        "0",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let found: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(found.len(), 100);
    let max = found
        .iter()
        .map(|c| c["estimate"].as_f64().unwrap())
        .fold(0.0, f64::max);
    assert!(max <= 1.5 + 1e-2, "{max}");
}

#[test]
fn render_distance_and_scenario_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (sq, tri) = (
        fixture("polygons/square.json"),
        fixture("polygons/triangle.json"),
    );
    let o = bmforge(&["distance", path(&sq), path(&tri), "--restarts", "8"]);
    let report = dir.path().join("d.json");
    std::fs::write(&report, &o.stdout).unwrap();
    assert_eq!(code(&bmforge(&["render", path(&report)])), 0);
    let svg = std::fs::read_to_string(dir.path().join("d.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    assert_eq!(
        doc.descendants()
            .filter(|n| n.has_tag_name("polygon"))
            .count(),
        3
    );

    let out = dir.path().join("case2b.svg");
    let arg = format!("--render={}", out.display());
    let o = bmforge(&["replay", path(&fixture("scenarios/case2b.json")), &arg]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let dotted = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("dotted"))
        .count();
    let solid = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("solid"))
        .count();
    assert_eq!((solid, dotted), (1, 2));
}
