//! Executable replays of the perturbation constructions used to show that a
//! pair in John position at Grünbaum distance 2 with symmetric outer body
//! forces a triangle.
//!
//! Every scenario produces named bodies, labelled points and a list of
//! assertions, each carrying a numeric residual.

mod case1;
mod case2;
mod case3;
mod frame;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{ConvexPolygon, Point};
use crate::svg::{self, Layer};
use crate::tolerance::TAU_CERT;

pub use case1::{
    case1b_shift_stretch, case1b_stretch, case1c_trapezoid_map, halton, shift_stretch_map,
};
pub use case2::{case2a_check, case2b_trapezoid_perturb, Case2bConfig};
pub use case3::{case3_default, case3_parallelogram_deduction, Case3Input};
pub use frame::{build_case1_frame, case1b_default, case1c_default, Case1Frame};

pub const SCENARIO_IDS: [&str; 8] = [
    "case1a",
    "case1b_stretch",
    "case1b_shift",
    "case1c",
    "case2a",
    "case2b",
    "case3",
    "remark_pentagon",
];

/// A named check. Passes iff `residual ≤ τ_cert`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

impl Assertion {
    pub fn new(name: impl Into<String>, residual: f64) -> Self {
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual.max(0.0)
        };
        Assertion {
            name: name.into(),
            residual,
            pass: residual <= TAU_CERT,
        }
    }

    /// Passes iff `distance` exceeds `τ_cert`, e.g. the origin staying away
    /// from a hull.
    pub fn separated(name: impl Into<String>, distance: f64) -> Self {
        Self::new(name, 2.0 * TAU_CERT - distance)
    }

    /// Passes iff `holds`.
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self::new(name, if holds { 0.0 } else { 1.0 })
    }

    /// Inclusion `inner ⊂ outer`, residual the worst violation.
    pub fn inside(name: impl Into<String>, outer: &ConvexPolygon, inner: &ConvexPolygon) -> Self {
        Self::new(name, -outer.containment_slack(inner))
    }
}

/// Scenario file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub id: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub bodies: BTreeMap<String, Option<ConvexPolygon>>,
}

impl ScenarioSpec {
    pub fn new(id: &str) -> Self {
        ScenarioSpec {
            id: id.to_string(),
            parameters: BTreeMap::new(),
            bodies: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    fn param(&self, name: &str, default: f64) -> f64 {
        self.parameters.get(name).copied().unwrap_or(default)
    }

    fn body(&self, name: &str) -> Option<ConvexPolygon> {
        self.bodies.get(name).cloned().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub id: String,
    /// Parameters actually used, defaults filled in.
    pub parameters: BTreeMap<String, f64>,
    pub bodies: BTreeMap<String, ConvexPolygon>,
    pub points: BTreeMap<String, Point>,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
}

impl ScenarioReport {
    pub(crate) fn new(id: &str) -> Self {
        ScenarioReport {
            id: id.to_string(),
            parameters: BTreeMap::new(),
            bodies: BTreeMap::new(),
            points: BTreeMap::new(),
            assertions: Vec::new(),
            pass: true,
        }
    }

    pub(crate) fn body(&mut self, name: &str, p: &ConvexPolygon) {
        self.bodies.insert(name.to_string(), p.clone());
    }

    pub(crate) fn point(&mut self, name: &str, p: Point) {
        self.points.insert(name.to_string(), p);
    }

    pub(crate) fn check(&mut self, a: Assertion) {
        self.pass &= a.pass;
        self.assertions.push(a);
    }

    pub(crate) fn extend(&mut self, items: Vec<Assertion>) {
        items.into_iter().for_each(|a| self.check(a));
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.pass).collect()
    }

    /// Bodies whose name starts with `L` are drawn solid, the rest dotted.
    pub fn svg(&self) -> String {
        let mut layers: Vec<Layer> = self
            .bodies
            .iter()
            .map(|(name, p)| {
                if name.starts_with('L') {
                    Layer::solid(name, p)
                } else {
                    Layer::dotted(name, p)
                }
            })
            .collect();
        // a perturbed L' supersedes L
        if self.bodies.contains_key("L'") {
            layers.retain(|l| l.label != "L");
        }
        let points: Vec<(String, Point)> =
            self.points.iter().map(|(k, v)| (k.clone(), *v)).collect();
        svg::render(&layers, &points)
    }
}

pub fn run_scenario_json(text: &str) -> Result<ScenarioReport> {
    run_scenario(&serde_json::from_str(text)?)
}

pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioReport> {
    let allowed: &[&str] = match spec.id.as_str() {
        "case1a" => &[],
        "case1b_stretch" | "case1c" | "case2b" => &["eps"],
        "case1b_shift" => &["eps", "r", "samples"],
        "case2a" | "remark_pentagon" => &["seed", "restarts"],
        "case3" => &[],
        other => return Err(Error::UnknownScenario(other.to_string())),
    };
    for (name, value) in &spec.parameters {
        if !allowed.contains(&name.as_str()) {
            return Err(Error::ParameterOutOfRange(format!(
                "unknown parameter `{name}` for {}",
                spec.id
            )));
        }
        if !value.is_finite() || *value < 0.0 {
            return Err(Error::ParameterOutOfRange(format!("{name} = {value}")));
        }
    }
    let mut report = match spec.id.as_str() {
        "case1a" => frame::case1a_report()?,
        "case1b_stretch" => {
            case1::stretch_report(spec.body("K"), spec.body("L"), spec.param("eps", 0.02))?
        }
        "case1b_shift" => {
            let samples = spec.param("samples", 10_000.0);
            if samples.fract() != 0.0 || samples > 1e7 {
                return Err(Error::ParameterOutOfRange(format!("samples = {samples}")));
            }
            case1b_shift_stretch(
                spec.param("eps", 0.05),
                spec.param("r", 0.8),
                samples as usize,
            )?
        }
        "case1c" => {
            case1::trapezoid_report(spec.body("K"), spec.body("L"), spec.param("eps", 0.02))?
        }
        "case2a" => case2::case2a_report(
            spec.param("seed", 0.0) as u64,
            spec.param("restarts", 32.0) as usize,
        )?,
        "case2b" => case2::case2b_report(spec.body("K"), spec.body("L"), spec.param("eps", 0.01))?,
        "case3" => case3::case3_report(spec.body("L"))?,
        _ => case2::pentagon_report(
            spec.param("seed", 0.0) as u64,
            spec.param("restarts", 64.0) as usize,
        )?,
    };
    for (k, v) in &spec.parameters {
        report.parameters.insert(k.clone(), *v);
    }
    Ok(report)
}

/// Outcome of the small-ε sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSweep {
    pub id: String,
    /// Largest ε found by bisection with every assertion passing.
    pub eps0: f64,
    /// `(ε, all assertions passed)` for a grid in `(0, ε₀]`.
    pub tested: Vec<(f64, bool)>,
}

impl EpsilonSweep {
    pub fn monotone(&self) -> bool {
        self.tested.iter().all(|t| t.1)
    }
}

fn passes(spec: &ScenarioSpec, eps: f64) -> bool {
    run_scenario(&spec.clone().with("eps", eps))
        .map(|r| r.pass)
        .unwrap_or(false)
}

/// Bisects for the largest ε in `(0, hi]` with all assertions passing, then
/// re-runs a grid of `grid` values below it.
pub fn epsilon_threshold(spec: &ScenarioSpec, hi: f64, grid: usize) -> Result<EpsilonSweep> {
    let mut good = hi;
    let mut halvings = 0;
    while !passes(spec, good) {
        good *= 0.5;
        halvings += 1;
        if halvings > 40 {
            return Err(Error::NonConverged(format!(
                "{}: no passing ε above {good:e}",
                spec.id
            )));
        }
    }
    if good < hi {
        let mut bad = (2.0 * good).min(hi);
        for _ in 0..40 {
            let mid = 0.5 * (good + bad);
            if passes(spec, mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
    }
    let tested = (1..=grid)
        .map(|i| {
            let e = good * i as f64 / grid as f64;
            (e, passes(spec, e))
        })
        .collect();
    Ok(EpsilonSweep {
        id: spec.id.clone(),
        eps0: good,
        tested,
    })
}
