//! Numerical tolerances shared across modules.

/// Geometric coincidence tolerance, in input length units.
pub const TAU_GEOM: f64 = 1e-9;

/// Smallest admissible `|det|` of an affine map.
pub const TAU_DET: f64 = 1e-12;

/// Tolerance for certificate residuals.
pub const TAU_CERT: f64 = 1e-7;

/// Minimum admissible John weight.
pub const DELTA_W: f64 = 1e-9;

/// Report threshold below 2 for the extremal pair search.
pub const EPS_SEARCH: f64 = 0.05;

/// Overridable tolerance pair carried through CLI runs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub geom: f64,
    pub cert: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geom: TAU_GEOM,
            cert: TAU_CERT,
        }
    }
}
