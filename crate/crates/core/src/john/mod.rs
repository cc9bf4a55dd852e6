//! John-position certificates for pairs `K ⊂ L`.
//!
//! A certificate is a list of contact pairs `(u_i, v_i)` with
//! `u_i ∈ ∂K ∩ ∂L`, `v_i ∈ ∂K° ∩ ∂L°`, `⟨u_i, v_i⟩ = 1`, and positive
//! weights `a_i` with
//!
//! ```text
//! Σ a_i v_i u_iᵀ = I,   Σ a_i u_i = 0,   Σ a_i v_i = 0.
//! ```
//!
//! Taking the trace gives `Σ a_i = 2`.

mod checks;
mod contacts;
mod maxvol;
pub(crate) mod nnls;
mod recenter;
mod weights;

use serde::{Deserialize, Serialize};

use crate::polygon::Point;

pub(crate) use checks::{boundary_contacts, hull_distance};
pub use checks::{
    check_glmp, check_john_certificate, check_john_certificate_with, dual_contact_hull_check,
    equality_conditions, irredundant_pairs, lemma4_check, CertificateCheck, ContactSet,
    DualHullReport, EqualityConditionsReport, GlmpReport, HullShape, Lemma4Report,
};
pub use contacts::extract_contacts;
pub use maxvol::{max_volume_position, max_volume_position_with, MaxVolume};
pub use recenter::{recenter_grid_search, recenter_search, GridRecenter};
pub use weights::{merge_shared_contacts, solve_john_weights};

/// A contact point of `K` and `L` together with a common supporting
/// functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactPair {
    pub u: Point,
    pub v: Point,
    /// `max(|g_K(u) − 1|, |g_L(u) − 1|)` at extraction time.
    #[serde(default, skip_serializing)]
    pub slack_primal: f64,
    /// `max(|h_K(v) − 1|, |h_L(v) − 1|)` at extraction time.
    #[serde(default, skip_serializing)]
    pub slack_dual: f64,
}

impl ContactPair {
    pub fn new(u: Point, v: Point) -> Self {
        ContactPair {
            u,
            v,
            slack_primal: 0.0,
            slack_dual: 0.0,
        }
    }
}

/// Weighted contact pairs, expressed in the frame where `recenter` is the
/// origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "CertificateRepr", into = "CertificateRepr")]
pub struct JohnCertificate {
    pub pairs: Vec<ContactPair>,
    pub weights: Vec<f64>,
    pub recenter: Point,
    pub residual_identity: f64,
    pub residual_u: f64,
    pub residual_v: f64,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    pairs: Vec<ContactPair>,
    weights: Vec<f64>,
    recenter: Point,
}

impl From<CertificateRepr> for JohnCertificate {
    fn from(r: CertificateRepr) -> Self {
        JohnCertificate::new(r.pairs, r.weights, r.recenter)
    }
}

impl From<JohnCertificate> for CertificateRepr {
    fn from(c: JohnCertificate) -> Self {
        CertificateRepr {
            pairs: c.pairs,
            weights: c.weights,
            recenter: c.recenter,
        }
    }
}

impl JohnCertificate {
    /// Builds a certificate and computes its residuals.
    pub fn new(pairs: Vec<ContactPair>, weights: Vec<f64>, recenter: Point) -> Self {
        let (ri, ru, rv) = residuals(&pairs, &weights);
        JohnCertificate {
            pairs,
            weights,
            recenter,
            residual_identity: ri,
            residual_u: ru,
            residual_v: rv,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Spectral norm of `Σ a v uᵀ − I` and the norms of `Σ a u`, `Σ a v`.
pub(crate) fn residuals(pairs: &[ContactPair], weights: &[f64]) -> (f64, f64, f64) {
    let mut m = [[-1.0, 0.0], [0.0, -1.0]];
    let mut su = Point::ORIGIN;
    let mut sv = Point::ORIGIN;
    for (p, &a) in pairs.iter().zip(weights) {
        m[0][0] += a * p.v.x * p.u.x;
        m[0][1] += a * p.v.x * p.u.y;
        m[1][0] += a * p.v.y * p.u.x;
        m[1][1] += a * p.v.y * p.u.y;
        su += p.u * a;
        sv += p.v * a;
    }
    (spectral_norm(m), su.norm(), sv.norm())
}

fn spectral_norm(m: [[f64; 2]; 2]) -> f64 {
    // largest singular value from the 2×2 closed form
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let s1 = (a + d).hypot(c - b);
    let s2 = (a - d).hypot(c + b);
    0.5 * (s1 + s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_matches_diagonal() {
        assert!((spectral_norm([[3.0, 0.0], [0.0, -1.0]]) - 3.0).abs() < 1e-15);
        assert!((spectral_norm([[0.0, 2.0], [0.0, 0.0]]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn json_shape_is_exact() {
        let c = JohnCertificate::new(
            vec![ContactPair::new(Point::new(1.0, 0.0), Point::new(1.0, 0.0))],
            vec![0.5],
            Point::ORIGIN,
        );
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"pairs":[{"u":[1.0,0.0],"v":[1.0,0.0]}],"weights":[0.5],"recenter":[0.0,0.0]}"#
        );
        let back: JohnCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
