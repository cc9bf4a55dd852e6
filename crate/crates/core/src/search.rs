//! Seeded sampling of polygon pairs ranked by Grünbaum distance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distance::{grunbaum_distance, DistanceOptions};
use crate::generate::PolygonClass;
use crate::par::{map_indexed, Execution};
use crate::polygon::ConvexPolygon;
use crate::tolerance::EPS_SEARCH;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Class pairs, cycled through in order.
    pub classes: Vec<(PolygonClass, PolygonClass)>,
    pub seed: u64,
    /// Distance restarts per pair.
    pub restarts: usize,
    pub execution: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            classes: vec![
                (PolygonClass::Quadrilateral, PolygonClass::Pentagon),
                (PolygonClass::Quadrilateral, PolygonClass::SymmetricHexagon),
                (PolygonClass::Pentagon, PolygonClass::SymmetricHexagon),
            ],
            seed: 0,
            restarts: 16,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Candidate {
    pub index: usize,
    pub k: ConvexPolygon,
    pub l: ConvexPolygon,
    pub estimate: f64,
    pub sign: i8,
    pub verified: bool,
    pub involves_triangle: bool,
    /// Non-triangle pair with estimate above `2 − ε_search`.
    pub flagged: bool,
}

/// Samples `budget` pairs and ranks them by `|2 − d_G|`, non-triangle pairs
/// first. Pairs whose distance computation fails are skipped.
pub fn extremal_pair_search(config: &SearchConfig, budget: usize) -> Vec<Candidate> {
    if budget == 0 || config.classes.is_empty() {
        return Vec::new();
    }
    let opts = DistanceOptions {
        restarts: config.restarts,
        seed: config.seed,
        maxvol_start: false,
        execution: Execution::Sequential,
        ..DistanceOptions::default()
    };
    let found = map_indexed(budget, config.execution, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(i as u64);
        let (ck, cl) = config.classes[i % config.classes.len()];
        let k = ck.sample(&mut rng);
        let l = cl.sample(&mut rng);
        let rep = grunbaum_distance(&k, &l, &opts).ok()?;
        let involves_triangle = k.len() == 3 || l.len() == 3;
        Some(Candidate {
            index: i,
            flagged: !involves_triangle && rep.r > 2.0 - EPS_SEARCH,
            k,
            l,
            estimate: rep.r,
            sign: rep.sign,
            verified: rep.verified,
            involves_triangle,
        })
    });
    let mut out: Vec<Candidate> = found.into_iter().flatten().collect();
    out.sort_by(|a, b| {
        a.involves_triangle
            .cmp(&b.involves_triangle)
            .then(
                (2.0 - a.estimate)
                    .abs()
                    .total_cmp(&(2.0 - b.estimate).abs()),
            )
            .then(a.index.cmp(&b.index))
    });
    out
}
