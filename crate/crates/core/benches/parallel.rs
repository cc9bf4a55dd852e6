//! Sequential against rayon execution for the multistart drivers.
//!
//! Build with `--no-default-features` to measure the fallback path alone;
//! there both groups run on the calling thread.

use std::hint::black_box;

use bmforge_core::distance::{banach_mazur_distance, grunbaum_distance, DistanceOptions};
use bmforge_core::generate::PolygonClass;
use bmforge_core::john::max_volume_position_with;
use bmforge_core::search::{extremal_pair_search, SearchConfig};
use bmforge_core::{ConvexPolygon, Execution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn pair(seed: u64) -> (ConvexPolygon, ConvexPolygon) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (
        PolygonClass::NonTriangle.sample(&mut rng),
        PolygonClass::Symmetric.sample(&mut rng),
    )
}

fn distance(c: &mut Criterion) {
    let (k, l) = pair(1);
    let mut g = c.benchmark_group("banach_mazur");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = DistanceOptions {
            restarts: 32,
            execution: exec,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| banach_mazur_distance(black_box(&k), black_box(&l), o).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("grunbaum");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = DistanceOptions {
            restarts: 32,
            execution: exec,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| grunbaum_distance(black_box(&k), black_box(&l), o).unwrap())
        });
    }
    g.finish();
}

fn maxvol(c: &mut Criterion) {
    let (k, l) = pair(2);
    let mut g = c.benchmark_group("max_volume");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| max_volume_position_with(black_box(&k), black_box(&l), exec).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("pair_search");
    g.sample_size(10);
    for (name, exec) in MODES {
        let config = SearchConfig {
            execution: exec,
            ..Default::default()
        };
        g.bench_function(name, |b| b.iter(|| extremal_pair_search(&config, 8)));
    }
    g.finish();
}

criterion_group!(benches, distance, maxvol, search);
criterion_main!(benches);
