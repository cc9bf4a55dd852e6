//! Banach–Mazur and Grünbaum distances with sandwich witnesses.
//!
//! For a fixed linear map `A` the best ratio is exact: the largest
//! homothet `ρK + s` inside `A L` and the smallest `R K + w` around it are
//! both three-variable linear programs, and `r(A) = R / ρ`. Only the choice
//! of `A` modulo scale is searched, over rotation, log-stretch and shear,
//! with each orientation class handled separately.

use nalgebra::{Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homothety::{max_inscribed_homothet, min_enclosing_homothet};
use crate::optim::PatternSearch;
use crate::par::{map_indexed, Execution};
use crate::polygon::{apply_affine, contains, scale_negate, AffineMap, ConvexPolygon, Point};
use crate::tolerance::{TAU_CERT, TAU_DET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    BanachMazur,
    Grunbaum,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceOptions {
    /// Local searches per sign branch.
    pub restarts: usize,
    pub seed: u64,
    /// Objective evaluations per local search.
    pub max_evals: usize,
    /// Vertex-triple matchings evaluated as candidate starts.
    pub matching_cap: usize,
    /// Also start from the maximal-volume position of `K` in `L`.
    pub maxvol_start: bool,
    pub execution: Execution,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0,
            max_evals: 2000,
            matching_cap: 240,
            maxvol_start: true,
            execution: Execution::default(),
        }
    }
}

/// Witness of `K + u ⊂ T(L + v) ⊂ sign · r (K + u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub mode: Mode,
    pub r: f64,
    pub sign: i8,
    pub map: AffineMap,
    pub shift_inner: Point,
    pub shift_outer: Point,
    pub verified: bool,
    pub restarts_used: usize,
    pub objective_history: Vec<f64>,
}

impl DistanceReport {
    /// Re-runs [`certify_sandwich`] on the stored witness.
    pub fn recheck(&self, k: &ConvexPolygon, l: &ConvexPolygon) -> bool {
        certify_sandwich(
            k,
            l,
            &self.map,
            self.shift_inner,
            self.shift_outer,
            self.r,
            self.sign,
        )
    }
}

/// Checks `K + u ⊂ T(L + v)` and `T(L + v) ⊂ sign · r (K + u)` directly, at
/// `τ_cert`.
pub fn certify_sandwich(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    t: &AffineMap,
    u: Point,
    v: Point,
    r: f64,
    sign: i8,
) -> bool {
    certify_sandwich_with(k, l, t, u, v, r, sign, TAU_CERT)
}

/// [`certify_sandwich`] at a caller-chosen tolerance.
#[allow(clippy::too_many_arguments)]
pub fn certify_sandwich_with(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    t: &AffineMap,
    u: Point,
    v: Point,
    r: f64,
    sign: i8,
    tol: f64,
) -> bool {
    if t.det().abs() <= TAU_DET || !(r >= 1.0 - tol) || !r.is_finite() || !(sign == 1 || sign == -1)
    {
        return false;
    }
    let Ok(mapped) = apply_affine(t, &l.translate(v)) else {
        return false;
    };
    let inner = k.translate(u);
    let outer = if sign == 1 {
        inner.scale(r)
    } else {
        scale_negate(&inner, r, Point::ORIGIN).expect("r > 0")
    };
    contains(&mapped, &inner, tol) && contains(&outer, &mapped, tol)
}

/// `d(K, L)`: positive homothets only.
pub fn banach_mazur_distance(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let mut rep = Branch::new(k, l, 1).run(opts)?;
    rep.mode = Mode::BanachMazur;
    Ok(rep)
}

/// `d_G(K, L)`: the better of the positive and negative branches.
pub fn grunbaum_distance(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let pos = Branch::new(k, l, 1).run(opts);
    let neg = Branch::new(k, l, -1).run(opts);
    let mut rep = match (pos, neg) {
        (Ok(p), Ok(n)) => {
            let used = p.restarts_used + n.restarts_used;
            let mut best = if n.r < p.r { n } else { p };
            best.restarts_used = used;
            best
        }
        (Ok(p), Err(_)) => p,
        (Err(_), Ok(n)) => n,
        (Err(e), Err(_)) => return Err(e),
    };
    rep.mode = Mode::Grunbaum;
    Ok(rep)
}

/// Linear map `R(θ) · [[e^s, h], [0, e^{−s}]] · D` with `D = diag(1, ±1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Shape {
    p: [f64; 3],
    reflect: bool,
}

impl Shape {
    fn matrix(&self) -> AffineMap {
        let [theta, s, h] = self.p;
        let (sn, cs) = theta.sin_cos();
        let (a, b, d) = (s.exp(), h, (-s).exp());
        // R · U
        let (m11, m12, m21, m22) = (cs * a, cs * b - sn * d, sn * a, sn * b + cs * d);
        if self.reflect {
            AffineMap::linear(m11, -m12, m21, -m22)
        } else {
            AffineMap::linear(m11, m12, m21, m22)
        }
    }

    /// Inverse of [`Shape::matrix`] up to a positive scalar.
    fn from_linear(m: &AffineMap) -> Option<Shape> {
        let det = m.det();
        if det.abs() <= TAU_DET || !det.is_finite() {
            return None;
        }
        let reflect = det < 0.0;
        let k = 1.0 / det.abs().sqrt();
        let sgn = if reflect { -1.0 } else { 1.0 };
        let c1 = Point::new(m.m11 * k, m.m21 * k);
        let c2 = Point::new(m.m12 * k * sgn, m.m22 * k * sgn);
        let n1 = c1.norm();
        let q1 = c1 * (1.0 / n1);
        Some(Shape {
            p: [q1.y.atan2(q1.x), n1.ln(), q1.dot(c2)],
            reflect,
        })
    }

    /// Same reflection class and within a grid cell in every coordinate,
    /// with the angle taken modulo `2π`.
    fn near(&self, o: &Shape) -> bool {
        let dt = (self.p[0] - o.p[0]).rem_euclid(std::f64::consts::TAU);
        self.reflect == o.reflect
            && dt.min(std::f64::consts::TAU - dt) < 0.2
            && (self.p[1] - o.p[1]).abs() < 0.3
            && (self.p[2] - o.p[2]).abs() < 0.3
    }

    fn key(&self) -> [f64; 4] {
        [
            self.p[0],
            self.p[1],
            self.p[2],
            if self.reflect { 1.0 } else { 0.0 },
        ]
    }
}

/// Local minima re-searched after the multistart phase.
const POLISH: usize = 4;

struct Branch {
    k0: ConvexPolygon,
    l0: ConvexPolygon,
    /// `K0` or `−K0`, the body whose homothets enclose.
    k_out: ConvexPolygon,
    ck: Point,
    cl: Point,
    /// Whitening maps: `k0 = wk (K − ck)`, `l0 = wl (L − cl)`.
    wk: AffineMap,
    wl: AffineMap,
    sign: i8,
    k: ConvexPolygon,
    l: ConvexPolygon,
}

struct Fit {
    rho: f64,
    s: Point,
    big_r: f64,
    w: Point,
}

impl Branch {
    fn new(k: &ConvexPolygon, l: &ConvexPolygon, sign: i8) -> Branch {
        let ck = k.centroid();
        let cl = l.centroid();
        let wk = isotropic_map(&k.translate(-ck));
        let wl = isotropic_map(&l.translate(-cl));
        let k0 = apply_affine(&wk, &k.translate(-ck)).expect("whitening is invertible");
        let l0 = apply_affine(&wl, &l.translate(-cl)).expect("whitening is invertible");
        let k_out = if sign == 1 {
            k0.clone()
        } else {
            scale_negate(&k0, 1.0, Point::ORIGIN).expect("valid polygon")
        };
        Branch {
            k0,
            l0,
            k_out,
            ck,
            cl,
            wk,
            wl,
            sign,
            k: k.clone(),
            l: l.clone(),
        }
    }

    fn fit(&self, a: &AffineMap) -> Option<Fit> {
        let la = apply_affine(a, &self.l0).ok()?;
        let (rho, s) = max_inscribed_homothet(&self.k0, &la);
        let (big_r, w) = min_enclosing_homothet(&self.k_out, &la);
        (rho > 0.0 && big_r.is_finite()).then_some(Fit { rho, s, big_r, w })
    }

    fn objective(&self, shape: &Shape) -> f64 {
        if shape.p[1].abs() > 12.0
            || shape.p[2].abs() > 1e4
            || !shape.p.iter().all(|v| v.is_finite())
        {
            return f64::INFINITY;
        }
        match self.fit(&shape.matrix()) {
            Some(f) => f.big_r / f.rho,
            None => f64::INFINITY,
        }
    }

    fn matching_starts(&self, cap: usize) -> Vec<Shape> {
        let kv = self.k0.vertices();
        let lv = self.l0.vertices();
        let mut l_triples = Vec::new();
        for i in 0..lv.len() {
            for j in i + 1..lv.len() {
                for m in j + 1..lv.len() {
                    l_triples.push([i, j, m]);
                }
            }
        }
        let mut k_triples = Vec::new();
        for i in 0..kv.len() {
            for j in 0..kv.len() {
                for m in 0..kv.len() {
                    if i != j && j != m && i != m {
                        k_triples.push([i, j, m]);
                    }
                }
            }
        }
        let total = l_triples.len() * k_triples.len();
        let take = total.min(cap);
        (0..take)
            .filter_map(|idx| {
                let g = if take == total {
                    idx
                } else {
                    idx * total / take
                };
                let lt = l_triples[g / k_triples.len()];
                let kt = k_triples[g % k_triples.len()];
                let src = [lv[lt[0]], lv[lt[1]], lv[lt[2]]];
                let dst = [kv[kt[0]], kv[kt[1]], kv[kt[2]]];
                let m = AffineMap::from_triangles(src, dst).ok()?;
                Shape::from_linear(&m.linear_part())
            })
            .collect()
    }

    fn maxvol_start(&self) -> Option<Shape> {
        let mv = crate::john::max_volume_position(&self.k0, &self.l0).ok()?;
        Shape::from_linear(&mv.map.inverse().ok()?.linear_part())
    }

    /// Coarse grid over rotation, stretch and shear for both orientations.
    fn grid_starts() -> Vec<Shape> {
        let mut out = Vec::new();
        for reflect in [false, true] {
            for i in 0..36 {
                let theta = -std::f64::consts::PI + std::f64::consts::TAU * i as f64 / 36.0;
                for s in [-0.35, 0.0, 0.35] {
                    for h in [-0.35, 0.0, 0.35] {
                        out.push(Shape {
                            p: [theta, s, h],
                            reflect,
                        });
                    }
                }
            }
        }
        out
    }

    fn random_start(rng: &mut ChaCha8Rng, reflect: bool) -> Shape {
        let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let s = rng.random_range(-0.7..0.7);
        let h = rng.random_range(-0.7..0.7);
        Shape {
            p: [theta, s, h],
            reflect,
        }
    }

    fn run(&self, opts: &DistanceOptions) -> Result<DistanceReport> {
        let stream_base: u64 = if self.sign == 1 { 0 } else { 1 << 32 };
        let mut det_starts = self.matching_starts(opts.matching_cap);
        if opts.maxvol_start {
            det_starts.extend(self.maxvol_start());
        }
        det_starts.extend(Branch::grid_starts());
        let mut scored: Vec<(f64, Shape)> = det_starts
            .into_iter()
            .map(|s| (self.objective(&s), s))
            .collect();
        scored.sort_by(|a, b| a.0.total_cmp(&b.0));
        // keep the best start of each neighbourhood
        let mut picked: Vec<Shape> = Vec::new();
        let n_det = opts.restarts.div_ceil(2);
        for (_, s) in &scored {
            if picked.len() >= n_det {
                break;
            }
            let dup = picked.iter().any(|q| q.reflect == s.reflect && q.near(s));
            if !dup {
                picked.push(*s);
            }
        }
        let n_det = picked.len();
        let n = opts.restarts.max(1);
        let search = PatternSearch {
            max_evals: opts.max_evals,
            ..PatternSearch::default()
        };
        let runs = map_indexed(n, opts.execution, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(stream_base + i as u64 + 1);
            let start = if i < n_det {
                picked[i]
            } else {
                Branch::random_start(&mut rng, i % 2 == 1)
            };
            let reflect = start.reflect;
            let m = search.minimize(
                |x: &[f64]| {
                    self.objective(&Shape {
                        p: [x[0], x[1], x[2]],
                        reflect,
                    })
                },
                &start.p,
                &mut rng,
            );
            (
                m.f,
                Shape {
                    p: [m.x[0], m.x[1], m.x[2]],
                    reflect,
                },
            )
        });
        // polish the best few minima with fresh poll directions
        let mut best: Vec<usize> = (0..runs.len()).collect();
        best.sort_by(|&a, &b| runs[a].0.total_cmp(&runs[b].0));
        best.truncate(POLISH);
        let polish = PatternSearch {
            initial_step: 0.05,
            ..search
        };
        let polished = map_indexed(best.len() * 2, opts.execution, |j| {
            let (_, start) = runs[best[j / 2]];
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(stream_base + (1 << 20) + j as u64);
            let m = polish.minimize(
                |x: &[f64]| {
                    self.objective(&Shape {
                        p: [x[0], x[1], x[2]],
                        reflect: start.reflect,
                    })
                },
                &start.p,
                &mut rng,
            );
            (
                m.f,
                Shape {
                    p: [m.x[0], m.x[1], m.x[2]],
                    reflect: start.reflect,
                },
            )
        });
        let mut runs = runs;
        runs.extend(polished);
        let history: Vec<f64> = runs.iter().map(|r| r.0).collect();
        let mut order: Vec<usize> = (0..runs.len()).collect();
        order.sort_by(|&a, &b| {
            runs[a].0.total_cmp(&runs[b].0).then_with(|| {
                let (ka, kb) = (runs[a].1.key(), runs[b].1.key());
                ka.iter()
                    .zip(&kb)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        for &i in &order {
            if let Some(rep) = self.witness(&runs[i].1) {
                return Ok(DistanceReport {
                    restarts_used: n,
                    objective_history: history,
                    ..rep
                });
            }
        }
        Err(Error::NonConverged(format!(
            "no certified sandwich among {n} restarts"
        )))
    }

    /// Turns the optimal linear map into a certified witness in the
    /// caller's coordinates.
    fn witness(&self, shape: &Shape) -> Option<DistanceReport> {
        let a = shape.matrix();
        let f = self.fit(&a)?;
        let r = f.big_r / f.rho;
        let t = AffineMap::linear(a.m11 / f.rho, a.m12 / f.rho, a.m21 / f.rho, a.m22 / f.rho);
        let s = f.s * (1.0 / f.rho);
        let w = (f.w - f.s) * (1.0 / f.rho);
        let u0 = if self.sign == 1 {
            if r - 1.0 > 1e-9 {
                w * (1.0 / (r - 1.0))
            } else {
                Point::ORIGIN
            }
        } else {
            w * (-1.0 / (1.0 + r))
        };
        let v0 = t.inverse().ok()?.apply(u0 - s);
        // undo the whitening: T = wk⁻¹ t wl
        let wk_inv = self.wk.inverse().ok()?;
        let u = wk_inv.apply(u0) - self.ck;
        let v = self.wl.inverse().ok()?.apply(v0) - self.cl;
        let t = wk_inv.compose(&t).compose(&self.wl);
        let rep = DistanceReport {
            mode: Mode::BanachMazur,
            r,
            sign: self.sign,
            map: t,
            shift_inner: u,
            shift_outer: v,
            verified: false,
            restarts_used: 0,
            objective_history: Vec::new(),
        };
        let ok = rep.recheck(&self.k, &self.l);
        ok.then_some(DistanceReport {
            verified: true,
            ..rep
        })
    }
}

/// Linear map sending `p` (centred at its centroid) to isotropic position:
/// identity second-moment matrix per unit area.
fn isotropic_map(p: &ConvexPolygon) -> AffineMap {
    let mut m = [0.0; 3];
    let mut area = 0.0;
    for (a, b) in p.edges() {
        let w = a.cross(b) / 2.0;
        let c = a + b;
        m[0] += w / 12.0 * (a.x * a.x + b.x * b.x + c.x * c.x);
        m[1] += w / 12.0 * (a.x * a.y + b.x * b.y + c.x * c.y);
        m[2] += w / 12.0 * (a.y * a.y + b.y * b.y + c.y * c.y);
        area += w;
    }
    let sigma = Matrix2::new(m[0], m[1], m[1], m[2]) / area;
    let eig = SymmetricEigen::new(sigma);
    if eig
        .eigenvalues
        .iter()
        .any(|&l| !(l > 0.0) || !l.is_finite())
    {
        return AffineMap::IDENTITY;
    }
    let inv_sqrt = Matrix2::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
    let w = eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    AffineMap::linear(w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::from_coords(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap()
    }

    fn quick() -> DistanceOptions {
        DistanceOptions {
            restarts: 8,
            maxvol_start: false,
            ..DistanceOptions::default()
        }
    }

    #[test]
    fn whitening_gives_identity_moments() {
        let p =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [4.0, 0.0], [5.0, 1.0], [0.0, 0.5]]).unwrap();
        let c = p.translate(-p.centroid());
        let w = apply_affine(&isotropic_map(&c), &c).unwrap();
        assert!(w.area() > 0.0);
        assert!(w.centroid().norm() < 1e-12);
        // isotropic again: the whitening of a whitened body is the identity
        assert!(isotropic_map(&w).max_abs_diff(&AffineMap::IDENTITY) < 1e-9);
    }

    #[test]
    fn shape_round_trip() {
        for m in [
            AffineMap::linear(2.0, 0.3, -0.4, 0.7),
            AffineMap::linear(0.1, 1.0, 1.5, 0.2),
        ] {
            let sh = Shape::from_linear(&m).unwrap();
            let back = sh.matrix();
            let k = m.det().abs().sqrt();
            let scaled = AffineMap::linear(m.m11 / k, m.m12 / k, m.m21 / k, m.m22 / k);
            assert!(back.max_abs_diff(&scaled) < 1e-12, "{back:?} vs {scaled:?}");
        }
    }

    #[test]
    fn certify_trivial_and_hexagon() {
        let sq = square();
        assert!(certify_sandwich(
            &sq,
            &sq,
            &AffineMap::IDENTITY,
            Point::ORIGIN,
            Point::ORIGIN,
            1.0,
            1
        ));
        let tri =
            ConvexPolygon::regular(3, 1.0, Point::ORIGIN, std::f64::consts::FRAC_PI_2).unwrap();
        let mut pts = tri.vertices().to_vec();
        pts.extend(tri.vertices().iter().map(|&p| -p));
        let hex = ConvexPolygon::new(&pts).unwrap();
        assert!(certify_sandwich(
            &tri,
            &hex,
            &AffineMap::IDENTITY,
            Point::ORIGIN,
            Point::ORIGIN,
            2.0,
            -1
        ));
        assert!(!certify_sandwich(
            &tri,
            &hex,
            &AffineMap::IDENTITY,
            Point::ORIGIN,
            Point::ORIGIN,
            2.0 - 1e-3,
            -1
        ));
    }

    #[test]
    fn square_and_diamond() {
        let d = ConvexPolygon::from_coords(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
            .unwrap();
        let rep = banach_mazur_distance(&square(), &d.translate(Point::new(3.0, -1.0)), &quick())
            .unwrap();
        assert!(rep.verified && (rep.r - 1.0).abs() < 1e-6, "{rep:?}");
    }

    #[test]
    fn square_and_triangle() {
        let tri = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.2, 0.9]]).unwrap();
        let rep = banach_mazur_distance(&square(), &tri, &quick()).unwrap();
        assert!(rep.verified && (rep.r - 2.0).abs() < 1e-3, "{rep:?}");
        let rep = grunbaum_distance(&tri, &square(), &quick()).unwrap();
        assert!(rep.verified && (rep.r - 2.0).abs() < 1e-3, "{rep:?}");
    }
}
