//! Derivative-free local minimizers used by the multistart drivers.

use rand::Rng;
use rand_distr::StandardNormal;

/// Outcome of a local search.
#[derive(Debug, Clone)]
pub struct LocalMin {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct PatternSearch {
    pub initial_step: f64,
    pub shrink: f64,
    pub min_step: f64,
    pub max_evals: usize,
}

impl Default for PatternSearch {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            shrink: 0.5,
            min_step: 1e-9,
            max_evals: 2000,
        }
    }
}

impl PatternSearch {
    /// Opportunistic poll along `±` the columns of a freshly drawn random
    /// orthonormal basis. A success doubles the step (capped at the initial
    /// one); three failed bases in a row shrink it.
    /// Rotating the basis keeps the search from stalling on kinks aligned
    /// with the coordinate axes.
    pub fn minimize<F, R>(&self, f: F, x0: &[f64], rng: &mut R) -> LocalMin
    where
        F: Fn(&[f64]) -> f64,
        R: Rng,
    {
        let n = x0.len();
        let mut x = x0.to_vec();
        let mut fx = f(&x);
        let mut evals = 1;
        let mut step = self.initial_step;
        let mut trial = vec![0.0; n];
        let mut misses = 0;
        while step >= self.min_step && evals < self.max_evals {
            let basis = random_orthonormal(n, rng);
            let mut improved = false;
            'poll: for dir in &basis {
                for sign in [1.0, -1.0] {
                    for k in 0..n {
                        trial[k] = x[k] + sign * step * dir[k];
                    }
                    let ft = f(&trial);
                    evals += 1;
                    if ft < fx {
                        fx = ft;
                        x.copy_from_slice(&trial);
                        improved = true;
                        break 'poll;
                    }
                    if evals >= self.max_evals {
                        break 'poll;
                    }
                }
            }
            if improved {
                misses = 0;
                step = (step * 2.0).min(self.initial_step);
            } else {
                misses += 1;
                if misses >= 3 {
                    misses = 0;
                    step *= self.shrink;
                }
            }
        }
        LocalMin { x, f: fx, evals }
    }
}

fn random_orthonormal<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= d * c);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|a| *a /= norm);
            basis.push(v);
        }
    }
    basis
}

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Edge length of the initial right-angled simplex.
    pub initial_size: f64,
    /// Stop once the simplex diameter falls below this.
    pub tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            initial_size: 0.1,
            tol: 1e-8,
            max_evals: 4000,
        }
    }
}

impl NelderMead {
    pub fn minimize<F: Fn(&[f64]) -> f64>(&self, f: F, x0: &[f64]) -> LocalMin {
        let n = x0.len();
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), f(x0)));
        for k in 0..n {
            let mut p = x0.to_vec();
            p[k] += self.initial_size;
            let fp = f(&p);
            simplex.push((p, fp));
        }
        let mut evals = n + 1;
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if evals >= self.max_evals || diameter(&simplex) < self.tol {
                break;
            }
            let worst = simplex[n].clone();
            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|(p, _)| p[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                (0..n)
                    .map(|k| centroid[k] + t * (worst.0[k] - centroid[k]))
                    .collect()
            };
            let xr = along(-1.0);
            let fr = f(&xr);
            evals += 1;
            if fr < simplex[0].1 {
                let xe = along(-2.0);
                let fe = f(&xe);
                evals += 1;
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst.1 {
                    let xc = along(-0.5);
                    let fc = f(&xc);
                    (xc, fc)
                } else {
                    let xc = along(0.5);
                    let fc = f(&xc);
                    (xc, fc)
                };
                evals += 1;
                if fc < worst.1.min(fr) {
                    simplex[n] = (xc, fc);
                } else {
                    let best = simplex[0].0.clone();
                    for s in simplex.iter_mut().skip(1) {
                        for k in 0..n {
                            s.0[k] = best[k] + 0.5 * (s.0[k] - best[k]);
                        }
                        s.1 = f(&s.0);
                        evals += 1;
                    }
                }
            }
        }
        let (x, fx) = simplex.swap_remove(0);
        LocalMin { x, f: fx, evals }
    }
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..simplex.len() {
        for j in i + 1..simplex.len() {
            let s: f64 = simplex[i]
                .0
                .iter()
                .zip(&simplex[j].0)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            d = d.max(s.sqrt());
        }
    }
    d
}
