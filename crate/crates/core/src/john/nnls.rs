//! Lawson–Hanson non-negative least squares.

use nalgebra::{DMatrix, DVector};

/// `argmin ‖A x − b‖` over `x ≥ 0`, with the attained residual norm.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    let scale = a.amax().max(b.amax()).max(1.0);
    let tol = 1e-13 * scale * scale * (n.max(1) as f64);
    let mut outer = 0;
    loop {
        let w = a.transpose() * (b - a * &x);
        let next = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = next else { break };
        outer += 1;
        if outer > 3 * n + 10 {
            break;
        }
        passive[j] = true;
        for _ in 0..3 * n + 10 {
            let z = solve_passive(a, b, &passive);
            if (0..n).filter(|&i| passive[i]).all(|i| z[i] > 0.0) {
                x = z;
                break;
            }
            let mut alpha = f64::INFINITY;
            for i in 0..n {
                if passive[i] && z[i] <= 0.0 {
                    alpha = alpha.min(x[i] / (x[i] - z[i]));
                }
            }
            x += (z - &x) * alpha;
            for i in 0..n {
                if passive[i] && x[i] <= 1e-15 * scale {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    let res = (a * &x - b).norm();
    (x, res)
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let cols: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
    let sub = a.select_columns(&cols);
    let sol = sub
        .svd(true, true)
        .solve(b, 1e-13)
        .expect("svd computed with u and v");
    let mut z = DVector::zeros(passive.len());
    for (k, &c) in cols.iter().enumerate() {
        z[c] = sol[k];
    }
    z
}
