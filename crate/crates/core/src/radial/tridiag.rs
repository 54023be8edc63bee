//! Symmetric tridiagonal eigensolver: bisection on the Sturm sequence for
//! eigenvalues (which also yields node counts for free), inverse iteration
//! for eigenvectors.

/// Number of eigenvalues of the symmetric tridiagonal matrix
/// (diag, constant off-diagonal `off`) strictly below `lam`.
pub fn sturm_count(diag: &[f64], off: f64, lam: f64) -> usize {
    let off_sq = off * off;
    let pivmin = 1e-290;
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - lam } else { d - lam - off_sq / q };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th (0-based) eigenvalue by bisection.
pub fn bisect_eigenvalue(diag: &[f64], off: f64, k: usize) -> f64 {
    let bound = 2.0 * off.abs();
    let mut lo = diag.iter().cloned().fold(f64::INFINITY, f64::min) - bound;
    let mut hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + bound;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(lo.abs()).max(1e-6) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvector by inverse iteration at a slightly perturbed shift.
pub fn inverse_iteration(diag: &[f64], off: f64, lam: f64, k: usize) -> Vec<f64> {
    let n = diag.len();
    let shift = lam + lam.abs().max(1.0) * 1e-11;
    // Start with the k-th Dirichlet sine mode: right node structure.
    let mut v: Vec<f64> = (0..n)
        .map(|i| {
            let x = (i + 1) as f64 / (n + 1) as f64;
            ((k + 1) as f64 * std::f64::consts::PI * x).sin()
        })
        .collect();
    normalize(&mut v);
    for _ in 0..3 {
        v = solve_shifted(diag, off, shift, &v);
        normalize(&mut v);
    }
    // Fix overall sign: first significant entry positive.
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8) {
        if *first < 0.0 {
            for x in &mut v {
                *x = -*x;
            }
        }
    }
    v
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Thomas algorithm for (T - shift I) x = b.
fn solve_shifted(diag: &[f64], off: f64, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    let mut denom = diag[0] - shift;
    if denom.abs() < 1e-290 {
        denom = 1e-290;
    }
    c_prime[0] = off / denom;
    d_prime[0] = b[0] / denom;
    for i in 1..n {
        let mut m = diag[i] - shift - off * c_prime[i - 1];
        if m.abs() < 1e-290 {
            m = 1e-290;
        }
        c_prime[i] = off / m;
        d_prime[i] = (b[i] - off * d_prime[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d_prime[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_prime[i] - c_prime[i] * x[i + 1];
    }
    x
}

/// Interior sign changes, ignoring near-zero noise.
pub fn count_nodes(v: &[f64]) -> usize {
    let scale = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let floor = 1e-9 * scale;
    let mut nodes = 0;
    let mut prev = 0.0f64;
    for &x in v {
        if x.abs() <= floor {
            continue;
        }
        if prev != 0.0 && x.signum() != prev.signum() {
            nodes += 1;
        }
        prev = x;
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Discrete Dirichlet Laplacian: -u'' on (0, 1) has eigenvalues
    /// (2/h^2) (1 - cos(k pi h)) on the grid, exactly.
    #[test]
    fn dirichlet_laplacian_eigenvalues_exact() {
        let n = 200;
        let h = 1.0 / (n as f64 + 1.0);
        let diag = vec![2.0 / (h * h); n];
        let off = -1.0 / (h * h);
        for k in 0..4 {
            let lam = bisect_eigenvalue(&diag, off, k);
            let want =
                2.0 / (h * h) * (1.0 - ((k + 1) as f64 * std::f64::consts::PI * h).cos());
            assert!(
                (lam - want).abs() < 1e-9 * want,
                "k={k}: {lam} vs exact discrete {want}"
            );
        }
    }

    #[test]
    fn eigenvector_residual_and_nodes() {
        let n = 300;
        let h = 1.0 / (n as f64 + 1.0);
        let diag = vec![2.0 / (h * h); n];
        let off = -1.0 / (h * h);
        for k in 0..3 {
            let lam = bisect_eigenvalue(&diag, off, k);
            let v = inverse_iteration(&diag, off, lam, k);
            // residual of T v - lam v
            let mut max_res = 0.0f64;
            for i in 0..n {
                let mut tv = diag[i] * v[i];
                if i > 0 {
                    tv += off * v[i - 1];
                }
                if i + 1 < n {
                    tv += off * v[i + 1];
                }
                max_res = max_res.max((tv - lam * v[i]).abs());
            }
            assert!(max_res < 1e-6 * lam.abs(), "k={k}: residual {max_res}");
            assert_eq!(count_nodes(&v), k, "node count at k={k}");
        }
    }
}
