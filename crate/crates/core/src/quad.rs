//! Quadrature helpers: uniform trapezoid rules and Gauss-Legendre nodes.

/// Trapezoid rule over uniformly spaced samples.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let interior: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * (values[0] + values[values.len() - 1]) + interior)
}

/// Integrate f over [-beta_max, beta_max] on a uniform grid of n+1 points.
///
/// For integrands analytic on the real line with exponential decay (all of
/// the tanh-substituted Legendre integrals here), the uniform trapezoid rule
/// converges root-exponentially and reaches machine precision quickly.
pub fn integrate_symmetric<F: Fn(f64) -> f64>(f: F, beta_max: f64, n: usize) -> f64 {
    let h = 2.0 * beta_max / n as f64;
    let mut acc = 0.5 * (f(-beta_max) + f(beta_max));
    for i in 1..n {
        acc += f(-beta_max + i as f64 * h);
    }
    acc * h
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Good to near machine precision for n <= a few hundred.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess for the i-th largest root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_deriv(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    nodes.into_iter().zip(weights).collect()
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p_curr = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p_curr - kf * p_prev) / (kf + 1.0);
        p_prev = p_curr;
        p_curr = p_next;
    }
    let d = n as f64 * (x * p_curr - p_prev) / (x * x - 1.0);
    (p_curr, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2usize, 5, 8, 16, 33] {
            let rule = gauss_legendre(n);
            assert_eq!(rule.len(), n);
            // weights sum to 2
            let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((wsum - 2.0).abs() < 1e-13, "n={n}: wsum {wsum}");
            // exact for x^{2n-2}
            let k = 2 * n - 2;
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let want = 2.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-12, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn trapezoid_handles_gaussian() {
        let got = integrate_symmetric(|x| (-x * x).exp(), 10.0, 4000);
        assert!((got - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }
}
