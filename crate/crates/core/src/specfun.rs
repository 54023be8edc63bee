//! Self-contained special functions: gamma, Legendre polynomials, associated
//! Legendre functions of negative integer order, generalized Laguerre
//! polynomials, and the hyperangular normalization constants.
//!
//! Only first-kind Legendre functions are provided; the second kind fails the
//! `(1 - z^2)^{-1}`-weighted normalization condition and is never needed.

use crate::error::SpecFunError;

/// Lanczos coefficients for g = 7, n = 9 (double precision).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function via the Lanczos approximation, with the reflection formula
/// for x < 1/2. Accurate to better than 1e-12 relative on [0.5, 50].
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if x <= 0.0 && x == x.floor() {
        return Err(SpecFunError::Pole(x));
    }
    if x < 0.5 {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let s = (std::f64::consts::PI * x).sin();
        return Ok(std::f64::consts::PI / (s * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    Ok(sqrt_two_pi * t.powf(z + 0.5) * (-t).exp() * acc)
}

/// Exact factorial as f64 (n <= 170).
pub fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

fn legendre_rec(m: u32, x: f64) -> f64 {
    // Three-term recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
    if m == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p_curr = x;
    for k in 1..m {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p_curr - kf * p_prev) / (kf + 1.0);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Legendre polynomial P_m(zeta) on [-1, 1].
pub fn legendre_p(m: u32, zeta: f64) -> Result<f64, SpecFunError> {
    if !(-1.0..=1.0).contains(&zeta) {
        return Err(SpecFunError::Domain(format!(
            "legendre_p requires zeta in [-1, 1], got {zeta}"
        )));
    }
    Ok(legendre_rec(m, zeta))
}

/// Derivative P_m'(zeta) on the open interval.
pub fn legendre_p_deriv(m: u32, zeta: f64) -> Result<f64, SpecFunError> {
    if zeta.abs() >= 1.0 {
        return Err(SpecFunError::Domain(format!(
            "legendre_p_deriv requires |zeta| < 1, got {zeta}"
        )));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let p_m = legendre_rec(m, zeta);
    let p_m1 = legendre_rec(m - 1, zeta);
    Ok(m as f64 * (zeta * p_m - p_m1) / (zeta * zeta - 1.0))
}

/// Index pair for an associated Legendre function of negative order,
/// P_degree^{-order_n} with 0 <= order_n <= degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendreOrderDegree {
    degree: u32,
    order_n: u32,
}

impl LegendreOrderDegree {
    /// Fails when n > m: the function would vanish identically.
    pub fn new(degree: u32, order_n: u32) -> Result<Self, SpecFunError> {
        if order_n > degree {
            return Err(SpecFunError::Index(format!(
                "order n = {order_n} exceeds degree m = {degree}"
            )));
        }
        Ok(Self { degree, order_n })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order_n(&self) -> u32 {
        self.order_n
    }
}

/// Positive-order associated Legendre function P_m^n with the
/// Condon-Shortley phase, by the standard double recurrence.
fn assoc_legendre_pos(m: u32, n: u32, x: f64) -> f64 {
    debug_assert!(n <= m);
    if n == 0 {
        return legendre_rec(m, x);
    }
    // P_n^n = (-1)^n (2n-1)!! (1-x^2)^{n/2}
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pnn = 1.0;
    let mut fact = 1.0;
    for _ in 0..n {
        pnn *= -fact * somx2;
        fact += 2.0;
    }
    if m == n {
        return pnn;
    }
    // P_{n+1}^n = x (2n+1) P_n^n
    let mut p_lower = pnn;
    let mut p_upper = x * (2.0 * n as f64 + 1.0) * pnn;
    if m == n + 1 {
        return p_upper;
    }
    for degree in n + 2..=m {
        let df = degree as f64;
        let nf = n as f64;
        let next = (x * (2.0 * df - 1.0) * p_upper - (df + nf - 1.0) * p_lower) / (df - nf);
        p_lower = p_upper;
        p_upper = next;
    }
    p_upper
}

/// Associated Legendre function of negative order, P_m^{-n}(zeta), obtained
/// from the Condon-Shortley positive-order function through the reflection
/// P_m^{-n} = (-1)^n (m-n)!/(m+n)! P_m^n.
pub fn assoc_legendre_p(idx: LegendreOrderDegree, zeta: f64) -> Result<f64, SpecFunError> {
    let (m, n) = (idx.degree, idx.order_n);
    if n == 0 {
        return legendre_p(m, zeta);
    }
    if zeta.abs() >= 1.0 {
        return Err(SpecFunError::Domain(format!(
            "assoc_legendre_p with n >= 1 requires |zeta| < 1, got {zeta}"
        )));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let ratio: f64 = (m - n + 1..=m + n).map(|k| k as f64).product();
    Ok(sign / ratio * assoc_legendre_pos(m, n, zeta))
}

/// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<f64, SpecFunError> {
    if x < 0.0 {
        return Err(SpecFunError::Domain(format!(
            "laguerre requires x >= 0, got {x}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut l_prev = 1.0;
    let mut l_curr = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let l_next = ((2.0 * kf + 1.0 + alpha - x) * l_curr - (kf + alpha) * l_prev) / (kf + 1.0);
        l_prev = l_curr;
        l_curr = l_next;
    }
    Ok(l_curr)
}

/// Normalization constant sqrt(n) sqrt(Gamma(1+m+n)/Gamma(1+m-n)) making
/// the hyperbolic-sector function B_hat orthonormal under the
/// (1 - zeta^2)^{-1} weight. Requires m >= n >= 1; the n = 0 member is
/// handled by the regularized family instead.
pub fn b_norm_constant(m: u32, n: u32) -> Result<f64, SpecFunError> {
    if n < 1 || n > m {
        return Err(SpecFunError::Index(format!(
            "b_norm_constant requires m >= n >= 1, got m = {m}, n = {n}"
        )));
    }
    let ratio = gamma_fn((1 + m + n) as f64)? / gamma_fn((1 + m - n) as f64)?;
    Ok((n as f64).sqrt() * ratio.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    // --- independent oracles -------------------------------------------------

    /// Coefficients of (x^2 - 1)^m differentiated d times, evaluated at x.
    /// Together with the 1/(2^m m!) prefactor this is the Rodrigues formula.
    fn rodrigues_eval(m: u32, d: u32, x: f64) -> f64 {
        // (x^2-1)^m = sum_k C(m,k) x^{2k} (-1)^{m-k}
        let mut coeffs = vec![0.0; 2 * m as usize + 1];
        for k in 0..=m {
            let binom = factorial(m) / (factorial(k) * factorial(m - k));
            let sign = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[2 * k as usize] = binom * sign;
        }
        for _ in 0..d {
            let mut next = vec![0.0; coeffs.len()];
            for (p, c) in coeffs.iter().enumerate().skip(1) {
                next[p - 1] = c * p as f64;
            }
            coeffs = next;
        }
        let poly: f64 = coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c);
        poly / (2f64.powi(m as i32) * factorial(m))
    }

    fn legendre_oracle(m: u32, x: f64) -> f64 {
        rodrigues_eval(m, m, x)
    }

    /// Eq.-(47)-style oracle combined with the order reflection:
    /// P_m^{-n} = (-1)^n (m-n)!/(m+n)! [(-1)^n (1-x^2)^{n/2} d^n/dx^n P_m(x)].
    fn assoc_legendre_neg_oracle(m: u32, n: u32, x: f64) -> f64 {
        let cs = if n % 2 == 0 { 1.0 } else { -1.0 };
        let dn_pm = rodrigues_eval(m, m + n, x);
        let pos = cs * (1.0 - x * x).powf(n as f64 / 2.0) * dn_pm;
        cs * factorial(m - n) / factorial(m + n) * pos
    }

    /// Finite-series oracle for the generalized Laguerre polynomial.
    fn laguerre_series_oracle(n: u32, alpha: f64, x: f64) -> f64 {
        let mut sum = 0.0;
        for i in 0..=n {
            // binom(n + alpha, n - i) via gamma
            let binom = gamma_fn(n as f64 + alpha + 1.0).unwrap()
                / (gamma_fn(alpha + i as f64 + 1.0).unwrap() * factorial(n - i));
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * x.powi(i as i32) / factorial(i);
        }
        sum
    }

    // --- gamma ---------------------------------------------------------------

    #[test]
    fn gamma_integers() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 1e-12 * 24.0);
    }

    #[test]
    fn gamma_half_matches_defining_integral() {
        // Gamma(1/2) = int_0^inf t^{-1/2} e^{-t} dt = 2 int_0^inf e^{-u^2} du.
        let n = 200_000;
        let umax = 12.0;
        let h = umax / n as f64;
        let mut acc = 0.5 * (1.0 + (-umax * umax_sq(umax)).exp());
        for i in 1..n {
            let u = i as f64 * h;
            acc += (-u * u).exp();
        }
        let integral = 2.0 * acc * h;
        let expected = std::f64::consts::PI.sqrt();
        assert!((integral - expected).abs() < 1e-10);
        assert!((gamma_fn(0.5).unwrap() - expected).abs() < 1e-13);

        fn umax_sq(u: f64) -> f64 {
            u
        }
    }

    #[test]
    fn gamma_pole_errors() {
        assert!(matches!(gamma_fn(0.0), Err(SpecFunError::Pole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(SpecFunError::Pole(_))));
    }

    #[test]
    fn gamma_functional_equation() {
        for &x in &[0.7, 1.3, 2.5, 7.25, 19.5, 33.0, 49.0] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-12 * lhs.abs(),
                "functional equation failed at x = {x}: {lhs} vs {rhs}"
            );
        }
    }

    // --- Legendre ------------------------------------------------------------

    #[test]
    fn legendre_low_orders() {
        for &z in &[-0.9, -0.3, 0.0, 0.5, 1.0] {
            assert_eq!(legendre_p(0, z).unwrap(), 1.0);
            assert!((legendre_p(1, z).unwrap() - z).abs() < 1e-15);
        }
        assert!((legendre_p(1, 0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn legendre_p5_frozen_and_oracle() {
        // Rodrigues: P_5(x) = (63 x^5 - 70 x^3 + 15 x) / 8; at 0.3 this is 0.34538625.
        let got = legendre_p(5, 0.3).unwrap();
        assert!((got - 0.345_386_25).abs() < 1e-14);
        assert!((got - legendre_oracle(5, 0.3)).abs() < 1e-13);
    }

    #[test]
    fn legendre_matches_rodrigues_oracle_to_degree_12() {
        for m in 0..=12u32 {
            for i in 0..40 {
                let x = -0.975 + 0.05 * i as f64;
                let got = legendre_p(m, x).unwrap();
                let want = legendre_oracle(m, x);
                let scale = want.abs().max(1e-3);
                assert!(
                    (got - want).abs() < 1e-10 * scale,
                    "P_{m}({x}): {got} vs oracle {want}"
                );
            }
        }
    }

    #[test]
    fn legendre_domain_error() {
        assert!(matches!(legendre_p(3, 1.2), Err(SpecFunError::Domain(_))));
    }

    // --- associated Legendre ---------------------------------------------------

    #[test]
    fn assoc_legendre_rejects_n_above_m() {
        assert!(LegendreOrderDegree::new(2, 3).is_err());
    }

    #[test]
    fn assoc_legendre_order_zero_reduces_to_legendre() {
        let idx = LegendreOrderDegree::new(4, 0).unwrap();
        for &z in &[-0.8, 0.1, 0.9] {
            assert_eq!(
                assoc_legendre_p(idx, z).unwrap(),
                legendre_p(4, z).unwrap()
            );
        }
    }

    #[test]
    fn assoc_legendre_p21_closed_form() {
        // P_2^{-1}(z) = (z/2) sqrt(1-z^2); at z = 0.6 this is 0.24.
        let idx = LegendreOrderDegree::new(2, 1).unwrap();
        let got = assoc_legendre_p(idx, 0.6).unwrap();
        assert!((got - 0.24).abs() < 1e-14);
        assert!((got - assoc_legendre_neg_oracle(2, 1, 0.6)).abs() < 1e-13);
    }

    #[test]
    fn assoc_legendre_p11_against_derivative_oracle() {
        // P_1^{-1}(0) = 1/2 via the reflection of the Rodrigues-derivative form.
        let idx = LegendreOrderDegree::new(1, 1).unwrap();
        let got = assoc_legendre_p(idx, 0.0).unwrap();
        let want = assoc_legendre_neg_oracle(1, 1, 0.0);
        assert!((got - 0.5).abs() < 1e-14);
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn assoc_legendre_matches_oracle_grid() {
        for m in 1..=8u32 {
            for n in 1..=m {
                let idx = LegendreOrderDegree::new(m, n).unwrap();
                for i in 0..20 {
                    let x = -0.95 + 0.1 * i as f64;
                    let got = assoc_legendre_p(idx, x).unwrap();
                    let want = assoc_legendre_neg_oracle(m, n, x);
                    assert!(
                        (got - want).abs() < 1e-11 * want.abs().max(1e-4),
                        "P_{m}^-{n}({x}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn assoc_legendre_domain_error_at_endpoints() {
        let idx = LegendreOrderDegree::new(3, 1).unwrap();
        assert!(matches!(
            assoc_legendre_p(idx, 1.0),
            Err(SpecFunError::Domain(_))
        ));
    }

    // --- Laguerre --------------------------------------------------------------

    #[test]
    fn laguerre_low_orders() {
        for &x in &[0.0, 0.7, 3.0] {
            assert_eq!(laguerre(0, 2.5, x).unwrap(), 1.0);
            let alpha = 0.8;
            assert!((laguerre(1, alpha, x).unwrap() - (1.0 + alpha - x)).abs() < 1e-15);
        }
    }

    #[test]
    fn laguerre_l3_2_frozen_and_series() {
        // L_3^2(1.5) = 10 - 10*1.5 + 5*1.5^2/2 - 1.5^3/6 = 0.0625.
        let got = laguerre(3, 2.0, 1.5).unwrap();
        assert!((got - 0.0625).abs() < 1e-13);
        assert!((got - laguerre_series_oracle(3, 2.0, 1.5)).abs() < 1e-12);
    }

    #[test]
    fn laguerre_matches_series_oracle() {
        for n in 0..=7u32 {
            for &alpha in &[0.5, 1.0, 2.0, 3.5] {
                for i in 0..12 {
                    let x = 0.5 * i as f64;
                    let got = laguerre(n, alpha, x).unwrap();
                    let want = laguerre_series_oracle(n, alpha, x);
                    assert!(
                        (got - want).abs() < 1e-10 * want.abs().max(1.0),
                        "L_{n}^{alpha}({x}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn laguerre_three_term_recurrence_residual() {
        // (k+1) L_{k+1} - (2k+1+a-x) L_k + (k+a) L_{k-1} = 0 pointwise on [0, 50].
        let alpha = 1.5;
        for k in 1..=9u32 {
            for i in 0..=100 {
                let x = 0.5 * i as f64;
                let lm = laguerre(k - 1, alpha, x).unwrap();
                let l0 = laguerre(k, alpha, x).unwrap();
                let lp = laguerre(k + 1, alpha, x).unwrap();
                let kf = k as f64;
                let res = (kf + 1.0) * lp - (2.0 * kf + 1.0 + alpha - x) * l0 + (kf + alpha) * lm;
                let scale = lp.abs().max(l0.abs()).max(lm.abs()).max(1.0);
                assert!(res.abs() < 1e-12 * scale, "residual {res} at k={k}, x={x}");
            }
        }
    }

    #[test]
    fn laguerre_domain_error() {
        assert!(matches!(
            laguerre(2, 1.0, -0.1),
            Err(SpecFunError::Domain(_))
        ));
    }

    // --- normalization constants -------------------------------------------------

    #[test]
    fn b_norm_small_cases() {
        assert!((b_norm_constant(1, 1).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert!((b_norm_constant(2, 1).unwrap() - 6f64.sqrt()).abs() < 1e-14);
        assert!(b_norm_constant(2, 3).is_err());
        assert!(b_norm_constant(2, 0).is_err());
    }

    #[test]
    fn normalization_integral_m2_n1_equals_one_sixth() {
        // int (1-z^2)^{-1} |P_2^{-1}|^2 dz = 1/6, by quadrature in beta = artanh z.
        let idx = LegendreOrderDegree::new(2, 1).unwrap();
        let beta_max = 15.0;
        let n = 40_000;
        let h = 2.0 * beta_max / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let beta = -beta_max + i as f64 * h;
            let z = beta.tanh();
            let p = assoc_legendre_p(idx, z).unwrap();
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * p * p;
        }
        let integral = acc * h;
        assert!((integral - 1.0 / 6.0).abs() < 1e-10);
    }
}
