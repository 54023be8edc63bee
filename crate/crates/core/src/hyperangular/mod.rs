//! Hyperangular eigenfunctions on the RMS: the half-integer-phase azimuthal
//! factor Phi_m, the hyperbolic-sector functions B_hat (with the n = 0
//! regularized family), the polar-sector functions Theta, and their
//! products chi. Grid-based operator machinery lives in [`grid`].

pub mod grid;

use crate::error::HyperangularError;
use crate::specfun::{
    assoc_legendre_p, b_norm_constant, gamma_fn, legendre_p, LegendreOrderDegree,
};
use num_complex::Complex64;

/// Quantum numbers labeling one hyperangular eigenfunction.
///
/// `n` labels the hyperbolic Casimir sector (eigenvalue n^2 - 1/4), `k` the
/// ladder rung with azimuthal index m = n + k, `ell` the polar sector
/// (eigenvalue ell(ell+1) - 3/4), and `conjugated` selects the
/// charge-conjugate family. A regularization parameter `eps` is present
/// exactly when n = 0, where the unregularized member is not normalizable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperangularState {
    n: u32,
    k: u32,
    ell: u32,
    conjugated: bool,
    eps: Option<f64>,
}

impl HyperangularState {
    pub fn new(
        n: u32,
        k: u32,
        ell: u32,
        conjugated: bool,
        eps: Option<f64>,
    ) -> Result<Self, HyperangularError> {
        if ell < n {
            return Err(HyperangularError::Domain(format!(
                "ell = {ell} must be >= n = {n}"
            )));
        }
        match (n, eps) {
            (0, None) => {
                return Err(HyperangularError::Domain(
                    "n = 0 requires a regularization parameter eps".into(),
                ))
            }
            (0, Some(e)) if !(e > 0.0) => {
                return Err(HyperangularError::Domain(format!(
                    "eps must be positive, got {e}"
                )))
            }
            (n, Some(_)) if n > 0 => {
                return Err(HyperangularError::Domain(
                    "eps is only meaningful for n = 0".into(),
                ))
            }
            _ => {}
        }
        Ok(Self { n, k, ell, conjugated, eps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn conjugated(&self) -> bool {
        self.conjugated
    }
    pub fn eps(&self) -> Option<f64> {
        self.eps
    }
    /// Azimuthal index m = n + k.
    pub fn m(&self) -> u32 {
        self.n + self.k
    }
    /// Hyperbolic Casimir eigenvalue n^2 - 1/4.
    pub fn n2_eigenvalue(&self) -> f64 {
        (self.n * self.n) as f64 - 0.25
    }
    /// Full Casimir eigenvalue ell(ell+1) - 3/4.
    pub fn lambda_eigenvalue(&self) -> f64 {
        (self.ell * (self.ell + 1)) as f64 - 0.75
    }
}

/// Azimuthal factor Phi_m(phi) = e^{i (m + 1/2) phi} / sqrt(2 pi).
///
/// The half-integer phase makes this double valued: advancing phi by 2 pi
/// flips the sign. Functions are stored on the fundamental domain
/// [0, 2 pi); the monodromy is a property of the values, not of storage.
pub fn phi_m(m: u32, phi: f64) -> Complex64 {
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let phase = (m as f64 + 0.5) * phi;
    Complex64::from_polar(norm, phase)
}

/// Normalized hyperbolic-sector function B_hat_{mn}(zeta) for n >= 1,
/// orthonormal under the weight (1 - zeta^2)^{-1} on (-1, 1).
pub fn b_hat(m: u32, n: u32, zeta: f64) -> Result<f64, HyperangularError> {
    let norm = b_norm_constant(m, n)?;
    let idx = LegendreOrderDegree::new(m, n)?;
    Ok(norm * assoc_legendre_p(idx, zeta)?)
}

/// Regularized ground family sqrt(eps) (1 - zeta^2)^{eps/2} P_m(zeta),
/// standing in for the non-normalizable n = 0 member. Scalar products are
/// computed at fixed eps > 0 and extrapolated to eps -> 0 afterwards.
pub fn b_hat_regularized(m: u32, eps: f64, zeta: f64) -> Result<f64, HyperangularError> {
    if !(eps > 0.0) {
        return Err(HyperangularError::Domain(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if zeta.abs() >= 1.0 {
        return Err(HyperangularError::Domain(format!(
            "zeta must lie inside (-1, 1), got {zeta}"
        )));
    }
    let one_minus = (1.0 - zeta) * (1.0 + zeta);
    Ok(eps.sqrt() * one_minus.powf(eps / 2.0) * legendre_p(m, zeta)?)
}

/// Normalization constant for Theta_hat: sqrt((2l+1)/2 * (l+n)!/(l-n)!).
pub fn theta_norm_constant(ell: u32, n: u32) -> Result<f64, HyperangularError> {
    if n > ell {
        return Err(HyperangularError::Domain(format!(
            "theta_fn requires ell >= n, got ell = {ell}, n = {n}"
        )));
    }
    let ratio = gamma_fn((ell + n + 1) as f64)? / gamma_fn((ell - n + 1) as f64)?;
    Ok(((2.0 * ell as f64 + 1.0) / 2.0 * ratio).sqrt())
}

/// Polar-sector function Theta_hat_{ln}(xi) = N_{ln} P_l^{-n}(xi), normalized
/// so that the plain integral of |Theta_hat|^2 over xi in (-1, 1) is one.
/// The physical Theta is (1 - xi^2)^{-1/4} Theta_hat.
pub fn theta_fn(ell: u32, n: u32, xi: f64) -> Result<f64, HyperangularError> {
    let norm = theta_norm_constant(ell, n)?;
    let idx = LegendreOrderDegree::new(ell, n)?;
    Ok(norm * assoc_legendre_p(idx, xi)?)
}

/// Physical polar factor Theta(theta) = (sin theta)^{-1/2} Theta_hat(cos theta).
pub fn theta_physical(ell: u32, n: u32, theta: f64) -> Result<f64, HyperangularError> {
    let xi = theta.cos();
    Ok(theta_fn(ell, n, xi)? / theta.sin().sqrt())
}

/// Hyperbolic-azimuthal product chi_{n+k}^{-n}(zeta, phi)
/// = (1 - zeta^2)^{1/4} B_hat_{n+k, n}(zeta) Phi_{n+k}(phi).
///
/// The conjugation flag applies complex conjugation, producing the
/// inequivalent family with the same Casimir eigenvalue; for n = 0 the
/// regularized B_hat with the state's eps is used.
pub fn chi(state: &HyperangularState, zeta: f64, phi: f64) -> Result<Complex64, HyperangularError> {
    let m = state.m();
    let radial_quarter = ((1.0 - zeta) * (1.0 + zeta)).powf(0.25);
    let b = match state.eps {
        Some(eps) => b_hat_regularized(m, eps, zeta)?,
        None => b_hat(m, state.n, zeta)?,
    };
    let value = radial_quarter * b * phi_m(m, phi);
    Ok(if state.conjugated { value.conj() } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{gauss_legendre, integrate_symmetric};

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn phi_at_origin() {
        let got = phi_m(0, 0.0);
        assert!((got.re - 1.0 / TAU.sqrt()).abs() < 1e-15);
        assert!(got.im.abs() < 1e-15);
    }

    #[test]
    fn phi_monodromy_is_minus_one() {
        for m in 0..5u32 {
            for &phi in &[0.0, 1.0, 2.5, 5.0] {
                let a = phi_m(m, phi + TAU);
                let b = -phi_m(m, phi);
                assert!((a - b).norm() < 1e-12, "m={m}, phi={phi}");
            }
        }
    }

    #[test]
    fn phi_orthonormal_by_quadrature() {
        let n = 64;
        for m1 in 0..4u32 {
            for m2 in 0..4u32 {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    let phi = TAU * j as f64 / n as f64;
                    acc += phi_m(m1, phi) * phi_m(m2, phi).conj();
                }
                acc *= TAU / n as f64;
                let want = if m1 == m2 { 1.0 } else { 0.0 };
                assert!((acc.re - want).abs() < 1e-13 && acc.im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn b_hat_21_normalized_under_singular_weight() {
        // int (1-z^2)^{-1} |b_hat(2,1,.)|^2 dz = 1, via the beta substitution.
        let integral = integrate_symmetric(
            |beta| {
                let z = beta.tanh();
                let v = b_hat(2, 1, z).unwrap();
                v * v
            },
            15.0,
            20_000,
        );
        assert!((integral - 1.0).abs() < 1e-10, "norm^2 = {integral}");
    }

    #[test]
    fn b_hat_11_at_origin() {
        let want = 2f64.sqrt() * 0.5; // sqrt(2) * P_1^{-1}(0)
        assert!((b_hat(1, 1, 0.0).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn b_hat_rejects_m_below_n() {
        assert!(b_hat(1, 2, 0.0).is_err());
    }

    #[test]
    fn regularized_norm_stays_bounded_and_extrapolates_to_one() {
        // eps * int (1-z^2)^{eps-1} dz -> 1 as eps -> 0+ (m = 0).
        // |B|^2 cosh(beta) with B = (1-z^2)^{1/4} b_hat reduces to
        // eps sech^{2 eps}(beta) in d(beta); tanh saturates in floating
        // point on these wide grids, so integrate the sech form directly.
        let norm_sq = |eps: f64| {
            integrate_symmetric(
                |beta| {
                    let sech = 1.0 / beta.cosh();
                    eps * sech.powf(2.0 * eps)
                },
                28.0 / eps.max(0.02),
                400_000,
            )
        };
        let eps_seq = [0.2, 0.1, 0.05, 0.025];
        let norms: Vec<f64> = eps_seq.iter().map(|&e| norm_sq(e)).collect();
        for &n2 in &norms {
            assert!(n2.is_finite() && n2 > 0.9 && n2 < 1.5, "norm^2 = {n2}");
        }
        // Linear-in-eps Richardson from the last pair.
        let extrap = 2.0 * norms[3] - norms[2];
        assert!((extrap - 1.0).abs() < 5e-3, "extrapolated norm^2 = {extrap}");
    }

    #[test]
    fn regularized_vanishes_pointwise_like_sqrt_eps() {
        let zeta = 0.3;
        let p = legendre_p(3, zeta).unwrap();
        for &eps in &[0.1, 0.01, 0.001] {
            let v = b_hat_regularized(3, eps, zeta).unwrap();
            let ratio = v / eps.sqrt();
            assert!(
                (ratio - p).abs() < 0.05 * p.abs(),
                "eps={eps}: ratio {ratio} vs P {p}"
            );
        }
        assert!(b_hat_regularized(3, 0.0, zeta).is_err());
    }

    #[test]
    fn theta_hat_ground_is_constant() {
        for &xi in &[-0.7, 0.0, 0.4] {
            assert!((theta_fn(0, 0, xi).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn theta_hat_orthonormal() {
        let rule = gauss_legendre(64);
        for n in 0..=3u32 {
            for l1 in n..=6 {
                for l2 in n..=6 {
                    let mut acc = 0.0;
                    for &(x, w) in &rule {
                        acc += w * theta_fn(l1, n, x).unwrap() * theta_fn(l2, n, x).unwrap();
                    }
                    let want = if l1 == l2 { 1.0 } else { 0.0 };
                    assert!(
                        (acc - want).abs() < 1e-10,
                        "theta ({l1},{n})x({l2},{n}): {acc}"
                    );
                }
            }
        }
        assert!(theta_fn(1, 2, 0.0).is_err());
    }

    #[test]
    fn chi_normalized_under_cosh_measure() {
        // |Phi|^2 integrates to 1 over phi; the remaining beta integral of
        // |(1-z^2)^{1/4} b_hat|^2 cosh(beta) is the singular-weight norm.
        for (n, k) in [(1u32, 0u32), (1, 2), (2, 1), (3, 0)] {
            let state = HyperangularState::new(n, k, n, false, None).unwrap();
            let integral = integrate_symmetric(
                |beta| {
                    let z = beta.tanh();
                    let v = chi(&state, z, 0.4).unwrap().norm_sqr();
                    v * beta.cosh() * TAU
                },
                15.0,
                20_000,
            );
            assert!((integral - 1.0).abs() < 1e-9, "({n},{k}): {integral}");
        }
    }

    #[test]
    fn chi_distinct_rungs_orthogonal() {
        // <chi_{n,k}, chi_{n',k'}> over cosh(beta) d(beta) d(phi).
        let pairs = [((1u32, 0u32), (1u32, 1u32)), ((1, 2), (2, 1)), ((2, 0), (2, 2))];
        let n_phi = 32;
        for ((n1, k1), (n2, k2)) in pairs {
            let a = HyperangularState::new(n1, k1, n1, false, None).unwrap();
            let b = HyperangularState::new(n2, k2, n2, false, None).unwrap();
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n_phi {
                let phi = TAU * j as f64 / n_phi as f64;
                let re = integrate_symmetric(
                    |beta| {
                        let z = beta.tanh();
                        (chi(&a, z, phi).unwrap().conj() * chi(&b, z, phi).unwrap()).re
                            * beta.cosh()
                    },
                    15.0,
                    4_000,
                );
                let im = integrate_symmetric(
                    |beta| {
                        let z = beta.tanh();
                        (chi(&a, z, phi).unwrap().conj() * chi(&b, z, phi).unwrap()).im
                            * beta.cosh()
                    },
                    15.0,
                    4_000,
                );
                acc += Complex64::new(re, im) * (TAU / n_phi as f64);
            }
            assert!(acc.norm() < 1e-8, "({n1},{k1}) vs ({n2},{k2}): {acc}");
        }
    }

    #[test]
    fn state_invariants_enforced() {
        assert!(HyperangularState::new(2, 0, 1, false, None).is_err());
        assert!(HyperangularState::new(0, 1, 1, false, None).is_err());
        assert!(HyperangularState::new(0, 1, 1, false, Some(0.1)).is_ok());
        assert!(HyperangularState::new(1, 0, 1, false, Some(0.1)).is_err());
        assert!(HyperangularState::new(0, 0, 0, false, Some(-0.1)).is_err());
    }
}
