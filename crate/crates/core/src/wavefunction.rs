//! Assembled four-coordinate wavefunctions psi = R Theta B Phi, their
//! evaluation at RMS points, and quadrature-ready sampling with a
//! measure-weight column for downstream integration.

use crate::error::HyperangularError;
use crate::hyperangular::{chi, theta_physical, HyperangularState};
use crate::kinematics::{cartesian_to_rms, FourVector, RmsPoint};
use crate::quad::gauss_legendre;
use crate::radial::{coulomb_radial, oscillator_radial};
use num_complex::Complex64;
use std::io::Write;

/// Analytic radial factor R_hat, in the potential's natural scaled units
/// (Coulomb: m = e^2 = hbar = 1; oscillator: m = hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialProfile {
    Coulomb { n_a: u32, z: u32 },
    Oscillator { n_a: u32, omega: f64 },
}

impl RadialProfile {
    pub fn r_hat(&self, ell: u32, rho: f64) -> f64 {
        match *self {
            RadialProfile::Coulomb { n_a, z } => coulomb_radial(n_a, ell, z, 1.0, 1.0, 1.0, rho),
            RadialProfile::Oscillator { n_a, omega } => {
                oscillator_radial(n_a, ell, omega, 1.0, 1.0, rho)
            }
        }
    }

    pub fn n_a(&self) -> u32 {
        match *self {
            RadialProfile::Coulomb { n_a, .. } => n_a,
            RadialProfile::Oscillator { n_a, .. } => n_a,
        }
    }
}

/// Full separable eigenfunction psi(rho, theta, beta, phi)
/// = rho^{-1/2} R_hat(rho) Theta(theta) B(beta) Phi(phi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    pub state: HyperangularState,
    pub radial: RadialProfile,
}

impl WaveSpec {
    pub fn eval_rms(&self, p: &RmsPoint) -> Result<Complex64, HyperangularError> {
        let zeta = p.beta().tanh();
        if zeta.abs() >= 1.0 {
            // tanh saturates in floating point around |beta| ~ 19; the
            // hyperbolic factor vanishes in that limit.
            return Ok(Complex64::new(0.0, 0.0));
        }
        let radial = self.radial.r_hat(self.state.ell(), p.rho()) / p.rho().sqrt();
        let polar = theta_physical(self.state.ell(), self.state.n(), p.theta())?;
        let hyper = chi(&self.state, zeta, p.phi())?;
        Ok(radial * polar * hyper)
    }

    /// Evaluate at a Cartesian event; fails outside the RMS interior.
    pub fn eval_cartesian(&self, y: &FourVector) -> Result<Complex64, HyperangularError> {
        let p = cartesian_to_rms(y)?;
        self.eval_rms(&p)
    }
}

/// Quadrature layout for the beta axis. Gauss nodes in zeta = tanh(beta)
/// suit the polynomial-decay n >= 1 states; the regularized n = 0 family
/// spreads along beta and needs a wide uniform grid instead.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaScheme {
    GaussZeta { n: usize },
    Uniform { n: usize, beta_max: f64 },
}

/// Tensor sampling grid: Gauss-Legendre in rho and in xi = cos(theta),
/// the chosen beta scheme, uniform phi.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub n_rho: usize,
    pub rho_max: f64,
    pub n_xi: usize,
    pub beta: BetaScheme,
    pub n_phi: usize,
}

impl SampleGrid {
    /// Reasonable defaults: the beta scheme follows the state (uniform wide
    /// grid for the regularized ground family).
    pub fn for_state(state: &HyperangularState, rho_max: f64, n: usize) -> Self {
        let beta = match state.eps() {
            Some(eps) => BetaScheme::Uniform {
                n: (4 * n).max(64),
                beta_max: (12.0 / eps).max(20.0),
            },
            None => BetaScheme::GaussZeta { n },
        };
        SampleGrid {
            n_rho: (2 * n).max(48),
            rho_max,
            n_xi: n.max(8),
            beta,
            n_phi: (n / 2).max(4),
        }
    }
}

/// One emitted sample: coordinates, wavefunction value, and the full
/// quadrature weight (rule weights times the invariant measure), so that
/// sums of f * |psi|^2 * weight approximate integrals of f |psi|^2 d(mu).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub rho: f64,
    pub theta: f64,
    pub beta: f64,
    pub phi: f64,
    pub re: f64,
    pub im: f64,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct SampledWavefunction {
    pub rows: Vec<SampleRow>,
}

/// Sample psi on the grid and normalize it against the grid's own
/// quadrature, so the emitted file carries norm 1 by construction.
pub fn sample_wavefunction(
    spec: &WaveSpec,
    grid: &SampleGrid,
) -> Result<SampledWavefunction, HyperangularError> {
    let rho_rule: Vec<(f64, f64)> = gauss_legendre(grid.n_rho)
        .into_iter()
        .map(|(t, w)| {
            let rho = 0.5 * (t + 1.0) * grid.rho_max;
            (rho, w * 0.5 * grid.rho_max)
        })
        .collect();
    let xi_rule = gauss_legendre(grid.n_xi);
    let beta_rule: Vec<(f64, f64)> = match &grid.beta {
        BetaScheme::GaussZeta { n } => gauss_legendre(*n)
            .into_iter()
            .map(|(zeta, w)| {
                let beta = zeta.atanh();
                // cosh(beta) d(beta) = cosh(beta) / (1 - zeta^2) d(zeta)
                (beta, w * beta.cosh() / ((1.0 - zeta) * (1.0 + zeta)))
            })
            .collect(),
        BetaScheme::Uniform { n, beta_max } => {
            let h = 2.0 * beta_max / (*n as f64 - 1.0);
            (0..*n)
                .map(|j| {
                    let beta = -beta_max + j as f64 * h;
                    let end = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                    (beta, end * h * beta.cosh())
                })
                .collect()
        }
    };
    let w_phi = 2.0 * std::f64::consts::PI / grid.n_phi as f64;

    let mut rows = Vec::with_capacity(grid.n_rho * grid.n_xi * beta_rule.len() * grid.n_phi);
    let mut norm = 0.0;
    for &(rho, w_rho) in &rho_rule {
        let radial = spec.radial.r_hat(spec.state.ell(), rho) / rho.sqrt();
        for &(xi, w_xi) in &xi_rule {
            let theta = xi.acos();
            let polar = theta_physical(spec.state.ell(), spec.state.n(), theta)?;
            // sin^2(theta) d(theta) = sin(theta) d(xi)
            let w_theta = w_xi * theta.sin();
            for &(beta, w_beta) in &beta_rule {
                let zeta = beta.tanh();
                for l in 0..grid.n_phi {
                    let phi = 2.0 * std::f64::consts::PI * l as f64 / grid.n_phi as f64;
                    // beyond |beta| ~ 19 tanh saturates; the factor vanishes
                    let value = if zeta.abs() >= 1.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        radial * polar * chi(&spec.state, zeta, phi)?
                    };
                    let weight = w_rho * rho.powi(3) * w_theta * w_beta * w_phi;
                    norm += value.norm_sqr() * weight;
                    rows.push(SampleRow {
                        rho,
                        theta,
                        beta,
                        phi,
                        re: value.re,
                        im: value.im,
                        weight,
                    });
                }
            }
        }
    }
    let inv = 1.0 / norm.sqrt();
    for r in &mut rows {
        r.re *= inv;
        r.im *= inv;
    }
    Ok(SampledWavefunction { rows })
}

impl SampledWavefunction {
    /// Quadrature norm of the sampled density (1 by construction).
    pub fn norm(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.re * r.re + r.im * r.im) * r.weight)
            .sum()
    }

    /// <f> = sum f |psi|^2 w / sum |psi|^2 w.
    pub fn expectation<F: Fn(&SampleRow) -> f64>(&self, f: F) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for r in &self.rows {
            let density = (r.re * r.re + r.im * r.im) * r.weight;
            num += f(r) * density;
            den += density;
        }
        num / den
    }

    /// CSV with '#'-prefixed metadata; `meta` lines are emitted verbatim
    /// after the schema line.
    pub fn write_csv<W: Write>(&self, mut w: W, meta: &[String]) -> std::io::Result<()> {
        writeln!(w, "# schema: rmsbound/wavefn/v1")?;
        for line in meta {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "rho,theta,beta,phi,re,im,weight")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.rho, r.theta, r.beta, r.phi, r.re, r.im, r.weight
            )?;
        }
        Ok(())
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("rho,") {
                continue;
            }
            let fields: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("bad row '{line}': {e}"))?;
            if fields.len() != 7 {
                return Err(format!("expected 7 columns, got {}", fields.len()));
            }
            rows.push(SampleRow {
                rho: fields[0],
                theta: fields[1],
                beta: fields[2],
                phi: fields[3],
                re: fields[4],
                im: fields[5],
                weight: fields[6],
            });
        }
        if rows.is_empty() {
            return Err("no data rows".into());
        }
        Ok(SampledWavefunction { rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground_coulomb() -> WaveSpec {
        WaveSpec {
            state: HyperangularState::new(0, 0, 0, false, Some(0.1)).unwrap(),
            radial: RadialProfile::Coulomb { n_a: 0, z: 1 },
        }
    }

    #[test]
    fn sampled_ground_state_norm_and_rho_moment() {
        let spec = ground_coulomb();
        let grid = SampleGrid {
            n_rho: 64,
            rho_max: 40.0,
            n_xi: 8,
            beta: BetaScheme::Uniform { n: 32, beta_max: 120.0 },
            n_phi: 4,
        };
        let sampled = sample_wavefunction(&spec, &grid).unwrap();
        assert!((sampled.norm() - 1.0).abs() < 1e-12);
        let mean_rho = sampled.expectation(|r| r.rho);
        assert!(
            (mean_rho - 1.5).abs() < 1e-4 * 1.5,
            "<rho> = {mean_rho} (want 1.5 a0)"
        );
    }

    #[test]
    fn excited_state_with_gauss_beta_scheme() {
        let spec = WaveSpec {
            state: HyperangularState::new(1, 0, 1, false, None).unwrap(),
            radial: RadialProfile::Coulomb { n_a: 0, z: 1 },
        };
        let grid = SampleGrid::for_state(&spec.state, 60.0, 24);
        let sampled = sample_wavefunction(&spec, &grid).unwrap();
        assert!((sampled.norm() - 1.0).abs() < 1e-12);
        // N = 2 state: <rho> = 5 a0 for (n_a=0, ell=1).
        let mean_rho = sampled.expectation(|r| r.rho);
        assert!((mean_rho - 5.0).abs() < 1e-3, "<rho> = {mean_rho}");
    }

    #[test]
    fn csv_round_trip_preserves_moments() {
        let spec = ground_coulomb();
        let grid = SampleGrid::for_state(&spec.state, 40.0, 8);
        let sampled = sample_wavefunction(&spec, &grid).unwrap();
        let mut buf = Vec::new();
        sampled
            .write_csv(&mut buf, &["units: atomic".into()])
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back = SampledWavefunction::from_csv(&text).unwrap();
        assert_eq!(back.rows.len(), sampled.rows.len());
        let a = sampled.expectation(|r| r.rho);
        let b = back.expectation(|r| r.rho);
        assert_eq!(a, b, "shortest-roundtrip floats must survive the file");
    }

    #[test]
    fn eval_cartesian_rejects_outside_rms() {
        let spec = ground_coulomb();
        assert!(spec
            .eval_cartesian(&FourVector::new(2.0, 1.0, 0.0, 0.0))
            .is_err());
        let inside = FourVector::new(0.1, 1.0, 0.5, 0.3);
        assert!(spec.eval_cartesian(&inside).is_ok());
    }
}
