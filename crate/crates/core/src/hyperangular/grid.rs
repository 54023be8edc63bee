//! Tensor-grid discretization of the hyperangular operators: central
//! second-order finite differences in theta and beta, exact spectral
//! differentiation in phi (on the half-integer-shifted modes), the
//! generator algebra, both Casimir forms, ladder-coefficient measurement,
//! and the invariant-measure inner product.

use super::{chi, theta_physical, HyperangularState};
use crate::error::HyperangularError;
use num_complex::Complex64;
use std::io::Write;
use std::sync::Arc;

/// First-order generators of the hyperangular algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    L3,
    HPlus,
    HMinus,
    A3,
    LPlus,
    LMinus,
}

/// Grid descriptor: theta uniform on (margin, pi - margin), beta uniform on
/// [-beta_max, beta_max], phi uniform periodic on [0, 2 pi).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_beta: usize,
    pub n_phi: usize,
    pub beta_max: f64,
    pub theta_margin: f64,
}

impl GridSpec {
    pub fn new(n_theta: usize, n_beta: usize, n_phi: usize) -> Self {
        Self {
            n_theta,
            n_beta,
            n_phi,
            beta_max: 10.0,
            theta_margin: 1e-3,
        }
    }

    pub fn with_beta_max(mut self, beta_max: f64) -> Self {
        self.beta_max = beta_max;
        self
    }

    pub fn with_theta_margin(mut self, margin: f64) -> Self {
        self.theta_margin = margin;
        self
    }
}

/// Monodromy sector of the azimuthal dependence. Physical eigenfunctions
/// carry half-integer modes and flip sign after a full turn; observables
/// and single-valued test functions are ordinary periodic functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiSector {
    #[default]
    Antiperiodic,
    Periodic,
}

/// Realized tensor grid with node positions and the spectral phi-derivative
/// matrices baked in.
#[derive(Debug)]
pub struct AngularGrid {
    spec: GridSpec,
    thetas: Vec<f64>,
    betas: Vec<f64>,
    phis: Vec<f64>,
    h_theta: f64,
    h_beta: f64,
    /// Dense n_phi x n_phi matrices for d/dphi and d^2/dphi^2, one pair per
    /// sector: antiperiodic modes e^{i (k + 1/2) phi}, periodic e^{i k phi}.
    d1_anti: Vec<Complex64>,
    d2_anti: Vec<Complex64>,
    d1_per: Vec<Complex64>,
    d2_per: Vec<Complex64>,
}

impl AngularGrid {
    pub fn new(spec: GridSpec) -> Result<Arc<Self>, HyperangularError> {
        if spec.n_theta < 4 || spec.n_beta < 4 || spec.n_phi < 4 {
            return Err(HyperangularError::GridTooCoarse(format!(
                "need at least 4 nodes per axis, got {} x {} x {}",
                spec.n_theta, spec.n_beta, spec.n_phi
            )));
        }
        if !(spec.beta_max > 0.0) || !(spec.theta_margin > 0.0) {
            return Err(HyperangularError::Domain(
                "beta_max and theta_margin must be positive".into(),
            ));
        }
        let pi = std::f64::consts::PI;
        let h_theta = (pi - 2.0 * spec.theta_margin) / (spec.n_theta - 1) as f64;
        let thetas: Vec<f64> = (0..spec.n_theta)
            .map(|i| spec.theta_margin + i as f64 * h_theta)
            .collect();
        let h_beta = 2.0 * spec.beta_max / (spec.n_beta - 1) as f64;
        let betas: Vec<f64> = (0..spec.n_beta)
            .map(|j| -spec.beta_max + j as f64 * h_beta)
            .collect();
        let phis: Vec<f64> = (0..spec.n_phi)
            .map(|l| 2.0 * pi * l as f64 / spec.n_phi as f64)
            .collect();

        let (d1_anti, d2_anti) = phi_derivative_matrices(spec.n_phi, &phis, 0.5);
        let (d1_per, d2_per) = phi_derivative_matrices(spec.n_phi, &phis, 0.0);
        Ok(Arc::new(Self {
            spec,
            thetas,
            betas,
            phis,
            h_theta,
            h_beta,
            d1_anti,
            d2_anti,
            d1_per,
            d2_per,
        }))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    fn len(&self) -> usize {
        self.spec.n_theta * self.spec.n_beta * self.spec.n_phi
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.spec.n_beta + j) * self.spec.n_phi + l
    }

    /// Trapezoid weight along theta/beta, uniform weight along phi.
    fn quad_weight(&self, i: usize, j: usize) -> f64 {
        let wt = if i == 0 || i == self.spec.n_theta - 1 { 0.5 } else { 1.0 };
        let wb = if j == 0 || j == self.spec.n_beta - 1 { 0.5 } else { 1.0 };
        wt * self.h_theta * wb * self.h_beta * 2.0 * std::f64::consts::PI
            / self.spec.n_phi as f64
    }
}

/// Exact spectral differentiation matrices on mode set e^{i (k + shift) phi}
/// for k in [-n/2, n/2); shift = 1/2 gives the antiperiodic sector.
fn phi_derivative_matrices(
    n: usize,
    phis: &[f64],
    shift: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut d1 = vec![Complex64::new(0.0, 0.0); n * n];
    let mut d2 = vec![Complex64::new(0.0, 0.0); n * n];
    let half = n as i64 / 2;
    for (row, &pl) in phis.iter().enumerate() {
        for (col, &pc) in phis.iter().enumerate() {
            let mut a1 = Complex64::new(0.0, 0.0);
            let mut a2 = Complex64::new(0.0, 0.0);
            for k in -half..half {
                let mu = k as f64 + shift;
                let phase = Complex64::from_polar(1.0, mu * (pl - pc));
                a1 += Complex64::new(0.0, mu) * phase;
                a2 += Complex64::new(-mu * mu, 0.0) * phase;
            }
            d1[row * n + col] = a1 / n as f64;
            d2[row * n + col] = a2 / n as f64;
        }
    }
    (d1, d2)
}

/// Complex samples on an [`AngularGrid`], immutable once built.
#[derive(Debug, Clone)]
pub struct AngularGridFunction {
    grid: Arc<AngularGrid>,
    sector: PhiSector,
    values: Vec<Complex64>,
}

impl AngularGridFunction {
    /// Sample an antiperiodic (half-integer mode) function.
    pub fn from_fn<F>(grid: &Arc<AngularGrid>, f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> Complex64,
    {
        Self::from_fn_in(grid, PhiSector::Antiperiodic, f)
    }

    pub fn from_fn_in<F>(grid: &Arc<AngularGrid>, sector: PhiSector, f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> Complex64,
    {
        let mut values = Vec::with_capacity(grid.len());
        for &theta in &grid.thetas {
            for &beta in &grid.betas {
                for &phi in &grid.phis {
                    values.push(f(theta, beta, phi));
                }
            }
        }
        Self { grid: Arc::clone(grid), sector, values }
    }

    /// chi_{n+k}^{-n} sampled as a theta-independent grid function and
    /// normalized under the full invariant measure.
    pub fn chi_state(
        grid: &Arc<AngularGrid>,
        state: &HyperangularState,
    ) -> Result<Self, HyperangularError> {
        let mut values = Vec::with_capacity(grid.len());
        for _theta in &grid.thetas {
            for &beta in &grid.betas {
                let zeta = beta.tanh();
                for &phi in &grid.phis {
                    values.push(chi(state, zeta, phi)?);
                }
            }
        }
        let mut f = Self {
            grid: Arc::clone(grid),
            sector: PhiSector::Antiperiodic,
            values,
        };
        f.normalize();
        Ok(f)
    }

    /// Full product eigenfunction Theta_{ell n}(theta) chi_{n+k}^{-n},
    /// normalized on the grid.
    pub fn product_state(
        grid: &Arc<AngularGrid>,
        state: &HyperangularState,
    ) -> Result<Self, HyperangularError> {
        let mut values = Vec::with_capacity(grid.len());
        for &theta in &grid.thetas {
            let th = theta_physical(state.ell(), state.n(), theta)?;
            for &beta in &grid.betas {
                let zeta = beta.tanh();
                for &phi in &grid.phis {
                    values.push(th * chi(state, zeta, phi)?);
                }
            }
        }
        let mut f = Self {
            grid: Arc::clone(grid),
            sector: PhiSector::Antiperiodic,
            values,
        };
        f.normalize();
        Ok(f)
    }

    pub fn sector(&self) -> PhiSector {
        self.sector
    }

    pub fn grid(&self) -> &Arc<AngularGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, i: usize, j: usize, l: usize) -> Complex64 {
        self.values[self.grid.idx(i, j, l)]
    }

    fn normalize(&mut self) {
        let n2 = angular_inner_product(self, self).expect("same grid").re;
        let inv = 1.0 / n2.sqrt();
        for v in &mut self.values {
            *v *= inv;
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            grid: Arc::clone(&self.grid),
            sector: self.sector,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HyperangularError> {
        check_same_grid(self, other)?;
        Ok(Self {
            grid: Arc::clone(&self.grid),
            sector: self.sector,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HyperangularError> {
        check_same_grid(self, other)?;
        Ok(Self {
            grid: Arc::clone(&self.grid),
            sector: self.sector,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// CSV export: one row per node with coordinates and re/im parts.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema: rmsbound/angular-grid/v1")?;
        writeln!(
            w,
            "# grid: n_theta={} n_beta={} n_phi={} beta_max={} theta_margin={}",
            self.grid.spec.n_theta,
            self.grid.spec.n_beta,
            self.grid.spec.n_phi,
            self.grid.spec.beta_max,
            self.grid.spec.theta_margin
        )?;
        writeln!(w, "theta,beta,phi,re,im")?;
        for (i, &theta) in self.grid.thetas.iter().enumerate() {
            for (j, &beta) in self.grid.betas.iter().enumerate() {
                for (l, &phi) in self.grid.phis.iter().enumerate() {
                    let v = self.values[self.grid.idx(i, j, l)];
                    writeln!(w, "{theta},{beta},{phi},{},{}", v.re, v.im)?;
                }
            }
        }
        Ok(())
    }
}

fn check_same_grid(
    a: &AngularGridFunction,
    b: &AngularGridFunction,
) -> Result<(), HyperangularError> {
    if a.grid.spec != b.grid.spec || a.sector != b.sector {
        return Err(HyperangularError::GridMismatch);
    }
    Ok(())
}

/// Inner product <f, g> = integral of conj(f) g sin^2(theta) cosh(beta).
pub fn angular_inner_product(
    f: &AngularGridFunction,
    g: &AngularGridFunction,
) -> Result<Complex64, HyperangularError> {
    masked_inner_product(f, g, |_, _| true)
}

/// Inner product restricted to nodes where the mask holds; used for
/// residual norms that exclude boundary bands.
pub fn masked_inner_product<M>(
    f: &AngularGridFunction,
    g: &AngularGridFunction,
    mask: M,
) -> Result<Complex64, HyperangularError>
where
    M: Fn(f64, f64) -> bool,
{
    check_same_grid(f, g)?;
    let grid = &f.grid;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &theta) in grid.thetas.iter().enumerate() {
        let st = theta.sin();
        let weight_theta = st * st;
        for (j, &beta) in grid.betas.iter().enumerate() {
            if !mask(theta, beta) {
                continue;
            }
            let w = grid.quad_weight(i, j) * weight_theta * beta.cosh();
            let base = grid.idx(i, j, 0);
            for l in 0..grid.spec.n_phi {
                acc += f.values[base + l].conj() * g.values[base + l] * w;
            }
        }
    }
    Ok(acc)
}

// --- finite-difference kernels ------------------------------------------------

/// Second-order first derivative along theta (one-sided at the edges).
fn d_theta(grid: &AngularGrid, v: &[Complex64]) -> Vec<Complex64> {
    let (nt, nb, np) = (grid.spec.n_theta, grid.spec.n_beta, grid.spec.n_phi);
    let h = grid.h_theta;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for j in 0..nb {
        for l in 0..np {
            let at = |i: usize| v[grid.idx(i, j, l)];
            for i in 0..nt {
                let d = if i == 0 {
                    (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
                } else if i == nt - 1 {
                    (3.0 * at(nt - 1) - 4.0 * at(nt - 2) + at(nt - 3)) / (2.0 * h)
                } else {
                    (at(i + 1) - at(i - 1)) / (2.0 * h)
                };
                out[grid.idx(i, j, l)] = d;
            }
        }
    }
    out
}

fn d2_theta(grid: &AngularGrid, v: &[Complex64]) -> Vec<Complex64> {
    let (nt, nb, np) = (grid.spec.n_theta, grid.spec.n_beta, grid.spec.n_phi);
    let h2 = grid.h_theta * grid.h_theta;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for j in 0..nb {
        for l in 0..np {
            let at = |i: usize| v[grid.idx(i, j, l)];
            for i in 0..nt {
                let d = if i == 0 {
                    (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2
                } else if i == nt - 1 {
                    (2.0 * at(nt - 1) - 5.0 * at(nt - 2) + 4.0 * at(nt - 3) - at(nt - 4)) / h2
                } else {
                    (at(i + 1) - 2.0 * at(i) + at(i - 1)) / h2
                };
                out[grid.idx(i, j, l)] = d;
            }
        }
    }
    out
}

fn d_beta(grid: &AngularGrid, v: &[Complex64]) -> Vec<Complex64> {
    let (nt, nb, np) = (grid.spec.n_theta, grid.spec.n_beta, grid.spec.n_phi);
    let h = grid.h_beta;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for i in 0..nt {
        for l in 0..np {
            let at = |j: usize| v[grid.idx(i, j, l)];
            for j in 0..nb {
                let d = if j == 0 {
                    (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
                } else if j == nb - 1 {
                    (3.0 * at(nb - 1) - 4.0 * at(nb - 2) + at(nb - 3)) / (2.0 * h)
                } else {
                    (at(j + 1) - at(j - 1)) / (2.0 * h)
                };
                out[grid.idx(i, j, l)] = d;
            }
        }
    }
    out
}

fn d2_beta(grid: &AngularGrid, v: &[Complex64]) -> Vec<Complex64> {
    let (nt, nb, np) = (grid.spec.n_theta, grid.spec.n_beta, grid.spec.n_phi);
    let h2 = grid.h_beta * grid.h_beta;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for i in 0..nt {
        for l in 0..np {
            let at = |j: usize| v[grid.idx(i, j, l)];
            for j in 0..nb {
                let d = if j == 0 {
                    (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2
                } else if j == nb - 1 {
                    (2.0 * at(nb - 1) - 5.0 * at(nb - 2) + 4.0 * at(nb - 3) - at(nb - 4)) / h2
                } else {
                    (at(j + 1) - 2.0 * at(j) + at(j - 1)) / h2
                };
                out[grid.idx(i, j, l)] = d;
            }
        }
    }
    out
}

fn d_phi_spectral(
    grid: &AngularGrid,
    v: &[Complex64],
    second: bool,
    sector: PhiSector,
) -> Vec<Complex64> {
    let (nt, nb, np) = (grid.spec.n_theta, grid.spec.n_beta, grid.spec.n_phi);
    let mat = match (sector, second) {
        (PhiSector::Antiperiodic, false) => &grid.d1_anti,
        (PhiSector::Antiperiodic, true) => &grid.d2_anti,
        (PhiSector::Periodic, false) => &grid.d1_per,
        (PhiSector::Periodic, true) => &grid.d2_per,
    };
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for i in 0..nt {
        for j in 0..nb {
            let base = grid.idx(i, j, 0);
            for row in 0..np {
                let mut acc = Complex64::new(0.0, 0.0);
                for col in 0..np {
                    acc += mat[row * np + col] * v[base + col];
                }
                out[base + row] = acc;
            }
        }
    }
    out
}

// --- operators -----------------------------------------------------------------

/// Apply one first-order generator on the grid.
///
/// L3 = -i d_phi; H+- = e^{+-i phi} (-i d_beta +- tanh(beta) d_phi);
/// A3 = -i (cot(theta) cosh(beta) d_beta - sinh(beta) d_theta);
/// L+- = e^{+-i phi} (+- cosh(beta) d_theta -+ sinh(beta) cot(theta) d_beta
///       + i cot(theta)/cosh(beta) d_phi).
/// Each form matches the Cartesian vector field of its generator
/// component by component.
pub fn apply_generator(
    g: Generator,
    f: &AngularGridFunction,
) -> Result<AngularGridFunction, HyperangularError> {
    let grid = &f.grid;
    let v = &f.values;
    let i_unit = Complex64::new(0.0, 1.0);
    let values = match g {
        Generator::L3 => d_phi_spectral(grid, v, false, f.sector)
            .into_iter()
            .map(|d| -i_unit * d)
            .collect(),
        Generator::HPlus | Generator::HMinus => {
            let sign = if g == Generator::HPlus { 1.0 } else { -1.0 };
            let db = d_beta(grid, v);
            let dp = d_phi_spectral(grid, v, false, f.sector);
            let mut out = Vec::with_capacity(v.len());
            for (i, _theta) in grid.thetas.iter().enumerate() {
                for (j, &beta) in grid.betas.iter().enumerate() {
                    let t = beta.tanh();
                    for (l, &phi) in grid.phis.iter().enumerate() {
                        let idx = grid.idx(i, j, l);
                        let pre = Complex64::from_polar(1.0, sign * phi);
                        out.push(pre * (-i_unit * db[idx] + sign * t * dp[idx]));
                    }
                }
            }
            out
        }
        Generator::A3 => {
            let db = d_beta(grid, v);
            let dt = d_theta(grid, v);
            let mut out = Vec::with_capacity(v.len());
            for (i, &theta) in grid.thetas.iter().enumerate() {
                let cot = theta.cos() / theta.sin();
                for (j, &beta) in grid.betas.iter().enumerate() {
                    let (sh, ch) = (beta.sinh(), beta.cosh());
                    for l in 0..grid.spec.n_phi {
                        let idx = grid.idx(i, j, l);
                        out.push(-i_unit * (cot * ch * db[idx] - sh * dt[idx]));
                    }
                }
            }
            out
        }
        Generator::LPlus | Generator::LMinus => {
            let sign = if g == Generator::LPlus { 1.0 } else { -1.0 };
            let db = d_beta(grid, v);
            let dt = d_theta(grid, v);
            let dp = d_phi_spectral(grid, v, false, f.sector);
            let mut out = Vec::with_capacity(v.len());
            for (i, &theta) in grid.thetas.iter().enumerate() {
                let cot = theta.cos() / theta.sin();
                for (j, &beta) in grid.betas.iter().enumerate() {
                    let (sh, ch) = (beta.sinh(), beta.cosh());
                    for (l, &phi) in grid.phis.iter().enumerate() {
                        let idx = grid.idx(i, j, l);
                        let pre = Complex64::from_polar(1.0, sign * phi);
                        // the sinh cot term alternates sign together with
                        // the cosh term: L- is minus the coefficient
                        // conjugate of L+
                        out.push(
                            pre * (sign * ch * dt[idx] - sign * sh * cot * db[idx]
                                + i_unit * cot / ch * dp[idx]),
                        );
                    }
                }
            }
            out
        }
    };
    Ok(AngularGridFunction {
        grid: Arc::clone(grid),
        sector: f.sector,
        values,
    })
}

/// Hyperbolic Casimir N^2 = d2_beta + tanh(beta) d_beta - sech^2(beta) d2_phi.
/// The first-order coefficient is tanh(beta): the invariant measure carries
/// a single cosh(beta) factor in the beta direction.
pub fn apply_n2(f: &AngularGridFunction) -> Result<AngularGridFunction, HyperangularError> {
    let grid = &f.grid;
    let d2b = d2_beta(grid, &f.values);
    let db = d_beta(grid, &f.values);
    let d2p = d_phi_spectral(grid, &f.values, true, f.sector);
    let mut values = Vec::with_capacity(f.values.len());
    for i in 0..grid.spec.n_theta {
        for (j, &beta) in grid.betas.iter().enumerate() {
            let t = beta.tanh();
            let sech2 = 1.0 / (beta.cosh() * beta.cosh());
            for l in 0..grid.spec.n_phi {
                let idx = grid.idx(i, j, l);
                values.push(d2b[idx] + t * db[idx] - sech2 * d2p[idx]);
            }
        }
    }
    Ok(AngularGridFunction {
        grid: Arc::clone(grid),
        sector: f.sector,
        values,
    })
}

/// Full Casimir Lambda = -d2_theta - 2 cot(theta) d_theta + N^2 / sin^2(theta).
pub fn apply_lambda(f: &AngularGridFunction) -> Result<AngularGridFunction, HyperangularError> {
    let grid = &f.grid;
    let n2 = apply_n2(f)?;
    let d2t = d2_theta(grid, &f.values);
    let dt = d_theta(grid, &f.values);
    let mut values = Vec::with_capacity(f.values.len());
    for (i, &theta) in grid.thetas.iter().enumerate() {
        let st = theta.sin();
        let cot = theta.cos() / st;
        let inv_s2 = 1.0 / (st * st);
        for j in 0..grid.spec.n_beta {
            for l in 0..grid.spec.n_phi {
                let idx = grid.idx(i, j, l);
                values.push(-d2t[idx] - 2.0 * cot * dt[idx] + inv_s2 * n2.values[idx]);
            }
        }
    }
    Ok(AngularGridFunction {
        grid: Arc::clone(grid),
        sector: f.sector,
        values,
    })
}

/// Lambda assembled from the generators: L3^2 + (L+L- + L-L+)/2
/// - A3^2 - (H+H- + H-H+)/2.
pub fn apply_lambda_composed(
    f: &AngularGridFunction,
) -> Result<AngularGridFunction, HyperangularError> {
    use Generator::*;
    let twice = |a: Generator, b: Generator, x: &AngularGridFunction| {
        apply_generator(a, &apply_generator(b, x)?)
    };
    let l3l3 = twice(L3, L3, f)?;
    let lpm = twice(LPlus, LMinus, f)?;
    let lmp = twice(LMinus, LPlus, f)?;
    let a3a3 = twice(A3, A3, f)?;
    let hpm = twice(HPlus, HMinus, f)?;
    let hmp = twice(HMinus, HPlus, f)?;
    let half = Complex64::new(0.5, 0.0);
    l3l3.add(&lpm.add(&lmp)?.scaled(half))?
        .sub(&a3a3)?
        .sub(&hpm.add(&hmp)?.scaled(half))
}

/// Measured ladder coefficient c with H+ chi_{n,k} = c chi_{n,k+1},
/// extracted by grid inner product at this resolution.
pub fn ladder_coefficient(
    n: u32,
    k: u32,
    grid: &Arc<AngularGrid>,
) -> Result<Complex64, HyperangularError> {
    if n < 1 {
        return Err(HyperangularError::Domain(
            "ladder coefficients are defined for n >= 1".into(),
        ));
    }
    let lower = AngularGridFunction::chi_state(grid, &HyperangularState::new(n, k, n, false, None)?)?;
    let upper =
        AngularGridFunction::chi_state(grid, &HyperangularState::new(n, k + 1, n, false, None)?)?;
    let raised = apply_generator(Generator::HPlus, &lower)?;
    let num = angular_inner_product(&upper, &raised)?;
    let den = angular_inner_product(&upper, &upper)?;
    Ok(num / den)
}

/// Analytic ladder coefficient i sqrt((k+1)(2n+k+1)).
pub fn ladder_coefficient_analytic(n: u32, k: u32) -> Complex64 {
    let v = ((k + 1) as f64 * (2 * n + k + 1) as f64).sqrt();
    Complex64::new(0.0, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_grid(n_beta: usize) -> Arc<AngularGrid> {
        AngularGrid::new(GridSpec::new(4, n_beta, 32)).unwrap()
    }

    fn rayleigh<F>(op: F, f: &AngularGridFunction) -> f64
    where
        F: Fn(&AngularGridFunction) -> Result<AngularGridFunction, HyperangularError>,
    {
        let of = op(f).unwrap();
        let num = angular_inner_product(f, &of).unwrap();
        let den = angular_inner_product(f, f).unwrap();
        (num / den).re
    }

    #[test]
    fn grid_too_coarse_is_rejected() {
        assert!(matches!(
            AngularGrid::new(GridSpec::new(3, 64, 16)),
            Err(HyperangularError::GridTooCoarse(_))
        ));
    }

    #[test]
    fn l3_eigenvalue_on_chi() {
        let grid = std_grid(64);
        for (n, k) in [(1u32, 0u32), (2, 1)] {
            let state = HyperangularState::new(n, k, n, false, None).unwrap();
            let f = AngularGridFunction::chi_state(&grid, &state).unwrap();
            let lam = rayleigh(|x| apply_generator(Generator::L3, x), &f);
            let want = (n + k) as f64 + 0.5;
            assert!((lam - want).abs() < 1e-10, "L3 on ({n},{k}): {lam}");
        }
    }

    #[test]
    fn l3_flips_sign_on_conjugated_chi() {
        let grid = std_grid(64);
        let state = HyperangularState::new(1, 1, 1, true, None).unwrap();
        let f = AngularGridFunction::chi_state(&grid, &state).unwrap();
        let lam = rayleigh(|x| apply_generator(Generator::L3, x), &f);
        assert!((lam + 2.5).abs() < 1e-10, "L3 on conjugated chi: {lam}");
    }

    #[test]
    fn n2_eigenvalue_on_chi_and_conjugate() {
        let grid = std_grid(128);
        for (n, k, conj) in [(1u32, 0u32, false), (2, 1, false), (1, 0, true)] {
            let state = HyperangularState::new(n, k, n, conj, None).unwrap();
            let f = AngularGridFunction::chi_state(&grid, &state).unwrap();
            let lam = rayleigh(apply_n2, &f);
            let want = (n * n) as f64 - 0.25;
            // raw second-order accuracy at this resolution; the verify
            // suite sharpens this with Richardson extrapolation
            assert!(
                (lam - want).abs() < 5e-2 * want.abs().max(1.0),
                "N^2 on ({n},{k},conj={conj}): {lam} vs {want}"
            );
        }
    }

    #[test]
    fn hplus_matches_symbolic_action_on_test_function() {
        // f = sech(beta), phi-independent (single-valued sector):
        // H+ f = i e^{i phi} sech(beta) tanh(beta).
        let grid = std_grid(256);
        let f = AngularGridFunction::from_fn_in(&grid, PhiSector::Periodic, |_t, b, _p| {
            Complex64::new(1.0 / b.cosh(), 0.0)
        });
        let hf = apply_generator(Generator::HPlus, &f).unwrap();
        let mut max_err = 0.0f64;
        for (j, &beta) in grid.betas().iter().enumerate().skip(4) {
            if j >= grid.spec().n_beta - 4 {
                break;
            }
            for (l, &phi) in grid.phis().iter().enumerate() {
                let want = Complex64::new(0.0, 1.0)
                    * Complex64::from_polar(1.0, phi)
                    * (beta.tanh() / beta.cosh());
                let got = hf.value_at(1, j, l);
                max_err = max_err.max((got - want).norm());
            }
        }
        assert!(max_err < 5e-3, "max pointwise error {max_err}");
    }

    #[test]
    fn ladder_coefficients_small_grid() {
        let grid = std_grid(128);
        for (n, k) in [(1u32, 0u32), (2, 1)] {
            let c = ladder_coefficient(n, k, &grid).unwrap();
            let want = ladder_coefficient_analytic(n, k);
            assert!(
                (c - want).norm() < 2e-2 * want.norm(),
                "c({n},{k}) = {c} vs {want}"
            );
        }
        assert!(ladder_coefficient(0, 0, &grid).is_err());
    }

    #[test]
    fn lowering_after_raising_returns_scaled_original() {
        let grid = std_grid(128);
        let (n, k) = (1u32, 0u32);
        let state = HyperangularState::new(n, k, n, false, None).unwrap();
        let f = AngularGridFunction::chi_state(&grid, &state).unwrap();
        let raised = apply_generator(Generator::HPlus, &f).unwrap();
        let back = apply_generator(Generator::HMinus, &raised).unwrap();
        let lam = (angular_inner_product(&f, &back).unwrap()
            / angular_inner_product(&f, &f).unwrap())
        .re;
        let want = ((k + 1) * (2 * n + k + 1)) as f64;
        assert!((lam - want).abs() < 2e-2 * want, "H-H+ factor {lam} vs {want}");
    }

    #[test]
    fn l3_hplus_commutator_is_hplus() {
        // [L3, H+] = H+ holds exactly on the grid: the phi sector is spectral.
        let grid = std_grid(64);
        let state = HyperangularState::new(1, 0, 1, false, None).unwrap();
        let f = AngularGridFunction::chi_state(&grid, &state).unwrap();
        let l3h = apply_generator(Generator::L3, &apply_generator(Generator::HPlus, &f).unwrap())
            .unwrap();
        let hl3 = apply_generator(Generator::HPlus, &apply_generator(Generator::L3, &f).unwrap())
            .unwrap();
        let hp = apply_generator(Generator::HPlus, &f).unwrap();
        let resid = l3h.sub(&hl3).unwrap().sub(&hp).unwrap();
        let r = angular_inner_product(&resid, &resid).unwrap().re.sqrt();
        let scale = angular_inner_product(&hp, &hp).unwrap().re.sqrt();
        assert!(r < 1e-10 * scale.max(1.0), "commutator residual {r}");
    }

    #[test]
    fn lambda_eigenvalue_on_product_state() {
        // Lambda psi = (ell(ell+1) - 3/4) psi.
        let grid = AngularGrid::new(
            GridSpec::new(256, 256, 8).with_theta_margin(1e-3),
        )
        .unwrap();
        let window = |theta: f64, beta: f64| {
            theta > 0.5 && theta < std::f64::consts::PI - 0.5 && beta.abs() < 8.0
        };
        for (ell, n) in [(1u32, 1u32), (2, 1)] {
            let state = HyperangularState::new(n, 0, ell, false, None).unwrap();
            let f = AngularGridFunction::product_state(&grid, &state).unwrap();
            let lf = apply_lambda(&f).unwrap();
            let num = masked_inner_product(&f, &lf, window).unwrap();
            let den = masked_inner_product(&f, &f, window).unwrap();
            let lam = (num / den).re;
            let want = (ell * (ell + 1)) as f64 - 0.75;
            assert!(
                (lam - want).abs() < 5e-3 * want.abs(),
                "Lambda on (ell={ell},n={n}): {lam} vs {want}"
            );
        }
    }

    #[test]
    fn lambda_composed_matches_direct() {
        let grid = AngularGrid::new(GridSpec::new(128, 128, 8)).unwrap();
        let state = HyperangularState::new(1, 0, 1, false, None).unwrap();
        let f = AngularGridFunction::product_state(&grid, &state).unwrap();
        let window = |theta: f64, beta: f64| {
            theta > 0.5 && theta < std::f64::consts::PI - 0.5 && beta.abs() < 8.0
        };
        let quotient = |of: AngularGridFunction| {
            (masked_inner_product(&f, &of, window).unwrap()
                / masked_inner_product(&f, &f, window).unwrap())
            .re
        };
        let direct = quotient(apply_lambda(&f).unwrap());
        let composed = quotient(apply_lambda_composed(&f).unwrap());
        assert!(
            (direct - composed).abs() < 2e-2 * direct.abs(),
            "direct {direct} vs composed {composed}"
        );
    }

    #[test]
    fn l3_is_hermitian_under_invariant_measure() {
        let grid = std_grid(64);
        let f = AngularGridFunction::from_fn(&grid, |t, b, p| {
            Complex64::from_polar((-b * b / 4.0).exp() * t.sin(), 1.5 * p)
        });
        let g = AngularGridFunction::from_fn(&grid, |t, b, p| {
            Complex64::from_polar((-b * b / 6.0).exp() * (t * 0.5).cos(), 0.5 * p)
        });
        let lhs = angular_inner_product(&f, &apply_generator(Generator::L3, &g).unwrap()).unwrap();
        let rhs = angular_inner_product(&g, &apply_generator(Generator::L3, &f).unwrap())
            .unwrap()
            .conj();
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let g1 = std_grid(64);
        let g2 = std_grid(96);
        let f1 = AngularGridFunction::from_fn(&g1, |_, _, _| Complex64::new(1.0, 0.0));
        let f2 = AngularGridFunction::from_fn(&g2, |_, _, _| Complex64::new(1.0, 0.0));
        assert!(matches!(
            angular_inner_product(&f1, &f2),
            Err(HyperangularError::GridMismatch)
        ));
    }

    #[test]
    fn csv_export_roundtrip_row_count() {
        let grid = AngularGrid::new(GridSpec::new(4, 4, 4)).unwrap();
        let f = AngularGridFunction::from_fn(&grid, |t, b, p| Complex64::new(t + b, p));
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data_rows = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("theta"))
            .count();
        assert_eq!(data_rows, 64);
        assert!(text.starts_with("# schema: rmsbound/angular-grid/v1"));
    }
}
