//! Bundle functions over the orbit of spacelike directions: a family of
//! fiber wavefunctions psi_m(y) indexed by orbit points m, transported by
//! psi^Lambda_m(y) = psi_{Lambda^{-1} m}(D^{-1}(Lambda, m) y). Generators
//! act as joint finite-difference operators in (m, y); the Casimir
//! combinations c1 = L^2 - A^2 and c2 = L.A are estimated as Rayleigh
//! quotients over sample points.

use super::{
    canonical_section, little_group_element, max_abs_entry, rotation, LorentzGenerator,
    LorentzMatrix, SpacelikeDirection,
};
use crate::error::{HyperangularError, InducedError, KinematicsError};
use crate::kinematics::{rms_to_cartesian, FourVector, RmsPoint};
use crate::quad::gauss_legendre;
use crate::wavefunction::WaveSpec;
use num_complex::Complex64;
use std::rc::Rc;

/// A function of (orbit point, RMS event), evaluable on the continuum.
pub trait BundleField {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError>;
}

fn eval_support_limited(spec: &WaveSpec, x: &FourVector) -> Result<Complex64, InducedError> {
    match spec.eval_cartesian(x) {
        Ok(v) => Ok(v),
        // Support ends at the RMS boundary: the wavefunction vanishes outside.
        Err(HyperangularError::Kinematics(KinematicsError::NotInRms { .. })) => {
            Ok(Complex64::new(0.0, 0.0))
        }
        Err(e) => Err(InducedError::OrbitFormat(format!(
            "fiber evaluation failed: {e}"
        ))),
    }
}

/// Fiber-wise section: every orbit point carries the same wavefunction in
/// its own adapted coordinates, optionally twisted by a little-group
/// rotation whose angle varies along the orbit (rate * m^0).
pub struct FiberSection {
    base: WaveSpec,
    twist_rate: f64,
}

impl BundleField for FiberSection {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError> {
        if self.twist_rate == 0.0 {
            return eval_support_limited(&self.base, y);
        }
        let angle = self.twist_rate * m.vector().x0;
        let frame = rotation([0.0, 0.0, 1.0], angle)?;
        eval_support_limited(&self.base, &frame.apply(y))
    }
}

/// Slaved scalar section psi_m(y) = phi(L^T(m) y): all members are one
/// scalar field re-expressed in the m-adapted coordinates.
pub struct ScalarSection {
    base: WaveSpec,
}

impl BundleField for ScalarSection {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError> {
        let l = canonical_section(m)?;
        eval_support_limited(&self.base, &l.eta_transpose().apply(y))
    }
}

/// Lazily transported field.
struct TransportedField {
    inner: Rc<dyn BundleField>,
    lambda: LorentzMatrix,
    lambda_inv: LorentzMatrix,
}

impl BundleField for TransportedField {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError> {
        let pre = SpacelikeDirection::from_unnormalized(self.lambda_inv.apply(m.vector()))?;
        let d = little_group_element(&self.lambda, m)?;
        self.inner.eval(&pre, &d.eta_transpose().apply(y))
    }
}

/// Finite family of orbit points with a (possibly transported) fiber field.
pub struct BundleFunction {
    field: Rc<dyn BundleField>,
    directions: Vec<SpacelikeDirection>,
    interpolation: bool,
}

impl BundleFunction {
    pub fn fiber_section(
        base: WaveSpec,
        directions: Vec<SpacelikeDirection>,
        interpolation: bool,
    ) -> Self {
        Self {
            field: Rc::new(FiberSection { base, twist_rate: 0.0 }),
            directions,
            interpolation,
        }
    }

    pub fn twisted_section(
        base: WaveSpec,
        directions: Vec<SpacelikeDirection>,
        twist_rate: f64,
        interpolation: bool,
    ) -> Self {
        Self {
            field: Rc::new(FiberSection { base, twist_rate }),
            directions,
            interpolation,
        }
    }

    pub fn scalar_section(
        base: WaveSpec,
        directions: Vec<SpacelikeDirection>,
        interpolation: bool,
    ) -> Self {
        Self {
            field: Rc::new(ScalarSection { base }),
            directions,
            interpolation,
        }
    }

    pub fn directions(&self) -> &[SpacelikeDirection] {
        &self.directions
    }

    pub fn field(&self) -> Rc<dyn BundleField> {
        Rc::clone(&self.field)
    }

    pub fn member_value(
        &self,
        idx: usize,
        y: &FourVector,
    ) -> Result<Complex64, InducedError> {
        self.field.eval(&self.directions[idx], y)
    }

    /// Transport every member: directions move to Lambda m, fibers pick up
    /// the little-group reorientation.
    pub fn transport(&self, lambda: &LorentzMatrix) -> Result<Self, InducedError> {
        let directions = self
            .directions
            .iter()
            .map(|m| SpacelikeDirection::from_unnormalized(lambda.apply(m.vector())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            field: Rc::new(TransportedField {
                inner: Rc::clone(&self.field),
                lambda: *lambda,
                lambda_inv: lambda.eta_transpose(),
            }),
            directions,
            interpolation: self.interpolation,
        })
    }

    /// Transport expressed on a caller-chosen direction set. Each target m
    /// requires Lambda^{-1} m among the represented members; with
    /// interpolation enabled the nearest member is used instead and the
    /// worst direction mismatch is returned.
    pub fn transport_onto(
        &self,
        lambda: &LorentzMatrix,
        targets: &[SpacelikeDirection],
    ) -> Result<(Self, f64), InducedError> {
        let inv = lambda.eta_transpose();
        let mut worst = 0.0f64;
        let mut directions = Vec::with_capacity(targets.len());
        for target in targets {
            let source = SpacelikeDirection::from_unnormalized(inv.apply(target.vector()))?;
            let nearest = self
                .directions
                .iter()
                .map(|d| d.euclidean_distance(&source))
                .fold(f64::INFINITY, f64::min);
            if nearest > 1e-9 {
                if !self.interpolation {
                    let v = target.vector();
                    return Err(InducedError::OrbitCoverage(v.x0, v.x1, v.x2, v.x3));
                }
                worst = worst.max(nearest);
            }
            directions.push(*target);
        }
        Ok((
            Self {
                field: Rc::new(TransportedField {
                    inner: Rc::clone(&self.field),
                    lambda: *lambda,
                    lambda_inv: inv,
                }),
                directions,
                interpolation: self.interpolation,
            },
            worst,
        ))
    }

    /// Quadrature norm of one member over its RMS fiber.
    pub fn member_norm(
        &self,
        idx: usize,
        quad: &BundleQuadrature,
    ) -> Result<f64, InducedError> {
        let mut acc = 0.0;
        for (y, w) in quad.nodes() {
            let v = self.field.eval(&self.directions[idx], &y)?;
            acc += v.norm_sqr() * w;
        }
        Ok(acc)
    }
}

/// Gauss-type quadrature over the RMS fiber: Gauss-Legendre in rho, in
/// xi = cos(theta), and in zeta = tanh(beta); uniform phi.
#[derive(Debug, Clone)]
pub struct BundleQuadrature {
    pub n_rho: usize,
    pub rho_max: f64,
    pub n_xi: usize,
    pub n_zeta: usize,
    pub n_phi: usize,
}

impl Default for BundleQuadrature {
    fn default() -> Self {
        Self {
            n_rho: 48,
            rho_max: 30.0,
            n_xi: 24,
            n_zeta: 48,
            n_phi: 16,
        }
    }
}

impl BundleQuadrature {
    pub fn nodes(&self) -> Vec<(FourVector, f64)> {
        let mut out = Vec::with_capacity(self.n_rho * self.n_xi * self.n_zeta * self.n_phi);
        let w_phi = 2.0 * std::f64::consts::PI / self.n_phi as f64;
        for &(t, w_r) in &gauss_legendre(self.n_rho) {
            let rho = 0.5 * (t + 1.0) * self.rho_max;
            let w_rho = w_r * 0.5 * self.rho_max * rho.powi(3);
            if rho == 0.0 {
                continue;
            }
            for &(xi, w_x) in &gauss_legendre(self.n_xi) {
                let theta = xi.acos();
                let w_theta = w_x * theta.sin();
                for &(zeta, w_z) in &gauss_legendre(self.n_zeta) {
                    let beta = zeta.atanh();
                    let w_beta = w_z * beta.cosh() / ((1.0 - zeta) * (1.0 + zeta));
                    for l in 0..self.n_phi {
                        let phi = 2.0 * std::f64::consts::PI * l as f64 / self.n_phi as f64;
                        let p = RmsPoint::new(rho, theta, beta, phi).expect("interior node");
                        out.push((rms_to_cartesian(&p), w_rho * w_theta * w_beta * w_phi));
                    }
                }
            }
        }
        out
    }
}

// --- joint finite-difference generators ---------------------------------------

/// Step sizes for the joint (m, y) finite differences.
#[derive(Debug, Clone, Copy)]
pub struct BundleOperators {
    pub dm_step: f64,
    pub dy_step: f64,
}

impl Default for BundleOperators {
    fn default() -> Self {
        Self { dm_step: 1e-3, dy_step: 1e-3 }
    }
}

impl BundleOperators {
    pub fn halved(&self) -> Self {
        Self {
            dm_step: self.dm_step / 2.0,
            dy_step: self.dy_step / 2.0,
        }
    }

    /// d_m L(m) along the orbit flow of `gen`, by central differences.
    pub fn section_derivative(
        &self,
        gen: &LorentzGenerator,
        m: &SpacelikeDirection,
    ) -> Result<[[f64; 4]; 4], InducedError> {
        let s = self.dm_step;
        let plus = canonical_section(&flow(gen, s, m)?)?;
        let minus = canonical_section(&flow(gen, -s, m)?)?;
        let mut out = plus.sub(&minus);
        for row in &mut out {
            for v in row {
                *v /= 2.0 * s;
            }
        }
        Ok(out)
    }

    /// G_m(lambda) = L(m) lambda L^T(m) + (d_m L) L^T(m).
    pub fn g_matrix(
        &self,
        gen: &LorentzGenerator,
        m: &SpacelikeDirection,
    ) -> Result<[[f64; 4]; 4], InducedError> {
        let l = canonical_section(m)?;
        let lt = l.eta_transpose();
        let first = l.mul(&LorentzMatrix::from_unchecked(gen.mixed())).mul(&lt);
        let dl = self.section_derivative(gen, m)?;
        let second = LorentzMatrix::from_unchecked(dl).mul(&lt);
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = first.entries()[i][j] + second.entries()[i][j];
            }
        }
        Ok(out)
    }

    /// Orbit derivative d_m(lambda) f at fixed y.
    pub fn d_m_term(
        &self,
        f: &dyn BundleField,
        gen: &LorentzGenerator,
        m: &SpacelikeDirection,
        y: &FourVector,
    ) -> Result<Complex64, InducedError> {
        if gen.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let s = self.dm_step;
        let plus = f.eval(&flow(gen, s, m)?, y)?;
        let minus = f.eval(&flow(gen, -s, m)?, y)?;
        Ok((plus - minus) / (2.0 * s))
    }

    /// Little-group term g_m(lambda) f = (G_m y) . grad_y f.
    pub fn g_term(
        &self,
        f: &dyn BundleField,
        gen: &LorentzGenerator,
        m: &SpacelikeDirection,
        y: &FourVector,
    ) -> Result<Complex64, InducedError> {
        if gen.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let g = self.g_matrix(gen, m)?;
        let w = apply_matrix(&g, y);
        let speed = w.euclidean_sq().sqrt();
        if speed == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let t = self.dy_step / speed;
        let plus = f.eval(m, &(*y + w.scale(t)))?;
        let minus = f.eval(m, &(*y - w.scale(t)))?;
        Ok((plus - minus) / (2.0 * t))
    }

    /// The full bundle generator X[lambda] = d_m(lambda) + g_m(lambda) as a
    /// new (lazily evaluated) field.
    pub fn apply(&self, f: Rc<dyn BundleField>, gen: LorentzGenerator) -> Rc<dyn BundleField> {
        Rc::new(AppliedGenerator { inner: f, gen, ops: *self })
    }
}

fn flow(
    gen: &LorentzGenerator,
    t: f64,
    m: &SpacelikeDirection,
) -> Result<SpacelikeDirection, InducedError> {
    SpacelikeDirection::from_unnormalized(gen.exp(t).apply(m.vector()))
}

fn apply_matrix(g: &[[f64; 4]; 4], y: &FourVector) -> FourVector {
    LorentzMatrix::from_unchecked(*g).apply(y)
}

struct AppliedGenerator {
    inner: Rc<dyn BundleField>,
    gen: LorentzGenerator,
    ops: BundleOperators,
}

impl BundleField for AppliedGenerator {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError> {
        let dm = self.ops.d_m_term(self.inner.as_ref(), &self.gen, m, y)?;
        let g = self.ops.g_term(self.inner.as_ref(), &self.gen, m, y)?;
        Ok(dm + g)
    }
}

struct LinearCombination {
    parts: Vec<(f64, Rc<dyn BundleField>)>,
}

impl BundleField for LinearCombination {
    fn eval(&self, m: &SpacelikeDirection, y: &FourVector) -> Result<Complex64, InducedError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, f) in &self.parts {
            acc += f.eval(m, y)? * *c;
        }
        Ok(acc)
    }
}

/// c1 = L^2 - A^2 as a bundle operator: sum of squared boost generators
/// minus sum of squared rotation generators (the i factors cancel in the
/// squares).
pub fn casimir_c1_field(ops: &BundleOperators, f: Rc<dyn BundleField>) -> Rc<dyn BundleField> {
    let mut parts: Vec<(f64, Rc<dyn BundleField>)> = Vec::new();
    for k in 0..3 {
        let b = LorentzGenerator::boost_axis(k);
        parts.push((1.0, ops.apply(ops.apply(Rc::clone(&f), b), b)));
        let r = LorentzGenerator::rotation_axis(k);
        parts.push((-1.0, ops.apply(ops.apply(Rc::clone(&f), r), r)));
    }
    Rc::new(LinearCombination { parts })
}

/// c2 = L.A as a bundle operator, symmetrized:
/// -(1/2) sum_k (X_rot X_boost + X_boost X_rot).
pub fn casimir_c2_field(ops: &BundleOperators, f: Rc<dyn BundleField>) -> Rc<dyn BundleField> {
    let mut parts: Vec<(f64, Rc<dyn BundleField>)> = Vec::new();
    for k in 0..3 {
        let r = LorentzGenerator::rotation_axis(k);
        let b = LorentzGenerator::boost_axis(k);
        parts.push((-0.5, ops.apply(ops.apply(Rc::clone(&f), b), r)));
        parts.push((-0.5, ops.apply(ops.apply(Rc::clone(&f), r), b)));
    }
    Rc::new(LinearCombination { parts })
}

/// Rayleigh-quotient Casimir estimates over sample points, with the spread
/// of the pointwise c1 quotients as a constancy diagnostic.
pub struct CasimirEstimate {
    pub c1: f64,
    pub c2: f64,
    pub c1_pointwise_spread: f64,
}

pub fn bundle_casimirs(
    bundle: &BundleFunction,
    samples: &[(SpacelikeDirection, FourVector)],
    ops: &BundleOperators,
) -> Result<CasimirEstimate, InducedError> {
    let f = bundle.field();
    let c1f = casimir_c1_field(ops, Rc::clone(&f));
    let c2f = casimir_c2_field(ops, Rc::clone(&f));
    let mut num1 = Complex64::new(0.0, 0.0);
    let mut num2 = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    let mut quotients = Vec::with_capacity(samples.len());
    for (m, y) in samples {
        let v = f.eval(m, y)?;
        let c1v = c1f.eval(m, y)?;
        let c2v = c2f.eval(m, y)?;
        num1 += v.conj() * c1v;
        num2 += v.conj() * c2v;
        den += v.norm_sqr();
        if v.norm() > 1e-10 {
            quotients.push((c1v / v).re);
        }
    }
    let c1 = (num1 / den).re;
    let spread = quotients
        .iter()
        .fold(0.0f64, |a, &q| a.max((q - c1).abs()));
    Ok(CasimirEstimate {
        c1,
        c2: (num2 / den).re,
        c1_pointwise_spread: spread,
    })
}

/// Residual of [c1, X_rot_z] applied to the bundle field at the samples.
pub fn casimir_commutator_residual(
    bundle: &BundleFunction,
    samples: &[(SpacelikeDirection, FourVector)],
    ops: &BundleOperators,
) -> Result<f64, InducedError> {
    let f = bundle.field();
    let rz = LorentzGenerator::rotation_axis(2);
    let a = casimir_c1_field(ops, ops.apply(Rc::clone(&f), rz));
    let b = ops.apply(casimir_c1_field(ops, Rc::clone(&f)), rz);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for (m, y) in samples {
        let av = a.eval(m, y)?;
        let bv = b.eval(m, y)?;
        worst = worst.max((av - bv).norm());
        scale = scale.max(av.norm()).max(bv.norm());
    }
    Ok(worst / scale.max(1e-12))
}

// --- infinitesimal transformation checks ---------------------------------------

/// Residual report for the first-order transformation law. Both residuals
/// are expected to fall off as O(h^2).
pub struct InfinitesimalReport {
    pub h: f64,
    pub section_identity_residual: f64,
    pub section_identity_residual_half: f64,
    pub transport_residual: f64,
    pub transport_residual_half: f64,
}

impl InfinitesimalReport {
    pub fn section_ratio(&self) -> f64 {
        self.section_identity_residual / self.section_identity_residual_half.max(1e-300)
    }

    pub fn transport_ratio(&self) -> f64 {
        self.transport_residual / self.transport_residual_half.max(1e-300)
    }
}

/// Check (a) the section antisymmetry identity
/// (d_m L) L^T + L (d_m L^T) = 0 by matrix finite differences, and (b)
/// first-order agreement of the transported field with
/// psi - h (d_m + g_m) psi, at steps h and h/2.
pub fn infinitesimal_check(
    bundle: &BundleFunction,
    gen: &LorentzGenerator,
    m: &SpacelikeDirection,
    samples: &[FourVector],
    h: f64,
) -> Result<InfinitesimalReport, InducedError> {
    let inner_ops = BundleOperators { dm_step: 1e-4, dy_step: 1e-4 };
    let section_res = |s: f64| -> Result<f64, InducedError> {
        if gen.is_zero() {
            return Ok(0.0);
        }
        let probe = BundleOperators { dm_step: s, dy_step: s };
        let dl = probe.section_derivative(gen, m)?;
        let l = canonical_section(m)?;
        // d(L^T) is the eta-transpose of dL, exactly.
        let dlt = LorentzMatrix::from_unchecked(dl).eta_transpose();
        let lhs = LorentzMatrix::from_unchecked(dl).mul(&l.eta_transpose());
        let rhs = l.mul(&dlt);
        let mut sum = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] = lhs.entries()[i][j] + rhs.entries()[i][j];
            }
        }
        Ok(max_abs_entry(&sum))
    };

    let f = bundle.field();
    let transport_res = |step: f64| -> Result<f64, InducedError> {
        if gen.is_zero() {
            return Ok(0.0);
        }
        let lam = gen.exp(step);
        let transported = TransportedField {
            inner: Rc::clone(&f),
            lambda: lam,
            lambda_inv: lam.eta_transpose(),
        };
        let mut worst = 0.0f64;
        for y in samples {
            let lhs = transported.eval(m, y)?;
            let base = f.eval(m, y)?;
            let dm = inner_ops.d_m_term(f.as_ref(), gen, m, y)?;
            let g = inner_ops.g_term(f.as_ref(), gen, m, y)?;
            let rhs = base - (dm + g) * step;
            worst = worst.max((lhs - rhs).norm());
        }
        Ok(worst)
    };

    Ok(InfinitesimalReport {
        h,
        section_identity_residual: section_res(h)?,
        section_identity_residual_half: section_res(h / 2.0)?,
        transport_residual: transport_res(h)?,
        transport_residual_half: transport_res(h / 2.0)?,
    })
}
