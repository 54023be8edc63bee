//! Minkowski four-vector algebra with signature (-, +, +, +), the RMS and
//! full-spacelike coordinate charts, region classification, the invariant
//! measure weight, and the two-body center-of-mass / relative split.

use crate::error::KinematicsError;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, Mul, Neg, Sub};

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-12;

/// A point (or momentum) in Minkowski space; x0 is the time component, c = 1.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl FourVector {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Invariant square x.x with the (-, +, +, +) metric.
    pub fn minkowski_sq(&self) -> f64 {
        minkowski_dot(self, self)
    }

    /// Euclidean norm squared, used as the scale for boundary tolerances.
    pub fn euclidean_sq(&self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.x0, s * self.x1, s * self.x2, s * self.x3)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        self.scale(s)
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x0,
            1 => &self.x1,
            2 => &self.x2,
            3 => &self.x3,
            _ => panic!("four-vector index {i} out of range"),
        }
    }
}

/// Minkowski inner product -a0 b0 + a1 b1 + a2 b2 + a3 b3.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3
}

/// Hyperbolic coordinates (rho, theta, beta, phi) of the RMS chart.
///
/// rho > 0, theta strictly inside (0, pi), beta any real rapidity, phi
/// reduced mod 2 pi into [0, 2 pi). The poles theta = 0, pi are excluded:
/// there sin(theta) = 0 and the rapidity is undefined, and the point fails
/// the cylinder condition x1^2 + x2^2 > x0^2 anyway.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmsPoint {
    rho: f64,
    theta: f64,
    beta: f64,
    phi: f64,
}

impl RmsPoint {
    pub fn new(rho: f64, theta: f64, beta: f64, phi: f64) -> Result<Self, KinematicsError> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(KinematicsError::InvalidParameter(format!(
                "rho must be positive and finite, got {rho}"
            )));
        }
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(KinematicsError::InvalidParameter(format!(
                "theta must lie strictly inside (0, pi), got {theta}"
            )));
        }
        if !beta.is_finite() || !phi.is_finite() {
            return Err(KinematicsError::InvalidParameter(
                "beta and phi must be finite".into(),
            ));
        }
        let tau = 2.0 * std::f64::consts::PI;
        let phi = phi.rem_euclid(tau);
        Ok(Self { rho, theta, beta, phi })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Region of Minkowski space relative to the light cone and the RMS cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionTag {
    Timelike,
    SpacelikeOutsideRms,
    Rms,
    LightlikeBoundary,
}

/// Classify with the default boundary tolerance.
pub fn classify_region(x: &FourVector) -> RegionTag {
    classify_region_with_tol(x, DEFAULT_BOUNDARY_TOL)
}

/// RMS iff x.x > 0 and x1^2 + x2^2 > x0^2; spacelike-outside iff x.x > 0
/// only; timelike iff x.x < 0. Points within `tol` (relative to the
/// Euclidean norm squared) of either boundary surface get the boundary tag.
pub fn classify_region_with_tol(x: &FourVector, tol: f64) -> RegionTag {
    let scale = x.euclidean_sq();
    let eps = tol * scale;
    let s = x.minkowski_sq();
    let w = x.x1 * x.x1 + x.x2 * x.x2 - x.x0 * x.x0;
    if scale == 0.0 || s.abs() <= eps {
        return RegionTag::LightlikeBoundary;
    }
    if s < 0.0 {
        return RegionTag::Timelike;
    }
    if w.abs() <= eps {
        RegionTag::LightlikeBoundary
    } else if w > 0.0 {
        RegionTag::Rms
    } else {
        RegionTag::SpacelikeOutsideRms
    }
}

/// RMS chart: x0 = rho sin(theta) sinh(beta), x1 = rho sin(theta) cosh(beta) cos(phi),
/// x2 = rho sin(theta) cosh(beta) sin(phi), x3 = rho cos(theta).
pub fn rms_to_cartesian(p: &RmsPoint) -> FourVector {
    let (st, ct) = p.theta.sin_cos();
    let (sh, ch) = (p.beta.sinh(), p.beta.cosh());
    let (sp, cp) = p.phi.sin_cos();
    FourVector::new(
        p.rho * st * sh,
        p.rho * st * ch * cp,
        p.rho * st * ch * sp,
        p.rho * ct,
    )
}

/// Inverse RMS chart. Branches: rho = +sqrt(x.x), theta = arccos(x3/rho) in
/// (0, pi), beta = arcsinh(x0 / (rho sin theta)), phi = atan2(x2, x1) mapped
/// into [0, 2 pi). Fails with NotInRms outside the open RMS region.
pub fn cartesian_to_rms(x: &FourVector) -> Result<RmsPoint, KinematicsError> {
    let tag = classify_region(x);
    if tag != RegionTag::Rms {
        return Err(KinematicsError::NotInRms { tag });
    }
    let rho = x.minkowski_sq().sqrt();
    let theta = (x.x3 / rho).clamp(-1.0, 1.0).acos();
    // rho sin(theta) = sqrt(x1^2 + x2^2 - x0^2), positive inside the RMS.
    let rho_st = (x.x1 * x.x1 + x.x2 * x.x2 - x.x0 * x.x0).sqrt();
    let beta = (x.x0 / rho_st).asinh();
    let phi = x.x2.atan2(x.x1);
    RmsPoint::new(rho, theta, beta, phi)
}

/// Full-spacelike chart of the region x.x > 0:
/// x0 = rho sinh(beta), x_i = rho cosh(beta) * (unit vector in (theta, phi)).
pub fn spacelike_to_cartesian(rho: f64, beta: f64, theta: f64, phi: f64) -> FourVector {
    let (st, ct) = theta.sin_cos();
    let (sh, ch) = (beta.sinh(), beta.cosh());
    let (sp, cp) = phi.sin_cos();
    FourVector::new(rho * sh, rho * ch * cp * st, rho * ch * sp * st, rho * ch * ct)
}

/// Invariant-measure weight rho^3 sin^2(theta) cosh(beta) of the RMS chart.
pub fn measure_weight(p: &RmsPoint) -> f64 {
    let st = p.theta.sin();
    p.rho.powi(3) * st * st * p.beta.cosh()
}

/// Two-body mass parameters: M = M1 + M2, reduced m = M1 M2 / M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoBodyMasses {
    m1: f64,
    m2: f64,
}

impl TwoBodyMasses {
    pub fn new(m1: f64, m2: f64) -> Result<Self, KinematicsError> {
        if !(m1 > 0.0 && m2 > 0.0 && m1.is_finite() && m2.is_finite()) {
            return Err(KinematicsError::InvalidParameter(format!(
                "masses must be positive and finite, got {m1}, {m2}"
            )));
        }
        Ok(Self { m1, m2 })
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }
    pub fn m2(&self) -> f64 {
        self.m2
    }
    /// Total mass M1 + M2.
    pub fn total(&self) -> f64 {
        self.m1 + self.m2
    }
    /// Reduced mass M1 M2 / (M1 + M2); always <= M/4, equality iff M1 = M2.
    pub fn reduced(&self) -> f64 {
        self.m1 * self.m2 / (self.m1 + self.m2)
    }
}

/// Center-of-mass / relative split of a two-body configuration:
/// X = (M1 x1 + M2 x2)/M, P = p1 + p2, x = x1 - x2, p = (M2 p1 - M1 p2)/M.
pub fn cm_split(
    x1: &FourVector,
    x2: &FourVector,
    p1: &FourVector,
    p2: &FourVector,
    masses: &TwoBodyMasses,
) -> (FourVector, FourVector, FourVector, FourVector) {
    let m = masses.total();
    let big_x = (x1.scale(masses.m1) + x2.scale(masses.m2)).scale(1.0 / m);
    let big_p = *p1 + *p2;
    let rel_x = *x1 - *x2;
    let rel_p = (p1.scale(masses.m2) - p2.scale(masses.m1)).scale(1.0 / m);
    (big_x, big_p, rel_x, rel_p)
}

/// Inverse of [`cm_split`]; returns (x1, x2, p1, p2).
pub fn cm_merge(
    big_x: &FourVector,
    big_p: &FourVector,
    rel_x: &FourVector,
    rel_p: &FourVector,
    masses: &TwoBodyMasses,
) -> (FourVector, FourVector, FourVector, FourVector) {
    let m = masses.total();
    let x1 = *big_x + rel_x.scale(masses.m2 / m);
    let x2 = *big_x - rel_x.scale(masses.m1 / m);
    let p1 = big_p.scale(masses.m1 / m) + *rel_p;
    let p2 = big_p.scale(masses.m2 / m) - *rel_p;
    (x1, x2, p1, p2)
}

/// Free two-body Hamiltonian p1^2/2M1 + p2^2/2M2 (Minkowski squares).
pub fn free_hamiltonian(p1: &FourVector, p2: &FourVector, masses: &TwoBodyMasses) -> f64 {
    p1.minkowski_sq() / (2.0 * masses.m1) + p2.minkowski_sq() / (2.0 * masses.m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn minkowski_dot_unit_vectors() {
        let t = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let z = FourVector::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(minkowski_dot(&t, &t), -1.0);
        assert_eq!(minkowski_dot(&z, &z), 1.0);
    }

    #[test]
    fn rms_chart_axis_points() {
        let p = RmsPoint::new(1.0, PI / 2.0, 0.0, 0.0).unwrap();
        let x = rms_to_cartesian(&p);
        assert!((x.x0).abs() < 1e-15 && (x.x1 - 1.0).abs() < 1e-15);
        assert!((x.x2).abs() < 1e-15 && (x.x3).abs() < 1e-15);

        let p = RmsPoint::new(1.0, PI / 2.0, 0.0, PI / 2.0).unwrap();
        let x = rms_to_cartesian(&p);
        assert!((x.x2 - 1.0).abs() < 1e-15 && x.x1.abs() < 1e-15);
    }

    #[test]
    fn inverse_chart_axis_point() {
        let x = FourVector::new(0.0, 1.0, 0.0, 0.0);
        let p = cartesian_to_rms(&x).unwrap();
        assert!((p.rho() - 1.0).abs() < 1e-15);
        assert!((p.theta() - PI / 2.0).abs() < 1e-15);
        assert!(p.beta().abs() < 1e-15 && p.phi().abs() < 1e-15);
    }

    #[test]
    fn z_axis_point_is_not_in_rms() {
        let x = FourVector::new(0.0, 0.0, 0.0, 1.0);
        match cartesian_to_rms(&x) {
            Err(KinematicsError::NotInRms { tag }) => {
                assert_eq!(tag, RegionTag::LightlikeBoundary)
            }
            other => panic!("expected NotInRms, got {other:?}"),
        }
    }

    #[test]
    fn spacelike_chart_examples() {
        let x = spacelike_to_cartesian(1.0, 0.0, PI / 2.0, 0.0);
        assert!((x.x1 - 1.0).abs() < 1e-15 && x.x0.abs() < 1e-15);

        let x = spacelike_to_cartesian(1.0, 1.0, 0.0, 0.0);
        assert!((x.x0 - 1f64.sinh()).abs() < 1e-15);
        assert!((x.x3 - 1f64.cosh()).abs() < 1e-15);
        assert!((x.minkowski_sq() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_region(&FourVector::new(0.0, 1.0, 0.0, 0.0)),
            RegionTag::Rms
        );
        assert_eq!(
            classify_region(&FourVector::new(1.0, 0.0, 0.0, 2.0)),
            RegionTag::SpacelikeOutsideRms
        );
        assert_eq!(
            classify_region(&FourVector::new(2.0, 1.0, 0.0, 0.0)),
            RegionTag::Timelike
        );
        assert_eq!(
            classify_region(&FourVector::new(1.0, 1.0, 0.0, 0.0)),
            RegionTag::LightlikeBoundary
        );
    }

    #[test]
    fn measure_weight_examples() {
        let p = RmsPoint::new(2.0, PI / 2.0, 0.0, 0.3).unwrap();
        assert!((measure_weight(&p) - 8.0).abs() < 1e-14);
        let p = RmsPoint::new(1.0, PI / 2.0, 0.0, 0.0).unwrap();
        assert!((measure_weight(&p) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn masses_reduced_bound() {
        let eq = TwoBodyMasses::new(3.0, 3.0).unwrap();
        assert!((eq.reduced() - eq.total() / 4.0).abs() < 1e-15);
        let uneq = TwoBodyMasses::new(1.0, 5.0).unwrap();
        assert!(uneq.reduced() < uneq.total() / 4.0);
        assert!(TwoBodyMasses::new(-1.0, 2.0).is_err());
    }

    #[test]
    fn cm_split_equal_masses_opposite_momenta() {
        let masses = TwoBodyMasses::new(1.0, 1.0).unwrap();
        let p1 = FourVector::new(0.3, 1.0, -0.5, 0.2);
        let p2 = -p1;
        let x = FourVector::zero();
        let (_, big_p, _, rel_p) = cm_split(&x, &x, &p1, &p2, &masses);
        assert!(big_p.euclidean_sq() < 1e-28);
        assert!((rel_p - p1).euclidean_sq() < 1e-28);
    }

    #[test]
    fn cm_split_heavy_second_particle() {
        let masses = TwoBodyMasses::new(1.0, 1e9).unwrap();
        let x1 = FourVector::new(0.1, 1.0, 2.0, 3.0);
        let x2 = FourVector::new(-0.2, 4.0, 5.0, 6.0);
        let p1 = FourVector::new(0.5, -1.0, 0.3, 0.7);
        let p2 = FourVector::new(0.1, 0.2, -0.4, 0.9);
        let (big_x, _, _, rel_p) = cm_split(&x1, &x2, &p1, &p2, &masses);
        assert!((big_x - x2).euclidean_sq().sqrt() < 1e-7);
        assert!((rel_p - p1).euclidean_sq().sqrt() < 1e-7);
    }
}
