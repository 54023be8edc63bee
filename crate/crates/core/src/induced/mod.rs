//! Induced representation of the Lorentz group with O(2,1) little group:
//! proper orthochronous 4x4 matrices, the canonical section carrying each
//! unit spacelike direction to the z-axis reference, little-group
//! factorization, and antisymmetric generators with their exponentials.
//!
//! For a Lorentz matrix the metric transpose eta Lambda^T eta equals the
//! inverse; that is the "transpose" appearing in every factorization here.

pub mod bundle;

use crate::error::InducedError;
use crate::kinematics::{minkowski_dot, FourVector};
use serde::{Deserialize, Serialize};

pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];
const LORENTZ_TOL: f64 = 1e-12;

/// Proper orthochronous Lorentz matrix {Lambda^mu_nu}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    m: [[f64; 4]; 4],
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Validates pseudo-orthogonality, unit determinant, and orthochronicity.
    pub fn new(m: [[f64; 4]; 4]) -> Result<Self, InducedError> {
        let candidate = Self { m };
        candidate.validate()?;
        Ok(candidate)
    }

    pub(crate) fn from_unchecked(m: [[f64; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    pub fn validate(&self) -> Result<(), InducedError> {
        let scale = 1.0 + self.max_abs() * self.max_abs();
        let residual = self.pseudo_orthogonality_residual();
        if residual > LORENTZ_TOL * scale {
            return Err(InducedError::NotLorentz(format!(
                "pseudo-orthogonality residual {residual:.3e}"
            )));
        }
        let det = self.det();
        if (det - 1.0).abs() > 1e-9 * scale {
            return Err(InducedError::NotLorentz(format!("det = {det}")));
        }
        if self.m[0][0] < 1.0 - 1e-12 {
            return Err(InducedError::NotLorentz(format!(
                "not orthochronous: Lambda^0_0 = {}",
                self.m[0][0]
            )));
        }
        Ok(())
    }

    fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0f64, |a, &x| a.max(x.abs()))
    }

    /// max |(Lambda^T eta Lambda - eta)_{ij}|.
    pub fn pseudo_orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for (k, &etak) in ETA.iter().enumerate() {
                    acc += self.m[k][i] * etak * self.m[k][j];
                }
                let want = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max((acc - want).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        m[0][0] * minor([1, 2, 3], [1, 2, 3]) - m[0][1] * minor([1, 2, 3], [0, 2, 3])
            + m[0][2] * minor([1, 2, 3], [0, 1, 3])
            - m[0][3] * minor([1, 2, 3], [0, 1, 2])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += self.m[i][k] * other.m[k][j];
                }
                out[i][j] = acc;
            }
        }
        Self { m: out }
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        let v = [x.x0, x.x1, x.x2, x.x3];
        let mut out = [0.0; 4];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        FourVector::new(out[0], out[1], out[2], out[3])
    }

    /// Metric transpose eta Lambda^T eta; equals the inverse for Lorentz
    /// matrices, exactly (no linear solve involved).
    pub fn eta_transpose(&self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = ETA[i] * self.m[j][i] * ETA[j];
            }
        }
        Self { m: out }
    }

    pub fn sub(&self, other: &Self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.m[i][j] - other.m[i][j];
            }
        }
        out
    }
}

pub fn max_abs_entry(m: &[[f64; 4]; 4]) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, &x| a.max(x.abs()))
}

/// Pure boost with rapidity vector r (carries rapidity |r| along r-hat).
pub fn boost(rapidity: [f64; 3]) -> LorentzMatrix {
    let chi = (rapidity[0] * rapidity[0] + rapidity[1] * rapidity[1]
        + rapidity[2] * rapidity[2])
        .sqrt();
    if chi == 0.0 {
        return LorentzMatrix::identity();
    }
    let n = [rapidity[0] / chi, rapidity[1] / chi, rapidity[2] / chi];
    let (sh, ch) = (chi.sinh(), chi.cosh());
    let mut m = [[0.0; 4]; 4];
    m[0][0] = ch;
    for i in 0..3 {
        m[0][i + 1] = sh * n[i];
        m[i + 1][0] = sh * n[i];
        for j in 0..3 {
            m[i + 1][j + 1] = (if i == j { 1.0 } else { 0.0 }) + (ch - 1.0) * n[i] * n[j];
        }
    }
    LorentzMatrix::from_unchecked(m)
}

/// Spatial rotation about `axis` by `angle` (Rodrigues form).
pub fn rotation(axis: [f64; 3], angle: f64) -> Result<LorentzMatrix, InducedError> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if norm == 0.0 {
        return Err(InducedError::NotLorentz("rotation axis must be nonzero".into()));
    }
    let n = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    let (s, c) = angle.sin_cos();
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let kron = if i == j { 1.0 } else { 0.0 };
            r[i][j] = c * kron + (1.0 - c) * n[i] * n[j];
        }
    }
    r[0][1] -= s * n[2];
    r[0][2] += s * n[1];
    r[1][0] += s * n[2];
    r[1][2] -= s * n[0];
    r[2][0] -= s * n[1];
    r[2][1] += s * n[0];
    let mut m = [[0.0; 4]; 4];
    m[0][0] = 1.0;
    for i in 0..3 {
        for j in 0..3 {
            m[i + 1][j + 1] = r[i][j];
        }
    }
    Ok(LorentzMatrix::from_unchecked(m))
}

/// Unit spacelike four-vector (m.m = +1) labeling an orbit point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeDirection(FourVector);

impl SpacelikeDirection {
    pub fn new(v: FourVector) -> Result<Self, InducedError> {
        let sq = minkowski_dot(&v, &v);
        let scale = 1.0 + v.euclidean_sq();
        if (sq - 1.0).abs() > 1e-12 * scale {
            return Err(InducedError::NotUnitSpacelike(sq));
        }
        Ok(Self(v))
    }

    /// Normalize a spacelike vector onto the unit hyperboloid.
    pub fn from_unnormalized(v: FourVector) -> Result<Self, InducedError> {
        let sq = minkowski_dot(&v, &v);
        if sq <= 0.0 {
            return Err(InducedError::NotUnitSpacelike(sq));
        }
        Ok(Self(v.scale(1.0 / sq.sqrt())))
    }

    /// The reference direction m0 = (0, 0, 0, 1).
    pub fn reference() -> Self {
        Self(FourVector::new(0.0, 0.0, 0.0, 1.0))
    }

    pub fn vector(&self) -> &FourVector {
        &self.0
    }

    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).euclidean_sq().sqrt()
    }
}

/// Chart for the canonical section. The standard chart is singular where
/// the spatial part of m points along -z; the flipped chart pre-rotates by
/// pi about x and is singular at +z instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chart {
    #[default]
    Standard,
    Flipped,
}

/// Canonical section L(m) with L(m) m = m0: rotate the spatial part of m
/// to the z-axis, then boost along z to remove the time component.
pub fn canonical_section(m: &SpacelikeDirection) -> Result<LorentzMatrix, InducedError> {
    canonical_section_in_chart(m, Chart::Standard)
}

pub fn canonical_section_in_chart(
    m: &SpacelikeDirection,
    chart: Chart,
) -> Result<LorentzMatrix, InducedError> {
    match chart {
        Chart::Standard => section_standard(m.vector()),
        Chart::Flipped => {
            let flip = rotation([1.0, 0.0, 0.0], std::f64::consts::PI)?;
            let flipped = flip.apply(m.vector());
            Ok(section_standard(&flipped)?.mul(&flip))
        }
    }
}

fn section_standard(v: &FourVector) -> Result<LorentzMatrix, InducedError> {
    let spatial = [v.x1, v.x2, v.x3];
    let len = (spatial[0] * spatial[0] + spatial[1] * spatial[1] + spatial[2] * spatial[2]).sqrt();
    // |spatial|^2 = 1 + x0^2 >= 1 on the unit hyperboloid.
    let u = [spatial[0] / len, spatial[1] / len, spatial[2] / len];
    let transverse = (u[0] * u[0] + u[1] * u[1]).sqrt();
    let align = if transverse < 1e-13 {
        if u[2] > 0.0 {
            LorentzMatrix::identity()
        } else {
            return Err(InducedError::ChartSingular);
        }
    } else {
        // axis = u x z / |u x z|, angle = acos(u . z)
        let axis = [u[1], -u[0], 0.0];
        let angle = u[2].clamp(-1.0, 1.0).acos();
        rotation(axis, angle)?
    };
    // After alignment: (x0, 0, 0, len). Boost along z with tanh(chi) = -x0/len.
    let chi = -(v.x0 / len).atanh();
    let z_boost = boost([0.0, 0.0, chi]);
    Ok(z_boost.mul(&align))
}

/// Little-group element D(Lambda, m) = L(m) Lambda L^T(Lambda^{-1} m);
/// stabilizes the reference direction m0 and lies in the O(2,1) subgroup.
pub fn little_group_element(
    lambda: &LorentzMatrix,
    m: &SpacelikeDirection,
) -> Result<LorentzMatrix, InducedError> {
    let pre = SpacelikeDirection::new(lambda.eta_transpose().apply(m.vector()))
        .or_else(|_| SpacelikeDirection::from_unnormalized(lambda.eta_transpose().apply(m.vector())))?;
    let l_m = canonical_section(m)?;
    let l_pre = canonical_section(&pre)?;
    Ok(l_m.mul(lambda).mul(&l_pre.eta_transpose()))
}

/// Antisymmetric generator omega_{mu nu} of the Lorentz algebra; the mixed
/// form eta^{-1} omega exponentiates to a group element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzGenerator {
    omega: [[f64; 4]; 4],
}

impl LorentzGenerator {
    pub fn new(omega: [[f64; 4]; 4]) -> Result<Self, InducedError> {
        for i in 0..4 {
            for j in 0..4 {
                if (omega[i][j] + omega[j][i]).abs() > 1e-12 {
                    return Err(InducedError::NotLorentz(
                        "generator must be antisymmetric".into(),
                    ));
                }
            }
        }
        Ok(Self { omega })
    }

    pub fn zero() -> Self {
        Self { omega: [[0.0; 4]; 4] }
    }

    /// Rotation generator about spatial axis k (0 = x, 1 = y, 2 = z).
    pub fn rotation_axis(k: usize) -> Self {
        let (a, b) = match k {
            0 => (2, 3), // about x: rotates (y, z)
            1 => (3, 1), // about y: rotates (z, x)
            _ => (1, 2), // about z: rotates (x, y)
        };
        let mut omega = [[0.0; 4]; 4];
        omega[a][b] = -1.0;
        omega[b][a] = 1.0;
        Self { omega }
    }

    /// Boost generator along spatial axis k; exp(chi G) equals
    /// boost(chi e_k).
    pub fn boost_axis(k: usize) -> Self {
        let mut omega = [[0.0; 4]; 4];
        omega[0][k + 1] = -1.0;
        omega[k + 1][0] = 1.0;
        Self { omega }
    }

    /// Mixed-index matrix G^mu_nu = eta^{mu sigma} omega_{sigma nu}.
    pub fn mixed(&self) -> [[f64; 4]; 4] {
        let mut g = [[0.0; 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = ETA[i] * self.omega[i][j];
            }
        }
        g
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut omega = self.omega;
        for row in &mut omega {
            for v in row {
                *v *= s;
            }
        }
        Self { omega }
    }

    pub fn is_zero(&self) -> bool {
        self.omega.iter().flatten().all(|&x| x == 0.0)
    }

    /// exp(t G) by scaling and squaring with a Taylor kernel.
    pub fn exp(&self, t: f64) -> LorentzMatrix {
        let g = self.mixed();
        let mut a = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = t * g[i][j];
            }
        }
        let norm = max_abs_entry(&a);
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.25 {
            scale *= 0.5;
            squarings += 1;
        }
        for row in &mut a {
            for v in row {
                *v *= scale;
            }
        }
        let mut result = LorentzMatrix::identity().m;
        let mut term = LorentzMatrix::identity().m;
        for order in 1..=16 {
            term = mat_mul(&term, &a);
            for (i, row) in term.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v /= order as f64;
                    result[i][j] += *v;
                }
            }
        }
        let mut out = result;
        for _ in 0..squarings {
            out = mat_mul(&out, &out);
        }
        LorentzMatrix::from_unchecked(out)
    }
}

fn mat_mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Orbit specification: a finite list of unit spacelike directions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub schema: String,
    pub directions: Vec<[f64; 4]>,
}

/// Parse an orbit JSON file: {"schema": ..., "directions": [[m0,m1,m2,m3], ...]}.
pub fn orbit_from_json(text: &str) -> Result<Vec<SpacelikeDirection>, InducedError> {
    let spec: OrbitSpec =
        serde_json::from_str(text).map_err(|e| InducedError::OrbitFormat(e.to_string()))?;
    spec.directions
        .iter()
        .map(|d| SpacelikeDirection::new(FourVector::new(d[0], d[1], d[2], d[3])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_directions() -> Vec<SpacelikeDirection> {
        let mut out = vec![SpacelikeDirection::reference()];
        for (r, ax, ang) in [
            ([0.3, 0.0, 0.1], [0.0, 1.0, 0.0], 0.7),
            ([0.0, -0.4, 0.2], [1.0, 0.0, 0.0], 1.2),
            ([0.5, 0.2, -0.3], [0.3, 0.4, 0.5], 2.0),
        ] {
            let lam = boost(r).mul(&rotation(ax, ang).unwrap());
            out.push(SpacelikeDirection::new(lam.apply(SpacelikeDirection::reference().vector())).unwrap());
        }
        out
    }

    #[test]
    fn boost_inverse_is_opposite_rapidity() {
        let b = boost([0.4, -0.2, 0.9]);
        let inv = boost([-0.4, 0.2, -0.9]);
        let prod = b.mul(&inv);
        assert!(max_abs_entry(&prod.sub(&LorentzMatrix::identity())) < 1e-12);
        assert!(boost([0.0; 3]).sub(&LorentzMatrix::identity()) == [[0.0; 4]; 4]);
    }

    #[test]
    fn compositions_stay_pseudo_orthogonal() {
        let a = boost([0.7, 0.1, -0.3]);
        let b = rotation([1.0, 2.0, 3.0], 1.1).unwrap();
        let c = boost([-0.2, 0.5, 0.4]);
        let prod = a.mul(&b).mul(&c);
        assert!(prod.pseudo_orthogonality_residual() < 1e-12);
        prod.validate().unwrap();
    }

    #[test]
    fn eta_transpose_is_inverse() {
        let lam = boost([0.3, -0.6, 0.2]).mul(&rotation([0.0, 1.0, 0.0], 0.8).unwrap());
        let prod = lam.mul(&lam.eta_transpose());
        assert!(max_abs_entry(&prod.sub(&LorentzMatrix::identity())) < 1e-13);
    }

    #[test]
    fn canonical_section_maps_to_reference() {
        for m in sample_directions() {
            let l = canonical_section(&m).unwrap();
            let image = l.apply(m.vector());
            let d = (image - *SpacelikeDirection::reference().vector()).euclidean_sq().sqrt();
            assert!(d < 1e-12, "residual {d}");
        }
        // reference direction gives the identity
        let l0 = canonical_section(&SpacelikeDirection::reference()).unwrap();
        assert!(max_abs_entry(&l0.sub(&LorentzMatrix::identity())) < 1e-14);
    }

    #[test]
    fn canonical_section_x_axis_is_rotation() {
        let m = SpacelikeDirection::new(FourVector::new(0.0, 1.0, 0.0, 0.0)).unwrap();
        let l = canonical_section(&m).unwrap();
        // pure rotation: time row/column untouched
        assert!((l.entries()[0][0] - 1.0).abs() < 1e-14);
        let image = l.apply(m.vector());
        assert!((image.x3 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn antipodal_direction_needs_flipped_chart() {
        let m = SpacelikeDirection::new(FourVector::new(0.0, 0.0, 0.0, -1.0)).unwrap();
        assert!(matches!(
            canonical_section(&m),
            Err(InducedError::ChartSingular)
        ));
        let l = canonical_section_in_chart(&m, Chart::Flipped).unwrap();
        let image = l.apply(m.vector());
        assert!((image.x3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn little_group_stabilizes_reference() {
        let m0 = SpacelikeDirection::reference();
        let lam = boost([0.2, 0.4, -0.1]).mul(&rotation([0.2, 0.9, 0.1], 0.6).unwrap());
        for m in sample_directions() {
            let d = little_group_element(&lam, &m).unwrap();
            let moved = d.apply(m0.vector());
            let resid = (moved - *m0.vector()).euclidean_sq().sqrt();
            assert!(resid < 1e-12, "stabilization residual {resid}");
            d.validate().unwrap();
        }
    }

    #[test]
    fn rotation_about_z_is_its_own_little_group_element() {
        let m0 = SpacelikeDirection::reference();
        let rz = rotation([0.0, 0.0, 1.0], 0.9).unwrap();
        let d = little_group_element(&rz, &m0).unwrap();
        assert!(max_abs_entry(&d.sub(&rz)) < 1e-12);
        // identity transformation gives the identity element
        let id = little_group_element(&LorentzMatrix::identity(), &m0).unwrap();
        assert!(max_abs_entry(&id.sub(&LorentzMatrix::identity())) < 1e-13);
    }

    #[test]
    fn generator_exponentials_match_closed_forms() {
        let g = LorentzGenerator::boost_axis(2);
        let got = g.exp(0.8);
        let want = boost([0.0, 0.0, 0.8]);
        assert!(max_abs_entry(&got.sub(&want)) < 1e-13);

        let g = LorentzGenerator::rotation_axis(2);
        let got = g.exp(0.5);
        let want = rotation([0.0, 0.0, 1.0], 0.5).unwrap();
        assert!(max_abs_entry(&got.sub(&want)) < 1e-13);
    }

    #[test]
    fn generator_antisymmetry_enforced() {
        let mut bad = [[0.0; 4]; 4];
        bad[0][1] = 1.0;
        assert!(LorentzGenerator::new(bad).is_err());
        bad[1][0] = -1.0;
        assert!(LorentzGenerator::new(bad).is_ok());
    }

    #[test]
    fn orbit_json_round_trip() {
        let text = r#"{"schema": "rmsbound/orbit/v1", "directions": [[0,0,0,1],[0,1,0,0]]}"#;
        let orbit = orbit_from_json(text).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit_from_json(r#"{"schema":"x","directions":[[1,0,0,0]]}"#).is_err());
    }
}
