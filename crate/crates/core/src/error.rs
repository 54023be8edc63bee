//! Error types shared across the library.

use thiserror::Error;

/// Errors from the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma function pole at nonpositive integer x = {0}")]
    Pole(f64),
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("invalid index combination: {0}")]
    Index(String),
}

/// Errors from kinematics and coordinate charts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("point is not in the RMS interior (classified {tag:?})")]
    NotInRms { tag: crate::kinematics::RegionTag },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Errors from grid-based hyperangular operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperangularError {
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("grid descriptors do not match")]
    GridMismatch,
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("invalid argument: {0}")]
    Domain(String),
}

/// Errors from the radial eigenproblem and spectrum assembly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    #[error("eigenvalue not converged: estimated error {estimated:.3e} exceeds tolerance {tolerance:.3e}")]
    Convergence { estimated: f64, tolerance: f64 },
    #[error("invalid potential or parameters: {0}")]
    Domain(String),
    #[error("radicand M^2 c^2 + 2 M K_a = {0:.6e} is negative; total mass would be imaginary")]
    ImaginaryMass(f64),
    #[error("energy expansion outside its radius of convergence: |2 K_a / M c^2| = {0:.6e} >= 1")]
    DivergenceWarning(f64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Errors from the induced-representation machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InducedError {
    #[error("matrix is not proper orthochronous Lorentz: {0}")]
    NotLorentz(String),
    #[error("four-vector is not unit spacelike (m.m = {0:.6e})")]
    NotUnitSpacelike(f64),
    #[error("direction lies in the singular chart region (spatial part antiparallel to z); retry with the flipped chart")]
    ChartSingular,
    #[error("orbit does not cover required direction ({0:.6}, {1:.6}, {2:.6}, {3:.6}) and interpolation is disabled")]
    OrbitCoverage(f64, f64, f64, f64),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("orbit file malformed: {0}")]
    OrbitFormat(String),
}
