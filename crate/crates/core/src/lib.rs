//! Relativistic two-body bound states with support on the reduced Minkowski
//! space (RMS), the spacelike submanifold x1^2 + x2^2 > x0^2 of the relative
//! coordinates.
//!
//! The crate provides
//! - four-vector kinematics, the RMS chart, and the invariant measure
//!   ([`kinematics`]);
//! - the special functions entering the eigenfunctions ([`specfun`]);
//! - hyperangular eigenfunctions of the O(2,1)-reduced problem and
//!   grid-based verification of generators, ladder coefficients, and
//!   Casimir eigenvalues ([`hyperangular`]);
//! - analytic Coulomb/oscillator radial spectra, a tridiagonal
//!   Sturm-Liouville solver for arbitrary central potentials, and the
//!   assembly of mass-squared and total-energy observables with
//!   relativistic corrections ([`radial`]);
//! - the induced representation of the Lorentz group with O(2,1) little
//!   group at the matrix/grid level ([`induced`]);
//! - machine-checkable verification suites driving all of the above
//!   ([`verify`]).

pub mod error;
pub mod hyperangular;
pub mod induced;
pub mod kinematics;
pub mod quad;
pub mod radial;
pub mod specfun;
pub mod units;
pub mod verify;
pub mod wavefunction;

pub use error::{HyperangularError, InducedError, KinematicsError, RadialError, SpecFunError};
pub use hyperangular::grid::{
    angular_inner_product, apply_generator, apply_lambda, apply_lambda_composed, apply_n2,
    ladder_coefficient, ladder_coefficient_analytic, AngularGrid, AngularGridFunction, Generator,
    GridSpec,
};
pub use hyperangular::{b_hat, b_hat_regularized, chi, phi_m, theta_fn, HyperangularState};
pub use kinematics::{
    cartesian_to_rms, classify_region, classify_region_with_tol, cm_split, measure_weight,
    minkowski_dot, rms_to_cartesian, spacelike_to_cartesian, FourVector, RegionTag, RmsPoint,
    TwoBodyMasses,
};
pub use radial::{
    coulomb_k, coulomb_radial, energy_expansion, mass_squared, oscillator_k, oscillator_radial,
    positronium_report, relativistic_correction_ratio, solve_radial_numeric, total_energy,
    PotentialSpec, RadialGridSpec, RadialSolution, SpectralLine,
};
pub use specfun::{
    assoc_legendre_p, b_norm_constant, gamma_fn, laguerre, legendre_p, LegendreOrderDegree,
};
pub use units::UnitSystem;
