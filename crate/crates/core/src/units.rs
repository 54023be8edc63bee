//! Unit-system records. Internal computations run in per-potential scaled
//! variables; these records fix the constants used at the boundaries.

use serde::{Deserialize, Serialize};

/// CODATA-style constants for the eV-based mode.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;
pub const ELECTRON_MASS_EV: f64 = 510_998.95;
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
/// Rydberg energy in eV (m_e c^2 alpha^2 / 2).
pub const RYDBERG_EV: f64 = 13.605_693_12;

/// Active unit system.
///
/// `NaturalAtomic` sets hbar = c = 1 with caller-supplied masses and
/// coupling; with m = e = 1 as well this is the usual atomic scaling and
/// the coupling e^2 doubles as the fine-structure constant. `SiEv`
/// measures energies in eV and lengths in nm, with the constants above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    NaturalAtomic,
    SiEv,
}

impl UnitSystem {
    pub fn hbar(&self) -> f64 {
        match self {
            UnitSystem::NaturalAtomic => 1.0,
            // hbar in eV * (nm / c) units; hbar c = 197.32... eV nm.
            UnitSystem::SiEv => HBAR_C_EV_NM,
        }
    }

    /// Speed of light in the active units (lengths in nm, times in nm/c).
    pub fn c(&self) -> f64 {
        1.0
    }

    pub fn alpha(&self) -> f64 {
        match self {
            UnitSystem::NaturalAtomic => FINE_STRUCTURE,
            UnitSystem::SiEv => FINE_STRUCTURE,
        }
    }

    pub fn energy_unit(&self) -> &'static str {
        match self {
            UnitSystem::NaturalAtomic => "hartree",
            UnitSystem::SiEv => "eV",
        }
    }

    pub fn length_unit(&self) -> &'static str {
        match self {
            UnitSystem::NaturalAtomic => "a0",
            UnitSystem::SiEv => "nm",
        }
    }

    /// All constants of the record, for the `constants` command.
    pub fn constants(&self) -> Vec<(&'static str, f64, &'static str)> {
        match self {
            UnitSystem::NaturalAtomic => vec![
                ("hbar", 1.0, "1"),
                ("c", 1.0, "1"),
                ("alpha", FINE_STRUCTURE, "1"),
            ],
            UnitSystem::SiEv => vec![
                ("hbar_c", HBAR_C_EV_NM, "eV nm"),
                ("electron_mass", ELECTRON_MASS_EV, "eV"),
                ("alpha", FINE_STRUCTURE, "1"),
                ("rydberg", RYDBERG_EV, "eV"),
            ],
        }
    }
}
