//! Conversion of natural-unit results (ħ = c = 1) to SI for presentation.

use serde::Serialize;

/// ħc in J·m (CODATA 2018: ħ = 1.054571817e-34 J·s, c = 299792458 m/s),
/// to 10 significant figures.
pub const HBAR_C: f64 = 3.161_526_773e-26;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "system", rename_all = "snake_case")]
pub enum UnitSystem {
    /// Lengths in an arbitrary unit, energy/area in length⁻³, force/area in
    /// length⁻⁴.
    Natural,
    /// The natural length unit equals `length_unit_m` metres; energies are
    /// reported in J/m², forces in Pa.
    Si { length_unit_m: f64 },
}

impl UnitSystem {
    pub fn si(length_unit_m: f64) -> Result<Self, String> {
        if length_unit_m.is_finite() && length_unit_m > 0.0 {
            Ok(UnitSystem::Si { length_unit_m })
        } else {
            Err(format!("length unit must be a positive number of metres, got {length_unit_m}"))
        }
    }

    pub fn energy_unit(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "length^-3",
            UnitSystem::Si { .. } => "J/m^2",
        }
    }

    pub fn force_unit(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "length^-4",
            UnitSystem::Si { .. } => "Pa",
        }
    }

    pub fn energy(&self, natural: f64) -> f64 {
        match *self {
            UnitSystem::Natural => natural,
            UnitSystem::Si { length_unit_m } => natural * HBAR_C / length_unit_m.powi(3),
        }
    }

    pub fn force(&self, natural: f64) -> f64 {
        match *self {
            UnitSystem::Natural => natural,
            UnitSystem::Si { length_unit_m } => natural * HBAR_C / length_unit_m.powi(4),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn hbar_c_matches_codata() {
        let hbar = 1.054_571_817e-34;
        let c = 299_792_458.0;
        assert!(((hbar * c - HBAR_C) / HBAR_C).abs() < 1e-9);
    }

    #[test]
    fn micron_pressure() {
        let si = UnitSystem::si(1e-6).unwrap();
        let p = si.force(-PI * PI / 240.0);
        // π²ħc/(240 L⁴) at 1 µm
        let expected = -PI * PI * HBAR_C / (240.0 * 1e-24);
        assert!(((p - expected) / expected).abs() < 1e-14);
        assert!((p + 1.3e-3).abs() < 0.01e-3);
    }

    #[test]
    fn natural_is_identity_and_scaling_holds() {
        assert_eq!(UnitSystem::Natural.force(-0.3), -0.3);
        assert_eq!(UnitSystem::Natural.energy(2.5), 2.5);
        let a = UnitSystem::si(1e-6).unwrap().force(1.0);
        let b = UnitSystem::si(2e-6).unwrap().force(1.0);
        assert!((a / b - 16.0).abs() < 1e-12);
        let a = UnitSystem::si(1e-6).unwrap().energy(1.0);
        let b = UnitSystem::si(2e-6).unwrap().energy(1.0);
        assert!((a / b - 8.0).abs() < 1e-12);
        assert!(UnitSystem::si(0.0).is_err());
        assert!(UnitSystem::si(f64::NAN).is_err());
    }
}
