//! Analytic Casimir energies and forces per unit plate area.
//!
//! Natural units throughout: lengths in one arbitrary unit, energy per area
//! in length⁻³, force per area in length⁻⁴.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dispersion::{check_n0, check_n1, DispersionModel};
use crate::error::{domain, Error, Result};

/// Phenomenological boundary-localised contribution `E_s = c_s / L⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceTerm {
    pub coefficient: f64,
}

impl SurfaceTerm {
    pub fn new(coefficient: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(domain("SurfaceTerm::new", "coefficient must be finite"));
        }
        Ok(SurfaceTerm { coefficient })
    }
}

/// Plate separation, medium, and optional surface term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub separation: f64,
    pub model: DispersionModel,
    pub surface: Option<SurfaceTerm>,
}

impl Scenario {
    pub fn new(separation: f64, model: DispersionModel, surface: Option<SurfaceTerm>) -> Result<Self> {
        check_separation("Scenario::new", separation)?;
        model.validate()?;
        if let Some(s) = surface {
            SurfaceTerm::new(s.coefficient)?;
        }
        Ok(Scenario {
            separation,
            model,
            surface,
        })
    }

    pub fn cauchy(separation: f64, n0: f64, n1: f64) -> Result<Self> {
        Self::new(separation, DispersionModel::cauchy(n0, n1)?, None)
    }

    pub fn with_separation(&self, separation: f64) -> Result<Self> {
        Self::new(separation, self.model.clone(), self.surface)
    }

    /// Surface energy, zero when no surface term is configured.
    pub fn surface_energy(&self) -> f64 {
        self.surface
            .map(|s| s.coefficient / self.separation.powi(4))
            .unwrap_or(0.0)
    }

    /// Non-fatal warnings that apply to this scenario regardless of method.
    pub fn validity_warnings(&self) -> Vec<Warning> {
        match self.model.validity() {
            Ok(v) if !v.is_valid_at(self.separation) => vec![Warning::BeyondValidity {
                min_separation: v.min_separation,
            }],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    Lifshitz,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Lifshitz => "lifshitz",
        }
    }
}

/// Conditions under which a result was computed outside the regime where the
/// first-order dispersive treatment holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// `L <= 2π√n1`.
    BeyondValidity { min_separation: f64 },
    /// The Cauchy continuation of `κ₁` went negative at `xi` and was clamped.
    KappaClamped { xi: f64 },
}

/// Energy per unit area split into its parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    pub e0: f64,
    pub delta_e: f64,
    pub e_surface: f64,
    pub total: f64,
    pub method: Method,
    pub error_estimate: f64,
    pub warnings: Vec<Warning>,
}

impl EnergyBreakdown {
    pub fn new(e0: f64, delta_e: f64, e_surface: f64, method: Method, error_estimate: f64) -> Self {
        EnergyBreakdown {
            e0,
            delta_e,
            e_surface,
            total: e0 + delta_e + e_surface,
            method,
            error_estimate,
            warnings: Vec::new(),
        }
    }

    pub fn is_flagged(&self) -> bool {
        !self.warnings.is_empty()
    }
}

pub(crate) fn check_separation(op: &'static str, separation: f64) -> Result<()> {
    if separation.is_finite() && separation > 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("separation L = {separation} must be finite and > 0")))
    }
}

/// Frequency `(1/n0)·√(k_T² + (jπ/L)²)` of the `j`-th standing mode.
pub fn mode_frequency(j: u32, transverse_k: f64, separation: f64, n0: f64) -> Result<f64> {
    if j == 0 {
        return Err(domain("mode_frequency", "mode index j must be >= 1"));
    }
    if !(transverse_k.is_finite() && transverse_k >= 0.0) {
        return Err(domain("mode_frequency", format!("k_T = {transverse_k} must be >= 0")));
    }
    check_separation("mode_frequency", separation)?;
    check_n0("mode_frequency", n0)?;
    let kz = j as f64 * PI / separation;
    Ok(transverse_k.hypot(kz) / n0)
}

/// Zeta-regularised zero-point energy `−π²/(720 n0 L³)`.
pub fn e0_analytic(separation: f64, n0: f64) -> Result<f64> {
    check_separation("e0_analytic", separation)?;
    check_n0("e0_analytic", n0)?;
    Ok(-PI * PI / (720.0 * n0 * separation.powi(3)))
}

/// First-order dispersive correction `−n1 π⁴/(2520 n0⁴ L⁵)`.
pub fn delta_e_analytic(separation: f64, n0: f64, n1: f64) -> Result<f64> {
    check_separation("delta_e_analytic", separation)?;
    check_n0("delta_e_analytic", n0)?;
    check_n1("delta_e_analytic", n1)?;
    if n1 == 0.0 {
        return Ok(0.0);
    }
    Ok(-n1 * PI.powi(4) / (2520.0 * n0.powi(4) * separation.powi(5)))
}

/// `ΔE/E₀ = 2π²n1/(7 n0³ L²)`.
pub fn dispersive_ratio(separation: f64, n0: f64, n1: f64) -> Result<f64> {
    check_separation("dispersive_ratio", separation)?;
    check_n0("dispersive_ratio", n0)?;
    check_n1("dispersive_ratio", n1)?;
    Ok(2.0 * PI * PI * n1 / (7.0 * n0 * n0 * n0 * (separation * separation)))
}

pub fn surface_energy(separation: f64, term: SurfaceTerm) -> Result<f64> {
    check_separation("surface_energy", separation)?;
    Ok(term.coefficient / separation.powi(4))
}

fn closed_form_coefficients(op: &'static str, scenario: &Scenario) -> Result<(f64, f64)> {
    scenario
        .model
        .cauchy_coefficients()
        .ok_or(Error::UnsupportedModel {
            op,
            model: scenario.model.name(),
        })
}

/// `E₀ + ΔE (+ E_s)` from the closed forms.
pub fn total_energy_analytic(scenario: &Scenario) -> Result<EnergyBreakdown> {
    let (n0, n1) = closed_form_coefficients("total_energy_analytic", scenario)?;
    let l = scenario.separation;
    let mut out = EnergyBreakdown::new(
        e0_analytic(l, n0)?,
        delta_e_analytic(l, n0, n1)?,
        scenario.surface_energy(),
        Method::Analytic,
        0.0,
    );
    out.warnings = scenario.validity_warnings();
    Ok(out)
}

/// `−dE/dL` of the closed-form energy.
pub fn force_analytic(scenario: &Scenario) -> Result<f64> {
    let (n0, n1) = closed_form_coefficients("force_analytic", scenario)?;
    let l = scenario.separation;
    let leading = -PI * PI / (240.0 * n0 * l.powi(4));
    let dispersive = -PI.powi(4) * n1 / (504.0 * n0.powi(4) * l.powi(6));
    let surface = scenario
        .surface
        .map(|s| 4.0 * s.coefficient / l.powi(5))
        .unwrap_or(0.0);
    Ok(leading + dispersive + surface)
}

/// Ideal-vacuum Casimir pressure `−π²/(240 L⁴)`.
pub fn vacuum_force(separation: f64) -> Result<f64> {
    check_separation("vacuum_force", separation)?;
    Ok(-PI * PI / (240.0 * separation.powi(4)))
}
