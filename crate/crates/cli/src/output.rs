use std::io::Write;
use std::path::Path;

use casimir_core::crosscheck::ValidationCheck;
use casimir_core::{DispersionModel, Method, Scenario, SurfaceTerm, Warning};
use serde::Serialize;

use crate::commands::{Evaluation, Grid};
use crate::error::CliError;
use crate::units::UnitSystem;

pub const CSV_COLUMNS: [&str; 8] = [
    "e0",
    "delta_e",
    "e_surface",
    "total",
    "force",
    "method",
    "error_estimate",
    "validity_flag",
];

/// One output row, already in the requested units.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub method: Method,
    pub e0: f64,
    pub delta_e: f64,
    pub e_surface: f64,
    pub total: f64,
    pub error_estimate: f64,
    pub force: f64,
    pub force_error_estimate: f64,
    pub validity_flag: String,
    pub warnings: Vec<Warning>,
}

impl Record {
    pub fn new(value: Option<f64>, eval: &Evaluation, units: UnitSystem) -> Self {
        let b = &eval.breakdown;
        Record {
            value,
            method: b.method,
            e0: units.energy(b.e0),
            delta_e: units.energy(b.delta_e),
            e_surface: units.energy(b.e_surface),
            total: units.energy(b.total),
            error_estimate: units.energy(b.error_estimate),
            force: units.force(eval.force),
            force_error_estimate: units.force(eval.force_error),
            validity_flag: validity_flag(&b.warnings),
            warnings: b.warnings.clone(),
        }
    }
}

pub fn validity_flag(warnings: &[Warning]) -> String {
    let mut flags: Vec<&str> = warnings
        .iter()
        .map(|w| match w {
            Warning::BeyondValidity { .. } => "beyond_validity",
            Warning::KappaClamped { .. } => "kappa_clamped",
        })
        .collect();
    flags.dedup();
    if flags.is_empty() {
        "ok".to_string()
    } else {
        flags.join("+")
    }
}

/// Fixed 17-significant-digit form used in CSV output.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(variable: &str, records: &[Record]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(std::iter::once(variable).chain(CSV_COLUMNS)).map_err(io)?;
    for r in records {
        let value = r.value.map(csv_float).unwrap_or_default();
        w.write_record([
            value,
            csv_float(r.e0),
            csv_float(r.delta_e),
            csv_float(r.e_surface),
            csv_float(r.total),
            csv_float(r.force),
            r.method.as_str().to_string(),
            csv_float(r.error_estimate),
            r.validity_flag.clone(),
        ])
        .map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Debug, Serialize)]
pub struct Units {
    #[serde(flatten)]
    pub system: UnitSystem,
    pub energy: &'static str,
    pub force: &'static str,
}

impl From<UnitSystem> for Units {
    fn from(system: UnitSystem) -> Self {
        Units {
            system,
            energy: system.energy_unit(),
            force: system.force_unit(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComputeReport<'a> {
    pub scenario: &'a Scenario,
    pub units: Units,
    pub results: Vec<Record>,
}

/// Fixed scenario fields of a sweep; the swept one is overridden per row.
#[derive(Debug, Serialize)]
pub struct SweepScenario<'a> {
    pub separation: Option<f64>,
    pub model: &'a DispersionModel,
    pub surface: Option<SurfaceTerm>,
}

#[derive(Debug, Serialize)]
pub struct SweepReport<'a> {
    pub scenario: SweepScenario<'a>,
    pub sweep: Grid,
    pub units: Units,
    pub rows: Vec<Record>,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn validation_lines(checks: &[ValidationCheck]) -> Vec<u8> {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{} {}: computed {:e}, expected {:e}, discrepancy {:.3e} (tol {:e})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.computed,
            c.expected,
            c.discrepancy,
            c.tolerance
        ));
    }
    out.into_bytes()
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

/// Prints each distinct warning once to standard error.
pub fn report_warnings(label: &str, warnings: &[Warning]) {
    let mut seen: Vec<Warning> = Vec::new();
    for w in warnings {
        if seen.contains(w) {
            continue;
        }
        seen.push(*w);
        match w {
            Warning::BeyondValidity { min_separation } => eprintln!(
                "warning: {label}: separation is not above 2π√n1 = {min_separation}; first-order dispersion is outside its validity range"
            ),
            Warning::KappaClamped { xi } => eprintln!(
                "warning: {label}: κ₁ = n(iξ)ξ turns negative at ξ = {xi} and was clamped to 0"
            ),
        }
    }
}
