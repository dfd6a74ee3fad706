//! Agreement checks between the closed-form and Lifshitz routes.

use serde::Serialize;

use crate::closed_form::{
    check_separation, delta_e_analytic, dispersive_ratio, total_energy_analytic, EnergyBreakdown, Scenario,
};
use crate::dispersion::DispersionModel;
use crate::error::{domain, Error, Result};
use crate::lifshitz::{full_kappa_correction, total_energy_lifshitz, LifshitzMode};
use crate::quadrature::QuadratureSpec;
use crate::special_functions::{cutoff_zeta_demo, richardson_to_zero, zeta_value};

/// Side-by-side analytic and Lifshitz energies for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub scenario: Scenario,
    pub analytic: EnergyBreakdown,
    pub lifshitz: EnergyBreakdown,
    pub rel_discrepancy_e0: f64,
    pub rel_discrepancy_delta: f64,
    pub rel_discrepancy_total: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `|a − b| / max(|a|, |b|)`, zero when both agree exactly.
pub fn relative_discrepancy(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn check_tolerance(op: &'static str, tol: f64) -> Result<()> {
    if tol.is_nan() || tol < 0.0 {
        Err(domain(op, format!("tolerance {tol} must be >= 0")))
    } else {
        Ok(())
    }
}

pub fn compare_methods(scenario: &Scenario, quad: &QuadratureSpec, tol: f64) -> Result<ComparisonReport> {
    check_tolerance("compare_methods", tol)?;
    let analytic = total_energy_analytic(scenario)?;
    let lifshitz = total_energy_lifshitz(scenario, quad, LifshitzMode::FirstOrderSplit)?;
    let rel_discrepancy_e0 = relative_discrepancy(analytic.e0, lifshitz.e0);
    let rel_discrepancy_delta = relative_discrepancy(analytic.delta_e, lifshitz.delta_e);
    let rel_discrepancy_total = relative_discrepancy(analytic.total, lifshitz.total);
    let pass = rel_discrepancy_e0 <= tol && rel_discrepancy_delta <= tol && rel_discrepancy_total <= tol;
    Ok(ComparisonReport {
        scenario: scenario.clone(),
        analytic,
        lifshitz,
        rel_discrepancy_e0,
        rel_discrepancy_delta,
        rel_discrepancy_total,
        tolerance: tol,
        pass,
    })
}

/// Default dispersion probe: about 10⁻⁵ of the leading term.
pub fn default_probe(separation: f64) -> f64 {
    1e-6 * separation * separation
}

/// `[E_full(n1_probe) − E_full(0)] / n1_probe`, tending to
/// `delta_e_analytic(L, n0, 1)` as the probe shrinks.
pub fn first_order_slope(separation: f64, n0: f64, quad: &QuadratureSpec, n1_probe: f64) -> Result<f64> {
    check_separation("first_order_slope", separation)?;
    let limit = separation * separation / (4.0 * std::f64::consts::PI.powi(2));
    if !(n1_probe > 0.0 && n1_probe < limit) {
        return Err(domain(
            "first_order_slope",
            format!("n1_probe = {n1_probe} must lie in (0, L²/4π² = {limit})"),
        ));
    }
    quad.validate()?;
    let model = DispersionModel::cauchy(n0, n1_probe)?;
    let (correction, _) = full_kappa_correction(separation, &model, quad)?;
    Ok(correction.value / n1_probe)
}

/// Probe-size extrapolation `2·S(p/2) − S(p)` of [`first_order_slope`],
/// removing its linear residual.
pub fn first_order_slope_extrapolated(
    separation: f64,
    n0: f64,
    quad: &QuadratureSpec,
    n1_probe: f64,
) -> Result<f64> {
    let coarse = first_order_slope(separation, n0, quad, n1_probe)?;
    let fine = first_order_slope(separation, n0, quad, 0.5 * n1_probe)?;
    Ok(2.0 * fine - coarse)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityRow {
    pub separation: f64,
    /// `ΔE/E₀ = 2π²n1/(7 n0³ L²)`.
    pub ratio: f64,
    /// `1/(14 n0³)`.
    pub bound: f64,
    /// `None` at or below `L = 2π√n1`, where the bound makes no claim.
    pub within_bound: Option<bool>,
}

pub fn validity_sweep(model: &DispersionModel, separations: &[f64]) -> Result<Vec<ValidityRow>> {
    let report = model.validity()?;
    let (n0, n1) = model.cauchy_coefficients().ok_or(Error::UnsupportedModel {
        op: "validity_sweep",
        model: model.name(),
    })?;
    separations
        .iter()
        .map(|&l| {
            let ratio = dispersive_ratio(l, n0, n1)?;
            let within_bound = report.is_valid_at(l).then_some(ratio < report.ratio_bound);
            Ok(ValidityRow {
                separation: l,
                ratio,
                bound: report.ratio_bound,
                within_bound,
            })
        })
        .collect()
}

pub const WITNESS_CUTOFFS: [f64; 3] = [0.2, 0.1, 0.05];

/// Richardson extrapolation in δ² of the cut-off mode sum `Σ nᵖ e^{−nδ}`
/// minus its divergence; approaches ζ(−p).
pub fn regularization_witness(p: u32, cutoffs: &[f64]) -> Result<f64> {
    let values = cutoffs
        .iter()
        .map(|&d| cutoff_zeta_demo(p, d))
        .collect::<Result<Vec<_>>>()?;
    richardson_to_zero(cutoffs, &values, 2.0)
}

/// One line of a validation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ValidationCheck {
    fn relative(name: String, computed: f64, expected: f64, tolerance: f64) -> Self {
        let discrepancy = relative_discrepancy(computed, expected);
        ValidationCheck {
            name,
            computed,
            expected,
            discrepancy,
            tolerance,
            pass: discrepancy <= tolerance,
        }
    }
}

/// Runs the method-agreement grid, the first-order slope extraction, and
/// the zeta-regularisation witnesses against relative tolerance `tol`.
pub fn run_validation(tol: f64, quad: &QuadratureSpec) -> Result<Vec<ValidationCheck>> {
    check_tolerance("run_validation", tol)?;
    let mut checks = Vec::new();

    for &l in &[0.5, 1.0, 2.0, 5.0] {
        for &n0 in &[1.0, 1.5, 2.0, 3.0] {
            for &n1 in &[0.0, 1e-3] {
                let report = compare_methods(&Scenario::cauchy(l, n0, n1)?, quad, tol)?;
                checks.push(ValidationCheck::relative(
                    format!("compare_methods L={l} n0={n0} n1={n1}"),
                    report.lifshitz.total,
                    report.analytic.total,
                    tol,
                ));
                if n1 > 0.0 {
                    checks.push(ValidationCheck::relative(
                        format!("delta_e L={l} n0={n0} n1={n1}"),
                        report.lifshitz.delta_e,
                        report.analytic.delta_e,
                        tol,
                    ));
                }
            }
        }
    }

    for &(l, n0) in &[(1.0, 1.0), (1.0, 2.0), (2.0, 1.5)] {
        let slope = first_order_slope_extrapolated(l, n0, quad, default_probe(l))?;
        checks.push(ValidationCheck::relative(
            format!("first_order_slope L={l} n0={n0}"),
            slope,
            delta_e_analytic(l, n0, 1.0)?,
            tol,
        ));
    }

    for p in [3u32, 5] {
        let witness = regularization_witness(p, &WITNESS_CUTOFFS)?;
        checks.push(ValidationCheck::relative(
            format!("zeta(-{p}) from cutoff sums"),
            witness,
            zeta_value(-(p as i32))?,
            tol,
        ));
    }

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn compare_examples() {
        let q = QuadratureSpec::default();
        let r = compare_methods(&Scenario::cauchy(1.0, 1.0, 0.0).unwrap(), &q, 1e-8).unwrap();
        assert!(r.pass);
        assert!(r.rel_discrepancy_e0 < 1e-8 && r.rel_discrepancy_total < 1e-8);
        assert_eq!(r.rel_discrepancy_delta, 0.0);

        let r = compare_methods(&Scenario::cauchy(1.0, 1.5, 1e-3).unwrap(), &q, 1e-7).unwrap();
        assert!(r.pass, "{r:?}");

        let r = compare_methods(&Scenario::cauchy(1.0, 1.0, 0.0).unwrap(), &q, 0.0).unwrap();
        assert!(!r.pass);
        assert!(compare_methods(&Scenario::cauchy(1.0, 1.0, 0.0).unwrap(), &q, -1.0).is_err());
    }

    #[test]
    fn slope_examples() {
        let q = QuadratureSpec::default();
        let s = first_order_slope(1.0, 1.0, &q, 1e-6).unwrap();
        assert!(((s + PI.powi(4) / 2520.0) / (PI.powi(4) / 2520.0)).abs() < 1e-4);
        let s = first_order_slope(1.0, 2.0, &q, 1e-6).unwrap();
        let target = -PI.powi(4) / (2520.0 * 16.0);
        assert!(((s - target) / target).abs() < 1e-4);
        assert!((target + 0.002_415_9).abs() < 1e-7);
        assert!(first_order_slope(1.0, 1.0, &q, 0.0).is_err());
        assert!(first_order_slope(1.0, 1.0, &q, 0.1).is_err());
    }

    #[test]
    fn slope_residual_is_linear_in_probe() {
        let q = QuadratureSpec::default();
        let target = delta_e_analytic(1.0, 1.0, 1.0).unwrap();
        let r1 = first_order_slope(1.0, 1.0, &q, 1e-6).unwrap() - target;
        let r2 = first_order_slope(1.0, 1.0, &q, 5e-7).unwrap() - target;
        let ratio = r1 / r2;
        assert!((1.6..=2.4).contains(&ratio), "{ratio}");
        let x = first_order_slope_extrapolated(1.0, 1.0, &q, 1e-6).unwrap();
        assert!(((x - target) / target).abs() < 1e-8);
    }

    #[test]
    fn validity_sweep_examples() {
        let m = DispersionModel::cauchy(1.0, 0.01).unwrap();
        let rows = validity_sweep(&m, &[2.0 * PI * 0.1, 0.1, 5.0]).unwrap();
        assert!((rows[0].ratio - 1.0 / 14.0).abs() < 1e-15);
        assert_eq!(rows[0].within_bound, None);
        assert_eq!(rows[1].within_bound, None);
        assert_eq!(rows[2].within_bound, Some(true));

        let m = DispersionModel::cauchy(1.0, 0.0).unwrap();
        for row in validity_sweep(&m, &[0.01, 1.0, 100.0]).unwrap() {
            assert_eq!(row.ratio, 0.0);
            assert_eq!(row.within_bound, Some(true));
        }

        let m = DispersionModel::cauchy(2.0, 0.01).unwrap();
        let row = validity_sweep(&m, &[1.0]).unwrap()[0];
        assert!((row.ratio - 2.0 * PI * PI * 0.01 / 56.0).abs() < 1e-16);
        assert!((row.ratio - 0.003_525).abs() < 1e-6);
        assert_eq!(row.bound, 1.0 / 112.0);
        assert!(validity_sweep(&m, &[-1.0]).is_err());
    }

    #[test]
    fn witness_reaches_negative_zeta_values() {
        let w3 = regularization_witness(3, &WITNESS_CUTOFFS).unwrap();
        assert!((w3 - 1.0 / 120.0).abs() < 1e-6);
        let w5 = regularization_witness(5, &WITNESS_CUTOFFS).unwrap();
        assert!((w5 + 1.0 / 252.0).abs() < 1e-6);
    }

    #[test]
    fn validation_run_passes_at_default_and_fails_when_too_strict() {
        let q = QuadratureSpec::default();
        let checks = run_validation(1e-7, &q).unwrap();
        let failing: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failing.is_empty(), "{failing:#?}");
        assert!(run_validation(1e-15, &q).unwrap().iter().any(|c| !c.pass));
    }
}
