//! Lifshitz energy between ideal metal plates,
//!
//! ```text
//! E = 1/(2π²) ∫₀^∞ dξ ∫_{κ₁(ξ)}^∞ dκ κ log(1 − e^{−2κL}),   κ₁ = n(iξ)ξ
//! ```
//!
//! The κ integral is done in closed form with Li₂ and Li₃; the ξ integral by
//! adaptive Gauss–Kronrod on `[0, ξ_max]` plus an analytic tail.

use std::f64::consts::PI;

use serde::Serialize;

use crate::closed_form::{check_separation, EnergyBreakdown, Method, Scenario, Warning};
use crate::dispersion::{check_n0, DispersionModel};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::special_functions::{ln_one_minus_exp_unchecked, polylog_exp};

const INV_TWO_PI_SQ: f64 = 1.0 / (2.0 * PI * PI);

/// A numerically evaluated quantity with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// How the lower limit `κ₁` enters the energy integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LifshitzMode {
    /// `E₀` with `κ₀ = n0ξ` plus the correction linearised in `n1`.
    FirstOrderSplit,
    /// Integrate with the full `κ₁(ξ)`, clamped at zero. Goes beyond the
    /// first-order treatment; clamping is reported as a warning.
    FullKappa1,
}

impl LifshitzMode {
    /// `FirstOrderSplit` where it is defined, `FullKappa1` otherwise.
    pub fn natural_for(model: &DispersionModel) -> Self {
        match model {
            DispersionModel::Tabulated(_) => LifshitzMode::FullKappa1,
            _ => LifshitzMode::FirstOrderSplit,
        }
    }
}

/// One sample of the outer integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandPoint {
    pub xi: f64,
    pub kappa1: f64,
    pub inner_value: f64,
}

/// Outer integrand `∫_{κ₁(ξ)}^∞ κ log(1 − e^{−2κL}) dκ` at frequency `xi`.
pub fn integrand_point(model: &DispersionModel, xi: f64, separation: f64) -> Result<IntegrandPoint> {
    check_separation("integrand_point", separation)?;
    let kappa1 = model.kappa_lower(xi)?.value;
    Ok(IntegrandPoint {
        xi,
        kappa1,
        inner_value: inner_unchecked(kappa1, separation),
    })
}

/// `∫_{κ₁}^∞ κ log(1 − e^{−2κL}) dκ = −(κ₁/2L)·Li₂(e^{−2κ₁L}) − Li₃(e^{−2κ₁L})/(4L²)`.
pub fn inner_integral(kappa1: f64, separation: f64) -> Result<f64> {
    if kappa1.is_nan() || kappa1 < 0.0 {
        return Err(domain("inner_integral", format!("kappa1 = {kappa1} must be >= 0")));
    }
    check_separation("inner_integral", separation)?;
    Ok(inner_unchecked(kappa1, separation))
}

#[inline]
fn inner_unchecked(kappa1: f64, separation: f64) -> f64 {
    let mu = -2.0 * kappa1 * separation;
    if mu < -800.0 {
        return 0.0;
    }
    let li2 = polylog_exp(2, mu);
    let li3 = polylog_exp(3, mu);
    -kappa1 / (2.0 * separation) * li2 - li3 / (4.0 * separation * separation)
}

/// `ξ_max` with `e^{−2 L n ξ_max} = tail_cut`.
fn xi_max(separation: f64, decay_index: f64, tail_cut: f64) -> f64 {
    -tail_cut.ln() / (2.0 * separation * decay_index)
}

/// Leading-order tail `∫_X^∞ I(nξ, L) dξ` (first polylog term) and a bound on
/// what it leaves out.
fn inner_tail(separation: f64, index: f64, x: f64) -> (f64, f64) {
    let a = 2.0 * index * separation;
    let y = (-a * x).exp();
    let integral = y
        * ((index / (2.0 * separation)) * (x / a + 1.0 / (a * a)) + 1.0 / (4.0 * separation * separation * a));
    let remainder = integral * y / (1.0 - y);
    (-integral, remainder)
}

/// `E₀ = 1/(2π²) ∫ dξ I(n0ξ, L)`; tends to `−π²/(720 n0 L³)`.
pub fn e0_lifshitz(separation: f64, n0: f64, quad: &QuadratureSpec) -> Result<Estimate> {
    check_separation("e0_lifshitz", separation)?;
    check_n0("e0_lifshitz", n0)?;
    quad.validate()?;
    let x = xi_max(separation, n0, quad.tail_cut);
    let body = integrate(
        |xi| inner_unchecked(n0 * xi, separation),
        0.0,
        x,
        &scaled_tolerance(quad),
    )?;
    let (tail, tail_bound) = inner_tail(separation, n0, x);
    Ok(Estimate {
        value: INV_TWO_PI_SQ * (body.value + tail),
        error_estimate: INV_TWO_PI_SQ * (body.error + tail_bound),
    })
}

/// Absolute tolerance is stated for the energy; the raw integral is 2π²
/// larger.
fn scaled_tolerance(quad: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: quad.abs_tol / INV_TWO_PI_SQ,
        ..*quad
    }
}

/// `ΔE = (n1 n0 / 2π²) ∫₀^∞ ξ⁴ log(1 − e^{−2n0ξL}) dξ`, the correction
/// linear in `n1`.
///
/// The tolerances apply to the bare ξ-integral, which does not shrink with
/// `n1`, so small corrections keep their relative accuracy.
pub fn delta_e_lifshitz_first_order(
    separation: f64,
    model: &DispersionModel,
    quad: &QuadratureSpec,
) -> Result<Estimate> {
    check_separation("delta_e_lifshitz_first_order", separation)?;
    model.validate()?;
    quad.validate()?;
    let (n0, n1) = model.cauchy_coefficients().ok_or(Error::UnsupportedModel {
        op: "delta_e_lifshitz_first_order",
        model: model.name(),
    })?;
    if n1 == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    let a = 2.0 * n0 * separation;
    let x = xi_max(separation, n0, quad.tail_cut);
    let prefactor = n1 * n0 * INV_TWO_PI_SQ;
    let body = integrate(
        |xi| xi.powi(4) * ln_one_minus_exp_unchecked(a * xi),
        0.0,
        x,
        quad,
    )?;
    // ∫_X^∞ ξ⁴ e^{−aξ} dξ = e^{−aX} Σ_k 4!/(4−k)! X^{4−k}/a^{k+1}
    let y = (-a * x).exp();
    let mut tail = 0.0;
    let mut coef = 1.0;
    for k in 0..=4 {
        tail += coef * x.powi(4 - k) / a.powi(k + 1);
        coef *= (4 - k) as f64;
    }
    tail *= y;
    let remainder = tail * y / (1.0 - y);
    Ok(Estimate {
        value: prefactor * (body.value - tail),
        error_estimate: prefactor * (body.error + remainder),
    })
}

/// Index defining the reference `κ₀ = n_ref ξ` against which the full-κ₁
/// correction is measured: `n0` for the closed-form models, the static
/// index `n(i·0)` for a table.
fn reference_index(model: &DispersionModel) -> f64 {
    match model {
        DispersionModel::Tabulated(t) => t.eval(0.0),
        _ => model.cauchy_coefficients().expect("closed-form model").0,
    }
}

/// `(1/2π²) ∫ dξ [I(κ₁(ξ), L) − I(n_ref ξ, L)]`, evaluated as one integral
/// of the difference so small corrections do not cancel against `E₀`.
pub(crate) fn full_kappa_correction(
    separation: f64,
    model: &DispersionModel,
    quad: &QuadratureSpec,
) -> Result<(Estimate, Vec<Warning>)> {
    let n_ref = reference_index(model);
    let decay = model.decay_index().min(n_ref);
    let x = xi_max(separation, decay, quad.tail_cut);

    let mut warnings = Vec::new();
    if let Some(onset) = model.clamp_onset() {
        if onset < x {
            warnings.push(Warning::KappaClamped { xi: onset });
        }
    }

    let body = integrate(
        |xi| {
            let k1 = model.kappa_lower_unchecked(xi).value;
            let k0 = n_ref * xi;
            if k1 == k0 {
                0.0
            } else {
                inner_unchecked(k1, separation) - inner_unchecked(k0, separation)
            }
        },
        0.0,
        x,
        quad,
    )?;

    // Tail: treat κ₁ as linear beyond X with its effective index there.
    let k1_end = model.kappa_lower_unchecked(x).value;
    let n_eff = if k1_end > 0.0 { k1_end / x } else { 0.0 };
    let (tail_ref, bound_ref) = inner_tail(separation, n_ref, x);
    let (tail, bound) = if n_eff > 0.0 {
        let (t, b) = inner_tail(separation, n_eff, x);
        (t - tail_ref, b + bound_ref)
    } else {
        (0.0, tail_ref.abs() + bound_ref)
    };

    Ok((
        Estimate {
            value: INV_TWO_PI_SQ * (body.value + tail),
            error_estimate: INV_TWO_PI_SQ * (body.error + bound),
        },
        warnings,
    ))
}

/// Lifshitz energy per unit area of the scenario.
pub fn total_energy_lifshitz(
    scenario: &Scenario,
    quad: &QuadratureSpec,
    mode: LifshitzMode,
) -> Result<EnergyBreakdown> {
    quad.validate()?;
    let l = scenario.separation;
    check_separation("total_energy_lifshitz", l)?;
    let model = &scenario.model;
    model.validate()?;
    let mut warnings = scenario.validity_warnings();

    let (e0, delta) = match mode {
        LifshitzMode::FirstOrderSplit => {
            let (n0, _) = model.cauchy_coefficients().ok_or(Error::UnsupportedModel {
                op: "total_energy_lifshitz (first-order split)",
                model: model.name(),
            })?;
            (e0_lifshitz(l, n0, quad)?, delta_e_lifshitz_first_order(l, model, quad)?)
        }
        LifshitzMode::FullKappa1 => {
            let e0 = e0_lifshitz(l, reference_index(model), quad)?;
            let (delta, w) = full_kappa_correction(l, model, quad)?;
            warnings.extend(w);
            (e0, delta)
        }
    };

    let mut out = EnergyBreakdown::new(
        e0.value,
        delta.value,
        scenario.surface_energy(),
        Method::Lifshitz,
        e0.error_estimate + delta.error_estimate,
    );
    out.warnings = warnings;
    Ok(out)
}

/// `−dE/dL` by central difference of the Lifshitz energy in the model's
/// natural mode.
pub fn force_lifshitz(scenario: &Scenario, quad: &QuadratureSpec, h_rel: f64) -> Result<Estimate> {
    force_lifshitz_with_mode(scenario, quad, h_rel, LifshitzMode::natural_for(&scenario.model))
}

pub fn force_lifshitz_with_mode(
    scenario: &Scenario,
    quad: &QuadratureSpec,
    h_rel: f64,
    mode: LifshitzMode,
) -> Result<Estimate> {
    if !(1e-7..=1e-2).contains(&h_rel) {
        return Err(domain("force_lifshitz", format!("h_rel = {h_rel} outside [1e-7, 1e-2]")));
    }
    let l = scenario.separation;
    let plus = total_energy_lifshitz(&scenario.with_separation(l * (1.0 + h_rel))?, quad, mode)?;
    let minus = total_energy_lifshitz(&scenario.with_separation(l * (1.0 - h_rel))?, quad, mode)?;
    let step = 2.0 * l * h_rel;
    let value = -(plus.total - minus.total) / step;
    // E ~ C/L³ gives a central-difference bias of about 10|E|h²/L.
    let energy = 0.5 * (plus.total + minus.total);
    let truncation = 10.0 * energy.abs() * h_rel * h_rel / l;
    Ok(Estimate {
        value,
        error_estimate: (plus.error_estimate + minus.error_estimate) / step + truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{delta_e_analytic, e0_analytic};
    use crate::quadrature::integrate_to_infinity;
    use crate::special_functions::ZETA_3;

    fn raw_inner(kappa1: f64, l: f64) -> f64 {
        let spec = QuadratureSpec {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            max_subdivisions: 2000,
            ..QuadratureSpec::default()
        };
        integrate_to_infinity(
            |k| {
                if k <= 0.0 {
                    0.0
                } else {
                    k * ln_one_minus_exp_unchecked(2.0 * k * l)
                }
            },
            kappa1,
            &spec,
        )
        .unwrap()
        .value
    }

    #[test]
    fn inner_integral_examples() {
        assert!((inner_integral(0.0, 1.0).unwrap() + ZETA_3 / 4.0).abs() < 1e-14);
        assert!((inner_integral(0.0, 1.0).unwrap() + 0.300_514_2).abs() < 1e-7);
        assert_eq!(inner_integral(1e6, 1.0).unwrap(), 0.0);
        assert!(inner_integral(30.0, 1.0).unwrap().abs() < 1e-24);
        let v = inner_integral(1.0, 1.0).unwrap();
        assert!((v - raw_inner(1.0, 1.0)).abs() < 1e-12);
        // Extended-precision quadrature of κ·log(1 − e^{−2κ}) over [1, ∞).
        assert!((v + 0.104_536_835_857_836_08).abs() < 1e-14, "{v}");
        assert!(inner_integral(-1.0, 1.0).is_err());
        assert!(inner_integral(1.0, 0.0).is_err());
    }

    #[test]
    fn inner_integral_matches_raw_quadrature() {
        for &k in &[0.0, 0.05, 0.3, 0.5, 1.0, 2.0, 5.0] {
            for &l in &[0.5, 1.0, 2.0] {
                let a = inner_integral(k, l).unwrap();
                let b = raw_inner(k, l);
                assert!((a - b).abs() < 1e-10, "k={k} l={l}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn integrand_points_are_nonpositive() {
        let m = DispersionModel::cauchy(1.3, 1e-3).unwrap();
        for i in 0..50 {
            let p = integrand_point(&m, i as f64 * 0.3, 1.0).unwrap();
            assert!(p.kappa1 >= 0.0);
            assert!(p.inner_value <= 0.0);
        }
    }

    #[test]
    fn e0_matches_closed_form() {
        let q = QuadratureSpec::default();
        for &(l, n0) in &[(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (0.5, 3.0)] {
            let e = e0_lifshitz(l, n0, &q).unwrap();
            let exact = e0_analytic(l, n0).unwrap();
            assert!(((e.value - exact) / exact).abs() < 1e-10, "l={l} n0={n0}");
            assert!(e.error_estimate < 1e-10 * exact.abs());
        }
        assert!((e0_lifshitz(1.0, 1.0, &q).unwrap().value + 0.013_707_78).abs() < 1e-8);
        assert!((e0_lifshitz(1.0, 2.0, &q).unwrap().value + 0.006_853_89).abs() < 1e-8);
        assert!((e0_lifshitz(2.0, 1.0, &q).unwrap().value + 0.001_713_47).abs() < 1e-8);
    }

    #[test]
    fn delta_e_matches_closed_form() {
        let q = QuadratureSpec::default();
        for &(l, n0, n1) in &[(1.0, 1.0, 1.0), (1.0, 1.0, 1e-4), (0.7, 1.5, 1e-3), (3.0, 2.0, 0.2)] {
            let m = DispersionModel::cauchy(n0, n1).unwrap();
            let d = delta_e_lifshitz_first_order(l, &m, &q).unwrap();
            let exact = delta_e_analytic(l, n0, n1).unwrap();
            assert!(((d.value - exact) / exact).abs() < 1e-10, "{d:?} vs {exact}");
        }
        let m = DispersionModel::cauchy(1.0, 0.0).unwrap();
        assert_eq!(delta_e_lifshitz_first_order(1.0, &m, &q).unwrap().value, 0.0);
        let t = crate::dispersion::IndexTable::new(vec![(0.0, 1.2)]).unwrap();
        assert!(delta_e_lifshitz_first_order(1.0, &DispersionModel::tabulated(t), &q).is_err());
    }

    #[test]
    fn full_mode_reduces_to_e0_without_dispersion() {
        let q = QuadratureSpec::default();
        let s = Scenario::cauchy(1.0, 1.0, 0.0).unwrap();
        let e = total_energy_lifshitz(&s, &q, LifshitzMode::FullKappa1).unwrap();
        assert_eq!(e.delta_e, 0.0);
        assert!((e.total + 0.013_707_78).abs() < 1e-8);
        assert!(e.warnings.is_empty());
    }

    #[test]
    fn full_minus_split_is_second_order() {
        // Second-order term: (1/2π²)∫ dξ (n1ξ³)²/2 · ∂²_κ I(κ, L) at κ = ξ, L = 1,
        // which sums to −(135/4)ζ(8)/(4π²) · n1².
        let zeta8 = PI.powi(8) / 9450.0;
        let coeff = -33.75 * zeta8 / (4.0 * PI * PI);
        let q = QuadratureSpec::default();
        for &n1 in &[1e-4, 2e-4] {
            let s = Scenario::cauchy(1.0, 1.0, n1).unwrap();
            let full = total_energy_lifshitz(&s, &q, LifshitzMode::FullKappa1).unwrap();
            let split = total_energy_lifshitz(&s, &q, LifshitzMode::FirstOrderSplit).unwrap();
            let diff = full.total - split.total;
            let expected = coeff * n1 * n1;
            // Third-order terms account for the remaining ~0.6% per 1e-4 of n1.
            assert!(((diff - expected) / expected).abs() < 2e-2, "n1={n1}: {diff:e} vs {expected:e}");
            assert!(full.warnings.is_empty());
        }
    }

    #[test]
    fn split_total_example() {
        let q = QuadratureSpec::default();
        let s = Scenario::cauchy(1.0, 1.0, 1e-4).unwrap();
        let e = total_energy_lifshitz(&s, &q, LifshitzMode::FirstOrderSplit).unwrap();
        assert!((e.total + 0.013_711_65).abs() < 1e-8, "{}", e.total);
        assert_eq!(e.method, Method::Lifshitz);
        assert_eq!(e.total, e.e0 + e.delta_e + e.e_surface);
    }

    #[test]
    fn clamping_is_reported() {
        let q = QuadratureSpec::default();
        let s = Scenario::cauchy(1.0, 1.0, 0.05).unwrap();
        let e = total_energy_lifshitz(&s, &q, LifshitzMode::FullKappa1).unwrap();
        assert!(e.warnings.iter().any(|w| matches!(w, Warning::KappaClamped { .. })));
    }

    #[test]
    fn split_mode_rejects_tables() {
        let t = crate::dispersion::IndexTable::new(vec![(0.0, 1.5), (5.0, 1.4)]).unwrap();
        let s = Scenario::new(1.0, DispersionModel::tabulated(t), None).unwrap();
        let q = QuadratureSpec::default();
        assert!(matches!(
            total_energy_lifshitz(&s, &q, LifshitzMode::FirstOrderSplit),
            Err(Error::UnsupportedModel { .. })
        ));
        let e = total_energy_lifshitz(&s, &q, LifshitzMode::FullKappa1).unwrap();
        assert!(e.total < 0.0 && e.total.is_finite());
    }

    #[test]
    fn flat_table_matches_constant_index() {
        let q = QuadratureSpec::default();
        let t = crate::dispersion::IndexTable::new(vec![(0.0, 1.5), (3.0, 1.5), (9.0, 1.5)]).unwrap();
        let s = Scenario::new(1.3, DispersionModel::tabulated(t), None).unwrap();
        let e = total_energy_lifshitz(&s, &q, LifshitzMode::FullKappa1).unwrap();
        let exact = e0_analytic(1.3, 1.5).unwrap();
        assert!(((e.total - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn force_examples() {
        let q = QuadratureSpec::default();
        let f = force_lifshitz(&Scenario::cauchy(1.0, 1.0, 0.0).unwrap(), &q, 1e-4).unwrap();
        assert!(((f.value + PI * PI / 240.0) / (PI * PI / 240.0)).abs() < 1e-6);
        let f = force_lifshitz(&Scenario::cauchy(1.0, 2.0, 0.0).unwrap(), &q, 1e-4).unwrap();
        assert!((f.value + 0.020_561_7).abs() < 1e-7);
        let s = Scenario::cauchy(1.0, 1.0, 1e-3).unwrap();
        let f = force_lifshitz(&s, &q, 1e-4).unwrap();
        let fa = crate::closed_form::force_analytic(&s).unwrap();
        assert!(((f.value - fa) / fa).abs() < 1e-6);
        assert!((f.value - fa).abs() <= f.error_estimate);
        assert!(force_lifshitz(&s, &q, 1e-1).is_err());
        assert!(force_lifshitz(&s, &q, 1e-9).is_err());
    }

    #[test]
    fn subdivision_exhaustion_surfaces_as_error() {
        let q = QuadratureSpec {
            rel_tol: 1e-300,
            abs_tol: 1e-300,
            max_subdivisions: 10,
            ..QuadratureSpec::default()
        };
        assert!(matches!(e0_lifshitz(1.0, 1.0, &q), Err(Error::Quadrature { .. })));
    }
}
