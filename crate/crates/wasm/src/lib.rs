//! Browser bindings for the interactive demo in `www/`.
//!
//! Each exported function returns a flat `Float64Array`; the layout is given
//! in its doc comment. The numeric work happens in plain Rust functions so it
//! can be tested natively.

use casimir_core::closed_form::{dispersive_ratio, total_energy_analytic};
use casimir_core::crosscheck::{regularization_witness, WITNESS_CUTOFFS};
use casimir_core::lifshitz::total_energy_lifshitz;
use casimir_core::special_functions::{cutoff_zeta_demo, zeta_value};
use casimir_core::{DispersionModel, LifshitzMode, QuadratureSpec, Result, Scenario};
use wasm_bindgen::prelude::*;

/// Stride of one row returned by [`energy_curve`].
pub const CURVE_STRIDE: usize = 4;

/// `points` log-spaced separations in `[l_min, l_max]`, each as
/// `[L, analytic total, Lifshitz total, beyond-validity flag (0 or 1)]`.
pub fn energy_curve_rows(n0: f64, n1: f64, l_min: f64, l_max: f64, points: usize) -> Result<Vec<f64>> {
    let points = points.clamp(2, 400);
    let quad = QuadratureSpec::default().with_rel_tol(1e-8);
    let base = Scenario::cauchy(l_min, n0, n1)?;
    let (a, b) = (l_min.ln(), l_max.ln());
    let mut out = Vec::with_capacity(points * CURVE_STRIDE);
    for i in 0..points {
        let l = match i {
            0 => l_min,
            _ if i + 1 == points => l_max,
            _ => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
        };
        let s = base.with_separation(l)?;
        let analytic = total_energy_analytic(&s)?;
        let lifshitz = total_energy_lifshitz(&s, &quad, LifshitzMode::FirstOrderSplit)?;
        out.extend([l, analytic.total, lifshitz.total, f64::from(analytic.is_flagged() as u8)]);
    }
    Ok(out)
}

/// `[ΔE/E₀ at L, bound 1/(14 n0³), minimum separation 2π√n1]`.
pub fn validity_numbers(l: f64, n0: f64, n1: f64) -> Result<Vec<f64>> {
    let report = DispersionModel::cauchy(n0, n1)?.validity()?;
    Ok(vec![dispersive_ratio(l, n0, n1)?, report.ratio_bound, report.min_separation])
}

/// Regularised cutoff sums `Σ nᵖ e^{-nδ} − p!/δ^{p+1}` at the standard
/// cutoffs, as `[δ₁, S₁, δ₂, S₂, δ₃, S₃, extrapolated, ζ(−p)]`.
pub fn zeta_witness_values(p: u32) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * WITNESS_CUTOFFS.len() + 2);
    for &d in &WITNESS_CUTOFFS {
        out.extend([d, cutoff_zeta_demo(p, d)?]);
    }
    out.push(regularization_witness(p, &WITNESS_CUTOFFS)?);
    out.push(zeta_value(-(p as i32))?);
    Ok(out)
}

fn js(r: Result<Vec<f64>>) -> std::result::Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn energy_curve(n0: f64, n1: f64, l_min: f64, l_max: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(energy_curve_rows(n0, n1, l_min, l_max, points))
}

#[wasm_bindgen]
pub fn validity(l: f64, n0: f64, n1: f64) -> std::result::Result<Vec<f64>, JsError> {
    js(validity_numbers(l, n0, n1))
}

#[wasm_bindgen]
pub fn zeta_witness(p: u32) -> std::result::Result<Vec<f64>, JsError> {
    js(zeta_witness_values(p))
}
