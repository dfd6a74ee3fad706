//! Casimir energy and force per unit area between ideal metal plates with a
//! dispersive dielectric in between.
//!
//! Two independent routes are provided: zeta-regularised closed forms
//! ([`closed_form`]) and numeric evaluation of the Lifshitz integral
//! ([`lifshitz`]). [`crosscheck`] compares them. Natural units (ħ = c = 1)
//! are used everywhere in this crate.
//!
//! ```
//! use casimir_core::closed_form::total_energy_analytic;
//! use casimir_core::crosscheck::compare_methods;
//! use casimir_core::{QuadratureSpec, Scenario};
//!
//! let s = Scenario::cauchy(1.0, 1.5, 1e-3)?;
//! let analytic = total_energy_analytic(&s)?;
//! let report = compare_methods(&s, &QuadratureSpec::default(), 1e-8)?;
//! assert!(report.pass);
//! assert!((analytic.total - report.lifshitz.total).abs() < 1e-8 * analytic.total.abs());
//! # Ok::<(), casimir_core::Error>(())
//! ```

mod dd;

pub mod closed_form;
pub mod crosscheck;
pub mod dispersion;
pub mod error;
pub mod lifshitz;
pub mod quadrature;
pub mod special_functions;

pub use closed_form::{EnergyBreakdown, Method, Scenario, SurfaceTerm, Warning};
pub use dispersion::{DispersionModel, IndexTable, ValidityReport};
pub use error::{Error, Result};
pub use lifshitz::{Estimate, LifshitzMode};
pub use quadrature::QuadratureSpec;
