use casimir_core::closed_form::{force_analytic, total_energy_analytic};
use casimir_core::crosscheck::{run_validation, ValidationCheck};
use casimir_core::lifshitz::{force_lifshitz_with_mode, total_energy_lifshitz};
use casimir_core::{DispersionModel, EnergyBreakdown, IndexTable, LifshitzMode, Method, QuadratureSpec, Scenario, SurfaceTerm};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{MethodArgs, MethodChoice, ModeChoice, OutputArgs, Scale, ScenarioArgs, SweepArgs, ValidateArgs, Variable};
use crate::error::CliError;
use crate::units::UnitSystem;

/// Relative step of the central difference behind the Lifshitz force.
pub const FORCE_STEP: f64 = 1e-4;

pub const DEFAULT_VALIDATE_TOL: f64 = 1e-7;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Scenario fields other than the separation, resolved once per run.
#[derive(Debug, Clone)]
pub struct Medium {
    pub model: DispersionModel,
    pub surface: Option<SurfaceTerm>,
}

impl Medium {
    pub fn from_args(args: &ScenarioArgs) -> Result<Self, CliError> {
        let model = match &args.ns_table {
            Some(path) => {
                if args.n0.is_some() || args.n1.is_some() {
                    return Err(usage("--ns-table cannot be combined with --n0/--n1"));
                }
                DispersionModel::tabulated(IndexTable::from_csv_path(path)?)
            }
            None => {
                let n0 = args.n0.ok_or_else(|| usage("--n0 is required (or --ns-table)"))?;
                DispersionModel::cauchy(n0, args.n1.unwrap_or(0.0))?
            }
        };
        let surface = args.cs.map(SurfaceTerm::new).transpose()?;
        Ok(Medium { model, surface })
    }

    pub fn scenario(&self, separation: f64) -> Result<Scenario, CliError> {
        Ok(Scenario::new(separation, self.model.clone(), self.surface)?)
    }

    fn with_n1(&self, n1: f64) -> Result<Self, CliError> {
        let (n0, _) = self
            .model
            .cauchy_coefficients()
            .ok_or_else(|| usage("sweeping n1 needs a Cauchy model (--n0), not --ns-table"))?;
        Ok(Medium {
            model: DispersionModel::cauchy(n0, n1)?,
            surface: self.surface,
        })
    }
}

/// Methods and quadrature settings, resolved against the medium.
#[derive(Debug, Clone)]
pub struct Plan {
    pub methods: Vec<Method>,
    pub mode: LifshitzMode,
    pub quad: QuadratureSpec,
}

impl Plan {
    pub fn from_args(args: &MethodArgs, model: &DispersionModel) -> Result<Self, CliError> {
        let tabulated = model.cauchy_coefficients().is_none();
        let choice = args.method.unwrap_or(if tabulated { MethodChoice::Lifshitz } else { MethodChoice::Both });
        let methods = match choice {
            MethodChoice::Analytic => vec![Method::Analytic],
            MethodChoice::Lifshitz => vec![Method::Lifshitz],
            MethodChoice::Both => vec![Method::Analytic, Method::Lifshitz],
        };
        if tabulated && methods.contains(&Method::Analytic) {
            return Err(usage("the analytic method needs a Cauchy model; use --method lifshitz with --ns-table"));
        }
        let mode = match args.mode {
            Some(ModeChoice::Split) => LifshitzMode::FirstOrderSplit,
            Some(ModeChoice::Full) => LifshitzMode::FullKappa1,
            None => LifshitzMode::natural_for(model),
        };
        let mut quad = QuadratureSpec::default();
        if let Some(tol) = args.rel_tol {
            quad = quad.with_rel_tol(tol);
        }
        quad.validate()?;
        Ok(Plan { methods, mode, quad })
    }
}

/// One method's result at one scenario, in natural units.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub breakdown: EnergyBreakdown,
    pub force: f64,
    pub force_error: f64,
}

pub fn evaluate(scenario: &Scenario, plan: &Plan) -> Result<Vec<Evaluation>, CliError> {
    plan.methods
        .iter()
        .map(|method| match method {
            Method::Analytic => Ok(Evaluation {
                breakdown: total_energy_analytic(scenario)?,
                force: force_analytic(scenario)?,
                force_error: 0.0,
            }),
            Method::Lifshitz => {
                let breakdown = total_energy_lifshitz(scenario, &plan.quad, plan.mode)?;
                let force = force_lifshitz_with_mode(scenario, &plan.quad, FORCE_STEP, plan.mode)?;
                Ok(Evaluation {
                    breakdown,
                    force: force.value,
                    force_error: force.error_estimate,
                })
            }
        })
        .collect()
}

pub fn unit_system(args: &OutputArgs) -> Result<UnitSystem, CliError> {
    match (args.si, args.length_unit) {
        (false, _) => Ok(UnitSystem::Natural),
        (true, None) => Err(usage("--si requires --length-unit <METRES>")),
        (true, Some(m)) => UnitSystem::si(m).map_err(CliError::Usage),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub variable: Variable,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Grid {
    pub fn from_args(args: &SweepArgs) -> Result<Self, CliError> {
        let variable = args.variable.unwrap_or(Variable::Separation);
        let min = args.min.ok_or_else(|| usage("--min is required"))?;
        let max = args.max.ok_or_else(|| usage("--max is required"))?;
        let points = args.points.ok_or_else(|| usage("--points is required"))?;
        let scale = args.scale.unwrap_or(Scale::Linear);
        if points < 2 {
            return Err(usage(format!("--points must be at least 2, got {points}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(usage(format!("need finite --min < --max, got [{min}, {max}]")));
        }
        if scale == Scale::Log && min <= 0.0 {
            return Err(usage("a log grid needs --min > 0"));
        }
        match variable {
            Variable::Separation if min <= 0.0 => return Err(usage("separations must be positive")),
            Variable::N1 if min < 0.0 => return Err(usage("n1 must be non-negative")),
            _ => {}
        }
        Ok(Grid {
            variable,
            min,
            max,
            points,
            scale,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i + 1 == self.points {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

/// Evaluates every grid point, in parallel, keeping grid order.
pub fn sweep(
    grid: &Grid,
    medium: &Medium,
    separation: Option<f64>,
    plan: &Plan,
) -> Result<Vec<(f64, Vec<Evaluation>)>, CliError> {
    let scenario_at = |v: f64| -> Result<Scenario, CliError> {
        match grid.variable {
            Variable::Separation => medium.scenario(v),
            Variable::N1 => {
                let l = separation.ok_or_else(|| usage("--L is required when sweeping n1"))?;
                medium.with_n1(v)?.scenario(l)
            }
        }
    };
    // Fail fast on configuration errors before spawning work.
    scenario_at(grid.min)?;
    grid.values()
        .into_par_iter()
        .map(|v| {
            let evals = evaluate(&scenario_at(v)?, plan)?;
            Ok((v, evals))
        })
        .collect()
}

pub fn validate(args: &ValidateArgs, method: &MethodArgs) -> Result<Vec<ValidationCheck>, CliError> {
    let mut quad = QuadratureSpec::default();
    if let Some(tol) = method.rel_tol {
        quad = quad.with_rel_tol(tol);
    }
    Ok(run_validation(args.tol.unwrap_or(DEFAULT_VALIDATE_TOL), &quad)?)
}
