mod args;
mod commands;
mod config;
mod error;
mod output;
mod units;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format, Merge, Variable};
use commands::{Grid, Medium, Plan};
use error::CliError;
use output::{ComputeReport, Record, SweepReport, SweepScenario};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Compute {
            scenario,
            method,
            output,
        } => {
            let scenario = scenario.merge(file.scenario);
            let method = method.merge(file.method);
            let output = output.merge(file.output);
            let units = commands::unit_system(&output)?;

            let medium = Medium::from_args(&scenario)?;
            let l = scenario.separation.ok_or_else(|| CliError::Usage("--L is required".into()))?;
            let scenario = medium.scenario(l)?;
            let plan = Plan::from_args(&method, &scenario.model)?;
            let evals = commands::evaluate(&scenario, &plan)?;

            let warnings: Vec<_> = evals.iter().flat_map(|e| e.breakdown.warnings.iter().copied()).collect();
            output::report_warnings(&format!("L = {l}"), &warnings);

            let bytes = match output.format.unwrap_or(Format::Json) {
                Format::Csv => {
                    let records: Vec<_> = evals.iter().map(|e| Record::new(Some(l), e, units)).collect();
                    output::write_csv("L", &records)?
                }
                Format::Json => output::to_json(&ComputeReport {
                    scenario: &scenario,
                    units: units.into(),
                    results: evals.iter().map(|e| Record::new(None, e, units)).collect(),
                })?,
            };
            output::emit(&bytes, output.out.as_deref())
        }
        Command::Sweep {
            sweep,
            scenario,
            method,
            output,
        } => {
            let sweep = sweep.merge(file.sweep);
            let scenario = scenario.merge(file.scenario);
            let method = method.merge(file.method);
            let output = output.merge(file.output);
            let units = commands::unit_system(&output)?;

            let grid = Grid::from_args(&sweep)?;
            let medium = Medium::from_args(&scenario)?;
            let plan = Plan::from_args(&method, &medium.model)?;
            let points = commands::sweep(&grid, &medium, scenario.separation, &plan)?;

            let name = match grid.variable {
                Variable::Separation => "L",
                Variable::N1 => "n1",
            };
            let mut records = Vec::new();
            for (value, evals) in &points {
                let warnings: Vec<_> = evals.iter().flat_map(|e| e.breakdown.warnings.iter().copied()).collect();
                output::report_warnings(&format!("{name} = {value}"), &warnings);
                records.extend(evals.iter().map(|e| Record::new(Some(*value), e, units)));
            }

            let bytes = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => output::write_csv(name, &records)?,
                Format::Json => output::to_json(&SweepReport {
                    scenario: SweepScenario {
                        separation: scenario.separation,
                        model: &medium.model,
                        surface: medium.surface,
                    },
                    sweep: grid,
                    units: units.into(),
                    rows: records,
                })?,
            };
            output::emit(&bytes, output.out.as_deref())
        }
        Command::Validate {
            validate,
            method,
            output,
        } => {
            let validate = validate.merge(file.validate);
            let method = method.merge(file.method);
            let output = output.merge(file.output);

            let checks = commands::validate(&validate, &method)?;
            let bytes = match output.format {
                Some(Format::Json) => output::to_json(&checks)?,
                Some(Format::Csv) => return Err(CliError::Usage("validate supports --format json only".into())),
                None => output::validation_lines(&checks),
            };
            output::emit(&bytes, output.out.as_deref())?;
            match checks.iter().filter(|c| !c.pass).count() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
    }
}
