use std::path::Path;

use serde::de::DeserializeOwned;

use crate::args::{MethodArgs, OutputArgs, ScenarioArgs, SweepArgs, ValidateArgs, CONFIG_KEYS};
use crate::error::CliError;

#[derive(Debug, Default)]
pub struct FileConfig {
    pub scenario: ScenarioArgs,
    pub method: MethodArgs,
    pub output: OutputArgs,
    pub sweep: SweepArgs,
    pub validate: ValidateArgs,
}

fn section<T: DeserializeOwned>(table: &toml::Table, path: &Path) -> Result<T, CliError> {
    toml::Value::Table(table.clone())
        .try_into()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str, path: &Path) -> Result<FileConfig, CliError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if let Some(key) = table.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("{}: unknown key `{key}`", path.display())));
    }
    Ok(FileConfig {
        scenario: section(&table, path)?,
        method: section(&table, path)?,
        output: section(&table, path)?,
        sweep: section(&table, path)?,
        validate: section(&table, path)?,
    })
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse(&text, p)
        }
    }
}
