//! Batch front end: reads a JSON run configuration, evaluates one task and
//! writes a CSV or JSON table.
//!
//! Exit codes: 0 success, 2 configuration error, 3 domain error from the
//! physics modules, 4 I/O error.

pub mod config;
pub mod output;
pub mod tasks;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub use config::{Format, RunConfig, Task};
pub use output::{Cell, Report};
pub use tasks::execute;

/// Machine-readable description of [`RunConfig`], units and exit codes.
pub const SCHEMA: &str = include_str!("schema.json");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Invocation {
    pub task: Option<Task>,
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Renders the result of `config` exactly as the binary would write it.
pub fn render_config(config: &RunConfig, raw: &[u8], format: Format) -> Result<String, CliError> {
    let report = execute(config)?;
    let meta = output::Metadata {
        version: env!("CARGO_PKG_VERSION").to_owned(),
        task: config.task.as_str().to_owned(),
        config_sha256: sha256_hex(raw),
        seed: config.seed,
    };
    Ok(output::render(&report, &meta, format))
}

pub fn load_config(path: &Path) -> Result<(RunConfig, Vec<u8>), CliError> {
    let raw = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&raw)
        .map_err(|e| CliError::Config(format!("{}: not UTF-8: {e}", path.display())))?;
    let config = RunConfig::from_json(text)
        .map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })?;
    Ok((config, raw))
}

/// Loads, evaluates and writes one run.
pub fn run(inv: &Invocation) -> Result<(), CliError> {
    let (config, raw) = load_config(&inv.config)?;
    if let Some(task) = inv.task {
        if task != config.task {
            return Err(CliError::Config(format!(
                "command asks for `{}` but the config describes `{}`",
                task.as_str(),
                config.task.as_str()
            )));
        }
    }
    let format = inv.format.unwrap_or(config.output.format);
    let text = match inv.threads {
        Some(0) => return Err(CliError::Config("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?
            .install(|| render_config(&config, &raw, format))?,
        None => render_config(&config, &raw, format)?,
    };
    let dest = inv
        .out
        .clone()
        .or_else(|| config.output.path.as_ref().map(PathBuf::from));
    match dest {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn schema_is_json() {
        let v: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert!(v["properties"]["task"].is_object());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::Model(crate::Error::Domain(String::new())).exit_code(), 3);
        assert_eq!(CliError::Io(String::new()).exit_code(), 4);
    }
}
