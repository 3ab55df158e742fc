//! Output files and their run manifests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// One file's worth of output. `path = None` goes to stdout.
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub contents: String,
}

/// Provenance written next to every output file as `<file>.manifest.json`.
#[derive(Serialize)]
pub struct RunManifest<'a> {
    pub command: &'a str,
    pub tool_version: &'static str,
    pub timestamp: String,
    pub config_path: Option<String>,
    pub resolved_config: Option<Value>,
    pub lattice_params: Option<Value>,
    pub arguments: Value,
    pub output: String,
    pub companions: Vec<String>,
}

pub struct ManifestContext {
    pub command: &'static str,
    pub config_path: Option<PathBuf>,
    pub resolved_config: Option<Value>,
    pub lattice_params: Option<Value>,
    pub arguments: Value,
}

pub fn manifest_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Sibling path with `extension` replacing the extension, e.g. `run.csv` → `run.json`.
pub fn companion_path(path: &Path, extension: &str) -> PathBuf {
    let candidate = path.with_extension(extension);
    if candidate == path {
        path.with_extension(format!("report.{extension}"))
    } else {
        candidate
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| CliError::Io { path: parent.to_owned(), source })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn emit(artifacts: &[Artifact], ctx: &ManifestContext) -> CliResult<()> {
    let files: Vec<String> = artifacts.iter().filter_map(|a| a.path.as_ref()).map(|p| p.display().to_string()).collect();
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    for artifact in artifacts {
        match &artifact.path {
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(artifact.contents.as_bytes())
                    .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            }
            Some(path) => {
                write_file(path, &artifact.contents)?;
                let output = path.display().to_string();
                let manifest = RunManifest {
                    command: ctx.command,
                    tool_version: env!("CARGO_PKG_VERSION"),
                    timestamp: timestamp.clone(),
                    config_path: ctx.config_path.as_ref().map(|p| p.display().to_string()),
                    resolved_config: ctx.resolved_config.clone(),
                    lattice_params: ctx.lattice_params.clone(),
                    arguments: ctx.arguments.clone(),
                    companions: files.iter().filter(|f| **f != output).cloned().collect(),
                    output,
                };
                write_file(&manifest_path(path), &to_json(&manifest))?;
            }
        }
    }
    Ok(())
}

/// CSV text from a header and rows of already formatted cells.
pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Empty cell for absent values.
pub fn cell(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}
