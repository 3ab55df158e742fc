pub mod dispersion;
pub mod effective;
pub mod profile;
pub mod scan;
pub mod validate;

use std::path::PathBuf;

use hybridlattice::lattice::{lattice_g, LatticeParams};
use hybridlattice::{load_config, Config};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::ManifestContext;
use crate::Format;

pub const DEFAULT_SITES: usize = 64;

pub struct Context {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: u64,
}

impl Context {
    pub fn load(&self) -> CliResult<Config> {
        let path = self.config.as_ref().ok_or_else(|| CliError::Usage("--config <path> is required".into()))?;
        Ok(load_config(path)?)
    }

    pub fn load_optional(&self) -> CliResult<Option<Config>> {
        self.config.as_ref().map(|_| self.load()).transpose()
    }

    pub fn manifest(
        &self,
        command: &'static str,
        config: Option<&Config>,
        lattice: Option<&LatticeParams>,
        arguments: Value,
    ) -> ManifestContext {
        ManifestContext {
            command,
            config_path: self.config.clone(),
            resolved_config: config.map(|c| serde_json::from_str(&c.to_json()).expect("config json")),
            lattice_params: lattice.map(|p| serde_json::to_value(p).expect("params json")),
            arguments: with_globals(arguments, self),
        }
    }

    /// Reports are JSON only.
    pub fn require_json(&self, command: &str) -> CliResult<()> {
        match self.format {
            Some(Format::Csv) => Err(CliError::Usage(format!("{command} writes a JSON report; --format csv is not supported"))),
            _ => Ok(()),
        }
    }

    pub fn format_or_csv(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }
}

fn with_globals(mut arguments: Value, ctx: &Context) -> Value {
    if let Value::Object(map) = &mut arguments {
        let format = ctx.format.map(|f| Value::from(format!("{f:?}").to_lowercase())).unwrap_or(Value::Null);
        map.insert("format".into(), format);
        map.insert("seed".into(), Value::from(ctx.seed));
        map.insert("out".into(), ctx.out.as_ref().map(|p| Value::from(p.display().to_string())).unwrap_or(Value::Null));
    }
    arguments
}

/// Uniform-array parameters implied by a config: the `lattice` section wins,
/// otherwise ν_s of ensemble 0 and g from J₁₁ and qubit 0's detuning.
pub fn lattice_params(config: &Config, sites: Option<usize>) -> CliResult<LatticeParams> {
    let chain = &config.chain;
    let nu_s = match config.lattice.nu_s {
        Some(nu) => nu,
        None => chain.ensemble_frequencies()?[0],
    };
    let g = match config.lattice.g {
        Some(g) => g,
        None => lattice_g(chain.coupling(0, 0), chain.qubit_frequencies()[0], nu_s)?,
    };
    let sites = sites.or(config.lattice.sites).unwrap_or(DEFAULT_SITES);
    Ok(LatticeParams::new(nu_s, g, sites)?)
}
