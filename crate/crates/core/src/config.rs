//! JSON configuration files.
//!
//! Every numeric key carries its unit as a suffix. The couplings entry is
//! either an explicit `qubits × ensembles` matrix in GHz or the string
//! `"from-geometry"`, in which case each allowed J_ij is estimated from the
//! loop geometry and crystal (see [`crate::magnetics::collective_coupling`]).
//!
//! ```json
//! {
//!   "qubits": [{ "persistent_current_uA": 0.9, "loop_a_um": 2, "loop_b_um": 50,
//!                "tunneling_energy_GHz": 6 }],
//!   "ensembles": [{ "nu_s_GHz": 1.0, "density_per_um3": 3e6, "crystal_width_L_um": 0.5 },
//!                 { "external_field_T": 0.0667, "density_per_um3": 3e6, "crystal_width_L_um": 0.5 }],
//!   "couplings": "from-geometry"
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnetics::collective_coupling;
use crate::params::{ChainSpec, FluxQubitSpec, PhysicalConstants, SpinEnsembleSpec};

pub const FROM_GEOMETRY: &str = "from-geometry";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConstants {
    #[serde(rename = "muB_over_h_GHz_per_T", default, skip_serializing_if = "Option::is_none")]
    pub mu_b_over_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_e: Option<f64>,
    #[serde(rename = "D_default_GHz", default, skip_serializing_if = "Option::is_none")]
    pub zero_field_splitting: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQubit {
    #[serde(rename = "persistent_current_uA")]
    pub persistent_current: f64,
    #[serde(rename = "loop_a_um")]
    pub loop_a: f64,
    #[serde(rename = "loop_b_um")]
    pub loop_b: f64,
    #[serde(rename = "tunneling_energy_GHz")]
    pub tunneling_energy: f64,
    #[serde(rename = "energy_bias_GHz", default, skip_serializing_if = "Option::is_none")]
    pub energy_bias: Option<f64>,
}

/// An ensemble entry. Exactly one of `external_field_T` and `nu_s_GHz` must
/// be given; `nu_s_GHz` is converted to the field that produces it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEnsemble {
    #[serde(rename = "zero_field_splitting_GHz", default, skip_serializing_if = "Option::is_none")]
    pub zero_field_splitting: Option<f64>,
    #[serde(rename = "external_field_T", default, skip_serializing_if = "Option::is_none")]
    pub external_field: Option<f64>,
    #[serde(rename = "nu_s_GHz", default, skip_serializing_if = "Option::is_none")]
    pub nu_s: Option<f64>,
    #[serde(rename = "density_per_um3")]
    pub density: f64,
    #[serde(rename = "crystal_height_um", default, skip_serializing_if = "Option::is_none")]
    pub crystal_height: Option<f64>,
    #[serde(rename = "crystal_width_L_um")]
    pub crystal_width: f64,
    /// Defaults to the long side of the adjoining qubit loop.
    #[serde(rename = "crystal_length_um", default, skip_serializing_if = "Option::is_none")]
    pub crystal_length: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCouplings {
    Matrix(Vec<Vec<f64>>),
    Mode(String),
}

/// Optional overrides of the chain-derived lattice parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeOverrides {
    #[serde(rename = "nu_s_GHz", default, skip_serializing_if = "Option::is_none")]
    pub nu_s: Option<f64>,
    #[serde(rename = "g_GHz", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sites: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<RawConstants>,
    pub qubits: Vec<RawQubit>,
    pub ensembles: Vec<RawEnsemble>,
    pub couplings: RawCouplings,
    #[serde(rename = "mutual_inductance_coupling_GHz", default, skip_serializing_if = "Option::is_none")]
    pub mutual_inductance_coupling: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeOverrides>,
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub chain: ChainSpec,
    pub lattice: LatticeOverrides,
}

/// Reads and validates the chain description in `path`.
pub fn parse_config(path: impl AsRef<Path>) -> Result<ChainSpec> {
    load_config(path).map(|c| c.chain)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Config> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config_str(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_config_str(text: &str) -> Result<Config> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    resolve(raw)
}

pub fn resolve(raw: RawConfig) -> Result<Config> {
    let defaults = PhysicalConstants::default();
    let rc = raw.constants.unwrap_or_default();
    let constants = PhysicalConstants {
        mu0: PhysicalConstants::MU0,
        mu_b_over_h: rc.mu_b_over_h.unwrap_or(defaults.mu_b_over_h),
        g_e: rc.g_e.unwrap_or(defaults.g_e),
        zero_field_splitting: rc.zero_field_splitting.unwrap_or(defaults.zero_field_splitting),
    };
    constants.validate()?;

    let qubits: Vec<FluxQubitSpec> = raw
        .qubits
        .iter()
        .map(|q| FluxQubitSpec {
            persistent_current: q.persistent_current,
            loop_a: q.loop_a,
            loop_b: q.loop_b,
            tunneling_energy: q.tunneling_energy,
            energy_bias: q.energy_bias.unwrap_or(0.0),
        })
        .collect();
    if qubits.is_empty() {
        return Err(Error::Config("qubits must contain at least one flux qubit".into()));
    }

    let ensembles = raw
        .ensembles
        .iter()
        .enumerate()
        .map(|(j, e)| resolve_ensemble(j, e, &qubits, &constants))
        .collect::<Result<Vec<_>>>()?;

    let mut chain = ChainSpec {
        constants,
        qubits,
        ensembles,
        couplings: Vec::new(),
        mutual_inductance_coupling: raw.mutual_inductance_coupling.unwrap_or(0.0),
    };
    chain.couplings = match raw.couplings {
        RawCouplings::Matrix(m) => m,
        RawCouplings::Mode(mode) if mode == FROM_GEOMETRY => {
            // shape must be right before indexing into it
            if chain.ensembles.len() != chain.qubits.len() + 1 {
                chain.validate()?;
            }
            couplings_from_geometry(&chain)?
        }
        RawCouplings::Mode(other) => {
            return Err(Error::Config(format!(
                "couplings must be a matrix or \"{FROM_GEOMETRY}\" (got \"{other}\")"
            )))
        }
    };
    chain.validate()?;

    let lattice = raw.lattice.unwrap_or_default();
    if let Some(nu) = lattice.nu_s {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::Config(format!("lattice.nu_s_GHz must be positive (got {nu})")));
        }
    }
    if let Some(g) = lattice.g {
        if !(g >= 0.0 && g.is_finite()) {
            return Err(Error::Config(format!("lattice.g_GHz must be non-negative (got {g})")));
        }
    }
    if let Some(n) = lattice.sites {
        if n < 2 {
            return Err(Error::Config(format!("lattice.sites must be at least 2 (got {n})")));
        }
    }
    Ok(Config { chain, lattice })
}

fn resolve_ensemble(
    j: usize,
    e: &RawEnsemble,
    qubits: &[FluxQubitSpec],
    constants: &PhysicalConstants,
) -> Result<SpinEnsembleSpec> {
    let d = e.zero_field_splitting.unwrap_or(constants.zero_field_splitting);
    let external_field = match (e.external_field, e.nu_s) {
        (Some(b), None) => b,
        (None, Some(nu)) => (d - nu) / constants.zeeman_slope(),
        (Some(_), Some(_)) => {
            return Err(Error::Config(format!(
                "ensembles[{j}]: give either external_field_T or nu_s_GHz, not both"
            )))
        }
        (None, None) => {
            return Err(Error::Config(format!(
                "ensembles[{j}]: missing field external_field_T (or nu_s_GHz)"
            )))
        }
    };
    let neighbour = qubits[j.min(qubits.len() - 1)];
    Ok(SpinEnsembleSpec {
        zero_field_splitting: d,
        external_field,
        density: e.density,
        crystal_height: e.crystal_height.unwrap_or(SpinEnsembleSpec::DEFAULT_CRYSTAL_HEIGHT),
        crystal_width: e.crystal_width,
        crystal_length: e.crystal_length.unwrap_or(neighbour.loop_b),
    })
}

/// J_ij for every adjacent pair, zero elsewhere.
pub fn couplings_from_geometry(chain: &ChainSpec) -> Result<Vec<Vec<f64>>> {
    let mut m = vec![vec![0.0; chain.n_ensembles()]; chain.n_qubits()];
    for (i, j) in chain.adjacent_pairs() {
        chain.qubits[i].validate(&format!("qubits[{i}]"))?;
        chain.ensembles[j].validate(&format!("ensembles[{j}]"))?;
        m[i][j] = collective_coupling(&chain.qubits[i], &chain.ensembles[j], &chain.constants)?
            .collective_coupling;
    }
    Ok(m)
}

impl Config {
    /// Serialisable form with every value explicit; it parses back to `self`.
    pub fn to_raw(&self) -> RawConfig {
        let c = &self.chain;
        RawConfig {
            constants: Some(RawConstants {
                mu_b_over_h: Some(c.constants.mu_b_over_h),
                g_e: Some(c.constants.g_e),
                zero_field_splitting: Some(c.constants.zero_field_splitting),
            }),
            qubits: c
                .qubits
                .iter()
                .map(|q| RawQubit {
                    persistent_current: q.persistent_current,
                    loop_a: q.loop_a,
                    loop_b: q.loop_b,
                    tunneling_energy: q.tunneling_energy,
                    energy_bias: Some(q.energy_bias),
                })
                .collect(),
            ensembles: c
                .ensembles
                .iter()
                .map(|e| RawEnsemble {
                    zero_field_splitting: Some(e.zero_field_splitting),
                    external_field: Some(e.external_field),
                    nu_s: None,
                    density: e.density,
                    crystal_height: Some(e.crystal_height),
                    crystal_width: e.crystal_width,
                    crystal_length: Some(e.crystal_length),
                })
                .collect(),
            couplings: RawCouplings::Matrix(c.couplings.clone()),
            mutual_inductance_coupling: Some(c.mutual_inductance_coupling),
            lattice: (self.lattice != LatticeOverrides::default()).then_some(self.lattice),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("config serialises")
    }
}

impl From<ChainSpec> for Config {
    fn from(chain: ChainSpec) -> Self {
        Self { chain, lattice: LatticeOverrides::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MINIMAL: &str = r#"{
        "qubits": [
            {"persistent_current_uA": 0.5, "loop_a_um": 1, "loop_b_um": 1, "tunneling_energy_GHz": 6},
            {"persistent_current_uA": 0.5, "loop_a_um": 1, "loop_b_um": 1, "tunneling_energy_GHz": 6}
        ],
        "ensembles": [
            {"nu_s_GHz": 1.0, "density_per_um3": 3e6, "crystal_width_L_um": 0.5},
            {"nu_s_GHz": 1.0, "density_per_um3": 3e6, "crystal_width_L_um": 0.5},
            {"nu_s_GHz": 1.0, "density_per_um3": 3e6, "crystal_width_L_um": 0.5}
        ],
        "couplings": [[0.25, 0.25, 0], [0, 0.25, 0.25]]
    }"#;

    #[test]
    fn minimal_file_parses() {
        let cfg = parse_config_str(MINIMAL).unwrap();
        let chain = &cfg.chain;
        assert_eq!(chain.n_qubits(), 2);
        assert_eq!(chain.n_ensembles(), 3);
        let nonzero: Vec<_> = (0..2)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| chain.coupling(i, j) != 0.0)
            .collect();
        assert_eq!(nonzero, vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
        assert_eq!(chain.mutual_inductance_coupling, 0.0);
        for nu in chain.ensemble_frequencies().unwrap() {
            assert!((nu - 1.0).abs() < 1e-14);
        }
        assert_eq!(chain.ensembles[0].crystal_height, 5.0);
        assert_eq!(chain.ensembles[0].crystal_length, 1.0);
    }

    #[test]
    fn negative_current_named() {
        let text = MINIMAL.replacen("\"persistent_current_uA\": 0.5", "\"persistent_current_uA\": -0.5", 1);
        let err = parse_config_str(&text).unwrap_err().to_string();
        assert!(err.contains("persistent_current"), "{err}");
    }

    #[test]
    fn missing_key_named() {
        let text = MINIMAL.replacen("\"loop_a_um\": 1, ", "", 1);
        let err = parse_config_str(&text).unwrap_err().to_string();
        assert!(err.contains("loop_a_um"), "{err}");
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(parse_config_str("{\"qubits\": ["), Err(Error::Config(_))));
    }

    #[test]
    fn unknown_coupling_mode() {
        let text = MINIMAL.replace("[[0.25, 0.25, 0], [0, 0.25, 0.25]]", "\"guess\"");
        let err = parse_config_str(&text).unwrap_err().to_string();
        assert!(err.contains("from-geometry"), "{err}");
    }

    #[test]
    fn geometry_couplings() {
        let text = MINIMAL.replace("[[0.25, 0.25, 0], [0, 0.25, 0.25]]", "\"from-geometry\"");
        let chain = parse_config_str(&text).unwrap().chain;
        assert_eq!(chain.coupling(0, 2), 0.0);
        // 13 MHz geometry
        for (i, j) in chain.adjacent_pairs().collect::<Vec<_>>() {
            assert!((chain.coupling(i, j) - 0.012583).abs() < 1e-5);
        }
    }

    #[test]
    fn mutual_inductance_read() {
        let text = MINIMAL.replace("\"couplings\"", "\"mutual_inductance_coupling_GHz\": 0.005, \"couplings\"");
        assert_eq!(parse_config_str(&text).unwrap().chain.mutual_inductance_coupling, 0.005);
    }

    #[test]
    fn round_trip_is_stable() {
        let cfg = parse_config_str(MINIMAL).unwrap();
        let again = parse_config_str(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }

    proptest! {
        #[test]
        fn round_trip_random(
            current in 0.01f64..2.0, a in 0.1f64..5.0, b in 0.1f64..100.0,
            nu_q in 3.0f64..10.0, nu_s in 0.1f64..2.5, j in 0.0f64..0.5, m12 in 0.0f64..0.01,
        ) {
            let mut chain = ChainSpec::three_ensemble([nu_q, nu_q + 0.5], [nu_s, nu_s, nu_s], [j; 4]);
            chain.qubits[0].persistent_current = current;
            chain.qubits[0].loop_a = a;
            chain.qubits[0].loop_b = b;
            chain.mutual_inductance_coupling = m12;
            let cfg = Config::from(chain);
            let once = parse_config_str(&cfg.to_json()).unwrap();
            prop_assert_eq!(&once, &cfg);
            let twice = parse_config_str(&once.to_json()).unwrap();
            prop_assert_eq!(twice, once);
        }
    }
}
