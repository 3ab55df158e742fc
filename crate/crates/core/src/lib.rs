//! Hybrid chains of superconducting flux qubits and NV-center spin ensembles.
//!
//! The crate goes from device geometry to effective bosonic models:
//!
//! * [`magnetics`]: loop field on the symmetric axis, single-spin and collective couplings;
//! * [`hilbert`]: operator algebra, full chain Hamiltonian, dense eigensolver;
//! * [`dispersive`]: elimination of the far-detuned qubits into an effective
//!   three-mode (or N-mode) Hamiltonian with squeezing and hopping terms;
//! * [`lattice`]: the uniform periodic array, its Bogoliubov spectrum,
//!   stability boundary and tight-binding limit.
//!
//! Frequencies are in GHz with h = 1.

pub mod config;
pub mod dispersive;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod magnetics;
pub mod params;

pub use config::{load_config, parse_config, Config};
pub use error::{Error, Result};
pub use params::{nu_s_from_field, ChainSpec, FluxQubitSpec, PhysicalConstants, SpinEnsembleSpec};
