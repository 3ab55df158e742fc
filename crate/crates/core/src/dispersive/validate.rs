//! Effective-versus-exact spectral comparison.

use serde::Serialize;

use super::{
    build_effective_hamiltonian, build_rwa_hamiltonian, dispersive_coefficients_with_factor, effective_params, generator_residual,
    DetuningWarning, EffectiveParams, DEFAULT_DETUNING_FACTOR,
};
use crate::error::{Error, Result};
use crate::hilbert::{build_full_hamiltonian, eigensolve, eigensolve_with_vectors, ChainSpace};
use crate::params::ChainSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationOptions {
    /// Number of low-lying levels compared (ground state included).
    pub levels: usize,
    pub detuning_factor: f64,
    /// Also diagonalise the full H with the chain's own M₁₂ to measure the
    /// shift the derivation neglects.
    pub mutual_inductance_rerun: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self { levels: 4, detuning_factor: DEFAULT_DETUNING_FACTOR, mutual_inductance_rerun: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersiveReport {
    pub residual: f64,
    #[serde(rename = "deviation_GHz")]
    pub deviation: f64,
    #[serde(rename = "deviation_half_J_GHz")]
    pub deviation_half_j: f64,
    /// deviation / deviation_half_J; absent when the half-J deviation vanishes.
    pub scaling_ratio: Option<f64>,
    pub warnings: Vec<DetuningWarning>,
    #[serde(rename = "mutual_inductance_shift_GHz", skip_serializing_if = "Option::is_none")]
    pub mutual_inductance_shift: Option<f64>,
    pub levels: usize,
    pub cutoff: usize,
}

pub fn validate_dispersive(chain: &ChainSpec, cutoff: usize) -> Result<DispersiveReport> {
    validate_dispersive_with(chain, cutoff, &ValidationOptions::default())
}

pub fn validate_dispersive_with(chain: &ChainSpec, cutoff: usize, opts: &ValidationOptions) -> Result<DispersiveReport> {
    if opts.levels < 2 {
        return Err(Error::Dimension(format!("need at least 2 compared levels (got {})", opts.levels)));
    }
    let warnings = dispersive_coefficients_with_factor(chain, opts.detuning_factor)?.warnings;
    let mut bare = chain.clone();
    bare.mutual_inductance_coupling = 0.0;
    let half = bare.with_scaled_couplings(0.5);

    let (residual, (deviation, deviation_half_j)) = rayon::join(
        || generator_residual(&bare, cutoff),
        || rayon::join(|| spectral_deviation(&bare, cutoff, opts.levels), || spectral_deviation(&half, cutoff, opts.levels)),
    );
    let (residual, deviation, deviation_half_j) = (residual?, deviation?, deviation_half_j?);

    let mutual_inductance_shift = if opts.mutual_inductance_rerun && chain.mutual_inductance_coupling != 0.0 {
        let with = qubit_ground_levels(chain, cutoff, opts.levels)?;
        let without = qubit_ground_levels(&bare, cutoff, opts.levels)?;
        Some(max_gap_difference(&with, &without))
    } else {
        None
    };

    Ok(DispersiveReport {
        residual,
        deviation,
        deviation_half_j,
        scaling_ratio: (deviation_half_j > 0.0).then(|| deviation / deviation_half_j),
        warnings,
        mutual_inductance_shift,
        levels: opts.levels,
        cutoff,
    })
}

/// Lowest `levels` eigenvalues of the full H whose eigenvectors have weight
/// > ½ on the all-qubits-ground block.
pub fn qubit_ground_levels(chain: &ChainSpec, cutoff: usize, levels: usize) -> Result<Vec<f64>> {
    let space = ChainSpace::for_chain(chain, cutoff)?;
    let block = space.qubit_ground_basis();
    let sys = eigensolve_with_vectors(&build_full_hamiltonian(chain, cutoff)?)?;
    let picked: Vec<f64> = (0..sys.spectrum.eigenvalues.len())
        .filter(|&c| block.iter().map(|&r| sys.vectors[(r, c)].norm_sqr()).sum::<f64>() > 0.5)
        .take(levels)
        .map(|c| sys.spectrum.eigenvalues[c])
        .collect();
    if picked.len() < levels {
        return Err(Error::Dimension(format!(
            "only {} qubit-ground states found at cutoff {cutoff}, {levels} requested",
            picked.len()
        )));
    }
    Ok(picked)
}

/// max_k |(E_k − E_0)_full − (E_k − E_0)_eff| over the lowest `levels` levels.
pub fn spectral_deviation(chain: &ChainSpec, cutoff: usize, levels: usize) -> Result<f64> {
    let full = qubit_ground_levels(chain, cutoff, levels)?;
    let eff = eigensolve(&build_effective_hamiltonian(&effective_params(chain)?, cutoff)?)?;
    Ok(max_gap_difference(&full, lowest(&eff.eigenvalues, levels)?))
}

/// max |E_k(d) − E_k(d + 2)| over the lowest `levels` qubit-ground levels.
pub fn cutoff_convergence(chain: &ChainSpec, cutoff: usize, levels: usize) -> Result<f64> {
    let (coarse, fine) = rayon::join(
        || qubit_ground_levels(chain, cutoff, levels),
        || qubit_ground_levels(chain, cutoff + 2, levels),
    );
    Ok(coarse?.iter().zip(fine?).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Largest gap difference between the effective Hamiltonian and its rotating-wave
/// reduction over the lowest `levels` levels.
pub fn rwa_deviation(params: &EffectiveParams, cutoff: usize, levels: usize) -> Result<f64> {
    let full = eigensolve(&build_effective_hamiltonian(params, cutoff)?)?;
    let rwa = eigensolve(&build_rwa_hamiltonian(params, cutoff)?)?;
    Ok(max_gap_difference(lowest(&full.eigenvalues, levels)?, lowest(&rwa.eigenvalues, levels)?))
}

fn lowest(values: &[f64], levels: usize) -> Result<&[f64]> {
    values
        .get(..levels)
        .ok_or_else(|| Error::Dimension(format!("{levels} levels requested from a {}-level spectrum", values.len())))
}

fn max_gap_difference(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| ((x - a[0]) - (y - b[0])).abs()).fold(0.0, f64::max)
}
