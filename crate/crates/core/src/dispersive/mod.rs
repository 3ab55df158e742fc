//! Dispersive elimination of the flux qubits.
//!
//! With H = H₀ + H_I, the anti-Hermitian generator V solving H_I + [H₀, V] = 0
//! is a sum over coupled (qubit i, ensemble j) pairs of
//!
//! ```text
//! (J_ij/Δ_ij)(σ₋s_j† − σ₊s_j) + (J_ij/Λ_ij)(σ₋s_j − σ₊s_j†),
//! Δ_ij = ν_qi − ν_sj,  Λ_ij = ν_qi + ν_sj.
//! ```
//!
//! Keeping ½[H_I, V] and projecting the qubits onto |g…g⟩ yields the
//! effective bosonic Hamiltonian built in [`effective`].

pub mod effective;
pub mod validate;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{
    boson_annihilator, embed, embed_product, number_operator, sigma_minus, sigma_plus, sigma_z, ChainSpace,
    OperatorMatrix,
};
use crate::params::ChainSpec;

pub use effective::{
    build_effective_hamiltonian, build_rwa_hamiltonian, effective_params, total_number_operator, EffectiveParams,
};
pub use validate::{
    cutoff_convergence, qubit_ground_levels, rwa_deviation, spectral_deviation, validate_dispersive,
    validate_dispersive_with, DispersiveReport, ValidationOptions,
};

/// Default large-detuning sanity factor: warn when Δ_ij < 3 J_ij.
pub const DEFAULT_DETUNING_FACTOR: f64 = 3.0;

/// Generator coefficients of one adjacent (qubit, ensemble) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCoefficient {
    pub qubit: usize,
    pub ensemble: usize,
    #[serde(rename = "coupling_GHz")]
    pub coupling: f64,
    /// Δ_ij = ν_qi − ν_sj (GHz).
    #[serde(rename = "detuning_GHz")]
    pub detuning: f64,
    /// Λ_ij = ν_qi + ν_sj (GHz).
    #[serde(rename = "detuning_sum_GHz")]
    pub detuning_sum: f64,
    /// J_ij / Δ_ij.
    pub rotating: f64,
    /// J_ij / Λ_ij.
    pub counter_rotating: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetuningWarning {
    pub qubit: usize,
    pub ensemble: usize,
    #[serde(rename = "detuning_GHz")]
    pub detuning: f64,
    #[serde(rename = "coupling_GHz")]
    pub coupling: f64,
    pub factor: f64,
}

impl fmt::Display for DetuningWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "qubit {} / ensemble {}: detuning {} GHz < {} x coupling {} GHz; dispersive expansion is marginal",
            self.qubit, self.ensemble, self.detuning, self.factor, self.coupling
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersiveCoeffs {
    pub n_qubits: usize,
    pub n_modes: usize,
    /// One entry per adjacent pair, ordered (0,0), (0,1), (1,1), (1,2), …
    pub pairs: Vec<PairCoefficient>,
    pub warnings: Vec<DetuningWarning>,
}

impl DispersiveCoeffs {
    /// All rotating coefficients followed by all counter-rotating ones; for the
    /// three-ensemble unit this is A₁ … A₈.
    pub fn a(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.rotating).chain(self.pairs.iter().map(|p| p.counter_rotating)).collect()
    }
}

pub fn dispersive_coefficients(chain: &ChainSpec) -> Result<DispersiveCoeffs> {
    dispersive_coefficients_with_factor(chain, DEFAULT_DETUNING_FACTOR)
}

pub fn dispersive_coefficients_with_factor(chain: &ChainSpec, factor: f64) -> Result<DispersiveCoeffs> {
    let nu_q = chain.qubit_frequencies();
    let nu_s = chain.ensemble_frequencies()?;
    let mut pairs = Vec::new();
    let mut warnings = Vec::new();
    for (i, j) in chain.adjacent_pairs() {
        let coupling = chain.coupling(i, j);
        let detuning = nu_q[i] - nu_s[j];
        if !(detuning > 0.0) {
            return Err(Error::Resonance { qubit: i, ensemble: j, detuning });
        }
        let detuning_sum = nu_q[i] + nu_s[j];
        if detuning < factor * coupling {
            warnings.push(DetuningWarning { qubit: i, ensemble: j, detuning, coupling, factor });
        }
        pairs.push(PairCoefficient {
            qubit: i,
            ensemble: j,
            coupling,
            detuning,
            detuning_sum,
            rotating: coupling / detuning,
            counter_rotating: coupling / detuning_sum,
        });
    }
    Ok(DispersiveCoeffs { n_qubits: chain.n_qubits(), n_modes: chain.n_ensembles(), pairs, warnings })
}

/// H₀ = Σ_i ½ν_qi σ_z⁽ⁱ⁾ + Σ_j ν_sj s_j†s_j.
pub fn free_hamiltonian(chain: &ChainSpec, cutoff: usize) -> Result<OperatorMatrix> {
    let space = ChainSpace::for_chain(chain, cutoff)?;
    let dims = space.dims();
    let number = number_operator(cutoff)?;
    let mut h = OperatorMatrix::zeros(&dims);
    for (i, nu) in chain.qubit_frequencies().into_iter().enumerate() {
        h.add_scaled(0.5 * nu, &embed(&sigma_z(), space.qubit_slot(i), &dims)?);
    }
    for (j, nu) in chain.ensemble_frequencies()?.into_iter().enumerate() {
        h.add_scaled(nu, &embed(&number, space.mode_slot(j), &dims)?);
    }
    Ok(h)
}

/// H_I = Σ_(i,j) J_ij (σ₋⁽ⁱ⁾s_j† + σ₋⁽ⁱ⁾s_j + H.c.).
pub fn interaction_hamiltonian(chain: &ChainSpec, cutoff: usize) -> Result<OperatorMatrix> {
    let space = ChainSpace::for_chain(chain, cutoff)?;
    let dims = space.dims();
    let a = boson_annihilator(cutoff)?;
    let a_dag = a.adjoint();
    let (lower, raise) = (sigma_minus(), sigma_plus());
    let mut h = OperatorMatrix::zeros(&dims);
    for (i, j) in chain.adjacent_pairs() {
        let coupling = chain.coupling(i, j);
        if coupling == 0.0 {
            continue;
        }
        let (q, m) = (space.qubit_slot(i), space.mode_slot(j));
        for (qubit_op, mode_op) in [(&lower, &a_dag), (&lower, &a), (&raise, &a), (&raise, &a_dag)] {
            h.add_scaled(coupling, &embed_product(&[(q, qubit_op), (m, mode_op)], &dims)?);
        }
    }
    Ok(h)
}

/// The generator V on the chain space with Fock cutoff `cutoff`.
pub fn build_generator(coeffs: &DispersiveCoeffs, cutoff: usize) -> Result<OperatorMatrix> {
    let space = ChainSpace::new(coeffs.n_qubits, coeffs.n_modes, cutoff)?;
    let dims = space.dims();
    let a = boson_annihilator(cutoff)?;
    let a_dag = a.adjoint();
    let (lower, raise) = (sigma_minus(), sigma_plus());
    let mut v = OperatorMatrix::zeros(&dims);
    for p in &coeffs.pairs {
        if p.coupling == 0.0 {
            continue;
        }
        let (q, m) = (space.qubit_slot(p.qubit), space.mode_slot(p.ensemble));
        let term = |qo: &OperatorMatrix, mo: &OperatorMatrix| embed_product(&[(q, qo), (m, mo)], &dims);
        v.add_scaled(p.rotating, &term(&lower, &a_dag)?);
        v.add_scaled(-p.rotating, &term(&raise, &a)?);
        v.add_scaled(p.counter_rotating, &term(&lower, &a)?);
        v.add_scaled(-p.counter_rotating, &term(&raise, &a_dag)?);
    }
    Ok(v)
}

/// Basis states with every mode below occupation `cutoff − 1`, where the
/// truncated ladder operators still obey the bosonic algebra.
pub fn truncation_safe_basis(space: &ChainSpace) -> Vec<usize> {
    let total: usize = space.dims().iter().product();
    (0..total).filter(|&b| space.occupations(b).iter().all(|&n| n + 1 < space.cutoff)).collect()
}

/// ‖P(H_I + [H₀, V])P‖_F / ‖P H_I P‖_F on the truncation-safe subspace P.
/// Zero when there is no interaction at all.
pub fn generator_residual(chain: &ChainSpec, cutoff: usize) -> Result<f64> {
    let coeffs = dispersive_coefficients(chain)?;
    let h0 = free_hamiltonian(chain, cutoff)?;
    let hi = interaction_hamiltonian(chain, cutoff)?;
    let v = build_generator(&coeffs, cutoff)?;
    let basis = truncation_safe_basis(&ChainSpace::for_chain(chain, cutoff)?);
    let residual = &hi + &h0.commutator(&v);
    let num = residual.restricted(&basis).norm();
    let den = hi.restricted(&basis).norm();
    Ok(if den == 0.0 { 0.0 } else { num / den })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3_chain() -> ChainSpec {
        ChainSpec::uniform(2, 6.0, 1.0, 0.25)
    }

    #[test]
    fn fig3_coefficients() {
        let c = dispersive_coefficients(&fig3_chain()).unwrap();
        let a = c.a();
        assert_eq!(a.len(), 8);
        for &x in &a[..4] {
            assert!((x - 0.05).abs() < 1e-15);
        }
        for &x in &a[4..] {
            assert!((x - 1.0 / 28.0).abs() < 1e-15);
        }
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn decoupled_ensemble_has_zero_coefficients() {
        let chain = ChainSpec::three_ensemble([6.0, 6.0], [1.0; 3], [0.0, 0.25, 0.25, 0.25]);
        let a = dispersive_coefficients(&chain).unwrap().a();
        assert_eq!((a[0], a[4]), (0.0, 0.0));
        assert!(a[1] > 0.0 && a[5] > 0.0);
    }

    #[test]
    fn resonance_is_an_error() {
        let chain = ChainSpec::three_ensemble([6.0, 1.0], [1.0; 3], [0.25; 4]);
        match dispersive_coefficients(&chain) {
            Err(Error::Resonance { qubit: 1, ensemble: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_detuning_warns() {
        let chain = ChainSpec::uniform(2, 1.6, 1.0, 0.25);
        let c = dispersive_coefficients(&chain).unwrap();
        assert_eq!(c.warnings.len(), 4);
        assert!(c.warnings[0].to_string().contains("marginal"));
        assert!(dispersive_coefficients_with_factor(&chain, 2.0).unwrap().warnings.is_empty());
    }

    #[test]
    fn zero_coupling_generator_vanishes() {
        let chain = ChainSpec::uniform(2, 6.0, 1.0, 0.0);
        let v = build_generator(&dispersive_coefficients(&chain).unwrap(), 3).unwrap();
        assert_eq!(v.max_abs(), 0.0);
        assert_eq!(generator_residual(&chain, 3).unwrap(), 0.0);
    }

    #[test]
    fn generator_is_anti_hermitian() {
        let chain = ChainSpec::three_ensemble([6.0, 7.0], [1.0, 1.3, 0.8], [0.2, 0.25, 0.1, 0.3]);
        let v = build_generator(&dispersive_coefficients(&chain).unwrap(), 4).unwrap();
        assert!(v.max_abs() > 0.0);
        assert!(v.anti_hermiticity_deviation() < 1e-12 * v.max_abs());
    }

    #[test]
    fn generator_cancels_interaction() {
        let chain = ChainSpec::three_ensemble([6.0, 7.0], [1.0, 1.3, 0.8], [0.2, 0.25, 0.1, 0.3]);
        let r = generator_residual(&chain, 4).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn interaction_is_sigma_x_quadrature() {
        // σ₋ + σ₊ = σ_x, so H_I equals the coupling part of the full Hamiltonian
        let chain = fig3_chain();
        let full = crate::hilbert::build_full_hamiltonian(&chain, 3).unwrap();
        let h0 = free_hamiltonian(&chain, 3).unwrap();
        let hi = interaction_hamiltonian(&chain, 3).unwrap();
        assert!((&full - &(&h0 + &hi)).max_abs() < 1e-14);
    }

    #[test]
    fn safe_basis_excludes_top_rung() {
        let space = ChainSpace::new(1, 2, 3).unwrap();
        let basis = truncation_safe_basis(&space);
        // 2 qubit states x 2 x 2 safe occupations
        assert_eq!(basis.len(), 8);
    }
}
