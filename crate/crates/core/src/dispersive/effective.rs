//! Effective coupled-boson Hamiltonian after the qubits are eliminated.

use serde::{Deserialize, Serialize};

use super::dispersive_coefficients;
use crate::error::{Error, Result};
use crate::hilbert::{boson_annihilator, embed, embed_product, number_operator, OperatorMatrix};
use crate::params::ChainSpec;

/// Renormalised mode frequencies, one-mode squeezing strengths g_jj and
/// nearest-neighbour couplings g_j,j+1 (all GHz).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    #[serde(rename = "nu_prime_GHz")]
    pub nu_prime: Vec<f64>,
    #[serde(rename = "g_self_GHz")]
    pub g_self: Vec<f64>,
    #[serde(rename = "g_hop_GHz")]
    pub g_hop: Vec<f64>,
}

impl EffectiveParams {
    pub fn n_modes(&self) -> usize {
        self.nu_prime.len()
    }

    /// Single-excitation block of the RWA Hamiltonian: tridiagonal with ν′ on
    /// the diagonal and −g_hop off it.
    pub fn single_excitation_matrix(&self) -> nalgebra::DMatrix<f64> {
        let n = self.n_modes();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = self.nu_prime[j];
        }
        for (j, &g) in self.g_hop.iter().enumerate() {
            m[(j, j + 1)] = -g;
            m[(j + 1, j)] = -g;
        }
        m
    }

    fn check(&self) -> Result<()> {
        let n = self.n_modes();
        if n == 0 || self.g_self.len() != n || self.g_hop.len() + 1 != n {
            return Err(Error::Dimension(format!(
                "effective params need E frequencies, E self terms and E-1 hops (got {}, {}, {})",
                n,
                self.g_self.len(),
                self.g_hop.len()
            )));
        }
        Ok(())
    }
}

/// Effective parameters of a chain:
///
/// ```text
/// g_jj     = Σ_i ½J_ij² (1/Δ_ij + 1/Λ_ij)
/// ν′_j     = ν_sj − 2g_jj
/// g_j,j+1  = ½J_jj J_j,j+1 (1/Δ_jj + 1/Λ_jj + 1/Δ_j,j+1 + 1/Λ_j,j+1)
/// ```
///
/// where qubit j is the one shared by ensembles j and j+1.
pub fn effective_params(chain: &ChainSpec) -> Result<EffectiveParams> {
    let coeffs = dispersive_coefficients(chain)?;
    let nu_s = chain.ensemble_frequencies()?;
    let n_modes = chain.n_ensembles();
    let mut g_self = vec![0.0; n_modes];
    for p in &coeffs.pairs {
        g_self[p.ensemble] += 0.5 * p.coupling * p.coupling * (1.0 / p.detuning + 1.0 / p.detuning_sum);
    }
    let nu_prime = nu_s.iter().zip(&g_self).map(|(nu, g)| nu - 2.0 * g).collect();
    let g_hop = (0..chain.n_qubits())
        .map(|i| {
            let left = coeffs.pairs.iter().find(|p| p.qubit == i && p.ensemble == i).expect("adjacent pair");
            let right = coeffs.pairs.iter().find(|p| p.qubit == i && p.ensemble == i + 1).expect("adjacent pair");
            let inverse_sum = 1.0 / left.detuning + 1.0 / left.detuning_sum + 1.0 / right.detuning + 1.0 / right.detuning_sum;
            0.5 * left.coupling * right.coupling * inverse_sum
        })
        .collect();
    Ok(EffectiveParams { nu_prime, g_self, g_hop })
}

struct ModeOps {
    dims: Vec<usize>,
    a: OperatorMatrix,
    a_dag: OperatorMatrix,
    number: OperatorMatrix,
}

impl ModeOps {
    fn new(n_modes: usize, cutoff: usize) -> Result<Self> {
        let a = boson_annihilator(cutoff)?;
        Ok(Self { dims: vec![cutoff; n_modes], a_dag: a.adjoint(), a, number: number_operator(cutoff)? })
    }
}

/// Effective Hamiltonian including squeezing and counter-rotating two-mode terms:
///
/// ```text
/// H = Σ_j ν′_j n_j − Σ_j g_jj (s_j†² + s_j²) − Σ_j g_j,j+1 (s_j + s_j†)(s_j+1 + s_j+1†)
/// ```
pub fn build_effective_hamiltonian(params: &EffectiveParams, cutoff: usize) -> Result<OperatorMatrix> {
    params.check()?;
    let ops = ModeOps::new(params.n_modes(), cutoff)?;
    let mut h = OperatorMatrix::zeros(&ops.dims);
    let squeeze = &(&ops.a_dag * &ops.a_dag) + &(&ops.a * &ops.a);
    let quadrature = &ops.a + &ops.a_dag;
    for j in 0..params.n_modes() {
        h.add_scaled(params.nu_prime[j], &embed(&ops.number, j, &ops.dims)?);
        if params.g_self[j] != 0.0 {
            h.add_scaled(-params.g_self[j], &embed(&squeeze, j, &ops.dims)?);
        }
    }
    for (j, &g) in params.g_hop.iter().enumerate() {
        if g != 0.0 {
            h.add_scaled(-g, &embed_product(&[(j, &quadrature), (j + 1, &quadrature)], &ops.dims)?);
        }
    }
    Ok(h)
}

/// Rotating-wave form: H = Σ_j ν′_j n_j − Σ_j g_j,j+1 (s_j+1† s_j + s_j† s_j+1).
pub fn build_rwa_hamiltonian(params: &EffectiveParams, cutoff: usize) -> Result<OperatorMatrix> {
    params.check()?;
    let ops = ModeOps::new(params.n_modes(), cutoff)?;
    let mut h = OperatorMatrix::zeros(&ops.dims);
    for j in 0..params.n_modes() {
        h.add_scaled(params.nu_prime[j], &embed(&ops.number, j, &ops.dims)?);
    }
    for (j, &g) in params.g_hop.iter().enumerate() {
        if g != 0.0 {
            h.add_scaled(-g, &embed_product(&[(j, &ops.a), (j + 1, &ops.a_dag)], &ops.dims)?);
            h.add_scaled(-g, &embed_product(&[(j, &ops.a_dag), (j + 1, &ops.a)], &ops.dims)?);
        }
    }
    Ok(h)
}

/// N̂ = Σ_j s_j†s_j on `n_modes` modes.
pub fn total_number_operator(n_modes: usize, cutoff: usize) -> Result<OperatorMatrix> {
    let ops = ModeOps::new(n_modes, cutoff)?;
    let mut n = OperatorMatrix::zeros(&ops.dims);
    for j in 0..n_modes {
        n.add_scaled(1.0, &embed(&ops.number, j, &ops.dims)?);
    }
    Ok(n)
}
