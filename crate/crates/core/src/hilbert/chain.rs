use super::{boson_annihilator, embed, embed_product, number_operator, sigma_x, sigma_z, OperatorMatrix};
use crate::error::{Error, Result};
use crate::params::ChainSpec;

pub const DEFAULT_CUTOFF: usize = 5;

/// Subsystem layout of a chain: qubits first, then ensembles, each in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpace {
    pub n_qubits: usize,
    pub n_modes: usize,
    pub cutoff: usize,
}

impl ChainSpace {
    pub fn new(n_qubits: usize, n_modes: usize, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::Dimension(format!("Fock cutoff must be at least 2 (got {cutoff})")));
        }
        Ok(Self { n_qubits, n_modes, cutoff })
    }

    pub fn for_chain(chain: &ChainSpec, cutoff: usize) -> Result<Self> {
        Self::new(chain.n_qubits(), chain.n_ensembles(), cutoff)
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![2; self.n_qubits];
        dims.extend(std::iter::repeat_n(self.cutoff, self.n_modes));
        dims
    }

    pub fn qubit_slot(&self, i: usize) -> usize {
        i
    }

    pub fn mode_slot(&self, j: usize) -> usize {
        self.n_qubits + j
    }

    pub fn boson_dim(&self) -> usize {
        self.cutoff.pow(self.n_modes as u32)
    }

    /// Basis indices with every qubit in its ground state |g⟩ (local index 1).
    pub fn qubit_ground_basis(&self) -> Vec<usize> {
        let block = (1usize << self.n_qubits) - 1;
        let d = self.boson_dim();
        (block * d..(block + 1) * d).collect()
    }

    /// Fock occupations of each mode for a basis index.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        let mut rest = index % self.boson_dim();
        let mut occ = vec![0; self.n_modes];
        for j in (0..self.n_modes).rev() {
            occ[j] = rest % self.cutoff;
            rest /= self.cutoff;
        }
        occ
    }
}

/// Hybrid chain Hamiltonian
///
/// ```text
/// H = Σ_i ½ν_qi σ_z⁽ⁱ⁾ + M₁₂ Σ_i σ_x⁽ⁱ⁾σ_x⁽ⁱ⁺¹⁾ + Σ_j ν_sj s_j†s_j
///   + Σ_(i,j) J_ij (s_j† + s_j) σ_x⁽ⁱ⁾
/// ```
///
/// with each collective mode truncated to `cutoff` Fock states.
pub fn build_full_hamiltonian(chain: &ChainSpec, cutoff: usize) -> Result<OperatorMatrix> {
    let nu_s = chain.ensemble_frequencies()?;
    let nu_q = chain.qubit_frequencies();
    let space = ChainSpace::for_chain(chain, cutoff)?;
    let dims = space.dims();

    let a = boson_annihilator(cutoff)?;
    let quadrature = &a + &a.adjoint();
    let number = number_operator(cutoff)?;
    let sx = sigma_x();
    let sz = sigma_z();

    let mut h = OperatorMatrix::zeros(&dims);
    for (i, &nu) in nu_q.iter().enumerate() {
        h.add_scaled(0.5 * nu, &embed(&sz, space.qubit_slot(i), &dims)?);
    }
    if chain.mutual_inductance_coupling != 0.0 {
        for i in 0..space.n_qubits.saturating_sub(1) {
            let term = embed_product(&[(space.qubit_slot(i), &sx), (space.qubit_slot(i + 1), &sx)], &dims)?;
            h.add_scaled(chain.mutual_inductance_coupling, &term);
        }
    }
    for (j, &nu) in nu_s.iter().enumerate() {
        h.add_scaled(nu, &embed(&number, space.mode_slot(j), &dims)?);
    }
    for (i, j) in chain.adjacent_pairs() {
        let coupling = chain.coupling(i, j);
        if coupling == 0.0 {
            continue;
        }
        let term = embed_product(&[(space.qubit_slot(i), &sx), (space.mode_slot(j), &quadrature)], &dims)?;
        h.add_scaled(coupling, &term);
    }
    Ok(h)
}
