//! Exact collective spin operators on the 2ⁿ space of n two-level NV centers,
//! used to test how well the ensemble behaves as a single boson.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::OperatorMatrix;
use crate::error::{Error, Result};

pub const MAX_EXACT_SPINS: usize = 12;

/// s† = (1/J) Σ_m J⁽ᵐ⁾ τ₊⁽ᵐ⁾ with J = √(Σ_m |J⁽ᵐ⁾|²).
///
/// Spin m occupies slot m; local index 1 is the ground state, as for the qubits.
pub fn collective_spin_operator(n: usize, weights: &[f64]) -> Result<OperatorMatrix> {
    if !(1..=MAX_EXACT_SPINS).contains(&n) {
        return Err(Error::Dimension(format!("spin count {n} outside 1..={MAX_EXACT_SPINS}")));
    }
    if weights.len() != n {
        return Err(Error::Dimension(format!("{} weights given for {n} spins", weights.len())));
    }
    let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Dimension("collective weights must not all vanish".into()));
    }
    let dim = 1usize << n;
    let mut data = DMatrix::<C64>::zeros(dim, dim);
    for basis in 0..dim {
        for (m, &w) in weights.iter().enumerate() {
            let bit = 1usize << (n - 1 - m);
            // τ₊ takes local index 1 (ground) to 0 (excited)
            if basis & bit != 0 {
                data[(basis & !bit, basis)] += C64::new(w / norm, 0.0);
            }
        }
    }
    OperatorMatrix::new(vec![2; n], data)
}

/// All spins in the ground state.
pub fn spin_vacuum(n: usize) -> DVector<C64> {
    let dim = 1usize << n;
    let mut v = DVector::zeros(dim);
    v[dim - 1] = C64::new(1.0, 0.0);
    v
}

/// Normalised (s†)ᵏ|vac⟩.
pub fn collective_excitation(raising: &OperatorMatrix, excitations: usize) -> DVector<C64> {
    let n = raising.dims().len();
    let mut v = spin_vacuum(n);
    for _ in 0..excitations {
        v = raising.apply(&v);
    }
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}

/// ‖([s, s†] − 1)|ψ_k⟩‖ on the k-excitation collective state.
pub fn bosonization_deviation(n: usize, weights: &[f64], excitations: usize) -> Result<f64> {
    if excitations > n {
        return Err(Error::Dimension(format!("{excitations} excitations exceed {n} spins")));
    }
    let raising = collective_spin_operator(n, weights)?;
    let lowering = raising.adjoint();
    let psi = collective_excitation(&raising, excitations);
    let commutator_psi = lowering.apply(&raising.apply(&psi)) - raising.apply(&lowering.apply(&psi));
    Ok((commutator_psi - psi).norm())
}
