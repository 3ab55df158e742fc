//! Qubit and truncated-boson operator algebra, the hybrid chain Hamiltonian,
//! and the dense eigensolver every analytic result is checked against.

mod chain;
mod collective;
mod operator;
mod spectrum;

pub use chain::{build_full_hamiltonian, ChainSpace, DEFAULT_CUTOFF};
pub use collective::{
    bosonization_deviation, collective_excitation, collective_spin_operator, spin_vacuum, MAX_EXACT_SPINS,
};
pub use operator::{
    boson_annihilator, embed, embed_product, number_operator, sigma_minus, sigma_plus, sigma_x, sigma_y, sigma_z,
    OperatorMatrix,
};
pub use spectrum::{eigensolve, eigensolve_with_vectors, Eigensystem, SpectrumResult, HERMITIAN_TOL};
