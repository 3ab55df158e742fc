//! Physical constants and device parameter records.
//!
//! Units throughout the crate: frequencies in GHz (h = 1), magnetic fields in
//! tesla, lengths in micrometres, currents in microamperes.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Constants entering the NV two-level reduction and the loop field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Vacuum permeability (T·m/A).
    pub mu0: f64,
    /// Bohr magneton over Planck's constant (GHz/T).
    pub mu_b_over_h: f64,
    /// Electron g-factor.
    pub g_e: f64,
    /// NV zero-field splitting used when an ensemble does not give its own (GHz).
    pub zero_field_splitting: f64,
}

impl PhysicalConstants {
    pub const MU0: f64 = 4.0e-7 * PI;
    pub const MU_B_OVER_H: f64 = 13.996;
    pub const G_E: f64 = 2.0028;
    pub const NV_ZERO_FIELD_SPLITTING: f64 = 2.87;

    /// g_e µ_B / h in GHz/T, the Zeeman slope of ν_s.
    pub fn zeeman_slope(&self) -> f64 {
        self.g_e * self.mu_b_over_h
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu0 != Self::MU0 {
            return Err(Error::Config(format!(
                "constants.mu0 must be 4*pi*1e-7 T m/A exactly (got {})",
                self.mu0
            )));
        }
        if !(13.9..=14.1).contains(&self.mu_b_over_h) {
            return Err(Error::Config(format!(
                "constants.muB_over_h_GHz_per_T must lie in [13.9, 14.1] (got {})",
                self.mu_b_over_h
            )));
        }
        if !(2.0..=2.01).contains(&self.g_e) {
            return Err(Error::Config(format!(
                "constants.g_e must lie in [2.0, 2.01] (got {})",
                self.g_e
            )));
        }
        positive("constants.D_default_GHz", self.zero_field_splitting)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            mu0: Self::MU0,
            mu_b_over_h: Self::MU_B_OVER_H,
            g_e: Self::G_E,
            zero_field_splitting: Self::NV_ZERO_FIELD_SPLITTING,
        }
    }
}

/// A rectangular flux-qubit loop biased near its degeneracy point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxQubitSpec {
    /// Persistent current I_p (µA).
    pub persistent_current: f64,
    /// Narrow side a, along z (µm).
    pub loop_a: f64,
    /// Long side b (µm).
    pub loop_b: f64,
    /// Tunneling energy λ (GHz).
    pub tunneling_energy: f64,
    /// Energy bias ε (GHz); zero at the degeneracy point.
    pub energy_bias: f64,
}

impl FluxQubitSpec {
    /// Qubit at the degeneracy point, so that ν_q = λ.
    pub fn at_degeneracy(persistent_current: f64, loop_a: f64, loop_b: f64, tunneling_energy: f64) -> Self {
        Self { persistent_current, loop_a, loop_b, tunneling_energy, energy_bias: 0.0 }
    }

    /// Transition frequency √(ε² + λ²); equals λ at the degeneracy point.
    pub fn frequency(&self) -> f64 {
        self.tunneling_energy.hypot(self.energy_bias)
    }

    pub(crate) fn validate(&self, prefix: &str) -> Result<()> {
        positive(&format!("{prefix}.persistent_current_uA"), self.persistent_current)?;
        positive(&format!("{prefix}.loop_a_um"), self.loop_a)?;
        positive(&format!("{prefix}.loop_b_um"), self.loop_b)?;
        positive(&format!("{prefix}.tunneling_energy_GHz"), self.tunneling_energy)?;
        finite(&format!("{prefix}.energy_bias_GHz"), self.energy_bias)
    }
}

/// An NV-center ensemble in a diamond crystal between two qubit loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinEnsembleSpec {
    /// Zero-field splitting D (GHz).
    pub zero_field_splitting: f64,
    /// External field along the NV axis (T).
    pub external_field: f64,
    /// NV centers per µm³.
    pub density: f64,
    /// Crystal height (µm).
    pub crystal_height: f64,
    /// Crystal width L, equal to the qubit-to-qubit separation (µm).
    pub crystal_width: f64,
    /// Crystal length along the loop's long side (µm).
    pub crystal_length: f64,
}

impl SpinEnsembleSpec {
    pub const DEFAULT_CRYSTAL_HEIGHT: f64 = 5.0;
    pub const DEFAULT_DENSITY: f64 = 3.0e6;

    /// Ensemble whose external field is chosen so that ν_s equals `nu_s`.
    pub fn with_splitting(nu_s: f64, constants: &PhysicalConstants) -> Self {
        let d = constants.zero_field_splitting;
        Self {
            zero_field_splitting: d,
            external_field: (d - nu_s) / constants.zeeman_slope(),
            density: Self::DEFAULT_DENSITY,
            crystal_height: Self::DEFAULT_CRYSTAL_HEIGHT,
            crystal_width: 0.5,
            crystal_length: 1.0,
        }
    }

    /// Number of NV centers, density × height × width × length.
    pub fn spin_count(&self) -> f64 {
        self.density * self.crystal_height * self.crystal_width * self.crystal_length
    }

    pub(crate) fn validate(&self, prefix: &str) -> Result<()> {
        positive(&format!("{prefix}.zero_field_splitting_GHz"), self.zero_field_splitting)?;
        finite(&format!("{prefix}.external_field_T"), self.external_field)?;
        positive(&format!("{prefix}.density_per_um3"), self.density)?;
        positive(&format!("{prefix}.crystal_height_um"), self.crystal_height)?;
        positive(&format!("{prefix}.crystal_width_L_um"), self.crystal_width)?;
        positive(&format!("{prefix}.crystal_length_um"), self.crystal_length)?;
        if self.spin_count() < 1.0 {
            return Err(Error::Config(format!(
                "{prefix}: spin count density*height*width*length = {} is below 1",
                self.spin_count()
            )));
        }
        Ok(())
    }
}

/// ν_s = D − g_e (µ_B/h) B_ext, the m_s = 0 ↔ −1 splitting.
pub fn nu_s_from_field(spec: &SpinEnsembleSpec, constants: &PhysicalConstants) -> Result<f64> {
    let nu_s = spec.zero_field_splitting - constants.zeeman_slope() * spec.external_field;
    if nu_s > 0.0 {
        Ok(nu_s)
    } else {
        Err(Error::NonPositiveSplitting { nu_s })
    }
}

/// A chain of `Q` flux qubits interleaved with `Q + 1` spin ensembles.
///
/// Qubit `i` sits between ensembles `i` and `i + 1`, so `couplings[i][j]` may
/// be nonzero only for `j ∈ {i, i + 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub constants: PhysicalConstants,
    pub qubits: Vec<FluxQubitSpec>,
    pub ensembles: Vec<SpinEnsembleSpec>,
    /// Collective qubit-ensemble couplings J_ij (GHz), `qubits.len()` rows.
    pub couplings: Vec<Vec<f64>>,
    /// Nearest-neighbour qubit-qubit coupling M₁₂ (GHz).
    pub mutual_inductance_coupling: f64,
}

impl ChainSpec {
    /// Chain with identical qubits (frequency `nu_q`), identical ensembles
    /// (splitting `nu_s`) and every allowed coupling equal to `coupling`.
    pub fn uniform(n_qubits: usize, nu_q: f64, nu_s: f64, coupling: f64) -> Self {
        let constants = PhysicalConstants::default();
        let qubit = FluxQubitSpec::at_degeneracy(0.5, 1.0, 1.0, nu_q);
        let ensemble = SpinEnsembleSpec::with_splitting(nu_s, &constants);
        let n_ens = n_qubits + 1;
        let couplings = (0..n_qubits)
            .map(|i| (0..n_ens).map(|j| if j == i || j == i + 1 { coupling } else { 0.0 }).collect())
            .collect();
        Self {
            constants,
            qubits: vec![qubit; n_qubits],
            ensembles: vec![ensemble; n_ens],
            couplings,
            mutual_inductance_coupling: 0.0,
        }
    }

    /// The two-qubit, three-ensemble unit with couplings J₁₁, J₁₂, J₂₂, J₂₃.
    pub fn three_ensemble(nu_q: [f64; 2], nu_s: [f64; 3], j: [f64; 4]) -> Self {
        let mut chain = Self::uniform(2, nu_q[0], nu_s[0], 0.0);
        chain.qubits[1].tunneling_energy = nu_q[1];
        for (ens, &nu) in chain.ensembles.iter_mut().zip(&nu_s) {
            *ens = SpinEnsembleSpec::with_splitting(nu, &chain.constants);
        }
        chain.couplings = vec![vec![j[0], j[1], 0.0], vec![0.0, j[2], j[3]]];
        chain
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn n_ensembles(&self) -> usize {
        self.ensembles.len()
    }

    pub fn coupling(&self, qubit: usize, ensemble: usize) -> f64 {
        self.couplings[qubit][ensemble]
    }

    /// Structurally adjacent (qubit, ensemble) pairs in the order
    /// (0,0), (0,1), (1,1), (1,2), …
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_qubits()).flat_map(|i| [(i, i), (i, i + 1)])
    }

    pub fn qubit_frequencies(&self) -> Vec<f64> {
        self.qubits.iter().map(FluxQubitSpec::frequency).collect()
    }

    pub fn ensemble_frequencies(&self) -> Result<Vec<f64>> {
        self.ensembles.iter().map(|e| nu_s_from_field(e, &self.constants)).collect()
    }

    /// Copy of the chain with every coupling multiplied by `factor`.
    pub fn with_scaled_couplings(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for row in &mut out.couplings {
            for c in row {
                *c *= factor;
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if self.qubits.is_empty() {
            return Err(Error::Config("qubits must contain at least one flux qubit".into()));
        }
        if self.ensembles.len() != self.qubits.len() + 1 {
            return Err(Error::Config(format!(
                "ensembles must have one more entry than qubits ({} qubits, {} ensembles)",
                self.qubits.len(),
                self.ensembles.len()
            )));
        }
        for (i, q) in self.qubits.iter().enumerate() {
            q.validate(&format!("qubits[{i}]"))?;
        }
        for (j, e) in self.ensembles.iter().enumerate() {
            e.validate(&format!("ensembles[{j}]"))?;
        }
        if self.couplings.len() != self.qubits.len() {
            return Err(Error::Config(format!(
                "couplings must have {} rows (one per qubit), got {}",
                self.qubits.len(),
                self.couplings.len()
            )));
        }
        for (i, row) in self.couplings.iter().enumerate() {
            if row.len() != self.ensembles.len() {
                return Err(Error::Config(format!(
                    "couplings[{i}] must have {} entries (one per ensemble), got {}",
                    self.ensembles.len(),
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                let key = format!("couplings[{i}][{j}]");
                finite(&key, c)?;
                if c < 0.0 {
                    return Err(Error::Config(format!("{key} must be non-negative (got {c})")));
                }
                if c != 0.0 && j != i && j != i + 1 {
                    return Err(Error::Config(format!(
                        "{key} = {c}: qubit {i} may only couple to its adjoining ensembles {i} and {}",
                        i + 1
                    )));
                }
            }
        }
        finite("mutual_inductance_coupling_GHz", self.mutual_inductance_coupling)
    }
}

fn positive(key: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{key} must be positive (got {value})")))
    }
}

fn finite(key: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{key} must be finite (got {value})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_constants_in_range() {
        let c = PhysicalConstants::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.mu0, 4.0e-7 * PI);
    }

    #[test]
    fn zero_field_gives_d() {
        let c = PhysicalConstants::default();
        let mut e = SpinEnsembleSpec::with_splitting(1.0, &c);
        e.external_field = 0.0;
        assert_eq!(nu_s_from_field(&e, &c).unwrap(), 2.87);
    }

    #[test]
    fn zeeman_shift_to_one_ghz() {
        let c = PhysicalConstants::default();
        let mut e = SpinEnsembleSpec::with_splitting(1.0, &c);
        e.external_field = 1.87 / c.zeeman_slope();
        assert!((nu_s_from_field(&e, &c).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn strong_field_crosses_levels() {
        let c = PhysicalConstants::default();
        let mut e = SpinEnsembleSpec::with_splitting(1.0, &c);
        e.external_field = 0.2;
        // 2.87 - 2.0028 * 13.996 * 0.2 = -2.736238
        match nu_s_from_field(&e, &c) {
            Err(Error::NonPositiveSplitting { nu_s }) => assert!((nu_s + 2.736238).abs() < 1e-6),
            other => panic!("expected NonPositiveSplitting, got {other:?}"),
        }
    }

    #[test]
    fn off_adjacent_coupling_rejected() {
        let mut chain = ChainSpec::uniform(2, 6.0, 1.0, 0.25);
        chain.couplings[0][2] = 0.1;
        let err = chain.validate().unwrap_err().to_string();
        assert!(err.contains("couplings[0][2]"), "{err}");
    }

    #[test]
    fn three_ensemble_pattern() {
        let chain = ChainSpec::three_ensemble([6.0, 6.5], [1.0, 1.1, 1.2], [0.1, 0.2, 0.3, 0.4]);
        chain.validate().unwrap();
        let pairs: Vec<_> = chain.adjacent_pairs().collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
        let js: Vec<f64> = pairs.iter().map(|&(i, j)| chain.coupling(i, j)).collect();
        assert_eq!(js, vec![0.1, 0.2, 0.3, 0.4]);
    }

    proptest! {
        #[test]
        fn splitting_is_affine_and_decreasing(b1 in -0.05f64..0.1, b2 in -0.05f64..0.1) {
            let c = PhysicalConstants::default();
            let mut e = SpinEnsembleSpec::with_splitting(1.0, &c);
            e.external_field = b1;
            let n1 = nu_s_from_field(&e, &c).unwrap();
            e.external_field = b2;
            let n2 = nu_s_from_field(&e, &c).unwrap();
            let expected = c.zeeman_slope() * (b2 - b1);
            prop_assert!(((n1 - n2) - expected).abs() < 1e-14);
            if b1 < b2 {
                prop_assert!(n1 > n2);
            }
        }
    }
}
