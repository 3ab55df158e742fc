//! The uniform periodic array of ensembles coupled through eliminated qubits:
//!
//! ```text
//! H = (ν_s − 2g) Σ_j n_j − g Σ_j (s_j†s_j† + s_j s_j + s_j†s_j+1 + s_j+1†s_j + s_j†s_j+1† + s_j+1 s_j)
//! ```
//!
//! In momentum space each (k, −k) pair is a two-mode squeezing problem with
//! A_k = ν_s − 2g(1 + cos k) and B_k = −2g(1 + cos k), solved by a real
//! Bogoliubov rotation with E_k = √(A_k² − B_k²).

mod finite;
mod scan;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{PhysicalConstants, SpinEnsembleSpec};

pub use finite::{finite_chain_spectrum, MAX_FINITE_SITES};
pub use scan::{brillouin_scan, brillouin_scan_allow_unstable, k_grid, DispersionResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeParams {
    #[serde(rename = "nu_s_GHz")]
    pub nu_s: f64,
    #[serde(rename = "g_GHz")]
    pub g: f64,
    pub sites: usize,
}

impl LatticeParams {
    pub fn new(nu_s: f64, g: f64, sites: usize) -> Result<Self> {
        let p = Self { nu_s, g, sites };
        p.validate()?;
        Ok(p)
    }

    /// Array built from identical qubits at ν_q coupled with strength J.
    pub fn from_chain_values(coupling: f64, nu_q: f64, nu_s: f64, sites: usize) -> Result<Self> {
        Self::new(nu_s, lattice_g(coupling, nu_q, nu_s)?, sites)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu_s > 0.0 && self.nu_s.is_finite()) {
            return Err(Error::NonPositiveSplitting { nu_s: self.nu_s });
        }
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return Err(Error::Config(format!("lattice coupling g = {} GHz must be finite and non-negative", self.g)));
        }
        if self.sites < 2 {
            return Err(Error::Dimension(format!("lattice needs at least 2 sites (got {})", self.sites)));
        }
        Ok(())
    }

    /// Normal coefficient A_k.
    pub fn normal(&self, k: f64) -> f64 {
        self.nu_s - 2.0 * self.g * (1.0 + k.cos())
    }

    /// Anomalous coefficient B_k.
    pub fn anomalous(&self, k: f64) -> f64 {
        -2.0 * self.g * (1.0 + k.cos())
    }

    /// A_k² − B_k², written as ν_s(ν_s − 4g(1 + cos k)) so that it is exactly
    /// zero at k = 0 when ν_s = 8g.
    pub fn radicand(&self, k: f64) -> f64 {
        self.nu_s * (self.nu_s - 4.0 * self.g * (1.0 + k.cos()))
    }
}

/// g = J²(1/Δ + 1/Λ) with Δ = ν_q − ν_s, Λ = ν_q + ν_s.
pub fn lattice_g(coupling: f64, nu_q: f64, nu_s: f64) -> Result<f64> {
    if !(nu_s > 0.0) {
        return Err(Error::NonPositiveSplitting { nu_s });
    }
    let detuning = nu_q - nu_s;
    if !(detuning > 0.0) {
        return Err(Error::Resonance { qubit: 0, ensemble: 0, detuning });
    }
    Ok(coupling * coupling * (1.0 / detuning + 1.0 / (nu_q + nu_s)))
}

/// Qubit frequency for which `lattice_g` equals `ratio · ν_s`, the positive
/// root of g ν_q² − 2J² ν_q − g ν_s² = 0.
pub fn qubit_frequency_for_ratio(coupling: f64, nu_s: f64, ratio: f64) -> Result<f64> {
    if !(nu_s > 0.0) {
        return Err(Error::NonPositiveSplitting { nu_s });
    }
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(Error::Config(format!("target g/nu_s = {ratio} must be positive")));
    }
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::Config(format!("coupling J = {coupling} GHz must be positive")));
    }
    let g = ratio * nu_s;
    let j2 = coupling * coupling;
    Ok((j2 + (j2 * j2 + g * g * nu_s * nu_s).sqrt()) / g)
}

/// Quasi-particle energy E_k = √(ν_s² − 4ν_s g(1 + cos k)).
pub fn dispersion_full(p: &LatticeParams, k: f64) -> Result<f64> {
    let radicand = p.radicand(k);
    if radicand < 0.0 {
        return Err(Error::UnstableMode { k, radicand });
    }
    Ok(radicand.sqrt())
}

/// Tight-binding band ν_s − 2g(1 + cos k).
pub fn dispersion_tb(p: &LatticeParams, k: f64) -> f64 {
    p.normal(k)
}

/// E_g = ½ Σ_k (E_k − A_k) over the N allowed momenta k = 2πm/N.
///
/// Each (k, −k) pair contributes E_k − A_k once; the self-paired modes k = 0
/// and k = π contribute half of that.
pub fn ground_state_energy(p: &LatticeParams) -> Result<f64> {
    p.validate()?;
    let n = p.sites;
    let mut sum = 0.0;
    for m in 0..n {
        let k = 2.0 * PI * m as f64 / n as f64;
        sum += dispersion_full(p, k)? - p.normal(k);
    }
    Ok(0.5 * sum)
}

pub fn ground_energy_density(p: &LatticeParams) -> Result<f64> {
    Ok(ground_state_energy(p)? / p.sites as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stability {
    pub stable: bool,
    /// ν_s − 8g (GHz).
    #[serde(rename = "margin_GHz")]
    pub margin: f64,
    /// Stable with a zero-energy k = 0 mode.
    pub gapless: bool,
}

pub fn stability_check(p: &LatticeParams) -> Stability {
    let margin = p.nu_s - 8.0 * p.g;
    Stability { stable: margin >= 0.0, margin, gapless: margin == 0.0 }
}

/// Real Bogoliubov coefficients (µ_k, ν_k) with µ² − ν² = 1 and
/// sign(ν_k) = sign(B_k).
pub fn bogoliubov_coefficients(p: &LatticeParams, k: f64) -> Result<(f64, f64)> {
    let e = dispersion_full(p, k)?;
    if e == 0.0 {
        return Err(Error::DivergentCoefficients { k });
    }
    let ratio = p.normal(k) / e;
    let mu = ((ratio + 1.0) / 2.0).sqrt();
    let nu = p.anomalous(k).signum() * ((ratio - 1.0).max(0.0) / 2.0).sqrt();
    Ok((mu, nu))
}

/// sup_k |E_full − E_tb| sampled on `points` evenly spaced momenta in [0, π].
pub fn tight_binding_deviation(p: &LatticeParams, points: usize) -> Result<f64> {
    let points = points.max(2);
    let mut worst = 0.0f64;
    for m in 0..points {
        let k = PI * m as f64 / (points - 1) as f64;
        worst = worst.max((dispersion_full(p, k)? - dispersion_tb(p, k)).abs());
    }
    Ok(worst)
}

/// Field B* at which ν_s = D − g_e µ_B B / h drops to 8g; weaker fields keep
/// the array stable.
pub fn critical_field(ensemble: &SpinEnsembleSpec, g: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(g >= 0.0 && g.is_finite()) {
        return Err(Error::Config(format!("lattice coupling g = {g} GHz must be finite and non-negative")));
    }
    let d = ensemble.zero_field_splitting;
    if 8.0 * g >= d {
        return Err(Error::NoStableField { eight_g: 8.0 * g, zero_field_splitting: d });
    }
    Ok((d - 8.0 * g) / constants.zeeman_slope())
}
