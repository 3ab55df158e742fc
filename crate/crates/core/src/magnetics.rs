//! Magnetic field of a rectangular flux-qubit loop on its symmetric axis and
//! the qubit-spin couplings that follow from it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{FluxQubitSpec, PhysicalConstants, SpinEnsembleSpec};

const AMPERE_PER_MICROAMPERE: f64 = 1e-6;
const INVERSE_METRE_PER_INVERSE_MICROMETRE: f64 = 1e6;

/// Geometry-derived coupling of one qubit loop to one adjoining ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingEstimate {
    /// |B̄| at the crystal midpoint z = L/2 (T).
    #[serde(rename = "field_at_midpoint_T")]
    pub field_at_midpoint: f64,
    /// J^(m) for a single NV center at the midpoint (GHz).
    #[serde(rename = "single_spin_coupling_GHz")]
    pub single_spin_coupling: f64,
    pub spin_count: f64,
    /// J = √n J^(m) (GHz).
    #[serde(rename = "collective_coupling_GHz")]
    pub collective_coupling: f64,
}

/// Signed field (T) at distance `z_nv` (µm) from the loop's near edge along the
/// symmetric line.
///
/// ```text
/// B(z) = µ₀ I_p / π · { [(z+a)/b + b/(4(z+a))] / √((b/2)² + (a+z)²)
///                      − [b/(4z) + z/b] / √((b/2)² + z²) }
/// ```
pub fn loop_field(qubit: &FluxQubitSpec, z_nv: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(z_nv > 0.0) || !z_nv.is_finite() {
        return Err(Error::SingularPosition { z_um: z_nv });
    }
    let a = qubit.loop_a;
    let b = qubit.loop_b;
    let half_b = 0.5 * b;
    let far = z_nv + a;
    let far_term = (far / b + b / (4.0 * far)) / half_b.hypot(far);
    let near_term = (b / (4.0 * z_nv) + z_nv / b) / half_b.hypot(z_nv);
    let prefactor = constants.mu0 * qubit.persistent_current * AMPERE_PER_MICROAMPERE / PI;
    Ok(prefactor * (far_term - near_term) * INVERSE_METRE_PER_INVERSE_MICROMETRE)
}

/// J^(m) = g_e (µ_B/h) |B| / √2, in GHz.
pub fn single_spin_coupling(field: f64, constants: &PhysicalConstants) -> f64 {
    FRAC_1_SQRT_2 * constants.zeeman_slope() * field.abs()
}

/// Collective coupling of `qubit` to its neighbouring `ensemble`, with the
/// field evaluated at the crystal midpoint z = L/2.
pub fn collective_coupling(
    qubit: &FluxQubitSpec,
    ensemble: &SpinEnsembleSpec,
    constants: &PhysicalConstants,
) -> Result<CouplingEstimate> {
    let field = loop_field(qubit, 0.5 * ensemble.crystal_width, constants)?.abs();
    let single = single_spin_coupling(field, constants);
    let spin_count = ensemble.spin_count();
    Ok(CouplingEstimate {
        field_at_midpoint: field,
        single_spin_coupling: single,
        spin_count,
        collective_coupling: spin_count.sqrt() * single,
    })
}

/// One sample of the single-spin coupling along the crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub z_over_l: f64,
    #[serde(rename = "J_m_GHz")]
    pub single_spin_coupling: f64,
}

/// J^(m)(z) at each fractional position z/L of `grid`, every point inside (0, 1).
pub fn coupling_profile(
    qubit: &FluxQubitSpec,
    separation: f64,
    grid: &[f64],
    constants: &PhysicalConstants,
) -> Result<Vec<ProfilePoint>> {
    use rayon::prelude::*;

    if let Some(&bad) = grid.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::Range { what: "z/L", value: bad, lo: 0.0, hi: 1.0 });
    }
    grid.par_iter()
        .map(|&x| {
            let field = loop_field(qubit, x * separation, constants)?;
            Ok(ProfilePoint { z_over_l: x, single_spin_coupling: single_spin_coupling(field, constants) })
        })
        .collect()
}

/// `n` evenly spaced interior points (m + 1)/(n + 1); a single point is the midpoint.
pub fn interior_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|m| m as f64 / (n + 1) as f64).collect()
}
