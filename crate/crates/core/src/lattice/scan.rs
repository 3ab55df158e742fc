use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    bogoliubov_coefficients, dispersion_full, dispersion_tb, ground_energy_density, stability_check, LatticeParams,
};
use crate::error::{Error, Result};

/// Dispersion over the half zone. Unstable or gapless points carry `None`
/// rather than NaN.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionResult {
    pub params: LatticeParams,
    pub k_values: Vec<f64>,
    #[serde(rename = "E_full_GHz")]
    pub e_full: Vec<Option<f64>>,
    #[serde(rename = "E_tb_GHz")]
    pub e_tb: Vec<f64>,
    pub mu: Vec<Option<f64>>,
    pub nu: Vec<Option<f64>>,
    /// min_k E_k, attained at k = 0.
    #[serde(rename = "gap_GHz")]
    pub gap: Option<f64>,
    #[serde(rename = "E_g_GHz")]
    pub ground_energy: Option<f64>,
    #[serde(rename = "E_g_per_site_GHz")]
    pub ground_energy_density: Option<f64>,
    pub stable: bool,
    pub gapless: bool,
    #[serde(rename = "margin_GHz")]
    pub margin: f64,
    /// Half-zone interval [0, k_max] where E_k is imaginary.
    pub unstable_k: Option<(f64, f64)>,
}

impl DispersionResult {
    /// (k, E_k) on the full zone, mirroring the half-zone points to −k.
    pub fn full_zone(&self) -> Vec<(f64, Option<f64>)> {
        let mirrored = self.k_values.iter().zip(&self.e_full).skip(1).rev().map(|(&k, &e)| (-k, e));
        mirrored.chain(self.k_values.iter().copied().zip(self.e_full.iter().copied())).collect()
    }
}

/// k_m = πm/n for m = 0..n.
pub fn k_grid(points: usize) -> Vec<f64> {
    (0..points).map(|m| PI * m as f64 / points as f64).collect()
}

/// Momenta with 1 + cos k > ν_s/4g, i.e. k < arccos(ν_s/4g − 1).
fn unstable_interval(p: &LatticeParams) -> Option<(f64, f64)> {
    if stability_check(p).stable {
        return None;
    }
    let edge = (p.nu_s / (4.0 * p.g) - 1.0).clamp(-1.0, 1.0).acos();
    Some((0.0, edge))
}

pub fn brillouin_scan(p: &LatticeParams, points: usize) -> Result<DispersionResult> {
    let result = brillouin_scan_allow_unstable(p, points)?;
    match result.unstable_k {
        Some((k_min, k_max)) => Err(Error::UnstableBand { k_min, k_max }),
        None => Ok(result),
    }
}

pub fn brillouin_scan_allow_unstable(p: &LatticeParams, points: usize) -> Result<DispersionResult> {
    p.validate()?;
    if points < 2 {
        return Err(Error::Dimension(format!("scan needs at least 2 k points (got {points})")));
    }
    let k_values = k_grid(points);
    let rows: Vec<(Option<f64>, f64, Option<(f64, f64)>)> = k_values
        .par_iter()
        .map(|&k| (dispersion_full(p, k).ok(), dispersion_tb(p, k), bogoliubov_coefficients(p, k).ok()))
        .collect();
    let stability = stability_check(p);
    let ground_energy_density = if stability.stable { Some(ground_energy_density(p)?) } else { None };
    Ok(DispersionResult {
        params: *p,
        e_full: rows.iter().map(|r| r.0).collect(),
        e_tb: rows.iter().map(|r| r.1).collect(),
        mu: rows.iter().map(|r| r.2.map(|c| c.0)).collect(),
        nu: rows.iter().map(|r| r.2.map(|c| c.1)).collect(),
        gap: if stability.stable { rows.first().and_then(|r| r.0) } else { None },
        ground_energy: ground_energy_density.map(|d| d * p.sites as f64),
        ground_energy_density,
        stable: stability.stable,
        gapless: stability.gapless,
        margin: stability.margin,
        unstable_k: unstable_interval(p),
        k_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> LatticeParams {
        LatticeParams::new(1.0, 0.0625 * (1.0 / 5.0 + 1.0 / 7.0), 64).unwrap()
    }

    #[test]
    fn fig3_band() {
        let r = brillouin_scan(&fig3(), 200).unwrap();
        assert!((r.gap.unwrap() - 0.9103).abs() < 1e-4);
        let e: Vec<f64> = r.e_full.iter().map(|x| x.unwrap()).collect();
        assert!(e.windows(2).all(|w| w[1] > w[0]));
        assert!(e.iter().cloned().fold(0.0, f64::max) < 1.0);
        assert!(r.ground_energy.unwrap() < 0.0);
        assert!(r.mu.iter().zip(&r.nu).all(|(m, n)| (m.unwrap().powi(2) - n.unwrap().powi(2) - 1.0).abs() < 1e-12));
    }

    #[test]
    fn flat_band_without_coupling() {
        let r = brillouin_scan(&LatticeParams::new(1.4, 0.0, 8).unwrap(), 16).unwrap();
        assert_eq!(r.gap, Some(1.4));
        assert!(r.e_full.iter().all(|&e| e == Some(1.4)));
        assert_eq!(r.ground_energy, Some(0.0));
    }

    #[test]
    fn unstable_only_near_zero() {
        let p = LatticeParams::new(1.0, 0.125 * 1.01, 8).unwrap();
        match brillouin_scan(&p, 100) {
            Err(Error::UnstableBand { k_min, k_max }) => {
                assert_eq!(k_min, 0.0);
                assert!(k_max > 0.0 && k_max < 0.3, "{k_max}");
            }
            other => panic!("{other:?}"),
        }
        let r = brillouin_scan_allow_unstable(&p, 100).unwrap();
        let (_, k_max) = r.unstable_k.unwrap();
        for (k, e) in r.k_values.iter().zip(&r.e_full) {
            assert_eq!(e.is_none(), *k < k_max, "k={k}");
        }
        assert_eq!((r.gap, r.ground_energy), (None, None));
    }

    #[test]
    fn gapless_boundary_has_no_coefficients_at_zero() {
        let r = brillouin_scan(&LatticeParams::new(0.8, 0.1, 8).unwrap(), 10).unwrap();
        assert!(r.gapless && r.stable);
        assert_eq!(r.gap, Some(0.0));
        assert_eq!(r.mu[0], None);
        assert!(r.mu[1].is_some());
    }

    #[test]
    fn full_zone_mirrors() {
        let r = brillouin_scan(&fig3(), 4).unwrap();
        let z = r.full_zone();
        assert_eq!(z.len(), 7);
        assert_eq!(z[0].0, -r.k_values[3]);
        assert_eq!(z[0].1, r.e_full[3]);
        assert_eq!(z[3], (0.0, r.e_full[0]));
    }
}
