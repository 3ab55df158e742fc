//! Real-space diagonalisation of the periodic array, independent of the
//! momentum-space solution.

use nalgebra::DMatrix;

use super::LatticeParams;
use crate::error::{Error, Result};

pub const MAX_FINITE_SITES: usize = 512;

/// Imaginary parts below this (relative to ν_s) are treated as rounding.
const IMAGINARY_TOL: f64 = 1e-7;

/// Writing H = Σ A_ij s_i†s_j + ½ Σ B_ij (s_i†s_j† + s_i s_j), the dynamical
/// matrix [[A, B], [−B, −A]] has eigenvalues ±E_n. Returns the N excitation
/// energies E_n in ascending order.
pub fn finite_chain_spectrum(p: &LatticeParams) -> Result<Vec<f64>> {
    p.validate()?;
    let n = p.sites;
    if n > MAX_FINITE_SITES {
        return Err(Error::Dimension(format!("finite chain limited to {MAX_FINITE_SITES} sites (got {n})")));
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let next = (j + 1) % n;
        a[(j, j)] += p.nu_s - 2.0 * p.g;
        // −g s_j†s_j† carries weight ½B_jj
        b[(j, j)] += -2.0 * p.g;
        a[(j, next)] += -p.g;
        a[(next, j)] += -p.g;
        b[(j, next)] += -p.g;
        b[(next, j)] += -p.g;
    }
    let mut dynamical = DMatrix::<f64>::zeros(2 * n, 2 * n);
    dynamical.view_mut((0, 0), (n, n)).copy_from(&a);
    dynamical.view_mut((0, n), (n, n)).copy_from(&b);
    dynamical.view_mut((n, 0), (n, n)).copy_from(&(-&b));
    dynamical.view_mut((n, n), (n, n)).copy_from(&(-&a));

    let eigenvalues = dynamical.complex_eigenvalues();
    let max_imaginary = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_imaginary > IMAGINARY_TOL * p.nu_s {
        return Err(Error::UnstableSpectrum { max_imaginary });
    }
    let mut real: Vec<f64> = eigenvalues.iter().map(|z| z.re).collect();
    real.sort_by(|x, y| y.total_cmp(x));
    real.truncate(n);
    real.reverse();
    Ok(real)
}
