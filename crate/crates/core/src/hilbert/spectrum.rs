use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::OperatorMatrix;
use crate::error::{Error, Result};

/// Relative tolerance for the Hermiticity check on solver input.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Ascending (GHz).
    pub eigenvalues: Vec<f64>,
    pub ground_energy: f64,
}

impl SpectrumResult {
    fn from_sorted(eigenvalues: Vec<f64>) -> Self {
        let ground_energy = eigenvalues.first().copied().unwrap_or(f64::NAN);
        Self { eigenvalues, ground_energy }
    }

    /// E_i − E_0 for the `count` levels above the ground state.
    pub fn excitation_energies(&self, count: usize) -> Vec<f64> {
        self.eigenvalues.iter().skip(1).take(count).map(|e| e - self.ground_energy).collect()
    }
}

/// Eigenvalues plus eigenvectors; column `k` of `vectors` belongs to `spectrum.eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub spectrum: SpectrumResult,
    pub vectors: DMatrix<C64>,
}

fn check_hermitian(op: &OperatorMatrix) -> Result<()> {
    let deviation = op.hermiticity_deviation();
    let scale = op.max_abs();
    if deviation > HERMITIAN_TOL * scale {
        return Err(Error::Hermiticity { deviation, scale });
    }
    Ok(())
}

fn real_part(op: &OperatorMatrix) -> DMatrix<f64> {
    op.data().map(|z| z.re)
}

/// Full ascending spectrum of a Hermitian operator.
pub fn eigensolve(op: &OperatorMatrix) -> Result<SpectrumResult> {
    check_hermitian(op)?;
    let mut values: Vec<f64> = if op.is_real() {
        real_part(op).symmetric_eigenvalues().iter().copied().collect()
    } else {
        op.data().clone().symmetric_eigenvalues().iter().copied().collect()
    };
    values.sort_by(f64::total_cmp);
    Ok(SpectrumResult::from_sorted(values))
}

pub fn eigensolve_with_vectors(op: &OperatorMatrix) -> Result<Eigensystem> {
    check_hermitian(op)?;
    let (values, vectors): (Vec<f64>, DMatrix<C64>) = if op.is_real() {
        let eig = SymmetricEigen::new(real_part(op));
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors.map(|x| C64::new(x, 0.0)))
    } else {
        let eig = SymmetricEigen::new(op.data().clone());
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = DMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, order[c])]);
    Ok(Eigensystem { spectrum: SpectrumResult::from_sorted(sorted_values), vectors: sorted_vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{sigma_y, sigma_z};

    #[test]
    fn qubit_levels() {
        let s = eigensolve(&sigma_z().scaled(0.5 * 6.0)).unwrap();
        assert_eq!(s.eigenvalues, vec![-3.0, 3.0]);
        assert_eq!(s.ground_energy, -3.0);
    }

    #[test]
    fn diagonal_sorted() {
        let d = OperatorMatrix::diagonal(&[4], [3.0, -1.0, 2.0, 0.5]);
        assert_eq!(eigensolve(&d).unwrap().eigenvalues, vec![-1.0, 0.5, 2.0, 3.0]);
    }

    #[test]
    fn two_level_block() {
        let (j, delta) = (0.3, 1.7);
        let h = OperatorMatrix::from_real_rows(&[&[0.0, j], &[j, delta]]);
        let s = eigensolve(&h).unwrap();
        let root = (delta * delta + 4.0 * j * j).sqrt();
        assert!((s.eigenvalues[0] - (delta - root) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - (delta + root) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_path() {
        let s = eigensolve(&sigma_y()).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14 && (s.eigenvalues[1] - 1.0).abs() < 1e-14);
        let sys = eigensolve_with_vectors(&sigma_y()).unwrap();
        let v = sys.vectors.column(0).into_owned();
        let hv = sigma_y().apply(&v);
        assert!((hv + v).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        match eigensolve(&m) {
            Err(Error::Hermiticity { deviation, .. }) => assert_eq!(deviation, 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vectors_follow_sorted_values() {
        let d = OperatorMatrix::diagonal(&[3], [2.0, 0.0, 1.0]);
        let sys = eigensolve_with_vectors(&d).unwrap();
        assert_eq!(sys.spectrum.eigenvalues, vec![0.0, 1.0, 2.0]);
        assert!((sys.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((sys.vectors[(0, 2)].norm() - 1.0).abs() < 1e-15);
    }
}
