use std::ops::{Add, AddAssign, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense operator on a tensor-product space with subsystem dimensions `dims`.
///
/// Slot 0 is the most significant factor of the Kronecker product.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dims: Vec<usize>,
    data: DMatrix<C64>,
}

impl OperatorMatrix {
    pub fn new(dims: Vec<usize>, data: DMatrix<C64>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(format!("invalid subsystem dimensions {dims:?}")));
        }
        if data.nrows() != total || data.ncols() != total {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but dims {dims:?} need {total}x{total}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { dims, data })
    }

    /// Single-subsystem operator from real row-major entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let data = DMatrix::from_fn(n, n, |r, c| C64::new(rows[r][c], 0.0));
        Self { dims: vec![n], data }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self { dims: dims.to_vec(), data: DMatrix::identity(n, n) }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self { dims: dims.to_vec(), data: DMatrix::zeros(n, n) }
    }

    pub fn diagonal(dims: &[usize], diag: impl IntoIterator<Item = f64>) -> Self {
        let mut out = Self::zeros(dims);
        let mut count = 0;
        for (i, d) in diag.into_iter().enumerate() {
            out.data[(i, i)] = C64::new(d, 0.0);
            count += 1;
        }
        assert_eq!(count, out.dim(), "diagonal length must equal the dimension");
        out
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self { dims: self.dims.clone(), data: self.data.adjoint() }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { dims: self.dims.clone(), data: &self.data * C64::new(factor, 0.0) }
    }

    /// `self ⊗ other`, with `other`'s subsystems appended after `self`'s.
    pub fn kron(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims, data: self.data.kronecker(&other.data) }
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.check_same_space(other);
        let ab = &self.data * &other.data;
        let ba = &other.data * &self.data;
        Self { dims: self.dims.clone(), data: ab - ba }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |H − H†|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.data[(r, c)] - self.data[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// max |A + A†|, zero for anti-Hermitian operators.
    pub fn anti_hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.data[(r, c)] + self.data[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Hermitian to `rel_tol` relative to the largest entry.
    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermiticity_deviation() <= rel_tol * self.max_abs()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.data * v
    }

    /// Sub-block on the given basis indices (rows and columns).
    pub fn restricted(&self, basis: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(basis.len(), basis.len(), |r, c| self.data[(basis[r], basis[c])])
    }

    fn check_same_space(&self, other: &Self) {
        assert_eq!(
            self.dims, other.dims,
            "operators act on different spaces ({:?} vs {:?})",
            self.dims, other.dims
        );
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.check_same_space(rhs);
        OperatorMatrix { dims: self.dims.clone(), data: &self.data + &rhs.data }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.check_same_space(rhs);
        OperatorMatrix { dims: self.dims.clone(), data: &self.data - &rhs.data }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        self.check_same_space(rhs);
        OperatorMatrix { dims: self.dims.clone(), data: &self.data * &rhs.data }
    }
}

impl AddAssign<&OperatorMatrix> for OperatorMatrix {
    fn add_assign(&mut self, rhs: &OperatorMatrix) {
        self.check_same_space(rhs);
        self.data += &rhs.data;
    }
}

impl OperatorMatrix {
    /// `self += factor · rhs` without a temporary.
    pub fn add_scaled(&mut self, factor: f64, rhs: &OperatorMatrix) {
        self.check_same_space(rhs);
        let f = C64::new(factor, 0.0);
        self.data.zip_apply(&rhs.data, |a, b| *a += f * b);
    }
}

pub fn sigma_x() -> OperatorMatrix {
    OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn sigma_y() -> OperatorMatrix {
    let i = C64::i();
    let data = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), -i, i, C64::new(0.0, 0.0)]);
    OperatorMatrix { dims: vec![2], data }
}

/// σ_z = diag(+1, −1): basis index 0 is the excited state, 1 the ground state.
pub fn sigma_z() -> OperatorMatrix {
    OperatorMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// σ₊ = |e⟩⟨g|.
pub fn sigma_plus() -> OperatorMatrix {
    OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
}

/// σ₋ = |g⟩⟨e|.
pub fn sigma_minus() -> OperatorMatrix {
    OperatorMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]])
}

/// Truncated annihilator on Fock states 0..d: a[m, m+1] = √(m+1).
pub fn boson_annihilator(cutoff: usize) -> Result<OperatorMatrix> {
    if cutoff < 2 {
        return Err(Error::Dimension(format!("Fock cutoff must be at least 2 (got {cutoff})")));
    }
    let mut data = DMatrix::zeros(cutoff, cutoff);
    for m in 0..cutoff - 1 {
        data[(m, m + 1)] = C64::new(((m + 1) as f64).sqrt(), 0.0);
    }
    Ok(OperatorMatrix { dims: vec![cutoff], data })
}

pub fn number_operator(cutoff: usize) -> Result<OperatorMatrix> {
    if cutoff < 2 {
        return Err(Error::Dimension(format!("Fock cutoff must be at least 2 (got {cutoff})")));
    }
    Ok(OperatorMatrix::diagonal(&[cutoff], (0..cutoff).map(|m| m as f64)))
}

/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` in `slot`.
pub fn embed(op: &OperatorMatrix, slot: usize, dims: &[usize]) -> Result<OperatorMatrix> {
    embed_product(&[(slot, op)], dims)
}

/// Tensor product placing each factor in its slot and identities elsewhere.
/// Factors must occupy distinct slots; the result equals the product of the
/// individual embeddings.
pub fn embed_product(factors: &[(usize, &OperatorMatrix)], dims: &[usize]) -> Result<OperatorMatrix> {
    for (k, &(slot, op)) in factors.iter().enumerate() {
        if slot >= dims.len() {
            return Err(Error::Dimension(format!("slot {slot} out of range for dims {dims:?}")));
        }
        if op.dim() != dims[slot] {
            return Err(Error::Dimension(format!(
                "operator of dimension {} does not fit slot {slot} of dimension {}",
                op.dim(),
                dims[slot]
            )));
        }
        if factors[..k].iter().any(|&(s, _)| s == slot) {
            return Err(Error::Dimension(format!("slot {slot} given twice")));
        }
    }
    let mut data = DMatrix::<C64>::identity(1, 1);
    let mut pending_identity = 1usize;
    for (slot, &d) in dims.iter().enumerate() {
        match factors.iter().find(|&&(s, _)| s == slot) {
            Some(&(_, op)) => {
                if pending_identity > 1 {
                    data = data.kronecker(&DMatrix::identity(pending_identity, pending_identity));
                    pending_identity = 1;
                }
                data = data.kronecker(&op.data);
            }
            None => pending_identity *= d,
        }
    }
    if pending_identity > 1 {
        data = data.kronecker(&DMatrix::identity(pending_identity, pending_identity));
    }
    Ok(OperatorMatrix { dims: dims.to_vec(), data })
}
