//! Dense complex linear algebra substrate: tensor products, partial traces,
//! trace norms, Hermitian eigendecomposition, and span orthonormalization.
//!
//! Conventions: subsystem 0 is the leftmost tensor factor, basis indices are
//! row-major over subsystem digit strings, and partial traces always remove the
//! trailing block of subsystems (callers pre-permute where necessary).

use ndarray::{Array1, Array2, ArrayView2};
use ndarray_linalg::{Eigh, SVD, UPLO};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// JSON wire form of a complex matrix: `{rows, cols, entries: [[re, im], ...]}`
/// with entries in row-major order.  Shared by all fixture files and CLI I/O.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: m.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Shape("non-finite entry".into()));
        }
        let data: Vec<Complex64> = self
            .entries
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        Array2::from_shape_vec((self.rows, self.cols), data)
            .map_err(|e| Error::Shape(e.to_string()))
    }
}

pub fn identity(dim: usize) -> CMatrix {
    Array2::eye(dim)
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    tensor_capped(a, b, usize::MAX).expect("no cap")
}

/// Kronecker product with a configurable entry-count cap.
pub fn tensor_capped(a: &CMatrix, b: &CMatrix, max_entries: usize) -> Result<CMatrix> {
    let rows = a
        .nrows()
        .checked_mul(b.nrows())
        .ok_or(Error::DimensionLimit(usize::MAX, max_entries))?;
    let cols = a
        .ncols()
        .checked_mul(b.ncols())
        .ok_or(Error::DimensionLimit(usize::MAX, max_entries))?;
    let entries = rows
        .checked_mul(cols)
        .ok_or(Error::DimensionLimit(usize::MAX, max_entries))?;
    if entries > max_entries {
        return Err(Error::DimensionLimit(entries, max_entries));
    }
    let mut out = Array2::from_elem((rows, cols), ZERO);
    for ((i, j), &aij) in a.indexed_iter() {
        if aij == ZERO {
            continue;
        }
        let mut block = out.slice_mut(ndarray::s![
            i * b.nrows()..(i + 1) * b.nrows(),
            j * b.ncols()..(j + 1) * b.ncols()
        ]);
        block.zip_mut_with(b, |o, &bij| *o += aij * bij);
    }
    Ok(out)
}

/// Kronecker product of vectors.
pub fn tensor_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = Array1::from_elem(a.len() * b.len(), ZERO);
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i * b.len() + j] = ai * bj;
        }
    }
    out
}

/// `v ⊗ v ⊗ ... ⊗ v` (`count` factors); `count = 0` gives the scalar `[1]`.
pub fn tensor_power_vec(v: &CVector, count: usize) -> CVector {
    let mut out = Array1::from_elem(1, ONE);
    for _ in 0..count {
        out = tensor_vec(&out, v);
    }
    out
}

pub fn tensor_power(m: &CMatrix, count: usize) -> CMatrix {
    let mut out = Array2::from_elem((1, 1), ONE);
    for _ in 0..count {
        out = tensor(&out, m);
    }
    out
}

/// Traces out the last `n - keep_first` subsystems of an operator on `n`
/// subsystems of dimension `d` each.  Trace-preserving.
pub fn partial_trace(op: &CMatrix, d: usize, n: usize, keep_first: usize) -> Result<CMatrix> {
    if op.nrows() != op.ncols() {
        return Err(Error::Shape("partial trace of a non-square matrix".into()));
    }
    let dim = d.pow(n as u32);
    if op.nrows() != dim {
        return Err(Error::Shape(format!(
            "matrix dimension {} does not equal {}^{}",
            op.nrows(),
            d,
            n
        )));
    }
    if keep_first > n {
        return Err(Error::Argument(format!("keep_first {} > n {}", keep_first, n)));
    }
    let dk = d.pow(keep_first as u32);
    let dt = dim / dk;
    let mut out = Array2::from_elem((dk, dk), ZERO);
    for i in 0..dk {
        for j in 0..dk {
            let mut acc = ZERO;
            for t in 0..dt {
                acc += op[(i * dt + t, j * dt + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

pub fn trace(op: &CMatrix) -> Complex64 {
    op.diag().sum()
}

pub fn dagger(op: &CMatrix) -> CMatrix {
    op.t().mapv(|z| z.conj())
}

pub fn hermiticity_defect(op: &CMatrix) -> f64 {
    let mut max = 0.0f64;
    for i in 0..op.nrows() {
        for j in i..op.ncols() {
            let diff = (op[(i, j)] - op[(j, i)].conj()).norm();
            if diff > max {
                max = diff;
            }
        }
    }
    max
}

pub fn is_hermitian(op: &CMatrix, tol: f64) -> bool {
    op.nrows() == op.ncols() && hermiticity_defect(op) <= tol
}

/// Sum of singular values; for Hermitian input this is the sum of absolute
/// eigenvalues (computed via the cheaper symmetric eigensolver).
pub fn trace_norm(op: &CMatrix) -> f64 {
    if op.nrows() == op.ncols() && hermiticity_defect(op) <= 1e-10 {
        let (vals, _) = hermitian_eig_unchecked(op);
        vals.iter().map(|x| x.abs()).sum()
    } else {
        let (_, s, _) = op.svd(false, false).expect("svd failed");
        s.sum()
    }
}

/// Trace distance `½‖a − b‖₁`.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    0.5 * trace_norm(&(a - b))
}

pub(crate) fn hermitian_eig_unchecked(op: &CMatrix) -> (Vec<f64>, CMatrix) {
    let (vals, vecs) = op.eigh(UPLO::Lower).expect("eigh failed");
    // eigh returns ascending order; flip to descending.  The backend sees the
    // row-major buffer as the transpose (= conjugate, for Hermitian input),
    // so its eigenvectors come back conjugated; undo that here.
    let n = vals.len();
    let mut vals_desc = Vec::with_capacity(n);
    let mut vecs_desc = Array2::from_elem((n, n), ZERO);
    for i in 0..n {
        vals_desc.push(vals[n - 1 - i]);
        vecs_desc
            .column_mut(i)
            .assign(&vecs.column(n - 1 - i).mapv(|z| z.conj()));
    }
    (vals_desc, vecs_desc)
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues in descending order,
/// eigenvectors as orthonormal columns.
pub fn hermitian_eig(op: &CMatrix, tol_herm: f64) -> Result<(Vec<f64>, CMatrix)> {
    let defect = hermiticity_defect(op);
    if defect > tol_herm {
        return Err(Error::NotHermitian(defect, tol_herm));
    }
    Ok(hermitian_eig_unchecked(op))
}

/// Hermitian square root with eigenvalues in `[-tol_psd, 0)` clamped to zero.
pub fn psd_sqrt(op: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let (vals, vecs) = hermitian_eig(op, tol.herm)?;
    if let Some(v) = vals.iter().find(|&&v| v < -tol.psd) {
        return Err(Error::InvalidState(format!("eigenvalue {v:.3e} below -tol_psd")));
    }
    let dim = op.nrows();
    let mut out = Array2::from_elem((dim, dim), ZERO);
    for (idx, &val) in vals.iter().enumerate() {
        if val <= 0.0 {
            continue;
        }
        let s = val.sqrt();
        let col = vecs.column(idx);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += Complex64::new(s, 0.0) * col[i] * col[j].conj();
            }
        }
    }
    Ok(out)
}

pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let prod = dagger(u).dot(u);
    let mut max = 0.0f64;
    for ((i, j), &z) in prod.indexed_iter() {
        let target = if i == j { ONE } else { ZERO };
        max = max.max((z - target).norm());
    }
    max
}

/// Hermitian idempotent projector stored via an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct Projector {
    dim: usize,
    /// Orthonormal columns spanning the range; `rank = basis.ncols()`.
    basis: CMatrix,
}

impl Projector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Array2::from_elem((dim, 0), ZERO),
        }
    }

    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            basis: identity(dim),
        }
    }

    /// Projector whose range is spanned by the given (not necessarily
    /// orthogonal or independent) vectors.  Singular values above `tol_rank`
    /// are retained.  An empty list yields the zero projector.
    pub fn from_span(vectors: &[CVector], dim: usize, tol_rank: f64) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(dim));
        }
        for v in vectors {
            if v.len() != dim {
                return Err(Error::Shape(format!(
                    "span vector of length {} in dimension {}",
                    v.len(),
                    dim
                )));
            }
        }
        let mut stack = Array2::from_elem((dim, vectors.len()), ZERO);
        for (j, v) in vectors.iter().enumerate() {
            stack.column_mut(j).assign(v);
        }
        Self::from_columns(&stack, tol_rank)
    }

    /// Orthonormalizes the columns of `stack` via SVD.
    pub fn from_columns(stack: &CMatrix, tol_rank: f64) -> Result<Self> {
        let (u, s, _) = stack.svd(true, false).expect("svd failed");
        let u = u.expect("left singular vectors requested");
        let rank = s.iter().filter(|&&sv| sv > tol_rank).count();
        Ok(Self {
            dim: stack.nrows(),
            basis: u.slice(ndarray::s![.., ..rank]).to_owned(),
        })
    }

    /// A projector from an already orthonormal basis (caller guarantees it).
    pub fn from_orthonormal_basis(basis: CMatrix) -> Self {
        Self {
            dim: basis.nrows(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> ArrayView2<'_, Complex64> {
        self.basis.view()
    }

    /// Dense matrix `P = B B†`.
    pub fn matrix(&self) -> CMatrix {
        self.basis.dot(&dagger(&self.basis))
    }

    /// `P v` without forming the dense matrix.
    pub fn apply(&self, v: &CVector) -> CVector {
        let coeffs = dagger(&self.basis).dot(v);
        self.basis.dot(&coeffs)
    }

    /// `P A P` without forming the dense projector.
    pub fn sandwich(&self, a: &CMatrix) -> CMatrix {
        let bd = dagger(&self.basis);
        let inner = bd.dot(a).dot(&self.basis);
        self.basis.dot(&inner).dot(&bd)
    }

    /// `‖v − P v‖`: how far `v` is from the range.
    pub fn residual(&self, v: &CVector) -> f64 {
        let pv = self.apply(v);
        (v - &pv).mapv(|z| z.norm_sqr()).sum().sqrt()
    }

    /// Conjugates the projector by a unitary: range becomes `U · range`.
    pub fn conjugated(&self, u: &CMatrix) -> Self {
        Self {
            dim: self.dim,
            basis: u.dot(&self.basis),
        }
    }
}

/// Hermitian PSD unit-trace operator on `n` subsystems of dimension `d`.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: CMatrix,
    subsystem_dim: usize,
    subsystem_count: usize,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix, d: usize, n: usize, tol: &Tolerances) -> Result<Self> {
        let dim = d.pow(n as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix for {} subsystems of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                n,
                d
            )));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > tol.herm {
            return Err(Error::NotHermitian(defect, tol.herm));
        }
        let tr = trace(&matrix);
        if (tr - ONE).norm() > tol.trace.max(1e-12) {
            return Err(Error::InvalidState(format!("trace {} is not 1", tr)));
        }
        let (vals, _) = hermitian_eig_unchecked(&matrix);
        if let Some(min) = vals.last() {
            if *min < -tol.psd {
                return Err(Error::InvalidState(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self {
            matrix,
            subsystem_dim: d,
            subsystem_count: n,
        })
    }

    /// Rank-one state from a unit vector.
    pub fn from_pure(v: &PureVector) -> Self {
        let dim = v.amplitudes.len();
        let mut m = Array2::from_elem((dim, dim), ZERO);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v.amplitudes[i] * v.amplitudes[j].conj();
            }
        }
        Self {
            matrix: m,
            subsystem_dim: v.subsystem_dim,
            subsystem_count: v.subsystem_count,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn subsystem_dim(&self) -> usize {
        self.subsystem_dim
    }

    pub fn subsystem_count(&self) -> usize {
        self.subsystem_count
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Spectral ensemble: eigenpairs with eigenvalue above `cutoff`.
    pub fn ensemble(&self, cutoff: f64) -> Vec<(f64, CVector)> {
        let (vals, vecs) = hermitian_eig_unchecked(&self.matrix);
        vals.iter()
            .enumerate()
            .filter(|(_, &v)| v > cutoff)
            .map(|(i, &v)| (v, vecs.column(i).to_owned()))
            .collect()
    }
}

/// Unit vector on `n` subsystems of dimension `d`.
#[derive(Debug, Clone)]
pub struct PureVector {
    pub amplitudes: CVector,
    pub subsystem_dim: usize,
    pub subsystem_count: usize,
}

impl PureVector {
    pub fn new(amplitudes: CVector, d: usize, n: usize, tol: &Tolerances) -> Result<Self> {
        if amplitudes.len() != d.pow(n as u32) {
            return Err(Error::Shape(format!(
                "vector of length {} for {} subsystems of dimension {}",
                amplitudes.len(),
                d,
                n
            )));
        }
        let norm = amplitudes.mapv(|z| z.norm_sqr()).sum().sqrt();
        if (norm - 1.0).abs() > tol.norm.max(1e-9) {
            return Err(Error::InvalidState(format!("norm {} is not 1", norm)));
        }
        Ok(Self {
            amplitudes,
            subsystem_dim: d,
            subsystem_count: n,
        })
    }

    /// Computational basis vector |b_1 ... b_n>.
    pub fn basis_state(digits: &[usize], d: usize) -> Self {
        let n = digits.len();
        let mut idx = 0usize;
        for &b in digits {
            assert!(b < d);
            idx = idx * d + b;
        }
        let mut amp = Array1::from_elem(d.pow(n as u32), ZERO);
        amp[idx] = ONE;
        Self {
            amplitudes: amp,
            subsystem_dim: d,
            subsystem_count: n,
        }
    }
}

/// Frobenius-norm distance, useful for exact-matrix comparisons in tests.
pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).mapv(|z| z.norm_sqr()).sum().sqrt()
}

/// Max-abs difference between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Splits a flat index into subsystem digits (most significant first).
pub fn index_to_digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        digits[i] = idx % d;
        idx /= d;
    }
    digits
}

pub fn digits_to_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0usize, |acc, &b| acc * d + b)
}

/// Sum over the trailing block: `tr_k((id ⊗ X) |ψ><φ|)` for vectors reshaped as
/// `d_keep × d_rest` matrices; used by the theorem pipeline.
pub fn reshape_vector(v: &CVector, rows: usize, cols: usize) -> Result<CMatrix> {
    if v.len() != rows * cols {
        return Err(Error::Shape(format!(
            "cannot reshape a length-{} vector to {}x{}",
            v.len(),
            rows,
            cols
        )));
    }
    Ok(Array2::from_shape_vec((rows, cols), v.to_vec()).expect("shape checked"))
}

/// Stacks column vectors into a matrix.
pub fn columns_to_matrix(cols: &[CVector], dim: usize) -> CMatrix {
    let mut m = Array2::from_elem((dim, cols.len()), ZERO);
    for (j, c) in cols.iter().enumerate() {
        m.column_mut(j).assign(c);
    }
    m
}

/// `X · X†` accumulated through BLAS.
pub fn gram_outer(x: &CMatrix) -> CMatrix {
    x.dot(&dagger(x))
}

pub fn vector_norm(v: &CVector) -> f64 {
    v.mapv(|z| z.norm_sqr()).sum().sqrt()
}

pub fn normalize(v: &CVector) -> CVector {
    let n = vector_norm(v);
    v.mapv(|z| z / n)
}

/// Deterministic unitary whose first column is `v` (Gram-Schmidt completion
/// against the standard basis).
pub fn unitary_with_first_column(v: &CVector) -> CMatrix {
    let d = v.len();
    let mut cols: Vec<CVector> = vec![normalize(v)];
    for i in 0..d {
        if cols.len() == d {
            break;
        }
        let mut e = Array1::from_elem(d, ZERO);
        e[i] = ONE;
        for c in &cols {
            let overlap: Complex64 = c.iter().zip(e.iter()).map(|(a, b)| a.conj() * b).sum();
            e = &e - &c.mapv(|z| z * overlap);
        }
        let nrm = vector_norm(&e);
        if nrm > 1e-8 {
            cols.push(e.mapv(|z| z / nrm));
        }
    }
    columns_to_matrix(&cols, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> CMatrix {
        ndarray::array![[ZERO, ONE], [ONE, ZERO]]
    }

    #[test]
    fn tensor_identity() {
        let id2 = identity(2);
        let out = tensor(&id2, &id2);
        assert_eq!(out, identity(4));
    }

    #[test]
    fn tensor_basis_bookkeeping() {
        // |0><0| ⊗ |1><1| places its single 1 at entry (1,1) of the 4x4 result.
        let p0 = ndarray::array![[ONE, ZERO], [ZERO, ZERO]];
        let p1 = ndarray::array![[ZERO, ZERO], [ZERO, ONE]];
        let out = tensor(&p0, &p1);
        for ((i, j), &z) in out.indexed_iter() {
            let expected = if i == 1 && j == 1 { ONE } else { ZERO };
            assert_eq!(z, expected);
        }
    }

    #[test]
    fn tensor_sigma_x_flips_both_qubits() {
        let xx = tensor(&sigma_x(), &sigma_x());
        let v00 = PureVector::basis_state(&[0, 0], 2).amplitudes;
        let out = xx.dot(&v00);
        let v11 = PureVector::basis_state(&[1, 1], 2).amplitudes;
        assert_abs_diff_eq!(vector_norm(&(&out - &v11)), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn tensor_dimension_cap() {
        let id = identity(8);
        let err = tensor_capped(&id, &id, 63).unwrap_err();
        assert!(matches!(err, Error::DimensionLimit(..)));
    }

    #[test]
    fn partial_trace_pure_product() {
        let v = PureVector::basis_state(&[0, 0], 2);
        let rho = DensityOperator::from_pure(&v);
        let out = partial_trace(rho.matrix(), 2, 2, 1).unwrap();
        let p0 = ndarray::array![[ONE, ZERO], [ZERO, ZERO]];
        assert_abs_diff_eq!(max_abs_diff(&out, &p0), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_singlet_is_maximally_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let psi: CVector = ndarray::array![ZERO, c(s, 0.0), c(-s, 0.0), ZERO];
        let rho = DensityOperator::from_pure(
            &PureVector::new(psi, 2, 2, &Tolerances::default()).unwrap(),
        );
        let out = partial_trace(rho.matrix(), 2, 2, 1).unwrap();
        let half = identity(2).mapv(|z| z * 0.5);
        assert_abs_diff_eq!(max_abs_diff(&out, &half), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_factorizes_products() {
        let rho = ndarray::array![[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]];
        let tau = ndarray::array![[c(0.4, 0.0), c(0.0, 0.1)], [c(0.0, -0.1), c(0.6, 0.0)]];
        let prod = tensor(&rho, &tau);
        let out = partial_trace(&prod, 2, 2, 1).unwrap();
        // tr(tau) = 1, so the product traces back to rho.
        assert_abs_diff_eq!(max_abs_diff(&out, &rho), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn trace_norm_diag() {
        let m = ndarray::array![[ONE, ZERO], [ZERO, c(-1.0, 0.0)]];
        assert_abs_diff_eq!(trace_norm(&m), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn trace_norm_orthogonal_states() {
        let p0 = ndarray::array![[ONE, ZERO], [ZERO, ZERO]];
        let p1 = ndarray::array![[ZERO, ZERO], [ZERO, ONE]];
        assert_abs_diff_eq!(trace_norm(&(&p0 - &p1)), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn trace_norm_of_projector_is_rank() {
        let tol = Tolerances::default();
        let v0: CVector = ndarray::array![ONE, ZERO];
        let v1: CVector = ndarray::array![ZERO, ONE];
        let p = Projector::from_span(&[v0, v1], 2, tol.rank).unwrap();
        assert_abs_diff_eq!(trace_norm(&p.matrix()), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_eig_reconstructs() {
        let h = ndarray::array![
            [c(1.0, 0.0), c(0.3, 0.4), c(0.0, -0.2)],
            [c(0.3, -0.4), c(-0.5, 0.0), c(0.1, 0.0)],
            [c(0.0, 0.2), c(0.1, 0.0), c(2.0, 0.0)]
        ];
        let (vals, vecs) = hermitian_eig(&h, 1e-9).unwrap();
        let mut rec = Array2::from_elem((3, 3), ZERO);
        for (i, &v) in vals.iter().enumerate() {
            let col = vecs.column(i);
            for r in 0..3 {
                for s in 0..3 {
                    rec[(r, s)] += c(v, 0.0) * col[r] * col[s].conj();
                }
            }
        }
        assert!(max_abs_diff(&rec, &h) < 1e-10);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn hermitian_eig_rejects_asymmetric() {
        let m = ndarray::array![[ONE, ONE], [ZERO, ONE]];
        assert!(hermitian_eig(&m, 1e-9).is_err());
    }

    #[test]
    fn projector_from_duplicate_span() {
        let tol = Tolerances::default();
        let v0: CVector = ndarray::array![ONE, ZERO];
        let p = Projector::from_span(&[v0.clone(), v0], 2, tol.rank).unwrap();
        assert_eq!(p.rank(), 1);
        let expected = ndarray::array![[ONE, ZERO], [ZERO, ZERO]];
        assert!(max_abs_diff(&p.matrix(), &expected) < 1e-12);
    }

    #[test]
    fn projector_from_plus_minus_span_is_identity() {
        let tol = Tolerances::default();
        let s = 1.0 / 2f64.sqrt();
        let plus: CVector = ndarray::array![c(s, 0.0), c(s, 0.0)];
        let minus: CVector = ndarray::array![c(s, 0.0), c(-s, 0.0)];
        let p = Projector::from_span(&[plus, minus], 2, tol.rank).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(max_abs_diff(&p.matrix(), &identity(2)) < 1e-12);
    }

    #[test]
    fn empty_span_gives_zero_projector() {
        let p = Projector::from_span(&[], 4, 1e-8).unwrap();
        assert_eq!(p.rank(), 0);
        assert!(max_abs_diff(&p.matrix(), &Array2::from_elem((4, 4), ZERO)) < 1e-15);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = ndarray::array![[c(1.0, 2.0), c(-0.5, 0.0)], [ZERO, c(0.0, -3.0)]];
        let json = MatrixJson::from_matrix(&m);
        let back = json.to_matrix().unwrap();
        assert_eq!(m, back);
    }
}
