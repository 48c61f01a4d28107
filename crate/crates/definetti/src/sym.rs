//! The symmetric subspace Sym^n(H): occupation-number basis Φ_λ, dimension,
//! projector, permutation-invariance tests, and symmetric purification.
//!
//! Basis vectors are stored sparsely (the index set B_λ plus one shared
//! amplitude), which keeps the module usable at dimensions where dense
//! projectors no longer fit.
//!
//! Purification construction: Ψ = (ρ^{1/2} ⊗ id_{K^{⊗N}}) Ω, where Ω pairs each
//! H_j with K_j in a maximally entangled reference and the factors are
//! regrouped as (H_1 ⊗ K_1) ⊗ ... ⊗ (H_N ⊗ K_N).  Invariance of ρ forces
//! invariance of its unique PSD square root, so Ψ is fixed by every pairwise
//! permutation of the (H_j ⊗ K_j) blocks and hence lies in Sym^N(H ⊗ K).

use ndarray::Array1;
use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{
    digits_to_index, psd_sqrt, CMatrix, CVector, DensityOperator, Projector,
    PureVector, ZERO,
};
use crate::perm::{enumerate_symmetric_group, generator_set, Permutation};

/// A d-tuple λ of nonnegative integers summing to n: the letter-count profile
/// indexing the symmetric basis vector Φ_λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    /// |B_λ|: the number of basis strings with this profile (a multinomial).
    pub fn string_count(&self) -> u128 {
        let mut total = 1u128;
        let mut remaining = self.n() as u128;
        for &part in &self.parts {
            total *= binom_u128(remaining, part as u128);
            remaining -= part as u128;
        }
        total
    }
}

pub fn binom_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binom(n: usize, k: usize) -> usize {
    binom_u128(n as u128, k as u128) as usize
}

/// All compositions of n into d parts, lexicographically by tuple with the
/// first part descending: (n,0,...), ..., (0,...,0,n).
pub fn enumerate_compositions(n: usize, d: usize) -> Vec<Composition> {
    assert!(d >= 1, "need at least one part");
    let mut out = Vec::with_capacity(binom(n + d - 1, n));
    let mut current = vec![0usize; d];
    fn rec(n: usize, pos: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if pos == current.len() - 1 {
            current[pos] = n;
            out.push(Composition::new(current.clone()));
            return;
        }
        for first in (0..=n).rev() {
            current[pos] = first;
            rec(n - first, pos + 1, current, out);
        }
    }
    rec(n, 0, &mut current, &mut out);
    out
}

/// dim(Sym^n(H)) = binom(n+d-1, n).
pub fn sym_dim(n: usize, d: usize) -> usize {
    binom(n + d - 1, n)
}

/// One symmetric basis vector Φ_λ, stored as the index set of its equal-weight
/// computational-basis components.
#[derive(Debug, Clone)]
pub struct SymBasisVector {
    pub lambda: Composition,
    /// Sorted basis-string indices in B_λ.
    pub indices: Vec<usize>,
    /// Shared amplitude 1/sqrt(|B_λ|).
    pub amplitude: f64,
}

impl SymBasisVector {
    pub fn new(lambda: Composition, d: usize) -> Self {
        let n = lambda.n();
        let mut indices = Vec::with_capacity(lambda.string_count() as usize);
        let mut digits = vec![0usize; n];
        let mut counts = lambda.parts().to_vec();
        fn rec(
            pos: usize,
            n: usize,
            d: usize,
            digits: &mut Vec<usize>,
            counts: &mut Vec<usize>,
            indices: &mut Vec<usize>,
        ) {
            if pos == n {
                indices.push(digits_to_index(digits, d));
                return;
            }
            for b in 0..d {
                if counts[b] == 0 {
                    continue;
                }
                counts[b] -= 1;
                digits[pos] = b;
                rec(pos + 1, n, d, digits, counts, indices);
                counts[b] += 1;
            }
        }
        rec(0, n, d, &mut digits, &mut counts, &mut indices);
        indices.sort_unstable();
        let amplitude = 1.0 / (indices.len().max(1) as f64).sqrt();
        Self {
            lambda,
            indices,
            amplitude,
        }
    }

    pub fn dense(&self, dim: usize) -> CVector {
        let mut v = Array1::from_elem(dim, ZERO);
        for &i in &self.indices {
            v[i] = Complex64::new(self.amplitude, 0.0);
        }
        v
    }

    /// <Φ_λ | v> computed against the sparse support.
    pub fn overlap(&self, v: &CVector) -> Complex64 {
        let mut acc = ZERO;
        for &i in &self.indices {
            acc += v[i];
        }
        acc * self.amplitude
    }
}

/// The full orthonormal basis {Φ_λ} of Sym^n(H), in lexicographic λ order.
#[derive(Debug, Clone)]
pub struct SymBasis {
    pub n: usize,
    pub d: usize,
    pub vectors: Vec<SymBasisVector>,
}

impl SymBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let vectors = enumerate_compositions(n, d)
            .into_iter()
            .map(|lambda| SymBasisVector::new(lambda, d))
            .collect();
        Self { n, d, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn full_dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Dense dim × sym_dim matrix whose columns are the Φ_λ.
    pub fn dense_columns(&self) -> CMatrix {
        let dim = self.full_dim();
        let mut m = ndarray::Array2::from_elem((dim, self.len()), ZERO);
        for (j, v) in self.vectors.iter().enumerate() {
            m.column_mut(j).assign(&v.dense(dim));
        }
        m
    }

    /// P_Sym v via the sparse basis, without a dense projector.
    pub fn project(&self, v: &CVector) -> CVector {
        let mut out = Array1::from_elem(v.len(), ZERO);
        for basis_vec in &self.vectors {
            let coeff = basis_vec.overlap(v);
            let amp = Complex64::new(basis_vec.amplitude, 0.0);
            for &i in &basis_vec.indices {
                out[i] += coeff * amp;
            }
        }
        out
    }

    /// ‖v − P_Sym v‖, formed subtractively so that vectors lying in the
    /// subspace report residuals at machine precision rather than the √ε
    /// floor of the Pythagorean form.
    pub fn residual(&self, v: &CVector) -> f64 {
        let projected = self.project(v);
        let mut acc = 0.0f64;
        for (a, b) in v.iter().zip(projected.iter()) {
            acc += (a - b).norm_sqr();
        }
        acc.sqrt()
    }
}

/// Φ_λ as a standalone unit vector.
pub fn sym_basis_vector(lambda: &Composition, d: usize) -> PureVector {
    let sv = SymBasisVector::new(lambda.clone(), d);
    let n = lambda.n();
    PureVector {
        amplitudes: sv.dense(d.pow(n as u32)),
        subsystem_dim: d,
        subsystem_count: n,
    }
}

/// Projector onto Sym^n(H) (dense basis; intended for desk-scale dimensions).
pub fn sym_projector(n: usize, d: usize) -> Projector {
    Projector::from_orthonormal_basis(SymBasis::new(n, d).dense_columns())
}

/// Outcome of a permutation-invariance test.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// max over tested π and entries of |(πρπ† − ρ)_{ij}|.
    pub max_deviation: f64,
    /// Whether the whole group was tested (false: generator set only).
    pub exhaustive: bool,
}

/// Tests πρπ† = ρ.  Enumerates S_n when n is within `cap`, otherwise falls
/// back to the generating set {adjacent transpositions, n-cycle}, which
/// suffices because invariance under generators extends to the group.
pub fn is_permutation_invariant(
    rho: &DensityOperator,
    tol: f64,
    cap: usize,
) -> InvarianceReport {
    let n = rho.subsystem_count();
    let d = rho.subsystem_dim();
    let (perms, exhaustive) = match enumerate_symmetric_group(n, cap) {
        Ok(all) => (all, true),
        Err(_) => (generator_set(n), false),
    };
    let mut max_deviation = 0.0f64;
    for p in &perms {
        if p == &Permutation::identity(n) {
            continue;
        }
        let conj = p.conjugate_matrix(rho.matrix(), d);
        let dev = crate::linalg::max_abs_diff(&conj, rho.matrix());
        if dev > max_deviation {
            max_deviation = dev;
        }
    }
    InvarianceReport {
        invariant: max_deviation <= tol,
        max_deviation,
        exhaustive,
    }
}

/// Symmetric purification of a permutation-invariant ρ on H^{⊗N}: a unit
/// vector on (H ⊗ K)^{⊗N} with dim K = dim H, lying in Sym^N(H ⊗ K), whose
/// K-partial trace recovers ρ.
pub fn symmetric_purification(
    rho: &DensityOperator,
    tol: &Tolerances,
    invariance_tol: f64,
    cap: usize,
) -> Result<PureVector> {
    let report = is_permutation_invariant(rho, invariance_tol, cap);
    if !report.invariant {
        return Err(Error::Precondition(format!(
            "state is not permutation-invariant (deviation {:.3e})",
            report.max_deviation
        )));
    }
    let d = rho.subsystem_dim();
    let n = rho.subsystem_count();
    let sqrt = psd_sqrt(rho.matrix(), tol)?;
    let dim_h = rho.dim();
    let out_dim = dim_h * dim_h;
    let mut amplitudes = Array1::from_elem(out_dim, ZERO);
    // Ψ = Σ_{a,x} sqrt[a,x] |a>_H |x>_K with the 2N factors regrouped as
    // (a_1 x_1)(a_2 x_2)...(a_N x_N); each pair digit is a_i * d + x_i.
    for a in 0..dim_h {
        for x in 0..dim_h {
            let amp = sqrt[(a, x)];
            if amp == ZERO {
                continue;
            }
            let mut idx = 0usize;
            let mut ra = a;
            let mut rx = x;
            let mut pair_digits = vec![0usize; n];
            for i in (0..n).rev() {
                pair_digits[i] = (ra % d) * d + (rx % d);
                ra /= d;
                rx /= d;
            }
            for &pd in &pair_digits {
                idx = idx * (d * d) + pd;
            }
            amplitudes[idx] = amp;
        }
    }
    PureVector::new(amplitudes, d * d, n, tol)
}
