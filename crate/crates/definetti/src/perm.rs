//! Symmetric-group machinery: permutations, signs, cycle counts, enumeration,
//! and the unitary representation on tensor powers.
//!
//! Permutations are zero-based internally; the text form used by the CLI and
//! fixtures is the space-separated image array, e.g. `"2 0 1"`.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::{digits_to_index, index_to_digits, CMatrix, CVector, ONE, ZERO};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Argument(format!(
                    "images {:?} are not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    /// The n-cycle 0 -> 1 -> ... -> n-1 -> 0.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &pi) in self.images.iter().enumerate() {
            images[pi] = i;
        }
        Self { images }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            images: (0..self.len()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// Parity: +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        // n minus the number of cycles has the parity of the permutation.
        let n = self.len();
        if (n - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.len();
        let mut visited = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.images[i];
            }
        }
        cycles
    }

    /// Image of a computational basis index under the representation on
    /// `n` subsystems of dimension `d`: digit `j` of the output is digit
    /// `π⁻¹(j)` of the input.
    pub fn permute_index(&self, idx: usize, d: usize) -> usize {
        let n = self.len();
        let digits = index_to_digits(idx, d, n);
        let inv = self.inverse();
        let permuted: Vec<usize> = (0..n).map(|j| digits[inv.apply(j)]).collect();
        digits_to_index(&permuted, d)
    }

    /// Table mapping every basis index to its image; amortizes the digit
    /// arithmetic when the same permutation is applied many times.
    pub fn index_table(&self, d: usize) -> Vec<usize> {
        let n = self.len();
        let dim = d.pow(n as u32);
        let inv = self.inverse();
        let mut table = vec![0usize; dim];
        let mut digits = vec![0usize; n];
        for (idx, slot) in table.iter_mut().enumerate() {
            let mut rem = idx;
            for i in (0..n).rev() {
                digits[i] = rem % d;
                rem /= d;
            }
            let mut out = 0usize;
            for j in 0..n {
                out = out * d + digits[inv.apply(j)];
            }
            *slot = out;
        }
        table
    }

    /// Dense 0/1 permutation matrix of the unitary representation on d^n.
    pub fn unitary(&self, d: usize) -> CMatrix {
        let table = self.index_table(d);
        let dim = table.len();
        let mut u = Array2::from_elem((dim, dim), ZERO);
        for (src, &dst) in table.iter().enumerate() {
            u[(dst, src)] = ONE;
        }
        u
    }

    /// Applies the representation to a vector without forming the matrix.
    pub fn permute_vector(&self, v: &CVector, d: usize) -> CVector {
        let table = self.index_table(d);
        let mut out = ndarray::Array1::from_elem(v.len(), ZERO);
        for (src, &dst) in table.iter().enumerate() {
            out[dst] = v[src];
        }
        out
    }

    /// `U(π) A U(π)†` by index relabeling.
    pub fn conjugate_matrix(&self, a: &CMatrix, d: usize) -> CMatrix {
        let table = self.index_table(d);
        let dim = table.len();
        let mut out = Array2::from_elem((dim, dim), ZERO);
        for i in 0..dim {
            for j in 0..dim {
                out[(table[i], table[j])] = a[(i, j)];
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.images
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let images: std::result::Result<Vec<usize>, _> =
            text.split_whitespace().map(|t| t.parse()).collect();
        let images = images.map_err(|e| Error::Argument(format!("bad permutation text: {e}")))?;
        Self::new(images)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// All n! permutations in lexicographic order of the image array.
pub fn enumerate_symmetric_group(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n > cap {
        return Err(Error::EnumerationLimit(n, cap));
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    Ok(out)
}

/// Generating set used when full enumeration is out of reach: adjacent
/// transpositions plus the n-cycle.
pub fn generator_set(n: usize) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = (0..n.saturating_sub(1))
        .map(|i| Permutation::transposition(n, i, i + 1))
        .collect();
    if n > 2 {
        gens.push(Permutation::cycle(n));
    }
    gens
}
