//! Prototype states ν and projectors P^{n,r} onto the span of all
//! (n choose n-r)-i.i.d. vectors: vectors that, after some permutation of the
//! subsystems, carry ν on at least n-r tensor factors.
//!
//! The span is generated exactly: for each position subset S of size n-r, the
//! prototype vector on S tensored with every computational basis string on the
//! complement.  Orthonormalization of this finite family gives the projector.

use itertools::Itertools;
use ndarray::Array1;

use crate::error::{Error, Result};
use crate::linalg::{
    columns_to_matrix, normalize, reshape_vector, tensor_power_vec, unitarity_defect,
    vector_norm, CMatrix, CVector, Projector, ZERO,
};
use crate::perm::enumerate_symmetric_group;

/// A rank-one prototype on a single subsystem, carried as its unit vector.
#[derive(Debug, Clone)]
pub struct Prototype {
    vector: CVector,
}

impl Prototype {
    pub fn new(vector: CVector) -> Result<Self> {
        let norm = vector_norm(&vector);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Argument(format!(
                "prototype vector has norm {norm}, expected 1"
            )));
        }
        Ok(Self { vector })
    }

    /// Computational basis prototype |b>.
    pub fn basis(b: usize, d: usize) -> Self {
        let mut v = Array1::from_elem(d, ZERO);
        v[b] = crate::linalg::ONE;
        Self { vector: v }
    }

    pub fn from_unnormalized(vector: &CVector) -> Self {
        Self {
            vector: normalize(vector),
        }
    }

    pub fn d(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    /// The rank-one projector ν = |v><v|.
    pub fn projector(&self) -> CMatrix {
        let d = self.d();
        let mut m = ndarray::Array2::from_elem((d, d), ZERO);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.vector[i] * self.vector[j].conj();
            }
        }
        m
    }
}

/// Projector onto the span of all (n choose n-r)-i.i.d. vectors in a
/// prototype ν, together with the data that produced it.
#[derive(Debug, Clone)]
pub struct IidProjector {
    pub n: usize,
    pub r: usize,
    pub prototype: Prototype,
    pub projector: Projector,
}

impl IidProjector {
    pub fn rank(&self) -> usize {
        self.projector.rank()
    }
}

/// Builds P^{n,r}_ν.  `r >= n` yields the full-space projector.
pub fn iid_projector(
    n: usize,
    r: usize,
    prototype: &Prototype,
    tol_rank: f64,
    subset_cap: usize,
) -> Result<IidProjector> {
    let d = prototype.d();
    let dim = d.pow(n as u32);
    if r >= n {
        return Ok(IidProjector {
            n,
            r,
            prototype: prototype.clone(),
            projector: Projector::full(dim),
        });
    }
    if n > subset_cap {
        return Err(Error::EnumerationLimit(n, subset_cap));
    }
    let m = n - r;
    let mut generators: Vec<CVector> = Vec::new();
    for subset in (0..n).combinations(m) {
        let in_subset: Vec<bool> = {
            let mut mask = vec![false; n];
            for &i in &subset {
                mask[i] = true;
            }
            mask
        };
        // complement assignment: every d^r basis string on the free positions
        let free: Vec<usize> = (0..n).filter(|i| !in_subset[*i]).collect();
        let assignments = d.pow(free.len() as u32);
        for a in 0..assignments {
            let mut digits_free = vec![0usize; free.len()];
            let mut rem = a;
            for i in (0..free.len()).rev() {
                digits_free[i] = rem % d;
                rem /= d;
            }
            let mut v = Array1::from_elem(1, crate::linalg::ONE);
            for site in 0..n {
                let factor: CVector = if in_subset[site] {
                    prototype.vector().clone()
                } else {
                    let pos = free.iter().position(|&f| f == site).unwrap();
                    let mut e = Array1::from_elem(d, ZERO);
                    e[digits_free[pos]] = crate::linalg::ONE;
                    e
                };
                v = crate::linalg::tensor_vec(&v, &factor);
            }
            generators.push(v);
        }
    }
    let stack = columns_to_matrix(&generators, dim);
    let projector = Projector::from_columns(&stack, tol_rank)?;
    Ok(IidProjector {
        n,
        r,
        prototype: prototype.clone(),
        projector,
    })
}

/// Applies a d×d operator to one tensor site of a vector on n sites.
pub fn apply_one_site(v: &CVector, op: &CMatrix, d: usize, n: usize, site: usize) -> CVector {
    debug_assert_eq!(op.nrows(), d);
    let right: usize = d.pow((n - 1 - site) as u32);
    let left: usize = v.len() / (d * right);
    let mut out = Array1::from_elem(v.len(), ZERO);
    let mut x = vec![ZERO; d];
    for l in 0..left {
        for rr in 0..right {
            for (a, slot) in x.iter_mut().enumerate() {
                *slot = v[(l * d + a) * right + rr];
            }
            for b in 0..d {
                let mut acc = ZERO;
                for (a, &xa) in x.iter().enumerate() {
                    acc += op[(b, a)] * xa;
                }
                out[(l * d + b) * right + rr] = acc;
            }
        }
    }
    out
}

/// Applies `op` to every one of the n sites: realizes `op^{⊗n} v`.
pub fn apply_all_sites(v: &CVector, op: &CMatrix, d: usize, n: usize) -> CVector {
    let mut out = v.clone();
    for site in 0..n {
        out = apply_one_site(&out, op, d, n, site);
    }
    out
}

/// `P^{n,r}_U = U^{⊗n} P^{n,r}_id (U†)^{⊗n}`: conjugates the projector and
/// rotates the prototype to UνU†.
pub fn rotate_iid_projector(p: &IidProjector, u: &CMatrix) -> Result<IidProjector> {
    let defect = unitarity_defect(u);
    if defect > 1e-9 {
        return Err(Error::NotUnitary(defect));
    }
    let d = p.prototype.d();
    let basis = p.projector.basis().to_owned();
    let mut rotated = ndarray::Array2::from_elem(basis.dim(), ZERO);
    for j in 0..basis.ncols() {
        let col = basis.column(j).to_owned();
        rotated
            .column_mut(j)
            .assign(&apply_all_sites(&col, u, d, p.n));
    }
    Ok(IidProjector {
        n: p.n,
        r: p.r,
        prototype: Prototype::from_unnormalized(&u.dot(p.prototype.vector())),
        projector: Projector::from_orthonormal_basis(rotated),
    })
}

/// Does some permutation of Ψ carry ν on its first m subsystems?  Tests the
/// residual ‖(ν^{⊗m} ⊗ id) πΨ − πΨ‖ ≤ tol over all of S_n.
pub fn is_iid_vector(
    psi: &CVector,
    m: usize,
    prototype: &Prototype,
    d: usize,
    n: usize,
    tol: f64,
    cap: usize,
) -> Result<bool> {
    if m > n {
        return Err(Error::Argument(format!("m {} exceeds n {}", m, n)));
    }
    let w = tensor_power_vec(prototype.vector(), m);
    let rest = d.pow((n - m) as u32);
    for p in enumerate_symmetric_group(n, cap)? {
        let phi = p.permute_vector(psi, d);
        let mat = reshape_vector(&phi, w.len(), rest)?;
        // ‖(P ⊗ id)φ‖² = ‖w† Φ‖² for a rank-one P = |w><w|
        let mut proj_sq = 0.0f64;
        for col in 0..rest {
            let mut acc = ZERO;
            for row in 0..w.len() {
                acc += w[row].conj() * mat[(row, col)];
            }
            proj_sq += acc.norm_sqr();
        }
        let norm_sq: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - proj_sq).max(0.0).sqrt() <= tol {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff, PureVector};
    use num_complex::Complex64;

    fn proto0() -> Prototype {
        Prototype::basis(0, 2)
    }

    #[test]
    fn r0_is_rank_one() {
        let p = iid_projector(3, 0, &proto0(), 1e-8, 14).unwrap();
        assert_eq!(p.rank(), 1);
        let v = PureVector::basis_state(&[0, 0, 0], 2).amplitudes;
        assert!(p.projector.residual(&v) < 1e-12);
    }

    #[test]
    fn n2_r1_rank_three() {
        let p = iid_projector(2, 1, &proto0(), 1e-8, 14).unwrap();
        assert_eq!(p.rank(), 3);
        // span{|00>, |01>, |10>}; |11> is orthogonal to the range
        let v11 = PureVector::basis_state(&[1, 1], 2).amplitudes;
        let pv = p.projector.apply(&v11);
        assert!(vector_norm(&pv) < 1e-12);
    }

    #[test]
    fn n3_r1_rank_four() {
        let p = iid_projector(3, 1, &proto0(), 1e-8, 14).unwrap();
        assert_eq!(p.rank(), 4);
    }

    #[test]
    fn r_at_least_n_gives_identity() {
        let p = iid_projector(2, 2, &proto0(), 1e-8, 14).unwrap();
        assert_eq!(p.rank(), 4);
        assert!(max_abs_diff(&p.projector.matrix(), &identity(4)) < 1e-14);
    }

    #[test]
    fn rotation_by_identity_is_noop() {
        let p = iid_projector(2, 1, &proto0(), 1e-8, 14).unwrap();
        let q = rotate_iid_projector(&p, &identity(2)).unwrap();
        assert!(max_abs_diff(&p.projector.matrix(), &q.projector.matrix()) < 1e-12);
    }

    #[test]
    fn rotation_by_sigma_x_moves_prototype() {
        let sx: CMatrix = ndarray::array![
            [ZERO, crate::linalg::ONE],
            [crate::linalg::ONE, ZERO]
        ];
        let p = iid_projector(3, 0, &proto0(), 1e-8, 14).unwrap();
        let q = rotate_iid_projector(&p, &sx).unwrap();
        let v111 = PureVector::basis_state(&[1, 1, 1], 2).amplitudes;
        assert!(q.projector.residual(&v111) < 1e-10);
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn rotation_two_routes_agree() {
        // direct construction from the rotated prototype equals conjugation
        let v: CVector = ndarray::array![Complex64::new(0.6, 0.3), Complex64::new(0.1, -0.2)];
        let u = crate::linalg::unitary_with_first_column(&v);
        assert!(unitarity_defect(&u) < 1e-9);
        let base = iid_projector(3, 1, &proto0(), 1e-8, 14).unwrap();
        let rotated = rotate_iid_projector(&base, &u).unwrap();
        let direct = iid_projector(
            3,
            1,
            &Prototype::from_unnormalized(&u.column(0).to_owned()),
            1e-8,
            14,
        )
        .unwrap();
        assert!(
            max_abs_diff(&rotated.projector.matrix(), &direct.projector.matrix()) < 1e-9
        );
    }

    #[test]
    fn rotate_rejects_non_unitary() {
        let m: CMatrix = ndarray::array![
            [crate::linalg::ONE, crate::linalg::ONE],
            [ZERO, crate::linalg::ONE]
        ];
        let p = iid_projector(2, 0, &proto0(), 1e-8, 14).unwrap();
        assert!(rotate_iid_projector(&p, &m).is_err());
    }

    #[test]
    fn iid_vector_checks() {
        let tolc = 1e-10;
        // ν-power is n-i.i.d.
        let v = PureVector::basis_state(&[0, 0, 0], 2).amplitudes;
        assert!(is_iid_vector(&v, 3, &proto0(), 2, 3, tolc, 8).unwrap());
        // |001> is (3 choose 2)-i.i.d. in |0> via the identity permutation
        let v = PureVector::basis_state(&[0, 0, 1], 2).amplitudes;
        assert!(is_iid_vector(&v, 2, &proto0(), 2, 3, tolc, 8).unwrap());
        // the cat state is not (3 choose 2)-i.i.d. in |0>
        let s = 1.0 / 2f64.sqrt();
        let mut cat = Array1::from_elem(8, ZERO);
        cat[0] = Complex64::new(s, 0.0);
        cat[7] = Complex64::new(s, 0.0);
        assert!(!is_iid_vector(&cat, 2, &proto0(), 2, 3, tolc, 8).unwrap());
        // m > n errors
        assert!(is_iid_vector(&v, 4, &proto0(), 2, 3, tolc, 8).is_err());
    }

    #[test]
    fn monotone_ranges() {
        // range(P^{n,r}) ⊆ range(P^{n,r+1})
        for r in 0..3usize {
            let p = iid_projector(3, r, &proto0(), 1e-8, 14).unwrap();
            let q = iid_projector(3, r + 1, &proto0(), 1e-8, 14).unwrap();
            let pm = p.projector.matrix();
            let prod = q.projector.matrix().dot(&pm);
            assert!(max_abs_diff(&prod, &pm) < 1e-10);
        }
    }

    #[test]
    fn permutation_invariance_of_projector() {
        for (n, r) in [(3usize, 1usize), (4, 1), (4, 2)] {
            let p = iid_projector(n, r, &proto0(), 1e-8, 14).unwrap();
            let pm = p.projector.matrix();
            for perm in crate::perm::enumerate_symmetric_group(n, 8).unwrap() {
                let conj = perm.conjugate_matrix(&pm, 2);
                assert!(max_abs_diff(&conj, &pm) < 1e-10);
            }
        }
    }
}
