//! Builds occupation-number bases of the symmetric subspace, checks their
//! orthonormality, and shows the dimension formula.

use definetti::sym::{enumerate_compositions, sym_basis_vector, sym_dim, SymBasis};

fn main() {
    for (n, d) in [(2usize, 2usize), (3, 2), (4, 2), (3, 3)] {
        let basis = SymBasis::new(n, d);
        println!(
            "Sym^{n}(C^{d}): dim {} = binom({}, {n}), ambient {}",
            basis.len(),
            n + d - 1,
            basis.full_dim()
        );
        // Gram matrix of the dense columns must be the identity.
        let columns = basis.dense_columns();
        let gram = definetti::linalg::dagger(&columns).dot(&columns);
        let defect = definetti::linalg::max_abs_diff(&gram, &definetti::linalg::identity(basis.len()));
        println!("  orthonormality defect {defect:.3e}");
        assert_eq!(basis.len(), sym_dim(n, d));
    }

    // the basis vectors are labeled by compositions λ of n into d parts
    println!("\ncompositions of 3 into 2 parts and the basis vectors they label:");
    for lambda in enumerate_compositions(3, 2) {
        let v = sym_basis_vector(&lambda, 2);
        let support: Vec<usize> = v
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 1e-12)
            .map(|(i, _)| i)
            .collect();
        println!("  λ = {:?}: support {:?}", lambda.parts(), support);
    }
}
