//! Symmetric purification: any permutation-invariant state extends to a pure
//! state on doubled subsystems that lives inside the symmetric subspace.

use definetti::catalog::{build_example, ExampleId};
use definetti::config::Tolerances;
use definetti::linalg::{identity, DensityOperator};
use definetti::sym::{symmetric_purification, SymBasis};

fn main() {
    let tol = Tolerances::default();

    for (label, rho) in [
        (
            "parity mixture, N = 3",
            build_example(ExampleId::Ex2, 3, &tol).unwrap().state,
        ),
        (
            "maximally mixed, N = 2",
            DensityOperator::new(identity(4).mapv(|z| z / 4.0), 2, 2, &tol).unwrap(),
        ),
    ] {
        let psi = symmetric_purification(&rho, &tol, 1e-9, 8).unwrap();
        let basis = SymBasis::new(psi.subsystem_count, psi.subsystem_dim);
        println!("{label}:");
        println!(
            "  purification on (H⊗K)^⊗{} with pair dimension {}",
            psi.subsystem_count, psi.subsystem_dim
        );
        println!("  symmetric-subspace residual {:.3e}", basis.residual(&psi.amplitudes));
        let norm: f64 = psi.amplitudes.iter().map(|z| z.norm_sqr()).sum();
        println!("  norm {:.12}", norm.sqrt());
    }
}
