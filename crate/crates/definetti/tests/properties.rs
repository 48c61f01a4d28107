//! Property tests for the structural invariants: trace bookkeeping of tensor
//! products and partial traces, group structure of permutations, projector
//! idempotence, bound-chain ordering, and entropy concavity.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use proptest::prelude::*;

use definetti::channel::von_neumann_entropy;
use definetti::linalg::{
    dagger, max_abs_diff, partial_trace, tensor, trace_norm, CMatrix, ZERO,
};
use definetti::perm::Permutation;
use definetti::sym::{sym_projector, SymBasis};
use definetti::theorem::{error_bound, gamma_bound_check, gamma_exact, TheoremParams};

fn complex_matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(
        (-1.0f64..1.0, -1.0f64..1.0),
        dim * dim,
    )
    .prop_map(move |entries| {
        Array2::from_shape_vec(
            (dim, dim),
            entries.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )
        .unwrap()
    })
}

fn density_matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    complex_matrix(dim).prop_map(move |g| {
        let mut m = g.dot(&dagger(&g));
        for i in 0..dim {
            m[(i, i)] += Complex64::new(1e-6, 0.0); // keep it full rank
        }
        let tr: f64 = (0..dim).map(|i| m[(i, i)].re).sum();
        m.mapv(|z| z / tr)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just(n).prop_perturb(move |n, mut rng| {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        Permutation::new(images).unwrap()
    })
}

fn trace(m: &CMatrix) -> Complex64 {
    (0..m.nrows()).map(|i| m[(i, i)]).fold(ZERO, |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_trace_is_multiplicative(a in complex_matrix(3), b in complex_matrix(2)) {
        let t = tensor(&a, &b);
        let expected = trace(&a) * trace(&b);
        prop_assert!((trace(&t) - expected).norm() <= 1e-10);
    }

    #[test]
    fn partial_trace_preserves_trace(rho in density_matrix(8)) {
        for keep in 0..=3usize {
            let reduced = partial_trace(&rho, 2, 3, keep).unwrap();
            prop_assert!((trace(&reduced) - trace(&rho)).norm() <= 1e-10);
        }
    }

    #[test]
    fn partial_trace_contracts_trace_norm(a in complex_matrix(4), b in complex_matrix(4)) {
        // data-processing: ‖tr_k(A−B)‖₁ ≤ ‖A−B‖₁ for Hermitian differences
        let ha = &a + &dagger(&a);
        let hb = &b + &dagger(&b);
        let diff = &ha - &hb;
        let reduced = partial_trace(&diff, 2, 2, 1).unwrap();
        prop_assert!(trace_norm(&reduced) <= trace_norm(&diff) + 1e-9);
    }

    #[test]
    fn permutation_representation_is_a_homomorphism(
        p in permutation(4),
        q in permutation(4),
    ) {
        let d = 2usize;
        let composed = p.compose(&q).unitary(d);
        let product = p.unitary(d).dot(&q.unitary(d));
        prop_assert!(max_abs_diff(&composed, &product) <= 1e-12);
    }

    #[test]
    fn sym_projector_is_idempotent_and_invariant(p in permutation(3)) {
        for d in 2..=3usize {
            let proj = sym_projector(3, d).matrix();
            prop_assert!(max_abs_diff(&proj.dot(&proj), &proj) <= 1e-10);
            let u = p.unitary(d);
            let conjugated = u.dot(&proj).dot(&dagger(&u));
            prop_assert!(max_abs_diff(&conjugated, &proj) <= 1e-10);
        }
    }

    #[test]
    fn sym_residual_vanishes_exactly_on_projected_vectors(seed in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)) {
        let basis = SymBasis::new(4, 2);
        let v = Array1::from_iter(seed.into_iter().map(|(re, im)| Complex64::new(re, im)));
        let projected = basis.project(&v);
        prop_assert!(basis.residual(&projected) <= 1e-10);
    }

    #[test]
    fn bound_chain_orders_hold(n in 0usize..8, k in 1usize..5, d in 2usize..4, r_frac in 0.0f64..1.0) {
        let r = ((n as f64) * r_frac) as usize;
        let p = TheoremParams::new(n, k, r, d).unwrap();
        let chain = gamma_bound_check(&p);
        prop_assert!(chain.gamma_le_power);
        prop_assert!(chain.power_le_exp);
        prop_assert!(gamma_exact(&p) >= 0.0);
    }

    #[test]
    fn error_bound_decreases_in_r(n in 1usize..40, k in 2usize..10, d in 2usize..4) {
        let mut last = f64::INFINITY;
        for r in 0..=n {
            let eps = error_bound(&TheoremParams::new(n, k, r, d).unwrap());
            prop_assert!(eps <= last + 1e-12);
            prop_assert!(eps > 0.0);
            last = eps;
        }
    }

    #[test]
    fn entropy_is_concave(rho in density_matrix(4), sigma in density_matrix(4), w in 0.0f64..1.0) {
        let mut mix = rho.mapv(|z| z * w);
        mix.zip_mut_with(&sigma, |a, &b| *a += b * (1.0 - w));
        let lhs = von_neumann_entropy(&mix).unwrap();
        let rhs = w * von_neumann_entropy(&rho).unwrap()
            + (1.0 - w) * von_neumann_entropy(&sigma).unwrap();
        prop_assert!(lhs >= rhs - 1e-9);
    }

    #[test]
    fn trace_distance_is_a_metric_sample(
        a in density_matrix(4),
        b in density_matrix(4),
        c in density_matrix(4),
    ) {
        let dab = trace_norm(&(&a - &b));
        let dbc = trace_norm(&(&b - &c));
        let dac = trace_norm(&(&a - &c));
        prop_assert!(dab >= -1e-12);
        prop_assert!(dac <= dab + dbc + 1e-9);
        prop_assert!(trace_norm(&(&a - &a)) <= 1e-12);
    }
}
