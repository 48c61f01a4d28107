//! The gentle-measurement inequality on hand-built and random families:
//! projecting a family of states onto high-weight projectors perturbs the
//! averaged state by at most three times the leaked weight.

use definetti::config::Tolerances;
use definetti::linalg::{DensityOperator, Projector, PureVector};
use definetti::theorem::gentle_lemma_check;
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    // a state almost inside the projector range: small leak, small disturbance
    let nearly = PureVector::new(
        ndarray::array![Complex64::new(0.999f64.sqrt(), 0.0), Complex64::new(0.001f64.sqrt(), 0.0)],
        2,
        1,
        &tol,
    )
    .unwrap();
    let e0 = ndarray::array![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let p0 = Projector::from_span(&[e0], 2, 1e-8).unwrap();
    let rho = DensityOperator::from_pure(&nearly);
    let report = gentle_lemma_check(&[(rho.matrix().clone(), p0, 1.0)]).unwrap();
    println!("nearly aligned state: lhs {:.4e} <= rhs {:.4e} -> {}", report.lhs, report.rhs, report.holds);

    // the worst case for a single pure state: |+> against the |0> projector
    let plus = PureVector::new(ndarray::array![s, s], 2, 1, &tol).unwrap();
    let e0 = ndarray::array![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let p0 = Projector::from_span(&[e0], 2, 1e-8).unwrap();
    let rho = DensityOperator::from_pure(&plus);
    let report = gentle_lemma_check(&[(rho.matrix().clone(), p0, 1.0)]).unwrap();
    println!("|+> against |0><0|:   lhs {:.4e} <= rhs {:.4e} -> {}", report.lhs, report.rhs, report.holds);

    // a weighted two-member family
    let e1 = ndarray::array![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let p1 = Projector::from_span(&[e1], 2, 1e-8).unwrap();
    let zero = DensityOperator::from_pure(&PureVector::basis_state(&[0], 2));
    let family = vec![
        (rho.matrix().clone(), Projector::full(2), 0.7),
        (zero.matrix().clone(), p1, 0.3),
    ];
    let report = gentle_lemma_check(&family).unwrap();
    println!("weighted family:      lhs {:.4e} <= rhs {:.4e} -> {}", report.lhs, report.rhs, report.holds);
}
