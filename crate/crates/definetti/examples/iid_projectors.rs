//! The nested family of i.i.d. projectors P^{n,r}: ranks, monotonicity, and
//! membership tests for almost-i.i.d. vectors.

use definetti::iid::{iid_projector, is_iid_vector, rotate_iid_projector, Prototype};
use definetti::linalg::{max_abs_diff, PureVector};

fn main() {
    let proto = Prototype::basis(0, 2);
    println!("ranks of P^{{4,r}} with prototype |0>:");
    for r in 0..=4usize {
        let p = iid_projector(4, r, &proto, 1e-8, 14).unwrap();
        println!("  r = {r}: rank {}", p.rank());
    }

    // the ranges are nested: P^{n,r} ≤ P^{n,r+1}
    let p1 = iid_projector(4, 1, &proto, 1e-8, 14).unwrap();
    let p2 = iid_projector(4, 2, &proto, 1e-8, 14).unwrap();
    let prod = p2.projector.matrix().dot(&p1.projector.matrix());
    println!(
        "nesting defect ‖P^(4,2) P^(4,1) − P^(4,1)‖_max = {:.3e}",
        max_abs_diff(&prod, &p1.projector.matrix())
    );

    // rotating the prototype rotates the whole family
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = ndarray::array![
        [num_complex::Complex64::new(s, 0.0), num_complex::Complex64::new(s, 0.0)],
        [num_complex::Complex64::new(s, 0.0), num_complex::Complex64::new(-s, 0.0)]
    ];
    let rotated = rotate_iid_projector(&p1, &u).unwrap();
    println!("rotated prototype: {:?}", rotated.prototype.vector().to_vec());

    // |0001> is of the form |0> on 3 of 4 subsystems; the cat state is not
    let almost = PureVector::basis_state(&[0, 0, 0, 1], 2).amplitudes;
    println!(
        "|0001> is (4 choose 3)-i.i.d. in |0>: {}",
        is_iid_vector(&almost, 3, &proto, 2, 4, 1e-9, 8).unwrap()
    );
    let mut cat = ndarray::Array1::from_elem(16, definetti::linalg::ZERO);
    cat[0] = num_complex::Complex64::new(s, 0.0);
    cat[15] = num_complex::Complex64::new(s, 0.0);
    println!(
        "cat state is (4 choose 3)-i.i.d. in |0>: {}",
        is_iid_vector(&cat, 3, &proto, 2, 4, 1e-9, 8).unwrap()
    );
}
