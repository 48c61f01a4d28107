//! Exact Haar twirls through the permutation commutant, compared against
//! quadrature estimates of pure-state moments.

use definetti::linalg::{max_abs_diff, DensityOperator, PureVector};
use definetti::twirl::{build_quadrature, gamma_operator, haar_average_pure_power, twirl};

fn main() {
    // ∫ U⊗U |01><01| (U†)⊗(U†) dU = id/3 − SWAP/6, exactly
    let rho = DensityOperator::from_pure(&PureVector::basis_state(&[0, 1], 2));
    let twirled = twirl(rho.matrix(), 2, 8).unwrap();
    println!("twirl(|01><01|) diagonal: {:?}", (0..4).map(|i| twirled[(i, i)].re).collect::<Vec<_>>());

    // the normalized twirl fixes the symmetric projector
    let gamma = gamma_operator(rho.matrix(), 2, 8).unwrap();
    let p_sym = definetti::sym::sym_projector(2, 2).matrix();
    println!(
        "‖Γ P_sym − P_sym‖_max = {:.3e}",
        max_abs_diff(&gamma.dot(&p_sym), &p_sym)
    );

    // ∫ ν^{⊗k} dν = P_sym / dim Sym^k, estimated by quadrature at increasing
    // resolution against the exact value
    let exact = haar_average_pure_power(3, 2);
    for resolution in [100usize, 400, 1600] {
        let quad = build_quadrature(2, resolution, None, 7).unwrap();
        let estimate = quad.estimate_pure_power(3);
        println!(
            "resolution {resolution:5}: ‖estimate − exact‖_max = {:.3e}",
            max_abs_diff(&estimate, &exact)
        );
    }
}
