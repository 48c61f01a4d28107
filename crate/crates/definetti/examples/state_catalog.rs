//! Walks the example catalog: marginal claims, overlap extremes, and the
//! distance witnesses that separate symmetry from independence.

use definetti::catalog::{
    build_example, max_iid_overlap, min_iid_mixture_distance, reduced_claim_check, ExampleId,
    OverlapDomain,
};
use definetti::config::RunConfig;

fn main() {
    let config = RunConfig::default();
    let tol = &config.tolerances;
    let opt = &config.optimizer;

    let singlet = build_example(ExampleId::Ex4, 2, tol).unwrap();
    let overlap = max_iid_overlap(&singlet.state, OverlapDomain::Mixed, opt);
    println!("singlet: best i.i.d. overlap {:.6} (claim: at most 1/4)", overlap.value);

    let cat = build_example(ExampleId::Ex5, 3, tol).unwrap();
    let overlap = max_iid_overlap(&cat.state, OverlapDomain::Mixed, opt);
    println!("cat(3): best i.i.d. overlap {:.6} (claim: at most 1/2)", overlap.value);
    for m in 1..3 {
        let r = reduced_claim_check(&cat, m).unwrap();
        println!("  marginal({m}) matches the |0>/|1> mixture within {:.3e}", r.distance);
    }

    let parity = build_example(ExampleId::Ex2, 4, tol).unwrap();
    for m in 1..4 {
        let r = reduced_claim_check(&parity, m).unwrap();
        println!("parity mixture(4): marginal({m}) is (id/2)^{m} within {:.3e}", r.distance);
    }

    let w_mix = build_example(ExampleId::Ex7, 3, tol).unwrap();
    let dist = min_iid_mixture_distance(&w_mix.state, 3, opt).unwrap();
    println!(
        "permutations of |001>: distance to i.i.d. mixtures >= {:.6} (estimate {:.6})",
        dist.lower_diagnostic, dist.upper_estimate
    );
}
