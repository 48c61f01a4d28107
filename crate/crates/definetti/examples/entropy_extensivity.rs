//! Output entropy of tensor-power channels against the minimum-output-entropy
//! floor, per subsystem, on symmetric families.

use definetti::catalog::{build_example, ExampleId};
use definetti::channel::{extensivity_trend, min_output_entropy, QuantumChannel};
use definetti::config::RunConfig;

fn main() {
    let config = RunConfig::default();
    let deph = QuantumChannel::dephasing(2);

    let floor = min_output_entropy(&deph, &config.optimizer).unwrap();
    println!("dephasing channel: min output entropy {:.6} (certified {})", floor.value, floor.certified);

    for (label, id) in [("cat family", ExampleId::Ex5), ("parity mixture family", ExampleId::Ex2)] {
        let tol = config.tolerances.clone();
        let family = move |n: usize| Ok(build_example(id, n, &tol)?.state);
        let range: Vec<usize> = (2..=6).collect();
        let rows = extensivity_trend(&deph, &family, &range, &config.optimizer, &config.tolerances).unwrap();
        println!("{label}: (N, per-copy output entropy, floor, pass)");
        for row in rows {
            println!("  {:2}  {:.6}  {:.6}  {}", row.n, row.per_copy, row.floor, row.pass);
        }
    }
}
