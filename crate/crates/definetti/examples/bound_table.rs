//! Tabulates the error bound over parameter choices, including the
//! stride recipe n = N − N^α, r = N^α under which the bound decays.

use definetti::theorem::{error_bound, main_text_bound, TheoremParams};

fn main() {
    println!("epsilon = 3 exp(−k(r+1)/(n+k) + d ln k):");
    println!("{:>5} {:>4} {:>4} {:>3}  {:>12}", "n", "k", "r", "d", "epsilon");
    for (n, k, r, d) in [(4usize, 2usize, 1usize, 2usize), (5, 3, 2, 2), (6, 2, 2, 2), (90, 10, 10, 2)] {
        let p = TheoremParams::new(n, k, r, d).unwrap();
        println!("{n:>5} {k:>4} {r:>4} {d:>3}  {:>12.4e}", error_bound(&p));
    }

    println!("\nmain-text form with n = N − N^(2/3), r = N^(2/3):");
    println!("{:>8} {:>8} {:>8}  {:>12}", "N", "n", "r", "epsilon");
    for exp in 3..=7u32 {
        let total = 10usize.pow(exp);
        let stride = (total as f64).powf(2.0 / 3.0);
        let n = total - stride.ceil() as usize;
        let r = stride.floor() as usize;
        let eps = main_text_bound(total, n, r, 2).unwrap();
        println!("{total:>8} {n:>8} {r:>8}  {eps:>12.4e}");
    }
}
