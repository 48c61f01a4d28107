//! Seeded multi-start Nelder-Mead minimization over unconstrained real
//! parameter vectors.  Callers map parameters onto their constrained domains
//! (unit vectors, Cholesky factors, simplex weights) inside the objective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::OptimizerConfig;

#[derive(Debug, Clone)]
pub struct OptimOutcome {
    pub params: Vec<f64>,
    pub value: f64,
    /// False when every start exhausted its budget without the simplex
    /// collapsing below the convergence threshold.
    pub certified: bool,
}

/// Minimizes `f` over `dim` unconstrained reals with `cfg.starts` seeded
/// restarts; returns the best point found.
pub fn multi_start_minimize<F>(f: F, dim: usize, cfg: &OptimizerConfig) -> OptimOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<OptimOutcome> = None;
    for _ in 0..cfg.starts.max(1) {
        let start: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let outcome = nelder_mead(&f, &start, cfg);
        let better = match &best {
            None => true,
            Some(b) => outcome.value < b.value,
        };
        if better {
            best = Some(outcome);
        }
    }
    let mut out = best.expect("at least one start");
    // certification is a property of the best run only
    if out.params.is_empty() {
        out.certified = true;
    }
    out
}

fn nelder_mead<F>(f: &F, start: &[f64], cfg: &OptimizerConfig) -> OptimOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let dim = start.len();
    if dim == 0 {
        return OptimOutcome {
            params: Vec::new(),
            value: f(start),
            certified: true,
        };
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += if v[i].abs() > 1e-3 { 0.1 * v[i].abs() } else { 0.1 };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut converged = false;

    for _ in 0..cfg.max_iterations {
        // sort ascending by value
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter: f64 = simplex[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        let value_spread = (values[dim] - values[0]).abs();
        if diameter < cfg.convergence && value_spread < cfg.convergence {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|p| p[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst)
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let fr = f(&reflect);
        if fr < values[0] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + gamma * (c - w))
                .collect();
            let fe = f(&expand);
            if fe < fr {
                simplex[dim] = expand;
                values[dim] = fe;
            } else {
                simplex[dim] = reflect;
                values[dim] = fr;
            }
        } else if fr < values[dim - 1] {
            simplex[dim] = reflect;
            values[dim] = fr;
        } else {
            let contract: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + rho * (w - c))
                .collect();
            let fc = f(&contract);
            if fc < values[dim] {
                simplex[dim] = contract;
                values[dim] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..=dim {
                    for j in 0..dim {
                        simplex[i][j] = simplex[0][j] + sigma * (simplex[i][j] - simplex[0][j]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut best_idx = 0;
    for i in 1..values.len() {
        if values[i] < values[best_idx] {
            best_idx = i;
        }
    }
    OptimOutcome {
        params: simplex[best_idx].clone(),
        value: values[best_idx],
        certified: converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let cfg = OptimizerConfig {
            starts: 4,
            max_iterations: 500,
            seed: 1,
            convergence: 1e-10,
        };
        let out = multi_start_minimize(
            |x| (x[0] - 2.0).powi(2) + (x[1] + 1.0).powi(2) + 3.0,
            2,
            &cfg,
        );
        assert!((out.value - 3.0).abs() < 1e-8);
        assert!((out.params[0] - 2.0).abs() < 1e-4);
        assert!(out.certified);
    }

    #[test]
    fn rosenbrock_like() {
        let cfg = OptimizerConfig {
            starts: 12,
            max_iterations: 2000,
            seed: 2,
            convergence: 1e-12,
        };
        let out = multi_start_minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            2,
            &cfg,
        );
        assert!(out.value < 1e-6);
    }
}
