//! Thin command-line front end over the library pipelines.  Every report
//! embeds the full run configuration so a run can be reproduced from its own
//! output.
//!
//! Exit codes: 0 all checks pass; 1 usage or I/O problem; 2 a mathematical
//! inequality failed; 3 the quadrature doubling diagnostic was inconclusive.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use definetti::catalog::{build_example, verify_example, ExampleId};
use definetti::channel::{
    apply_channel_power, extensivity_trend, min_output_entropy, von_neumann_entropy,
    QuantumChannel,
};
use definetti::config::RunConfig;
use definetti::error::Error;
use definetti::linalg::{
    max_abs_diff, partial_trace, trace_norm, CMatrix, DensityOperator, MatrixJson, Projector,
    ZERO,
};
use definetti::sym::{sym_projector, symmetric_purification, SymBasis};
use definetti::theorem::{
    error_bound, gentle_lemma_check, main_text_bound, verify_theorem, TheoremParams,
};
use definetti::twirl::gamma_operator;

#[derive(Parser)]
#[command(name = "definetti", about = "Verification pipelines for symmetric-state decompositions", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// JSON file mirroring the run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Quadrature resolution override.
    #[arg(long, global = true)]
    resolution: Option<usize>,
    /// RNG seed override (quadrature and optimizer).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Optimizer multi-start count override.
    #[arg(long, global = true)]
    starts: Option<usize>,
    /// Output format: text, json, or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the error bound over parameter tuples.
    Bound {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Subsystem total for the main-text parameterization.
        #[arg(long = "N")]
        total: Option<usize>,
        /// Sweep N with n = N − ceil(N^alpha), r = floor(N^alpha).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 10)]
        total_min: usize,
        #[arg(long, default_value_t = 100)]
        total_max: usize,
        #[arg(long, default_value_t = 10)]
        total_step: usize,
    },
    /// Run the full decomposition pipeline on a state.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Catalog id (ex1..ex7, cat) or path to a JSON matrix file.
        #[arg(long)]
        state: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Subsystem dimension, needed when the state comes from a file.
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Check the catalog claims of one example (or all of them).
    Catalog {
        #[command(flatten)]
        common: CommonOpts,
        /// ex1..ex7 or "all".
        #[arg(long, default_value = "all")]
        example: String,
        /// Number of subsystems (ex4 is pinned to 2, ex6 uses d = N).
        #[arg(long = "N", default_value_t = 3)]
        total: usize,
    },
    /// Residuals of the twirl fixed-point identity on random operators.
    TwirlCheck {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Build the symmetric purification of a state and report its residuals.
    Purify {
        #[command(flatten)]
        common: CommonOpts,
        /// Catalog id or path to a JSON matrix file.
        #[arg(long)]
        state: String,
        #[arg(long = "N", default_value_t = 3)]
        total: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Write the purification amplitudes to this file as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Output entropy of E^{⊗N} on one state against the channel floor.
    Entropy {
        #[command(flatten)]
        common: CommonOpts,
        /// Built-in channel (identity, dephasing, depolarizing:<p>) or a JSON
        /// file holding a list of Kraus matrices.
        #[arg(long, default_value = "dephasing")]
        channel: String,
        #[arg(long, default_value = "ex5")]
        state: String,
        #[arg(long = "N", default_value_t = 3)]
        total: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Per-copy output entropy trend of a catalog family over a range of N.
    Extensivity {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value = "dephasing")]
        channel: String,
        #[arg(long, default_value = "ex5")]
        family: String,
        #[arg(long, default_value_t = 2)]
        total_min: usize,
        #[arg(long, default_value_t = 6)]
        total_max: usize,
    },
    /// Gentle-measurement inequality on random seeded families.
    GentleCheck {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_config(common: &CommonOpts) -> Result<RunConfig, Error> {
    let mut config = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(res) = common.resolution {
        config.quadrature.resolution = res;
    }
    if let Some(seed) = common.seed {
        config.quadrature.seed = seed;
        config.optimizer.seed = seed;
    }
    if let Some(starts) = common.starts {
        config.optimizer.starts = starts;
    }
    Ok(config)
}

fn load_state(spec: &str, total: usize, d: usize, config: &RunConfig) -> Result<DensityOperator, Error> {
    if let Ok(id) = spec.parse::<ExampleId>() {
        return Ok(build_example(id, total, &config.tolerances)?.state);
    }
    if spec.eq_ignore_ascii_case("cat") {
        return Ok(build_example(ExampleId::Ex5, total, &config.tolerances)?.state);
    }
    let text = std::fs::read_to_string(spec)?;
    let json: MatrixJson = serde_json::from_str(&text)?;
    let matrix = json.to_matrix()?;
    let n = subsystem_count(matrix.nrows(), d)?;
    DensityOperator::new(matrix, d, n, &config.tolerances)
}

fn subsystem_count(dim: usize, d: usize) -> Result<usize, Error> {
    let mut n = 0usize;
    let mut acc = 1usize;
    while acc < dim {
        acc *= d;
        n += 1;
    }
    if acc != dim {
        return Err(Error::Shape(format!("dimension {dim} is not a power of {d}")));
    }
    Ok(n.max(1))
}

fn load_channel(spec: &str) -> Result<QuantumChannel, Error> {
    match spec {
        "identity" => Ok(QuantumChannel::identity_channel(2)),
        "dephasing" => Ok(QuantumChannel::dephasing(2)),
        other => {
            if let Some(p) = other.strip_prefix("depolarizing:") {
                let p: f64 = p
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad depolarizing parameter '{p}'")))?;
                return QuantumChannel::depolarizing_qubit(p);
            }
            let text = std::fs::read_to_string(other)?;
            let jsons: Vec<MatrixJson> = serde_json::from_str(&text)?;
            let kraus = jsons
                .iter()
                .map(|j| j.to_matrix())
                .collect::<Result<Vec<_>, _>>()?;
            QuantumChannel::new(kraus)
        }
    }
}

#[derive(Serialize)]
struct Wrapped<T: Serialize> {
    config: RunConfig,
    report: T,
}

fn emit_json<T: Serialize>(config: &RunConfig, report: T) -> Result<(), Error> {
    let wrapped = Wrapped { config: config.clone(), report };
    println!("{}", serde_json::to_string_pretty(&wrapped)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Bound {
            common,
            n,
            k,
            r,
            d,
            total,
            alpha,
            total_min,
            total_max,
            total_step,
        } => {
            let config = load_config(&common)?;
            #[derive(Serialize)]
            struct BoundRow {
                n: usize,
                k: usize,
                r: usize,
                d: usize,
                epsilon: f64,
                main_text_epsilon: Option<f64>,
            }
            let mut rows = Vec::new();
            if let Some(alpha) = alpha {
                let mut total = total_min.max(2);
                while total <= total_max {
                    let stride = (total as f64).powf(alpha);
                    let r = stride.floor() as usize;
                    let n = total.saturating_sub(stride.ceil() as usize).max(1);
                    let k = total - n;
                    let p = TheoremParams::new(n, k, r.min(n), d)?;
                    rows.push(BoundRow {
                        n,
                        k,
                        r: r.min(n),
                        d,
                        epsilon: error_bound(&p),
                        main_text_epsilon: Some(main_text_bound(total, n, r.min(n), d)?),
                    });
                    total += total_step.max(1);
                }
            } else {
                let n = n.ok_or_else(|| Error::Argument("--n is required without --alpha".into()))?;
                let r = r.ok_or_else(|| Error::Argument("--r is required without --alpha".into()))?;
                let k = match (k, total) {
                    (Some(k), _) => k,
                    (None, Some(total)) if total > n => total - n,
                    _ => return Err(Error::Argument("provide --k or --N > n".into())),
                };
                let p = TheoremParams::new(n, k, r, d)?;
                let main = if total.is_some() {
                    Some(main_text_bound(n + k, n, r, d)?)
                } else {
                    None
                };
                rows.push(BoundRow { n, k, r, d, epsilon: error_bound(&p), main_text_epsilon: main });
            }
            match common.format.as_str() {
                "json" => emit_json(&config, &rows)?,
                _ => {
                    println!("n,k,r,d,epsilon,main_text_epsilon");
                    for row in &rows {
                        let main = row
                            .main_text_epsilon
                            .map(|v| format!("{v:.6e}"))
                            .unwrap_or_else(|| "-".into());
                        println!("{},{},{},{},{:.6e},{}", row.n, row.k, row.r, row.d, row.epsilon, main);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, state, n, k, r, d } => {
            let config = load_config(&common)?;
            let rho = load_state(&state, n + k, d, &config)?;
            let p = TheoremParams::new(n, k, r, d)?;
            let report = verify_theorem(&rho, &p, &config)?;
            emit_json(&config, &report)?;
            let mut inequality_failed = !report.intermediate_le_final
                || report.haar_consistency > 1e-8
                || (report.gamma_exact - report.gamma_bruteforce).abs() > 1e-10;
            let mut inconclusive = false;
            if let Some(defect) = &report.defect {
                if defect.inconclusive {
                    inconclusive = true;
                } else if defect.delta > report.bound_final + defect.diagnostic {
                    inequality_failed = true;
                }
            }
            Ok(if inequality_failed {
                ExitCode::from(2)
            } else if inconclusive {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Catalog { common, example, total } => {
            let config = load_config(&common)?;
            let ids: Vec<ExampleId> = if example.eq_ignore_ascii_case("all") {
                ExampleId::ALL.to_vec()
            } else {
                vec![example.parse()?]
            };
            let mut reports = Vec::new();
            for id in ids {
                let size = if id == ExampleId::Ex4 { 2 } else { total };
                reports.push(verify_example(id, size, &config)?);
            }
            let all_pass = reports.iter().all(|r| r.pass);
            match common.format.as_str() {
                "json" => emit_json(&config, &reports)?,
                _ => {
                    for report in &reports {
                        println!("{} (N={}, d={}): {}", report.id, report.n_subsystems, report.d,
                            if report.pass { "pass" } else { "FAIL" });
                        for check in &report.checks {
                            println!(
                                "  {} {}: {:.6e} {} {:.6e} [{}]",
                                if check.pass { "ok " } else { "ERR" },
                                check.name,
                                check.value,
                                check.comparison,
                                check.threshold,
                                check.status
                            );
                        }
                    }
                }
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::TwirlCheck { common, n, d, trials } => {
            let config = load_config(&common)?;
            let seed = config.quadrature.seed;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = d.pow(n as u32);
            let p_sym = sym_projector(n, d).matrix();
            let mut max_residual = 0.0f64;
            let mut failures = 0usize;
            for _ in 0..trials {
                let a = random_psd(&mut rng, dim);
                let gamma = match gamma_operator(&a, d, config.caps.enumeration) {
                    Ok(g) => g,
                    Err(Error::SingularScaling(_)) => continue,
                    Err(e) => return Err(e),
                };
                let residual = max_abs_diff(&gamma.dot(&p_sym), &p_sym);
                max_residual = max_residual.max(residual);
                if residual > 1e-8 {
                    failures += 1;
                }
            }
            #[derive(Serialize)]
            struct TwirlReport {
                n: usize,
                d: usize,
                trials: usize,
                seed: u64,
                max_residual: f64,
                failures: usize,
            }
            let report = TwirlReport { n, d, trials, seed, max_residual, failures };
            match common.format.as_str() {
                "json" => emit_json(&config, &report)?,
                _ => println!(
                    "twirl fixed-point check: n={n} d={d} trials={trials} max residual {max_residual:.3e} failures {failures}"
                ),
            }
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Purify { common, state, total, d, out } => {
            let config = load_config(&common)?;
            let rho = load_state(&state, total, d, &config)?;
            let psi = symmetric_purification(
                &rho,
                &config.tolerances,
                1e-9,
                config.caps.enumeration,
            )?;
            let pair_dim = psi.subsystem_dim;
            let basis = SymBasis::new(psi.subsystem_count, pair_dim);
            let sym_residual = basis.residual(&psi.amplitudes);
            let reduction_error = purification_reduction_error(&psi.amplitudes, &rho)?;
            #[derive(Serialize)]
            struct PurifyReport {
                subsystems: usize,
                pair_dim: usize,
                sym_residual: f64,
                reduction_error: f64,
            }
            let report = PurifyReport {
                subsystems: psi.subsystem_count,
                pair_dim,
                sym_residual,
                reduction_error,
            };
            if let Some(path) = out {
                let amps: Vec<[f64; 2]> = psi.amplitudes.iter().map(|z| [z.re, z.im]).collect();
                std::fs::write(&path, serde_json::to_string(&amps)?)?;
            }
            match common.format.as_str() {
                "json" => emit_json(&config, &report)?,
                _ => println!(
                    "purification on (H⊗K)^⊗{}: symmetric-subspace residual {:.3e}, reduction error {:.3e}",
                    report.subsystems, sym_residual, reduction_error
                ),
            }
            let ok = sym_residual <= 1e-8 && reduction_error <= 1e-8;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Entropy { common, channel, state, total, d } => {
            let config = load_config(&common)?;
            let channel = load_channel(&channel)?;
            let rho = load_state(&state, total, d, &config)?;
            let out = apply_channel_power(&channel, &rho, &config.tolerances)?;
            let value = von_neumann_entropy(out.matrix())? / rho.subsystem_count() as f64;
            let floor = min_output_entropy(&channel, &config.optimizer)?.value;
            let pass = value >= floor - 1e-9;
            match common.format.as_str() {
                "json" => {
                    #[derive(Serialize)]
                    struct Row { n: usize, value: f64, floor: f64, slack: f64, pass: bool }
                    emit_json(&config, Row { n: total, value, floor, slack: 0.0, pass })?;
                }
                _ => {
                    println!("N,value,floor,slack,pass");
                    println!("{total},{value:.9e},{floor:.9e},0,{pass}");
                }
            }
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Extensivity { common, channel, family, total_min, total_max } => {
            let config = load_config(&common)?;
            let channel = load_channel(&channel)?;
            let id: ExampleId = family.parse()?;
            let tol = config.tolerances.clone();
            let builder = move |n: usize| Ok(build_example(id, n, &tol)?.state);
            let range: Vec<usize> = (total_min.max(2)..=total_max).collect();
            let rows = extensivity_trend(&channel, &builder, &range, &config.optimizer, &config.tolerances)?;
            let all_pass = rows.iter().all(|r| r.pass);
            match common.format.as_str() {
                "json" => emit_json(&config, &rows)?,
                _ => {
                    println!("N,value,floor,slack,pass");
                    for row in &rows {
                        println!("{},{:.9e},{:.9e},{:.3e},{}", row.n, row.per_copy, row.floor, row.slack, row.pass);
                    }
                }
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::GentleCheck { common, dim, trials } => {
            let config = load_config(&common)?;
            let seed = config.quadrature.seed;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut violations = 0usize;
            let mut worst_margin = f64::INFINITY;
            for _ in 0..trials {
                let family = random_family(&mut rng, dim);
                let report = gentle_lemma_check(&family)?;
                worst_margin = worst_margin.min(report.rhs - report.lhs);
                if !report.holds {
                    violations += 1;
                }
            }
            #[derive(Serialize)]
            struct GentleSummary {
                dim: usize,
                trials: usize,
                seed: u64,
                violations: usize,
                worst_margin: f64,
            }
            let report = GentleSummary { dim, trials, seed, violations, worst_margin };
            match common.format.as_str() {
                "json" => emit_json(&config, &report)?,
                _ => println!(
                    "gentle-measurement check: dim={dim} trials={trials} violations={violations} worst margin {worst_margin:.3e}"
                ),
            }
            Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    Array2::from_shape_fn((dim, dim), |_| Complex64::new(gaussian(rng), gaussian(rng)))
}

fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let g = random_matrix(rng, dim);
    let mut m = g.dot(&definetti::linalg::dagger(&g));
    let tr: f64 = (0..dim).map(|i| m[(i, i)].re).sum();
    m.mapv_inplace(|z| z / tr);
    m
}

fn random_family(rng: &mut ChaCha8Rng, dim: usize) -> Vec<(CMatrix, Projector, f64)> {
    let members = rng.gen_range(1..=4usize);
    let mut raw_weights: Vec<f64> = (0..members).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = raw_weights.iter().sum();
    for w in &mut raw_weights {
        *w /= total;
    }
    raw_weights
        .into_iter()
        .map(|w| {
            let rho = random_psd(rng, dim);
            let rank = rng.gen_range(1..=dim);
            let span: Vec<_> = (0..rank)
                .map(|_| {
                    ndarray::Array1::from_shape_fn(dim, |_| {
                        Complex64::new(gaussian(rng), gaussian(rng))
                    })
                })
                .collect();
            let proj = Projector::from_span(&span, dim, 1e-8).expect("random span");
            (rho, proj, w)
        })
        .collect()
}

fn purification_reduction_error(
    psi: &definetti::linalg::CVector,
    rho: &DensityOperator,
) -> Result<f64, Error> {
    // the purification interleaves system and reference factors per site;
    // permute to system-first order, then trace the reference block
    let d = rho.subsystem_dim();
    let n = rho.subsystem_count();
    let pair = d * d;
    let dim = pair.pow(n as u32);
    let mut dense = Array2::from_elem((dim, dim), ZERO);
    for i in 0..dim {
        for j in 0..dim {
            dense[(reorder(i, d, n), reorder(j, d, n))] = psi[i] * psi[j].conj();
        }
    }
    let reduced = partial_trace(&dense, d, 2 * n, n)?;
    Ok(trace_norm(&(&reduced - rho.matrix())))
}

/// Maps an index over (H⊗K)^{⊗n} (site-interleaved digits a_1 x_1 ... a_n x_n
/// in base d) to the H^{⊗n} ⊗ K^{⊗n} ordering a_1...a_n x_1...x_n.
fn reorder(idx: usize, d: usize, n: usize) -> usize {
    let mut digits = vec![0usize; 2 * n];
    let mut rest = idx;
    for slot in (0..2 * n).rev() {
        digits[slot] = rest % d;
        rest /= d;
    }
    let mut out = 0usize;
    for site in 0..n {
        out = out * d + digits[2 * site];
    }
    for site in 0..n {
        out = out * d + digits[2 * site + 1];
    }
    out
}
