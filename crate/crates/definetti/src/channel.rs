//! Channels, entropy, and the concave-extensive-quantity proposition: the
//! per-copy output entropy of symmetric families against the minimum output
//! entropy floor, with an explicit finite-size slack instead of an asserted
//! limit.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{OptimizerConfig, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{
    dagger, hermitian_eig, identity, max_abs_diff, tensor, CMatrix, CVector, DensityOperator,
    ZERO,
};
use crate::optim::multi_start_minimize;

/// A trace-preserving completely positive map given by Kraus operators.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    kraus: Vec<CMatrix>,
    d_in: usize,
    d_out: usize,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Argument("a channel needs at least one Kraus operator".into()));
        }
        let d_out = kraus[0].nrows();
        let d_in = kraus[0].ncols();
        let mut completeness = Array2::from_elem((d_in, d_in), ZERO);
        for k in &kraus {
            if k.nrows() != d_out || k.ncols() != d_in {
                return Err(Error::Shape("Kraus operators of mixed shape".into()));
            }
            completeness += &dagger(k).dot(k);
        }
        if max_abs_diff(&completeness, &identity(d_in)) > 1e-9 {
            return Err(Error::Precondition(
                "Kraus operators do not satisfy the completeness relation".into(),
            ));
        }
        Ok(Self { kraus, d_in, d_out })
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// The identity channel on dimension d.
    pub fn identity_channel(d: usize) -> Self {
        Self { kraus: vec![identity(d)], d_in: d, d_out: d }
    }

    /// Fully dephasing channel in the computational basis.
    pub fn dephasing(d: usize) -> Self {
        let kraus = (0..d)
            .map(|b| {
                let mut k = Array2::from_elem((d, d), ZERO);
                k[(b, b)] = Complex64::new(1.0, 0.0);
                k
            })
            .collect();
        Self { kraus, d_in: d, d_out: d }
    }

    /// Depolarizing channel ρ ↦ (1−p)ρ + p·id/d on d = 2.
    pub fn depolarizing_qubit(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Argument(format!("depolarizing parameter {p} outside [0,1]")));
        }
        let s = Complex64::new((1.0 - 3.0 * p / 4.0).sqrt(), 0.0);
        let q = Complex64::new((p / 4.0).sqrt(), 0.0);
        let i = Complex64::new(0.0, 1.0);
        let kraus = vec![
            ndarray::array![[s, ZERO], [ZERO, s]],
            ndarray::array![[ZERO, q], [q, ZERO]],
            ndarray::array![[ZERO, -i * q], [i * q, ZERO]],
            ndarray::array![[q, ZERO], [ZERO, -q]],
        ];
        Self::new(kraus)
    }
}

/// S(ρ) = −Σ λ ln λ in natural-log units; eigenvalues below 1e−12 are dropped.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let (vals, _) = hermitian_eig(rho, 1e-8)?;
    let mut s = 0.0f64;
    for v in vals {
        if v > 1e-12 {
            s -= v * v.ln();
        }
    }
    Ok(s.max(0.0))
}

/// Entropy in bits: S(ρ)/ln 2, for display.
pub fn entropy_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

/// Σ K ρ K† as a raw matrix (caller decides whether to re-wrap as a state).
pub fn apply_channel_matrix(channel: &QuantumChannel, rho: &CMatrix) -> Result<CMatrix> {
    if rho.nrows() != channel.d_in || rho.ncols() != channel.d_in {
        return Err(Error::Shape(format!(
            "state dimension {} does not match channel input {}",
            rho.nrows(),
            channel.d_in
        )));
    }
    let mut out = Array2::from_elem((channel.d_out, channel.d_out), ZERO);
    for k in &channel.kraus {
        out += &k.dot(rho).dot(&dagger(k));
    }
    Ok(out)
}

pub fn apply_channel(channel: &QuantumChannel, rho: &DensityOperator, tol: &Tolerances) -> Result<DensityOperator> {
    let out = apply_channel_matrix(channel, rho.matrix())?;
    DensityOperator::new(out, channel.d_out, 1, tol)
}

/// E^{⊗n}: applies the channel independently to each subsystem.
pub fn apply_channel_power(
    channel: &QuantumChannel,
    rho: &DensityOperator,
    tol: &Tolerances,
) -> Result<DensityOperator> {
    if channel.d_in != channel.d_out {
        return Err(Error::Argument(
            "per-subsystem application requires d_in = d_out".into(),
        ));
    }
    let d = channel.d_in;
    if rho.subsystem_dim() != d {
        return Err(Error::Shape(format!(
            "subsystem dimension {} does not match channel dimension {}",
            rho.subsystem_dim(),
            d
        )));
    }
    let n = rho.subsystem_count();
    let mut current = rho.matrix().clone();
    for site in 0..n {
        let mut next = Array2::from_elem(current.dim(), ZERO);
        for k in &channel.kraus {
            let site_op = embed_site(k, d, n, site);
            next += &site_op.dot(&current).dot(&dagger(&site_op));
        }
        current = next;
    }
    DensityOperator::new(current, d, n, tol)
}

fn embed_site(op: &CMatrix, d: usize, n: usize, site: usize) -> CMatrix {
    let left = identity(d.pow(site as u32));
    let right = identity(d.pow((n - 1 - site) as u32));
    tensor(&tensor(&left, op), &right)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinEntropyReport {
    pub value: f64,
    /// The pure input attaining the reported value.
    pub argmin: Vec<[f64; 2]>,
    pub certified: bool,
}

/// Minimizes S(E(σ)) over pure inputs σ = |v><v|; pure inputs suffice because
/// S is concave and E is linear, so the minimum over all states is attained
/// at an extreme point of the input set.
pub fn min_output_entropy(channel: &QuantumChannel, cfg: &OptimizerConfig) -> Result<MinEntropyReport> {
    let d = channel.d_in;
    let objective = |params: &[f64]| {
        let v = params_to_pure(params, d);
        let rho = pure_outer(&v);
        match apply_channel_matrix(channel, &rho) {
            Ok(out) => von_neumann_entropy(&out).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    };
    let outcome = multi_start_minimize(objective, 2 * d, cfg);
    let v = params_to_pure(&outcome.params, d);
    Ok(MinEntropyReport {
        value: outcome.value.max(0.0),
        argmin: v.iter().map(|z| [z.re, z.im]).collect(),
        certified: outcome.certified,
    })
}

fn params_to_pure(params: &[f64], d: usize) -> CVector {
    let mut v = ndarray::Array1::from_elem(d, ZERO);
    for i in 0..d {
        v[i] = Complex64::new(params[2 * i], params[2 * i + 1]);
    }
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        v[0] = Complex64::new(1.0, 0.0);
        v
    } else {
        v.mapv(|z| z / norm)
    }
}

fn pure_outer(v: &CVector) -> CMatrix {
    let d = v.len();
    let mut m = Array2::from_elem((d, d), ZERO);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = v[i] * v[j].conj();
        }
    }
    m
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendRow {
    pub n: usize,
    /// (1/N) S(E^{⊗N}(ρ^N)).
    pub per_copy: f64,
    /// min_σ S(E(σ)).
    pub floor: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Per-N output entropy of a symmetric family against the minimum output
/// entropy floor.
pub fn extensivity_trend(
    channel: &QuantumChannel,
    family: &dyn Fn(usize) -> Result<DensityOperator>,
    n_range: &[usize],
    cfg: &OptimizerConfig,
    tol: &Tolerances,
) -> Result<Vec<TrendRow>> {
    let floor = min_output_entropy(channel, cfg)?.value;
    let mut rows = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let rho = family(n)?;
        let out = apply_channel_power(channel, &rho, tol)?;
        let per_copy = von_neumann_entropy(out.matrix())? / n as f64;
        rows.push(TrendRow {
            n,
            per_copy,
            floor,
            slack: 0.0,
            pass: per_copy >= floor - 1e-9,
        });
    }
    Ok(rows)
}

/// A quantity Q with its claimed structural properties: its evaluator, a
/// concavity flag, and the per-subsystem robustness modulus c (the claim
/// |Q(ρ) − Q(ρ')| ≤ c·k when ρ and ρ' differ on k subsystems).  The modulus
/// is user input; it is not inferred.
pub struct ExtensiveQuantitySpec<'a> {
    pub evaluator: &'a dyn Fn(&DensityOperator) -> Result<f64>,
    pub concave: bool,
    pub robustness_c: f64,
}

/// Finite-N trend of (1/N)·Q(ρ^N) against a floor, with slack c·(k+r)/N from
/// the robustness accounting.  This reports a trend, not a limit.
pub fn proposition_check(
    q: &ExtensiveQuantitySpec,
    family: &dyn Fn(usize) -> Result<DensityOperator>,
    n_range: &[usize],
    floor: f64,
    k: usize,
    r: usize,
) -> Result<Vec<TrendRow>> {
    let mut rows = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let rho = family(n)?;
        let per_copy = (q.evaluator)(&rho)? / n as f64;
        let slack = q.robustness_c * (k + r) as f64 / n as f64;
        rows.push(TrendRow {
            n,
            per_copy,
            floor,
            slack,
            pass: per_copy >= floor - slack - 1e-9,
        });
    }
    Ok(rows)
}
