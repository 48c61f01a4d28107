//! Run-wide configuration: numerical tolerances, dimension caps, quadrature and
//! optimizer settings.  Every report embeds the effective [`RunConfig`] so that
//! results are reproducible from the report alone.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Tolerances {
    /// Maximum Hermiticity defect accepted for density operators.
    pub herm: f64,
    /// Most negative eigenvalue accepted for PSD inputs.
    pub psd: f64,
    /// Maximum deviation of a trace from 1.
    pub trace: f64,
    /// Singular values below this are treated as zero when orthonormalizing spans.
    pub rank: f64,
    /// Unit-norm tolerance for pure vectors.
    pub norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-9,
            psd: 1e-8,
            trace: 1e-9,
            rank: 1e-8,
            norm: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Caps {
    /// Refuse matrices with more entries than this.
    pub max_entries: usize,
    /// Largest n for which the full symmetric group is enumerated.
    pub enumeration: usize,
    /// Largest n for which the i.i.d. generating set is expanded.
    pub iid_subsets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_entries: 1 << 26,
            enumeration: 8,
            iid_subsets: 14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    /// Deterministic Fibonacci lattice on the Bloch sphere (d = 2 only).
    SphereGrid,
    /// Seeded Haar-random pure states, equal weights (any d).
    MonteCarlo,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct QuadratureConfig {
    pub resolution: usize,
    pub seed: u64,
    /// None selects sphere-grid for d = 2 and monte-carlo otherwise.
    pub kind: Option<QuadratureKind>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            resolution: 1000,
            seed: 7,
            kind: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Simplex diameter below which a local search counts as converged.
    pub convergence: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 16,
            max_iterations: 600,
            seed: 11,
            convergence: 1e-9,
        }
    }
}

/// Top-level configuration mirrored by the CLI `--config` JSON file.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub caps: Caps,
    pub quadrature: QuadratureConfig,
    pub optimizer: OptimizerConfig,
}
