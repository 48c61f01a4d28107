//! Exact Haar averaging of n-fold tensor operators, and quadrature schemes
//! over pure prototype states.
//!
//! The twirl ∫ U^{⊗n} A (U†)^{⊗n} dU is never sampled: by Schur-Weyl duality
//! it equals the orthogonal (Hilbert-Schmidt) projection of A onto
//! span{U(π) : π ∈ S_n}, obtained by solving the Gram system
//! G_{π,σ} = tr(U(π)† U(σ)) = d^{#cycles(π⁻¹σ)}.  For d < n the permutation
//! operators are linearly dependent and the system is solved in the
//! least-squares sense through a pseudo-inverse; the projection itself stays
//! unique.  Quadrature is reserved for integrands whose U-dependence is not a
//! fixed-degree polynomial.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::QuadratureKind;
use crate::error::{Error, Result};
use crate::linalg::{normalize, CMatrix, CVector, ZERO};
use crate::perm::enumerate_symmetric_group;
use crate::sym::{sym_dim, SymBasis};

/// Pseudo-inverse cutoff for the (possibly rank-deficient) Gram system.
const GRAM_CUTOFF: f64 = 1e-10;

fn subsystem_count(dim: usize, d: usize) -> Result<usize> {
    let mut n = 0usize;
    let mut acc = 1usize;
    while acc < dim {
        acc *= d;
        n += 1;
    }
    if acc != dim {
        return Err(Error::Shape(format!(
            "matrix dimension {dim} is not a power of subsystem dimension {d}"
        )));
    }
    Ok(n)
}

/// ∫ U^{⊗n} A (U†)^{⊗n} dU via commutant projection.
pub fn twirl(a: &CMatrix, d: usize, cap: usize) -> Result<CMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::Shape("twirl of a non-square matrix".into()));
    }
    let dim = a.nrows();
    let n = subsystem_count(dim, d)?;
    let perms = enumerate_symmetric_group(n, cap)?;
    let m = perms.len();
    let tables: Vec<Vec<usize>> = perms.iter().map(|p| p.index_table(d)).collect();

    // Gram matrix over the permutation operators.
    let mut gram = Array2::<f64>::zeros((m, m));
    for i in 0..m {
        for j in 0..m {
            let composed = perms[i].inverse().compose(&perms[j]);
            gram[(i, j)] = (d as f64).powi(composed.cycle_count() as i32);
        }
    }
    // Right-hand side t_π = tr(U(π)† A) = Σ_b A[πtable(b), b].
    let mut rhs = Array1::from_elem(m, ZERO);
    for (i, table) in tables.iter().enumerate() {
        let mut acc = ZERO;
        for (b, &dst) in table.iter().enumerate() {
            acc += a[(dst, b)];
        }
        rhs[i] = acc;
    }
    // Least-squares coefficients through the eigendecomposition of G.
    let (vals, vecs) = gram.eigh(UPLO::Lower).expect("gram eigh failed");
    let mut coeffs = Array1::from_elem(m, ZERO);
    for idx in 0..m {
        if vals[idx].abs() <= GRAM_CUTOFF {
            continue;
        }
        let col = vecs.column(idx);
        let mut inner = ZERO;
        for i in 0..m {
            inner += rhs[i] * col[i];
        }
        inner /= Complex64::new(vals[idx], 0.0);
        for i in 0..m {
            coeffs[i] += inner * col[i];
        }
    }
    // Assemble Σ_σ c_σ U(σ) sparsely.
    let mut out = Array2::from_elem((dim, dim), ZERO);
    for (i, table) in tables.iter().enumerate() {
        let c = coeffs[i];
        if c.norm() < 1e-300 {
            continue;
        }
        for (b, &dst) in table.iter().enumerate() {
            out[(dst, b)] += c;
        }
    }
    Ok(out)
}

/// tr(P_Sym A) computed against the sparse symmetric basis.
pub fn sym_trace(a: &CMatrix, d: usize, n: usize) -> Complex64 {
    let basis = SymBasis::new(n, d);
    let mut acc = ZERO;
    for bv in &basis.vectors {
        // <Φ|A|Φ> over the sparse support of Φ
        let mut inner = ZERO;
        for &i in &bv.indices {
            for &j in &bv.indices {
                inner += a[(i, j)];
            }
        }
        acc += inner * Complex64::new(bv.amplitude * bv.amplitude, 0.0);
    }
    acc
}

/// Γ = dim(Sym^n(H)) / tr(P_Sym A) · twirl(A); satisfies Γ P_Sym = P_Sym.
pub fn gamma_operator(a: &CMatrix, d: usize, cap: usize) -> Result<CMatrix> {
    let n = subsystem_count(a.nrows(), d)?;
    let sym_tr = sym_trace(a, d, n);
    if sym_tr.norm() <= 1e-12 {
        return Err(Error::SingularScaling(sym_tr.norm()));
    }
    let scale = Complex64::new(sym_dim(n, d) as f64, 0.0) / sym_tr;
    Ok(twirl(a, d, cap)?.mapv(|z| z * scale))
}

/// ∫ ν^{⊗k} dν over Haar-random pure prototypes: exactly P_Sym(k,d)/dim Sym.
pub fn haar_average_pure_power(k: usize, d: usize) -> CMatrix {
    let p = crate::sym::sym_projector(k, d).matrix();
    p.mapv(|z| z / sym_dim(k, d) as f64)
}

/// One quadrature node: a pure prototype vector with its weight.
#[derive(Debug, Clone)]
pub struct QuadratureNode {
    pub vector: CVector,
    pub weight: f64,
}

/// A discrete weighted node set approximating integration over pure
/// prototype states.  Nodes are reproducible from the serialized metadata.
#[derive(Debug, Clone)]
pub struct QuadratureScheme {
    pub d: usize,
    pub kind: QuadratureKind,
    pub seed: u64,
    pub resolution: usize,
    pub nodes: Vec<QuadratureNode>,
}

/// Serializable description of a scheme (nodes are regenerated, not stored).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadratureMeta {
    pub d: usize,
    pub kind: QuadratureKind,
    pub seed: u64,
    pub resolution: usize,
}

impl QuadratureScheme {
    pub fn meta(&self) -> QuadratureMeta {
        QuadratureMeta {
            d: self.d,
            kind: self.kind,
            seed: self.seed,
            resolution: self.resolution,
        }
    }

    /// Quadrature estimate of ∫ ν^{⊗k} dν.
    pub fn estimate_pure_power(&self, k: usize) -> CMatrix {
        let dim = self.d.pow(k as u32);
        let mut out = Array2::from_elem((dim, dim), ZERO);
        for node in &self.nodes {
            let v = crate::linalg::tensor_power_vec(&node.vector, k);
            for i in 0..dim {
                for j in 0..dim {
                    out[(i, j)] += Complex64::new(node.weight, 0.0) * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

/// Builds a quadrature scheme: a deterministic Fibonacci sphere lattice for
/// d = 2, seeded Haar-random pure states with equal weights otherwise.
pub fn build_quadrature(
    d: usize,
    resolution: usize,
    kind: Option<QuadratureKind>,
    seed: u64,
) -> Result<QuadratureScheme> {
    if resolution < 2 {
        return Err(Error::Argument(format!(
            "quadrature resolution {resolution} < 2"
        )));
    }
    if d < 2 {
        return Err(Error::Argument("subsystem dimension must be at least 2".into()));
    }
    let kind = kind.unwrap_or(if d == 2 {
        QuadratureKind::SphereGrid
    } else {
        QuadratureKind::MonteCarlo
    });
    if kind == QuadratureKind::SphereGrid && d != 2 {
        return Err(Error::Argument(
            "sphere-grid quadrature is only defined for d = 2".into(),
        ));
    }
    let weight = 1.0 / resolution as f64;
    let nodes = match kind {
        QuadratureKind::SphereGrid => fibonacci_nodes(resolution, weight),
        QuadratureKind::MonteCarlo => monte_carlo_nodes(d, resolution, seed, weight),
    };
    Ok(QuadratureScheme {
        d,
        kind,
        seed,
        resolution,
        nodes,
    })
}

fn fibonacci_nodes(resolution: usize, weight: f64) -> Vec<QuadratureNode> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..resolution)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / resolution as f64;
            let phi = golden_angle * i as f64;
            // Bloch vector (sinθ cosφ, sinθ sinφ, z) → state cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>
            let theta = z.acos();
            let vector: CVector = ndarray::array![
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi)
            ];
            QuadratureNode { vector, weight }
        })
        .collect()
}

fn monte_carlo_nodes(d: usize, resolution: usize, seed: u64, weight: f64) -> Vec<QuadratureNode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..resolution)
        .map(|_| {
            let raw: CVector = Array1::from_iter((0..d).map(|_| {
                Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng))
            }));
            QuadratureNode {
                vector: normalize(&raw),
                weight,
            }
        })
        .collect()
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
