//! Scalar information measures, all in bits (base-2 logarithms).
//!
//! Conventions: `0·log 0 = 0`; eigenvalues below 1e−12 are treated as exactly
//! zero in entropy sums, which removes `−0·∞` artifacts from rank-deficient
//! states.

use alloc::vec::Vec;

// f64 float intrinsics come from libm under no_std
#[allow(unused_imports)]
use num_traits::Float;

use crate::ensemble::{BinaryEnsemble, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{psd_sqrt, trace_norm};

/// Eigenvalues below this are treated as exactly zero in entropy sums.
const ENTROPY_EIG_FLOOR: f64 = 1e-12;

/// Relative σ-eigenvalue threshold for the relative-entropy support rule.
const SUPPORT_REL_TOL: f64 = 1e-10;

/// ρ-weight outside supp(σ) above which relative entropy is declared infinite.
const SUPPORT_WEIGHT_TOL: f64 = 1e-8;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Dimension-independent cap on subentropy: `(1 − γ) log₂ e`.
pub fn subentropy_cap() -> f64 {
    (1.0 - EULER_GAMMA) * core::f64::consts::LOG2_E
}

/// Binary entropy `H(p) = −p log₂ p − (1−p) log₂(1−p)`.
///
/// Accepts a hair of rounding slop around the endpoints; anything further
/// outside `[0, 1]` is a domain error.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || p < -1e-12 || p > 1.0 + 1e-12 {
        return Err(Error::DomainError("binary entropy needs p in [0, 1]"));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(plogp(p) + plogp(1.0 - p))
}

/// `−x log₂ x` with the `0 log 0 = 0` convention.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Von Neumann entropy `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eig()
        .eigenvalues
        .iter()
        .map(|&lam| if lam > ENTROPY_EIG_FLOOR { plogp(lam) } else { 0.0 })
        .sum()
}

/// Relative entropy `S(ρ‖σ) = Tr ρ (log₂ ρ − log₂ σ)`.
///
/// Returns `f64::INFINITY` when the support of ρ escapes the support of σ:
/// σ-eigenvalues below `1e−10` (relative) are kernel directions, and more
/// than `1e−8` of ρ's weight on them means infinity.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let seig = sigma.eig();
    let smax = seig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x));
    let sth = SUPPORT_REL_TOL * smax;

    let mut cross = 0.0; // Tr ρ log₂ σ over the support of σ
    let mut escaped = 0.0; // ρ-weight on the kernel of σ
    for (k, &mu) in seig.eigenvalues.iter().enumerate() {
        let v = seig.eigenvectors.column(k);
        let w = rho.matrix().expectation(&v).max(0.0);
        if mu <= sth {
            escaped += w;
        } else {
            cross += w * mu.log2();
        }
    }
    if escaped > SUPPORT_WEIGHT_TOL {
        return Ok(f64::INFINITY);
    }
    // Tr ρ log₂ ρ = −S(ρ)
    Ok((-von_neumann_entropy(rho) - cross).max(0.0))
}

/// Uhlmann fidelity `B(ρ, σ) = ‖√ρ √σ‖_tr`, clamped into [0, 1].
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let a = psd_sqrt(rho.matrix())?;
    let b = psd_sqrt(sigma.matrix())?;
    Ok(trace_norm(&a.mul(&b)).clamp(0.0, 1.0))
}

/// Holevo information `χ(E) = S(ρ̄) − p S(ρ0) − (1−p) S(ρ1)`.
pub fn holevo_chi(e: &BinaryEnsemble) -> f64 {
    von_neumann_entropy(&e.average_state())
        - e.p() * von_neumann_entropy(e.rho0())
        - (1.0 - e.p()) * von_neumann_entropy(e.rho1())
}

/// Closed-form `χ` for a pure pair at angle `theta`: `ρ̄` has eigenvalues
/// `(1 ± √(1 − 4p(1−p) sin²θ))/2` and the pure states carry no entropy, so
/// `χ = H(λ₊)`.
pub fn pure_pair_chi(theta: f64, p: f64) -> Result<f64> {
    if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::DomainError("theta must lie in [0, pi/2]"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError("prior p must lie in [0, 1]"));
    }
    let s = theta.sin();
    let disc = (1.0 - 4.0 * p * (1.0 - p) * s * s).max(0.0);
    binary_entropy((1.0 + disc.sqrt()) / 2.0)
}

/// Gap of the binary-entropy upper bound `H(1/2 + δ) ≤ √(1 − (2δ)²)`:
/// returns `√(1 − (2δ)²) − H(1/2 + δ)`, which is nonnegative on the domain.
pub fn upph_gap(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta.abs() > 0.5 + 1e-12 {
        return Err(Error::DomainError("delta must lie in [-1/2, 1/2]"));
    }
    let delta = delta.clamp(-0.5, 0.5);
    let lhs = (1.0 - 4.0 * delta * delta).max(0.0).sqrt();
    Ok(lhs - binary_entropy(0.5 + delta)?)
}

/// Subentropy `Q(ρ)`: the mean mutual information a Haar-random complete
/// orthogonal measurement extracts from a pure-state decomposition of ρ.
///
/// Closed form over the spectrum `{λ_k}`:
///
/// ```text
/// Q = −Σ_k [ Π_{j≠k} λ_k/(λ_k − λ_j) ] λ_k log₂ λ_k
/// ```
///
/// which is exactly the divided difference `g[λ_1, …, λ_d]` of
/// `g(x) = −x^d log₂ x`. Near-degenerate spectra (adjacent gap < 1e−6) are
/// evaluated in the confluent limit — clustered nodes use derivatives of
/// `g` — because the raw product form is numerically singular there.
pub fn subentropy(rho: &DensityMatrix) -> f64 {
    let mut lam: Vec<f64> = rho
        .eig()
        .eigenvalues
        .iter()
        .map(|&x| x.max(0.0))
        .collect();
    lam.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    subentropy_from_spectrum(&lam)
}

/// Subentropy from an ascending spectrum (exposed for spectrum-level tests).
pub fn subentropy_from_spectrum(lam: &[f64]) -> f64 {
    let d = lam.len();
    if d == 1 {
        return 0.0;
    }
    let min_gap = lam
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if min_gap >= 1e-6 {
        // Raw product form, stable for well-separated spectra.
        let mut q = 0.0;
        for (k, &lk) in lam.iter().enumerate() {
            if lk <= ENTROPY_EIG_FLOOR {
                continue;
            }
            let mut prod = 1.0;
            for (j, &lj) in lam.iter().enumerate() {
                if j != k {
                    prod *= lk / (lk - lj);
                }
            }
            q += prod * plogp(lk);
        }
        q.max(0.0)
    } else {
        // Confluent limit: cluster near-equal nodes, then take the divided
        // difference of g(x) = −x^d log₂ x with derivative entries on repeats.
        let nodes = cluster_nodes(lam);
        divided_difference(&nodes, d).max(0.0)
    }
}

/// Replace chains of nodes with adjacent gaps < 1e−6 by their mean, making
/// the repeats exact so the confluent table can branch on equality.
fn cluster_nodes(sorted: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && sorted[end] - sorted[end - 1] < 1e-6 {
            end += 1;
        }
        let mean = sorted[start..end].iter().sum::<f64>() / (end - start) as f64;
        for _ in start..end {
            out.push(mean);
        }
        start = end;
    }
    out
}

/// `g(x) = −x^d log₂ x`, extended by 0 at x = 0.
fn g_node(x: f64, d: usize) -> f64 {
    if x <= ENTROPY_EIG_FLOOR {
        0.0
    } else {
        -x.powi(d as i32) * x.log2()
    }
}

/// k-th derivative of `g` for k < d:
/// `g^(k)(x) = −[d!/(d−k)! · x^{d−k} log₂ x + c_k x^{d−k} log₂ e]`
/// with `c_0 = 0`, `c_{j+1} = d!/(d−j)! + (d−j) c_j`; every term vanishes at 0.
fn g_derivative(x: f64, d: usize, k: usize) -> f64 {
    debug_assert!(k < d);
    let mut fall_j = 1.0; // d!/(d−j)!
    let mut c_j = 0.0;
    for j in 0..k {
        fall_j *= d as f64 - j as f64;
        c_j = fall_j / (d as f64 - j as f64) + (d as f64 - j as f64) * c_j;
    }
    if x <= ENTROPY_EIG_FLOOR {
        return 0.0;
    }
    let pow = x.powi((d - k) as i32);
    -(fall_j * pow * x.log2() + c_j * pow * core::f64::consts::LOG2_E)
}

/// Newton divided difference `g[x_1, …, x_n]` with confluent (repeated-node)
/// entries `g^{(k)}(x)/k!`.
fn divided_difference(nodes: &[f64], d: usize) -> f64 {
    let n = nodes.len();
    let mut table: Vec<f64> = nodes.iter().map(|&x| g_node(x, d)).collect();
    let mut factorial = 1.0;
    for k in 1..n {
        factorial *= k as f64;
        for i in 0..n - k {
            table[i] = if nodes[i + k] == nodes[i] {
                g_derivative(nodes[i], d, k) / factorial
            } else {
                (table[i + 1] - table[i]) / (nodes[i + k] - nodes[i])
            };
        }
    }
    table[0]
}

/// All scalar measures of one ensemble in a single report.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    pub chi: f64,
    pub fidelity_b: f64,
    pub subentropy_q: f64,
    pub entropy_avg: f64,
    pub entropy_rho0: f64,
    pub entropy_rho1: f64,
    pub binary_entropy_p: f64,
}

impl MeasureReport {
    pub fn for_ensemble(e: &BinaryEnsemble) -> Result<Self> {
        let avg = e.average_state();
        let entropy_avg = von_neumann_entropy(&avg);
        let entropy_rho0 = von_neumann_entropy(e.rho0());
        let entropy_rho1 = von_neumann_entropy(e.rho1());
        Ok(Self {
            chi: entropy_avg - e.p() * entropy_rho0 - (1.0 - e.p()) * entropy_rho1,
            fidelity_b: fidelity(e.rho0(), e.rho1())?,
            subentropy_q: subentropy(&avg),
            entropy_avg,
            entropy_rho0,
            entropy_rho1,
            binary_entropy_p: binary_entropy(e.p())?,
        })
    }
}
