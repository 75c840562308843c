//! POVMs, the classical channel a measurement induces on a binary ensemble,
//! and the named measurement constructions.
//!
//! The constructions:
//!
//! - [`fidelity_preserving_measurement`] — a complete orthogonal measurement
//!   whose outcome distributions have Bhattacharyya overlap equal to the
//!   quantum fidelity `B(ρ0, ρ1)`.
//! - [`helstrom_measurement`] — the basis diagonalizing `p ρ0 − (1−p) ρ1`,
//!   optimal for guessing probability.
//! - [`pretty_good_measurement`] — elements `p_i ρ̄^{−1/2} ρ_i ρ̄^{−1/2}`.
//! - [`common_eigenbasis_measurement`] — for commuting states, the shared
//!   eigenbasis; the unique situation where a measurement attains `χ`.
//! - [`random_orthogonal_measurement`] — Haar-random complete orthogonal.

use alloc::vec;
use alloc::vec::Vec;

// f64 float intrinsics come from libm under no_std
#[allow(unused_imports)]
use num_traits::Float;

use crate::ensemble::{BinaryEnsemble, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    self, haar_unitary, hermitian_eig, outer, psd_inv_sqrt, psd_sqrt, ComplexMatrix, C64,
};
use crate::measures::{binary_entropy, fidelity};

/// Completeness tolerance: `‖Σ_m E_m − I‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Element-positivity tolerance on POVM eigenvalues.
const ELEMENT_POSITIVITY_TOL: f64 = 1e-10;

/// Outcomes with marginal probability below this carry no weight and are
/// dropped from entropy sums.
const OUTCOME_FLOOR: f64 = 1e-15;

/// Commutation tolerance accepted by the common-eigenbasis construction.
pub const COMMUTING_TOL: f64 = 1e-8;

/// A positive operator-valued measure: PSD elements summing to identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    /// Validate PSD-ness of every element and completeness, then wrap.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match elements.first() {
            Some(e) => e.dim(),
            None => return Err(Error::DegenerateInput("POVM needs at least one element")),
        };
        let mut sum = ComplexMatrix::zeros(dim);
        for el in &elements {
            if el.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: el.dim(),
                });
            }
            let eig = hermitian_eig(el)?;
            if eig.eigenvalues[0] < -ELEMENT_POSITIVITY_TOL {
                return Err(Error::NotPositive {
                    min_eigenvalue: eig.eigenvalues[0],
                    tolerance: ELEMENT_POSITIVITY_TOL,
                });
            }
            sum = sum.add(el);
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::DomainError("POVM elements do not sum to identity"));
        }
        Ok(Self { dim, elements })
    }

    /// Wrap without validation, for constructions complete by design.
    pub(crate) fn from_parts(dim: usize, elements: Vec<ComplexMatrix>) -> Self {
        Self { dim, elements }
    }

    /// Complete orthogonal measurement from the columns of a unitary.
    pub fn from_basis_columns(u: &ComplexMatrix) -> Self {
        let d = u.dim();
        let elements = (0..d).map(|j| outer(&u.column(j))).collect();
        Self::from_parts(d, elements)
    }

    /// The trivial one-outcome measurement.
    pub fn trivial(dim: usize) -> Self {
        Self::from_parts(dim, vec![ComplexMatrix::identity(dim)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// `‖Σ_m E_m − I‖_max`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim);
        for el in &self.elements {
            sum = sum.add(el);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Conjugate every element by a unitary: `E_m ↦ U E_m U†`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Self {
        let ua = u.adjoint();
        Self::from_parts(
            self.dim,
            self.elements.iter().map(|e| u.mul(e).mul(&ua)).collect(),
        )
    }
}

/// The classical joint distribution a POVM induces on a binary ensemble.
///
/// Invariants: `q = p q0 + (1−p) q1` holds exactly by construction and
/// `q(m) r0(m) = p q0(m)` up to rounding; outcomes with `q(m) < 1e−15`
/// get the convention `r0(m) = p` (they carry no weight).
#[derive(Debug, Clone)]
pub struct InducedChannel {
    pub p: f64,
    pub q0: Vec<f64>,
    pub q1: Vec<f64>,
    pub q: Vec<f64>,
    pub r0: Vec<f64>,
}

/// Outcome distributions `q_i(m) = Tr(E_m ρ_i)` of measuring the ensemble.
pub fn induce_channel(e: &BinaryEnsemble, m: &Povm) -> Result<InducedChannel> {
    if e.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            left: e.dim(),
            right: m.dim(),
        });
    }
    let p = e.p();
    let q0: Vec<f64> = m
        .elements()
        .iter()
        .map(|el| el.mul(e.rho0().matrix()).trace().re.max(0.0))
        .collect();
    let q1: Vec<f64> = m
        .elements()
        .iter()
        .map(|el| el.mul(e.rho1().matrix()).trace().re.max(0.0))
        .collect();
    Ok(channel_from_probs(p, q0, q1))
}

pub(crate) fn channel_from_probs(p: f64, q0: Vec<f64>, q1: Vec<f64>) -> InducedChannel {
    let q: Vec<f64> = q0
        .iter()
        .zip(&q1)
        .map(|(&a, &b)| p * a + (1.0 - p) * b)
        .collect();
    let r0: Vec<f64> = q0
        .iter()
        .zip(&q)
        .map(|(&a, &qm)| {
            if qm < OUTCOME_FLOOR {
                p
            } else {
                (p * a / qm).clamp(0.0, 1.0)
            }
        })
        .collect();
    InducedChannel { p, q0, q1, q, r0 }
}

/// Mutual information `I(X : M) = H(p) − Σ_m q(m) H(r0(m))` of the channel,
/// in bits, clamped below at zero.
pub fn mutual_information(c: &InducedChannel) -> f64 {
    let hp = binary_entropy(c.p).expect("channel prior is a probability");
    let cond: f64 = c
        .q
        .iter()
        .zip(&c.r0)
        .filter(|(&qm, _)| qm >= OUTCOME_FLOOR)
        .map(|(&qm, &r)| qm * binary_entropy(r).expect("posterior is a probability"))
        .sum();
    (hp - cond).max(0.0)
}

/// Bhattacharyya overlap `Σ_m √(q0(m) q1(m))` of the outcome distributions,
/// clamped into [0, 1]. Measurement cannot decrease fidelity, so this is
/// ≥ `B(ρ0, ρ1)` for every POVM.
pub fn classical_fidelity(c: &InducedChannel) -> f64 {
    c.q0.iter()
        .zip(&c.q1)
        .map(|(&a, &b)| (a * b).sqrt())
        .sum::<f64>()
        .clamp(0.0, 1.0)
}

/// Complete orthogonal measurement preserving the fidelity of `rho0`, `rho1`:
/// the induced distributions satisfy `Σ√(q0 q1) = B(ρ0, ρ1)` within 1e−8.
///
/// Construction: with an invertible anchor state `a` (the larger-rank of the
/// two, roles swapped when ρ0 has the larger support), measure in the
/// eigenbasis of `O = a^{−1/2} (a^{1/2} b a^{1/2})^{1/2} a^{−1/2}` on the
/// support of `a`; directions of `supp(ρ0+ρ1)` outside it become rank-1
/// outcomes and the joint kernel is appended as one projector outcome. On an
/// eigenvector of `O` the identity `⟨m|b|m⟩ = μ² ⟨m|a|m⟩` turns the
/// Bhattacharyya sum into `Tr (a^{1/2} b a^{1/2})^{1/2} = B`.
///
/// For two pure states the anchor construction degenerates (every basis
/// containing the anchor vector preserves fidelity, but with maximal
/// asymmetry); the measurement used instead is the eigenbasis of `ρ0 − ρ1`
/// on the joint support, the symmetric fidelity-achieving basis, which also
/// matches the pretty-good and equal-prior Helstrom measurements.
pub fn fidelity_preserving_measurement(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
) -> Result<Povm> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            left: rho0.dim(),
            right: rho1.dim(),
        });
    }
    let d = rho0.dim();
    let rank0 = rho0.rank();
    let rank1 = rho1.rank();

    let total = rho0.matrix().add(rho1.matrix());
    let total_eig = hermitian_eig(&total)?;
    let total_th = linalg::default_kernel_threshold(&total_eig.eigenvalues);

    let mut outcome_vectors: Vec<Vec<C64>> = Vec::new();

    if rank0 == 1 && rank1 == 1 {
        // Symmetric basis: eigenvectors of ρ0 − ρ1 on supp(ρ0 + ρ1).
        let supp = total_eig.select_columns(|lam| lam > total_th);
        let diff = rho0.matrix().sub(rho1.matrix());
        let compressed = compress(&diff, &supp);
        let ceig = hermitian_eig(&compressed)?;
        for k in 0..supp.len() {
            outcome_vectors.push(map_back(&supp, &ceig.eigenvectors.column(k)));
        }
    } else {
        let (anchor, other) = if rank0 > rank1 {
            (rho0, rho1)
        } else {
            (rho1, rho0)
        };
        let a_eig = hermitian_eig(anchor.matrix())?;
        let a_th = linalg::default_kernel_threshold(&a_eig.eigenvalues);
        let a_sqrt = a_eig.reassemble(|x| if x <= a_th { 0.0 } else { x.sqrt() });
        let a_inv_sqrt = a_eig.reassemble(|x| if x <= a_th { 0.0 } else { 1.0 / x.sqrt() });
        let inner_sqrt = psd_sqrt(&a_sqrt.mul(other.matrix()).mul(&a_sqrt))?;
        let o = a_inv_sqrt.mul(&inner_sqrt).mul(&a_inv_sqrt);

        // Eigenbasis of O restricted to supp(anchor).
        let supp = a_eig.select_columns(|lam| lam > a_th);
        let compressed = compress(&o, &supp);
        let ceig = hermitian_eig(&compressed)?;
        for k in 0..supp.len() {
            outcome_vectors.push(map_back(&supp, &ceig.eigenvectors.column(k)));
        }

        // Directions supporting the other state outside supp(anchor).
        let kernel = a_eig.select_columns(|lam| lam <= a_th);
        if !kernel.is_empty() {
            let tker = compress(&total, &kernel);
            let keig = hermitian_eig(&tker)?;
            for (k, &lam) in keig.eigenvalues.iter().enumerate() {
                if lam > total_th {
                    outcome_vectors.push(map_back(&kernel, &keig.eigenvectors.column(k)));
                }
            }
        }
    }

    let mut elements: Vec<ComplexMatrix> = outcome_vectors.iter().map(|v| outer(v)).collect();
    // Joint kernel of ρ0 + ρ1, lumped into a single projector outcome.
    let mut covered = ComplexMatrix::zeros(d);
    for el in &elements {
        covered = covered.add(el);
    }
    let residual = ComplexMatrix::identity(d).sub(&covered);
    if residual.max_abs() > COMPLETENESS_TOL {
        elements.push(residual);
    }
    let povm = Povm::from_parts(d, elements);

    // Post-verification: the whole point of this measurement.
    let b_quantum = fidelity(rho0, rho1)?;
    let q0: Vec<f64> = povm
        .elements()
        .iter()
        .map(|el| el.mul(rho0.matrix()).trace().re.max(0.0))
        .collect();
    let q1: Vec<f64> = povm
        .elements()
        .iter()
        .map(|el| el.mul(rho1.matrix()).trace().re.max(0.0))
        .collect();
    let b_classical = classical_fidelity(&channel_from_probs(0.5, q0, q1));
    let deviation = (b_classical - b_quantum).abs();
    if deviation > 1e-8 {
        return Err(Error::FidelityNotPreserved {
            classical: b_classical,
            quantum: b_quantum,
            deviation,
        });
    }
    Ok(povm)
}

/// Compress a matrix onto a set of orthonormal columns: `B† M B`.
fn compress(m: &ComplexMatrix, basis: &[Vec<C64>]) -> ComplexMatrix {
    let k = basis.len();
    ComplexMatrix::from_fn(k, |i, j| {
        let mv = m.matvec(&basis[j]);
        linalg::inner(&basis[i], &mv)
    })
}

/// Map a compressed-space vector back to the full space: `Σ_i w_i b_i`.
fn map_back(basis: &[Vec<C64>], w: &[C64]) -> Vec<C64> {
    let d = basis[0].len();
    let mut out = vec![C64::ZERO; d];
    for (i, b) in basis.iter().enumerate() {
        for r in 0..d {
            out[r] += w[i] * b[r];
        }
    }
    out
}

/// Orthogonal measurement in the eigenbasis of `p ρ0 − (1−p) ρ1` — the
/// Helstrom basis, optimal for the guessing probability.
pub fn helstrom_measurement(e: &BinaryEnsemble) -> Povm {
    let diff = e
        .rho0()
        .matrix()
        .scale(e.p())
        .sub(&e.rho1().matrix().scale(1.0 - e.p()));
    let eig = hermitian_eig(&diff).expect("combination of Hermitian states is Hermitian");
    Povm::from_basis_columns(&eig.eigenvectors)
}

/// The pretty good measurement: `E_i = p_i ρ̄^{−1/2} ρ_i ρ̄^{−1/2}` on the
/// support of the average state, plus its kernel as one outcome. Degenerate
/// priors yield the trivial identity POVM (any measurement is uninformative).
pub fn pretty_good_measurement(e: &BinaryEnsemble) -> Result<Povm> {
    let d = e.dim();
    if e.p() == 0.0 || e.p() == 1.0 {
        return Ok(Povm::trivial(d));
    }
    let avg = e.average_state();
    let inv_sqrt = psd_inv_sqrt(avg.matrix())?;
    let e0 = inv_sqrt
        .mul(e.rho0().matrix())
        .mul(&inv_sqrt)
        .scale(e.p());
    let e1 = inv_sqrt
        .mul(e.rho1().matrix())
        .mul(&inv_sqrt)
        .scale(1.0 - e.p());
    let mut elements = vec![e0, e1];
    let avg_eig = hermitian_eig(avg.matrix())?;
    let th = linalg::default_kernel_threshold(&avg_eig.eigenvalues);
    let kernel_dirs = avg_eig.select_columns(|lam| lam <= th);
    if !kernel_dirs.is_empty() {
        let mut kernel = ComplexMatrix::zeros(d);
        for v in &kernel_dirs {
            kernel = kernel.add(&outer(v));
        }
        elements.push(kernel);
    }
    Ok(Povm::from_parts(d, elements))
}

/// Shared eigenbasis measurement for commuting states.
///
/// Two-stage diagonalization: eigendecompose ρ0, then within each cluster of
/// near-equal ρ0-eigenvalues re-diagonalize the compression of ρ1, which
/// resolves the basis freedom degenerate eigenspaces leave. Errors with
/// `NotCommuting` when `‖[ρ0, ρ1]‖_max > 1e−8`.
pub fn common_eigenbasis_measurement(e: &BinaryEnsemble) -> Result<Povm> {
    let comm = e.commutator_norm();
    if comm > COMMUTING_TOL {
        return Err(Error::NotCommuting {
            commutator_norm: comm,
            tolerance: COMMUTING_TOL,
        });
    }
    let d = e.dim();
    let eig0 = hermitian_eig(e.rho0().matrix())?;
    let mut columns: Vec<Vec<C64>> = (0..d).map(|k| eig0.eigenvectors.column(k)).collect();

    // Cluster boundaries where adjacent ρ0-eigenvalues differ by ≥ 1e−8.
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig0.eigenvalues[end] - eig0.eigenvalues[end - 1] < 1e-8 {
            end += 1;
        }
        if end - start > 1 {
            let cluster: Vec<Vec<C64>> = columns[start..end].to_vec();
            let sub = compress(e.rho1().matrix(), &cluster);
            let sub_eig = hermitian_eig(&sub)?;
            for (offset, col) in (start..end).enumerate() {
                columns[col] = map_back(&cluster, &sub_eig.eigenvectors.column(offset));
            }
        }
        start = end;
    }

    let basis = ComplexMatrix::from_fn(d, |i, j| columns[j][i]);
    Ok(Povm::from_basis_columns(&basis))
}

/// Uniformly random complete orthogonal measurement: the rank-1 projectors
/// onto the columns of a Haar unitary. Deterministic per seed.
pub fn random_orthogonal_measurement(d: usize, seed: u64) -> Povm {
    Povm::from_basis_columns(&haar_unitary(d, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{
        commuting_ensemble, figure3_ensemble, pure_pair, random_ensemble, validate_density,
    };
    use crate::measures::holevo_chi;

    fn mi(e: &BinaryEnsemble, m: &Povm) -> f64 {
        mutual_information(&induce_channel(e, m).unwrap())
    }

    #[test]
    fn induce_channel_perfect_discrimination() {
        let e = pure_pair(core::f64::consts::FRAC_PI_2, 0.5).unwrap();
        let m = Povm::from_basis_columns(&ComplexMatrix::identity(2));
        let c = induce_channel(&e, &m).unwrap();
        assert!((c.q0[0] - 1.0).abs() < 1e-12 && c.q0[1] < 1e-12);
        assert!((c.q1[1] - 1.0).abs() < 1e-12 && c.q1[0] < 1e-12);
        assert!((mutual_information(&c) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn induce_channel_identical_states() {
        let rho = validate_density(ComplexMatrix::from_diag(&[0.6, 0.4])).unwrap();
        let e = BinaryEnsemble::new(0.3, rho.clone(), rho).unwrap();
        for seed in 0..5 {
            let m = random_orthogonal_measurement(2, seed);
            let c = induce_channel(&e, &m).unwrap();
            for (a, b) in c.q0.iter().zip(&c.q1) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!(mutual_information(&c) < 1e-12);
        }
    }

    #[test]
    fn induce_channel_mixed_pair_uniform_marginal() {
        let rho = DensityMatrix::maximally_mixed(2);
        let e = BinaryEnsemble::new(0.5, rho.clone(), rho).unwrap();
        let m = random_orthogonal_measurement(2, 9);
        let c = induce_channel(&e, &m).unwrap();
        for &qm in &c.q {
            assert!((qm - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn channel_invariants_hold() {
        for seed in 0..50 {
            let e = random_ensemble(3, (2, 3), 0.37, seed).unwrap();
            let m = random_orthogonal_measurement(3, seed);
            let c = induce_channel(&e, &m).unwrap();
            let sum0: f64 = c.q0.iter().sum();
            let sum1: f64 = c.q1.iter().sum();
            let sums: f64 = c.q.iter().sum();
            assert!((sum0 - 1.0).abs() < 1e-9);
            assert!((sum1 - 1.0).abs() < 1e-9);
            assert!((sums - 1.0).abs() < 1e-9);
            for m_ in 0..c.q.len() {
                assert!((c.q[m_] - (0.37 * c.q0[m_] + 0.63 * c.q1[m_])).abs() < 1e-10);
                assert!((c.q[m_] * c.r0[m_] - 0.37 * c.q0[m_]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mutual_information_binary_symmetric_channel() {
        let c = channel_from_probs(0.5, vec![0.9, 0.1], vec![0.1, 0.9]);
        let expect = 1.0 - binary_entropy(0.9).unwrap();
        assert!((mutual_information(&c) - expect).abs() < 1e-12);
    }

    #[test]
    fn classical_fidelity_cases() {
        let same = channel_from_probs(0.5, vec![0.3, 0.7], vec![0.3, 0.7]);
        assert!((classical_fidelity(&same) - 1.0).abs() < 1e-12);
        let disjoint = channel_from_probs(0.5, vec![1.0, 0.0], vec![0.0, 1.0]);
        assert!(classical_fidelity(&disjoint) < 1e-12);
        let bsc = channel_from_probs(0.5, vec![0.9, 0.1], vec![0.1, 0.9]);
        assert!((classical_fidelity(&bsc) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn fidelity_preserving_on_pure_pairs() {
        for i in 0..20 {
            let theta = core::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / 20.0;
            let e = pure_pair(theta, 0.5).unwrap();
            let m = fidelity_preserving_measurement(e.rho0(), e.rho1()).unwrap();
            let c = induce_channel(&e, &m).unwrap();
            assert!(
                (classical_fidelity(&c) - theta.cos()).abs() < 1e-8,
                "theta={theta}"
            );
        }
    }

    #[test]
    fn fidelity_preserving_matches_helstrom_info_at_equal_priors() {
        // For pure states with p = 1/2 the fidelity-preserving basis, the
        // pretty good measurement, and the Helstrom basis extract the same
        // information.
        for i in 1..20 {
            let theta = core::f64::consts::FRAC_PI_2 * i as f64 / 20.0;
            let e = pure_pair(theta, 0.5).unwrap();
            let m_fid = fidelity_preserving_measurement(e.rho0(), e.rho1()).unwrap();
            let m_hel = helstrom_measurement(&e);
            let m_pgm = pretty_good_measurement(&e).unwrap();
            let i_fid = mi(&e, &m_fid);
            assert!((i_fid - mi(&e, &m_hel)).abs() < 1e-9, "theta={theta}");
            assert!((i_fid - mi(&e, &m_pgm)).abs() < 1e-9, "theta={theta}");
        }
    }

    #[test]
    fn fidelity_preserving_commuting_case() {
        let rho0 = validate_density(ComplexMatrix::from_diag(&[0.2, 0.8])).unwrap();
        let rho1 = validate_density(ComplexMatrix::from_diag(&[0.7, 0.3])).unwrap();
        let m = fidelity_preserving_measurement(&rho0, &rho1).unwrap();
        let e = BinaryEnsemble::new(0.5, rho0, rho1).unwrap();
        let c = induce_channel(&e, &m).unwrap();
        let expect = (0.2f64 * 0.7).sqrt() + (0.8f64 * 0.3).sqrt();
        assert!((classical_fidelity(&c) - expect).abs() < 1e-8);
    }

    #[test]
    fn fidelity_preserving_figure3() {
        let e = figure3_ensemble(0.3).unwrap();
        let b = fidelity(e.rho0(), e.rho1()).unwrap();
        let m = fidelity_preserving_measurement(e.rho0(), e.rho1()).unwrap();
        let c = induce_channel(&e, &m).unwrap();
        assert!((classical_fidelity(&c) - b).abs() < 1e-8);
    }

    #[test]
    fn fidelity_preserving_rank_deficient_pairs() {
        for seed in 0..200 {
            let d = 2 + (seed as usize) % 3;
            let r0 = 1 + (seed as usize) % d;
            let r1 = 1 + (seed as usize / 7) % d;
            let e = random_ensemble(d, (r0, r1), 0.5, 10_000 + seed).unwrap();
            let b = fidelity(e.rho0(), e.rho1()).unwrap();
            let m = fidelity_preserving_measurement(e.rho0(), e.rho1()).unwrap();
            let c = induce_channel(&e, &m).unwrap();
            assert!(
                (classical_fidelity(&c) - b).abs() < 1e-8,
                "seed={seed} d={d} ranks=({r0},{r1})"
            );
        }
    }

    #[test]
    fn helstrom_orthogonal_states_extract_everything() {
        for &p in &[0.2, 0.5, 0.9] {
            let e = pure_pair(core::f64::consts::FRAC_PI_2, p).unwrap();
            let m = helstrom_measurement(&e);
            assert!((mi(&e, &m) - binary_entropy(p).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn helstrom_identical_states_extract_nothing() {
        let rho = validate_density(ComplexMatrix::from_diag(&[0.5, 0.5])).unwrap();
        let e = BinaryEnsemble::new(0.4, rho.clone(), rho).unwrap();
        assert!(mi(&e, &helstrom_measurement(&e)) < 1e-12);
    }

    #[test]
    fn helstrom_pi4_value() {
        // binary symmetric channel with crossover (1 − sin θ)/2
        let e = pure_pair(core::f64::consts::FRAC_PI_4, 0.5).unwrap();
        let expect = 1.0
            - binary_entropy((1.0 + core::f64::consts::FRAC_PI_4.sin()) / 2.0).unwrap();
        assert!((mi(&e, &helstrom_measurement(&e)) - expect).abs() < 1e-10);
    }

    #[test]
    fn pgm_orthogonal_states() {
        let e = pure_pair(core::f64::consts::FRAC_PI_2, 0.5).unwrap();
        let m = pretty_good_measurement(&e).unwrap();
        assert!((mi(&e, &m) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pgm_identical_states() {
        let rho = validate_density(ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        let e = BinaryEnsemble::new(0.6, rho.clone(), rho).unwrap();
        assert!(mi(&e, &pretty_good_measurement(&e).unwrap()) < 1e-12);
    }

    #[test]
    fn pgm_degenerate_prior_is_trivial() {
        let e = pure_pair(0.9, 1.0).unwrap();
        let m = pretty_good_measurement(&e).unwrap();
        assert_eq!(m.len(), 1);
        assert!(mi(&e, &m) < 1e-15);
    }

    #[test]
    fn pgm_completeness_on_rank_deficient_average() {
        for seed in 0..50 {
            let e = random_ensemble(4, (1, 2), 0.5, seed).unwrap();
            let m = pretty_good_measurement(&e).unwrap();
            assert!(m.completeness_residual() < 1e-9, "seed={seed}");
        }
    }

    #[test]
    fn common_eigenbasis_attains_chi() {
        for seed in 0..100 {
            let d = 2 + (seed as usize) % 4;
            let e = commuting_ensemble(d, 0.5 * ((seed as f64 * 0.137).fract() + 0.5), seed)
                .unwrap();
            let m = common_eigenbasis_measurement(&e).unwrap();
            let got = mi(&e, &m);
            let chi = holevo_chi(&e);
            assert!((got - chi).abs() < 1e-8, "seed={seed} d={d} {got} vs {chi}");
        }
    }

    #[test]
    fn common_eigenbasis_orthogonal_pure() {
        let e = pure_pair(core::f64::consts::FRAC_PI_2, 0.3).unwrap();
        let m = common_eigenbasis_measurement(&e).unwrap();
        let chi = holevo_chi(&e);
        assert!((mi(&e, &m) - chi).abs() < 1e-10);
        assert!((chi - binary_entropy(0.3).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn common_eigenbasis_rejects_noncommuting() {
        let e = pure_pair(core::f64::consts::FRAC_PI_4, 0.5).unwrap();
        assert!(matches!(
            common_eigenbasis_measurement(&e),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn random_orthogonal_complete_and_deterministic() {
        for d in 1..=5 {
            let m = random_orthogonal_measurement(d, 31);
            assert_eq!(m.len(), d);
            assert!(m.completeness_residual() < 1e-9);
        }
        let a = random_orthogonal_measurement(3, 4);
        let b = random_orthogonal_measurement(3, 4);
        assert_eq!(a.elements()[0], b.elements()[0]);
    }

    #[test]
    fn povm_validation_rejects_incomplete() {
        let half = ComplexMatrix::identity(2).scale(0.4);
        assert!(Povm::new(vec![half.clone(), half.clone()]).is_err());
        assert!(Povm::new(vec![half.clone(), ComplexMatrix::identity(2).scale(0.6)]).is_ok());
    }

    #[test]
    fn measurement_invariance_under_joint_conjugation() {
        for seed in 0..20 {
            let e = random_ensemble(3, (2, 2), 0.4, seed).unwrap();
            let u = haar_unitary(3, 500 + seed);
            let ua = u.adjoint();
            let rot = BinaryEnsemble::new(
                e.p(),
                validate_density(u.mul(e.rho0().matrix()).mul(&ua)).unwrap(),
                validate_density(u.mul(e.rho1().matrix()).mul(&ua)).unwrap(),
            )
            .unwrap();
            let m = random_orthogonal_measurement(3, seed);
            let a = mi(&e, &m);
            let b = mi(&rot, &m.conjugate(&u));
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn holevo_bound_for_all_constructions() {
        for seed in 0..100 {
            let d = 2 + (seed as usize) % 3;
            let p = (seed as f64 * 0.0173).fract();
            let e = random_ensemble(d, (1 + (seed as usize) % d, d), p, 90_000 + seed).unwrap();
            let chi = holevo_chi(&e);
            let mut infos = vec![
                mi(&e, &helstrom_measurement(&e)),
                mi(&e, &pretty_good_measurement(&e).unwrap()),
                mi(&e, &random_orthogonal_measurement(d, seed)),
            ];
            if let Ok(m) = fidelity_preserving_measurement(e.rho0(), e.rho1()) {
                infos.push(mi(&e, &m));
            }
            for info in infos {
                assert!(info <= chi + 1e-8, "seed={seed} info={info} chi={chi}");
            }
        }
    }
}
