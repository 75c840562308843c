//! Density matrices, binary ensembles, and the generator families used by
//! the figure sweeps and the fuzz harness.

use alloc::vec;
use alloc::vec::Vec;

// f64 float intrinsics come from libm under no_std
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, commutator_max_norm, haar_unitary_from_rng, hermitian_eig, outer, ComplexMatrix,
    EigenDecomposition, C64, HERMITICITY_TOL,
};

/// Tolerance on `|Tr ρ − 1|`.
pub const TRACE_TOL: f64 = 1e-10;

/// Tolerance on eigenvalue negativity.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a quantum state.
    ///
    /// Checks, in order: Hermiticity (within 1e−10 max-norm), unit trace
    /// (within 1e−10), positive semidefiniteness (eigenvalues ≥ −1e−10).
    /// Each failure names the violated invariant and its magnitude.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let dev = mat.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: HERMITICITY_TOL,
            });
        }
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne {
                trace: tr,
                deviation: (tr - 1.0).abs(),
            });
        }
        let eig = hermitian_eig(&mat)?;
        let min = eig.eigenvalues[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
                tolerance: POSITIVITY_TOL,
            });
        }
        Ok(Self { mat })
    }

    /// Wrap without validation; for constructions that are valid by design.
    pub(crate) fn from_matrix_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    /// Pure state `|v⟩⟨v|` from a unit vector.
    pub fn pure(v: &[C64]) -> Result<Self> {
        let n = linalg::vec_norm(v);
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::DomainError("pure state vector must be normalized"));
        }
        Ok(Self::from_matrix_unchecked(outer(v)))
    }

    /// Diagonal mixed state from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(probs))
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::identity(d).scale(1.0 / d as f64))
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Spectral decomposition (infallible: Hermiticity is a type invariant).
    pub fn eig(&self) -> EigenDecomposition {
        hermitian_eig(&self.mat).expect("density matrix is Hermitian by invariant")
    }

    /// Rank relative to the largest eigenvalue (threshold 1e−10 relative).
    pub fn rank(&self) -> usize {
        let eig = self.eig();
        let th = linalg::default_kernel_threshold(&eig.eigenvalues);
        eig.eigenvalues.iter().filter(|&&x| x > th).count()
    }
}

/// A binary ensemble `{(p, ρ0), (1−p, ρ1)}` encoding one classical bit.
#[derive(Debug, Clone)]
pub struct BinaryEnsemble {
    p: f64,
    rho0: DensityMatrix,
    rho1: DensityMatrix,
}

impl BinaryEnsemble {
    /// Bundle a prior and two equal-dimension states.
    ///
    /// `p` is stored exactly as given; the degenerate priors 0 and 1 are
    /// legal and every downstream bound stays finite there.
    pub fn new(p: f64, rho0: DensityMatrix, rho1: DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::DomainError("prior p must lie in [0, 1]"));
        }
        if rho0.dim() != rho1.dim() {
            return Err(Error::DimensionMismatch {
                left: rho0.dim(),
                right: rho1.dim(),
            });
        }
        Ok(Self { p, rho0, rho1 })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn rho0(&self) -> &DensityMatrix {
        &self.rho0
    }

    pub fn rho1(&self) -> &DensityMatrix {
        &self.rho1
    }

    pub fn dim(&self) -> usize {
        self.rho0.dim()
    }

    /// The ensemble average `ρ = p ρ0 + (1−p) ρ1`.
    pub fn average_state(&self) -> DensityMatrix {
        let m = self
            .rho0
            .matrix()
            .scale(self.p)
            .add(&self.rho1.matrix().scale(1.0 - self.p));
        DensityMatrix::from_matrix_unchecked(m)
    }

    /// Max-entry norm of `[ρ0, ρ1]`.
    pub fn commutator_norm(&self) -> f64 {
        commutator_max_norm(self.rho0.matrix(), self.rho1.matrix())
    }

    /// Same ensemble with a different prior.
    pub fn with_prior(&self, p: f64) -> Result<Self> {
        Self::new(p, self.rho0.clone(), self.rho1.clone())
    }
}

/// Validate a raw matrix as a density matrix.
pub fn validate_density(mat: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(mat)
}

/// Qubit ensemble of two pure states at Hilbert-space angle `theta`:
/// `ρ0 = |0⟩⟨0|`, `ρ1 = |v⟩⟨v|` with `v = (cos θ, sin θ)`, overlap `cos θ`.
pub fn pure_pair(theta: f64, p: f64) -> Result<BinaryEnsemble> {
    if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::DomainError("theta must lie in [0, pi/2]"));
    }
    let v0 = [C64::ONE, C64::ZERO];
    let v1 = [C64::new(theta.cos(), 0.0), C64::new(theta.sin(), 0.0)];
    BinaryEnsemble::new(
        p,
        DensityMatrix::from_matrix_unchecked(outer(&v0)),
        DensityMatrix::from_matrix_unchecked(outer(&v1)),
    )
}

/// The qutrit ensemble of the third figure sweep: a nearly pure mixed state
/// `ρ0 = 0.01|0⟩⟨0| + 0.01|1⟩⟨1| + 0.98|2⟩⟨2|` against the pure state on
/// `v = √0.02 |0⟩ + √0.96 |1⟩ + √0.02 |2⟩`.
pub fn figure3_ensemble(p: f64) -> Result<BinaryEnsemble> {
    let rho0 = DensityMatrix::from_probabilities(&[0.01, 0.01, 0.98])?;
    let v = [
        C64::new(0.02f64.sqrt(), 0.0),
        C64::new(0.96f64.sqrt(), 0.0),
        C64::new(0.02f64.sqrt(), 0.0),
    ];
    let rho1 = DensityMatrix::pure(&v)?;
    BinaryEnsemble::new(p, rho0, rho1)
}

/// Random spectrum of the given rank on the probability simplex
/// (normalized unit exponentials, i.e. a flat Dirichlet), padded with zeros.
fn random_spectrum(d: usize, rank: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut w = vec![0.0; d];
    let mut total = 0.0;
    for slot in w.iter_mut().take(rank) {
        // -ln(U) with U in (0, 1]
        let e = -(1.0 - rng.random::<f64>()).ln();
        *slot = e;
        total += e;
    }
    for slot in w.iter_mut().take(rank) {
        *slot /= total;
    }
    w
}

fn rotated_state(d: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    if rank == 1 {
        let u = haar_unitary_from_rng(d, rng);
        return DensityMatrix::from_matrix_unchecked(outer(&u.column(0)));
    }
    let u = haar_unitary_from_rng(d, rng);
    let w = random_spectrum(d, rank, rng);
    let lam = ComplexMatrix::from_diag(&w);
    DensityMatrix::from_matrix_unchecked(u.mul(&lam).mul(&u.adjoint()))
}

/// Random ensemble: each state is `U diag(w) U†` with independent Haar `U`
/// and a flat-Dirichlet spectrum of the requested rank. Deterministic per seed.
pub fn random_ensemble(d: usize, ranks: (usize, usize), p: f64, seed: u64) -> Result<BinaryEnsemble> {
    if ranks.0 < 1 || ranks.0 > d || ranks.1 < 1 || ranks.1 > d {
        return Err(Error::DomainError("state ranks must lie in 1..=d"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho0 = rotated_state(d, ranks.0, &mut rng);
    let rho1 = rotated_state(d, ranks.1, &mut rng);
    BinaryEnsemble::new(p, rho0, rho1)
}

/// Commuting ensemble: two full-support random spectra diagonal in one
/// shared Haar-random basis.
pub fn commuting_ensemble(d: usize, p: f64, seed: u64) -> Result<BinaryEnsemble> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary_from_rng(d, &mut rng);
    let w0 = random_spectrum(d, d, &mut rng);
    let w1 = random_spectrum(d, d, &mut rng);
    let ua = u.adjoint();
    let rho0 = u.mul(&ComplexMatrix::from_diag(&w0)).mul(&ua);
    let rho1 = u.mul(&ComplexMatrix::from_diag(&w1)).mul(&ua);
    BinaryEnsemble::new(
        p,
        DensityMatrix::from_matrix_unchecked(rho0),
        DensityMatrix::from_matrix_unchecked(rho1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_qubit_is_valid() {
        let m = ComplexMatrix::identity(2).scale(0.5);
        assert!(validate_density(m).is_ok());
    }

    #[test]
    fn trace_violation_is_named() {
        let m = ComplexMatrix::from_diag(&[0.7, 0.4]);
        match validate_density(m) {
            Err(Error::TraceNotOne { trace, .. }) => assert!((trace - 1.1).abs() < 1e-12),
            other => panic!("expected TraceNotOne, got {other:?}"),
        }
    }

    #[test]
    fn negativity_is_named() {
        let m = ComplexMatrix::from_diag(&[1.2, -0.2]);
        match validate_density(m) {
            Err(Error::NotPositive { min_eigenvalue, .. }) => {
                assert!((min_eigenvalue + 0.2).abs() < 1e-12)
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn asymmetry_is_named() {
        let m = ComplexMatrix::from_fn(2, |i, j| {
            if i == j {
                C64::new(0.5, 0.0)
            } else if i < j {
                C64::new(0.1, 0.0)
            } else {
                C64::new(0.3, 0.0)
            }
        });
        assert!(matches!(
            validate_density(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn average_state_degenerate_prior() {
        let e = pure_pair(0.7, 1.0).unwrap();
        let avg = e.average_state();
        assert!(avg.matrix().max_abs_diff(e.rho0().matrix()) < 1e-15);
    }

    #[test]
    fn average_state_orthogonal_mixture() {
        let e = pure_pair(core::f64::consts::FRAC_PI_2, 0.5).unwrap();
        let avg = e.average_state();
        assert!(avg
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(2).scale(0.5))
            < 1e-15);
    }

    #[test]
    fn average_state_pi_third_eigenvalues() {
        // eigenvalues (1 ± √(1 − 4p(1−p) sin²θ))/2 = {3/4, 1/4} at p = 1/2, θ = π/3
        let e = pure_pair(core::f64::consts::FRAC_PI_3, 0.5).unwrap();
        let eig = e.average_state().eig();
        assert!((eig.eigenvalues[0] - 0.25).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn average_is_affine_fixed_point() {
        let rho = DensityMatrix::from_probabilities(&[0.3, 0.7]).unwrap();
        for &p in &[0.0, 0.25, 0.5, 1.0] {
            let e = BinaryEnsemble::new(p, rho.clone(), rho.clone()).unwrap();
            assert!(e.average_state().matrix().max_abs_diff(rho.matrix()) < 1e-15);
        }
    }

    #[test]
    fn pure_pair_endpoints() {
        let orth = pure_pair(core::f64::consts::FRAC_PI_2, 0.5).unwrap();
        let ip = orth.rho0().matrix().mul(orth.rho1().matrix()).trace();
        assert!(ip.norm() < 1e-15);
        let same = pure_pair(0.0, 0.5).unwrap();
        assert!(same.rho0().matrix().max_abs_diff(same.rho1().matrix()) < 1e-15);
    }

    #[test]
    fn pure_pair_rejects_bad_angle() {
        assert!(pure_pair(-0.1, 0.5).is_err());
        assert!(pure_pair(2.0, 0.5).is_err());
        assert!(pure_pair(0.3, 1.5).is_err());
    }

    #[test]
    fn figure3_matches_caption() {
        let e = figure3_ensemble(0.5).unwrap();
        let eig = e.rho0().eig();
        assert!((eig.eigenvalues[0] - 0.01).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 0.01).abs() < 1e-12);
        assert!((eig.eigenvalues[2] - 0.98).abs() < 1e-12);
        assert!((e.rho1().matrix().trace().re - 1.0).abs() < 1e-12);
        assert_eq!(e.rho1().rank(), 1);
    }

    #[test]
    fn random_ensemble_rank_one_is_pure() {
        for seed in 0..20 {
            let e = random_ensemble(3, (1, 1), 0.4, seed).unwrap();
            let top = e.rho0().eig().eigenvalues[2];
            assert!((top - 1.0).abs() < 1e-10);
            assert_eq!(e.rho1().rank(), 1);
        }
    }

    #[test]
    fn random_ensemble_deterministic() {
        let a = random_ensemble(4, (2, 3), 0.3, 11).unwrap();
        let b = random_ensemble(4, (2, 3), 0.3, 11).unwrap();
        assert_eq!(a.rho0().matrix(), b.rho0().matrix());
        assert_eq!(a.rho1().matrix(), b.rho1().matrix());
    }

    #[test]
    fn random_ensemble_outputs_validate() {
        for seed in 0..300 {
            let d = 2 + (seed as usize) % 3;
            let r0 = 1 + (seed as usize) % d;
            let r1 = 1 + (seed as usize / 3) % d;
            let e = random_ensemble(d, (r0, r1), 0.5, seed).unwrap();
            validate_density(e.rho0().matrix().clone()).unwrap();
            validate_density(e.rho1().matrix().clone()).unwrap();
        }
    }

    #[test]
    fn commuting_ensemble_commutes() {
        for seed in 0..50 {
            let e = commuting_ensemble(4, 0.3, seed).unwrap();
            assert!(e.commutator_norm() <= 1e-10, "seed {seed}");
            validate_density(e.rho0().matrix().clone()).unwrap();
        }
    }

    #[test]
    fn commuting_ensemble_one_dimensional() {
        let e = commuting_ensemble(1, 0.5, 0).unwrap();
        assert!((e.rho0().matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!((e.rho1().matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
    }
}
