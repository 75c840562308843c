//! Dense complex Hermitian linear algebra for small dimensions.
//!
//! Everything here targets matrices of dimension ≤ ~8: a cyclic Jacobi
//! eigensolver for Hermitian matrices, spectral matrix functions with a
//! pseudo-function convention on near-kernels, the trace norm, and seeded
//! Haar-random unitaries. Determinism matters more than raw speed at these
//! sizes: identical inputs (and seeds) produce bit-identical outputs.

use alloc::vec;
use alloc::vec::Vec;

// f64 float intrinsics come from libm under no_std
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Hermiticity tolerance used by the eigensolver and validators (`‖A − A†‖_max`).
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi convergence threshold: all off-diagonal magnitudes below this.
const JACOBI_OFFDIAG_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps; convergence is quadratic and d ≤ 8, so this is
/// never reached for sane inputs.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Relative eigenvalue threshold separating true kernels from rounding noise.
pub const KERNEL_REL_TOL: f64 = 1e-10;

/// Square complex matrix, row-major.
///
/// Invariants: square, all entries finite. The checked constructors enforce
/// finiteness; arithmetic on finite matrices preserves it.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `d`.
    pub fn zeros(d: usize) -> Self {
        Self {
            dim: d,
            data: vec![C64::ZERO; d * d],
        }
    }

    /// Identity matrix of dimension `d`.
    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    /// Build from row-major entries, checking shape and finiteness.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let d = rows.len();
        let mut data = Vec::with_capacity(d * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: row.len(),
                });
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(*z);
            }
        }
        Ok(Self { dim: d, data })
    }

    /// Build entry-by-entry from a closure (no finiteness check).
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Matrix product `self · rhs`. Panics on dimension mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }

    /// Scale by a real factor.
    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    /// Trace.
    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `‖self − rhs‖_max`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(rhs.data.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// `‖self − self†‖_max`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `Re ⟨v| self |v⟩` — the expectation value of a Hermitian matrix.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        assert_eq!(self.dim, v.len());
        let mut acc = C64::ZERO;
        for i in 0..self.dim {
            let mut row = C64::ZERO;
            for j in 0..self.dim {
                row += self[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc.re
    }

    /// Whether `‖self − self†‖_max` is within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Outer product `|v⟩⟨v|`.
pub fn outer(v: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(v.len(), |i, j| v[i] * v[j].conj())
}

/// Inner product `⟨a|b⟩`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `‖v‖₂`.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max-entry norm of the commutator `[a, b] = ab − ba`.
pub fn commutator_max_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.mul(b).max_abs_diff(&b.mul(a))
}

/// Eigendecomposition of a Hermitian matrix: `H = V Λ V†`.
///
/// Eigenvalues ascend; `eigenvectors` holds the corresponding unit
/// eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Rebuild `V f(Λ) V†` from the decomposition.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.reassemble_values(&mapped)
    }

    /// Rebuild `V diag(values) V†` with one value per eigenvalue.
    pub fn reassemble_values(&self, values: &[f64]) -> ComplexMatrix {
        let d = self.eigenvalues.len();
        assert_eq!(values.len(), d);
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(d);
        for (k, &y) in values.iter().enumerate() {
            if y == 0.0 {
                continue;
            }
            for i in 0..d {
                let vik = v[(i, k)] * y;
                for j in 0..d {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Columns of `eigenvectors` whose eigenvalue satisfies `keep`.
    pub fn select_columns(&self, keep: impl Fn(f64) -> bool) -> Vec<Vec<C64>> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &lam)| keep(lam))
            .map(|(k, _)| self.eigenvectors.column(k))
            .collect()
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Requires `‖H − H†‖_max ≤ 1e−10`; the iteration runs on the symmetrized
/// part, so that tolerance bounds the backward error. Converges when every
/// off-diagonal magnitude is below 1e−13. Deterministic: fixed pivot order,
/// stable ascending sort.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let dev = h.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: HERMITICITY_TOL,
        });
    }
    let d = h.dim();
    // Symmetrize: kills the sub-tolerance asymmetry so rotations stay exact.
    let mut a = ComplexMatrix::from_fn(d, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(d);

    if d > 1 {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            let mut off: f64 = 0.0;
            for p in 0..d - 1 {
                for q in p + 1..d {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off < JACOBI_OFFDIAG_TOL {
                break;
            }
            for p in 0..d - 1 {
                for q in p + 1..d {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("diagonal of a Hermitian matrix is finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(d, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating the (p, q) pivot of the Hermitian
/// working matrix `a`, accumulating the plane unitary into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    // Phase that makes the pivot real, then a real rotation annihilating it.
    let u = apq / g;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Plane unitary W on coordinates (p, q):
    //   W = [[c, s], [-conj(u) s, conj(u) c]]
    let w00 = C64::new(c, 0.0);
    let w01 = C64::new(s, 0.0);
    let w10 = -u.conj() * s;
    let w11 = u.conj() * c;

    let d = a.dim();
    // A <- A W (columns p, q)
    for i in 0..d {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * w00 + aiq * w10;
        a[(i, q)] = aip * w01 + aiq * w11;
    }
    // A <- W† A (rows p, q)
    for j in 0..d {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = w00.conj() * apj + w10.conj() * aqj;
        a[(q, j)] = w01.conj() * apj + w11.conj() * aqj;
    }
    // Clean the pivot and keep the diagonal exactly real.
    a[(p, q)] = C64::ZERO;
    a[(q, p)] = C64::ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V W
    for i in 0..d {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * w00 + viq * w10;
        v[(i, q)] = vip * w01 + viq * w11;
    }
}

/// Apply a real function to a Hermitian matrix through its spectrum:
/// `V f(Λ) V†`, with eigenvalues of magnitude ≤ `threshold` mapped to 0
/// (pseudo-function on the support).
///
/// Errors with `SpectralDomain` if `f` returns a non-finite value for a
/// retained eigenvalue.
pub fn spectral_map(
    h: &ComplexMatrix,
    threshold: f64,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let mut mapped = Vec::with_capacity(eig.eigenvalues.len());
    for &lam in &eig.eigenvalues {
        if lam.abs() <= threshold {
            mapped.push(0.0);
        } else {
            let y = f(lam);
            if !y.is_finite() {
                return Err(Error::SpectralDomain { eigenvalue: lam });
            }
            mapped.push(y);
        }
    }
    Ok(eig.reassemble_values(&mapped))
}

/// Default pseudo-function threshold for a spectrum: `1e−10 · max|λ|`.
pub fn default_kernel_threshold(eigenvalues: &[f64]) -> f64 {
    KERNEL_REL_TOL * eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// `√H` of a positive semidefinite matrix (negative rounding noise and the
/// near-kernel are mapped to 0).
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let th = default_kernel_threshold(&eig.eigenvalues);
    Ok(eig.reassemble(|lam| if lam <= th { 0.0 } else { lam.sqrt() }))
}

/// `H^{−1/2}` on the support of a positive semidefinite matrix.
pub fn psd_inv_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let th = default_kernel_threshold(&eig.eigenvalues);
    Ok(eig.reassemble(|lam| if lam <= th { 0.0 } else { 1.0 / lam.sqrt() }))
}

/// Trace norm `‖A‖_tr = Tr √(A†A)`: the sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint().mul(a);
    let eig = hermitian_eig(&gram).expect("A†A is Hermitian by construction");
    eig.eigenvalues
        .iter()
        .map(|&lam| lam.max(0.0).sqrt())
        .sum()
}

/// Haar-random unitary of dimension `d`, deterministic per seed.
///
/// Complex Ginibre matrix orthonormalized by modified Gram-Schmidt; the
/// R-diagonal is real positive by construction, which is exactly the QR
/// convention that makes Q Haar-distributed.
pub fn haar_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_from_rng(d, &mut rng)
}

/// Haar-random unitary drawn from an existing RNG stream.
pub fn haar_unitary_from_rng(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(d >= 1, "dimension must be positive");
    let g = ComplexMatrix::from_fn(d, |_, _| {
        let (x, y) = standard_normal_pair(rng);
        C64::new(x, y) * core::f64::consts::FRAC_1_SQRT_2
    });
    let mut cols: Vec<Vec<C64>> = (0..d).map(|j| g.column(j)).collect();
    for j in 0..d {
        // Two orthogonalization passes keep `V†V − I` at rounding level.
        for _ in 0..2 {
            for i in 0..j {
                let proj = inner(&cols[i], &cols[j]);
                for r in 0..d {
                    let ci = cols[i][r];
                    cols[j][r] -= proj * ci;
                }
            }
        }
        let n = vec_norm(&cols[j]);
        if n < 1e-150 {
            // Astronomically unlikely rank collapse of a Ginibre sample;
            // fall back to a basis vector to stay well-defined.
            for r in 0..d {
                cols[j][r] = if r == j { C64::ONE } else { C64::ZERO };
            }
        } else {
            for r in 0..d {
                cols[j][r] /= n;
            }
        }
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// One standard normal pair via the polar method.
pub(crate) fn standard_normal_pair(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let u = 2.0 * rng.random::<f64>() - 1.0;
        let v = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let factor = (-2.0 * s.ln() / s).sqrt();
            return (u * factor, v * factor);
        }
    }
}

/// Deterministic per-index stream splitter (splitmix64 finalizer).
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
