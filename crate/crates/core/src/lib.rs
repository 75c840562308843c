//! # accinfo-core
//!
//! A numerical laboratory for binary quantum ensembles: how much classical
//! information can a measurement extract from one bit encoded into a pair of
//! density matrices?
//!
//! The crate computes, for an ensemble `{(p, ρ0), (1-p, ρ1)}`:
//!
//! - **Information measures** ([`measures`]): binary and von Neumann entropy,
//!   relative entropy, Uhlmann fidelity `B(ρ,σ) = ‖√ρ√σ‖_tr`, Holevo
//!   information `χ`, and subentropy `Q`.
//! - **Measurements** ([`measurement`]): POVMs, the classical channel a
//!   measurement induces, and the named constructions (fidelity-preserving,
//!   Helstrom basis, pretty good measurement, common eigenbasis,
//!   Haar-random orthogonal).
//! - **Accessible information** ([`optimize`]): a seeded multistart
//!   coordinate-descent maximization of measured mutual information over
//!   POVMs, plus a brute-force projective grid for qubits.
//! - **Closed-form bounds** ([`bounds`]): lower bounds on accessible
//!   information as functions of `(p, χ)` and `(p, B)`, the fidelity cap on
//!   `χ`, and a per-ensemble [`bounds::BoundReport`] that chains every
//!   inequality into a sandwich check.
//!
//! All logarithms are base 2; every entropy-like quantity is in bits.
//!
//! The linear algebra layer ([`linalg`]) is self-contained dense complex
//! Hermitian arithmetic (cyclic Jacobi eigensolver, spectral functions,
//! trace norm, Haar sampling) tuned for the tiny dimensions (d ≤ 8) this
//! domain needs. Everything is deterministic: random objects take explicit
//! seeds and there is no global RNG state.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature simply forwards to the dependencies' `std` features.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod measures;
pub mod optimize;

pub use bounds::BoundReport;
pub use ensemble::{BinaryEnsemble, DensityMatrix};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, C64};
pub use measurement::{InducedChannel, Povm};
pub use optimize::{AccInfoResult, OptimizerConfig};
