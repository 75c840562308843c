//! Closed-form lower bounds on accessible information and the per-ensemble
//! report that chains every inequality into a sandwich check.
//!
//! The two bound families, as pure functions so they can be plotted and
//! tested without linear algebra:
//!
//! - in terms of Holevo information: [`theorem_bound_1`] and
//!   [`theorem_bound_2`];
//! - in terms of fidelity: [`fidelity_bound_1`] and [`fidelity_bound_2`];
//!
//! linked by the fidelity cap on χ, [`chi_upper_from_fidelity`]: substituting
//! `B ≤ √(1 − χ²/(4p(1−p)))` into the fidelity bounds yields the χ bounds,
//! which is why `t1 ≤ lb1` and `t2 ≤ lb2` always.

// f64 float intrinsics come from libm under no_std
#[allow(unused_imports)]
use num_traits::Float;

use crate::ensemble::BinaryEnsemble;
use crate::error::{Error, Result};
use crate::measurement::{
    fidelity_preserving_measurement, helstrom_measurement, induce_channel, mutual_information,
    pretty_good_measurement, COMMUTING_TOL,
};
use crate::measures::{binary_entropy, fidelity, holevo_chi, subentropy};
use crate::optimize::{optimize_accessible_information, OptimizerConfig};

/// Slack allowed between `χ²` and `4p(1−p)` before inputs are rejected as
/// inconsistent: the fidelity cap guarantees `χ² ≤ 4p(1−p)` analytically, so
/// anything beyond rounding means the caller's (p, χ) never came from one
/// ensemble.
const RADICAND_SLACK: f64 = 1e-9;

/// First lower bound from Holevo information:
/// `H(p) − √(4p(1−p) − χ²)`, radicand clamped at 0 within rounding slack.
/// May be negative for extreme priors.
pub fn theorem_bound_1(p: f64, chi: f64) -> Result<f64> {
    check_p_chi(p, chi)?;
    let radicand = 4.0 * p * (1.0 - p) - chi * chi;
    Ok(binary_entropy(p)? - radicand.max(0.0).sqrt())
}

/// Second lower bound from Holevo information:
/// `−log₂[p² + (1−p)² + 2p(1−p) √(1 − χ²/(4p(1−p)))]`.
/// Nonnegative for all parameters; at degenerate priors the bracket is 1.
pub fn theorem_bound_2(p: f64, chi: f64) -> Result<f64> {
    check_p_chi(p, chi)?;
    let pq = p * (1.0 - p);
    if pq <= 0.0 {
        return Ok(0.0);
    }
    let ratio = (chi * chi / (4.0 * pq)).min(1.0);
    let bracket = p * p + (1.0 - p) * (1.0 - p) + 2.0 * pq * (1.0 - ratio).sqrt();
    Ok((-bracket.log2()).max(0.0))
}

fn check_p_chi(p: f64, chi: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError("prior p must lie in [0, 1]"));
    }
    if !(-1e-12..).contains(&chi) {
        return Err(Error::DomainError("chi must be nonnegative"));
    }
    if chi * chi > 4.0 * p * (1.0 - p) + RADICAND_SLACK {
        return Err(Error::DomainError(
            "chi^2 exceeds 4p(1-p): inconsistent (p, chi) pair",
        ));
    }
    Ok(())
}

/// First lower bound from fidelity: `H(p) − 2√(p(1−p)) B`.
pub fn fidelity_bound_1(p: f64, b: f64) -> Result<f64> {
    check_p_b(p, b)?;
    Ok(binary_entropy(p)? - 2.0 * (p * (1.0 - p)).sqrt() * b)
}

/// Second lower bound from fidelity:
/// `−log₂[p² + (1−p)² + 2p(1−p) B]`; zero iff `B = 1` or `p ∈ {0, 1}`.
pub fn fidelity_bound_2(p: f64, b: f64) -> Result<f64> {
    check_p_b(p, b)?;
    let bracket = p * p + (1.0 - p) * (1.0 - p) + 2.0 * p * (1.0 - p) * b;
    Ok((-bracket.log2()).max(0.0))
}

/// Fidelity cap on Holevo information: `χ ≤ 2√(p(1−p)(1 − B²))`.
pub fn chi_upper_from_fidelity(p: f64, b: f64) -> Result<f64> {
    check_p_b(p, b)?;
    Ok(2.0 * (p * (1.0 - p) * (1.0 - b * b)).max(0.0).sqrt())
}

fn check_p_b(p: f64, b: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError("prior p must lie in [0, 1]"));
    }
    if !(-1e-12..=1.0 + 1e-12).contains(&b) {
        return Err(Error::DomainError("fidelity must lie in [0, 1]"));
    }
    Ok(())
}

/// Both sides of the commuting average-fidelity inequality
/// `p B(ρ0, ρ̄) + (1−p) B(ρ1, ρ̄) ≤ √(p² + (1−p)² + 2p(1−p) B(ρ0, ρ1))`.
/// Returns `(lhs, rhs)`; errors with `NotCommuting` for non-commuting input.
pub fn lemma_ub2_gap(e: &BinaryEnsemble) -> Result<(f64, f64)> {
    let comm = e.commutator_norm();
    if comm > COMMUTING_TOL {
        return Err(Error::NotCommuting {
            commutator_norm: comm,
            tolerance: COMMUTING_TOL,
        });
    }
    let avg = e.average_state();
    let p = e.p();
    let lhs = p * fidelity(e.rho0(), &avg)? + (1.0 - p) * fidelity(e.rho1(), &avg)?;
    let b = fidelity(e.rho0(), e.rho1())?;
    let rhs = (p * p + (1.0 - p) * (1.0 - p) + 2.0 * p * (1.0 - p) * b).sqrt();
    Ok((lhs, rhs))
}

/// Every quantity the figure sweeps plot, for one ensemble, with the chained
/// inequalities evaluated.
///
/// Closed-form links are held to 1e−8 (the `t ≤ lb` substitutions to 1e−10);
/// links involving the heuristic optimizer estimate get the looser 1e−3.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub p: f64,
    pub chi: f64,
    pub fidelity_b: f64,
    pub h_p: f64,
    pub t1: f64,
    pub t2: f64,
    pub lb1: f64,
    pub lb2: f64,
    pub subentropy_q: f64,
    pub i_fid: f64,
    pub i_helstrom: f64,
    pub i_pgm: f64,
    pub i_acc_est: f64,
    pub sandwich_ok: bool,
}

impl BoundReport {
    pub fn t_max(&self) -> f64 {
        self.t1.max(self.t2)
    }
}

/// Tolerance for closed-form inequality links in the sandwich check.
pub const SANDWICH_EXACT_TOL: f64 = 1e-8;

/// Tolerance for links in which the optimizer estimate participates.
pub const SANDWICH_OPTIMIZER_TOL: f64 = 1e-3;

/// Compute the full report for one ensemble.
pub fn build_report(e: &BinaryEnsemble, cfg: &OptimizerConfig) -> Result<BoundReport> {
    let p = e.p();
    let chi = holevo_chi(e).max(0.0);
    let b = fidelity(e.rho0(), e.rho1())?;
    let h_p = binary_entropy(p)?;
    let subentropy_q = subentropy(&e.average_state());

    let i_fid = mutual_information(&induce_channel(
        e,
        &fidelity_preserving_measurement(e.rho0(), e.rho1())?,
    )?);
    let i_helstrom = mutual_information(&induce_channel(e, &helstrom_measurement(e))?);
    let i_pgm = mutual_information(&induce_channel(e, &pretty_good_measurement(e)?)?);
    let i_acc_est = optimize_accessible_information(e, cfg)?.value;

    // The fidelity cap guarantees the radicand is nonnegative for inputs
    // that really came from one ensemble; rounding is clamped inside.
    let t1 = theorem_bound_1(p, chi)?;
    let t2 = theorem_bound_2(p, chi)?;
    let lb1 = fidelity_bound_1(p, b)?;
    let lb2 = fidelity_bound_2(p, b)?;
    let chi_cap = chi_upper_from_fidelity(p, b)?;

    let sandwich_ok = t1 <= lb1 + 1e-10
        && t2 <= lb2 + 1e-10
        && lb1.max(lb2) <= i_fid + SANDWICH_EXACT_TOL
        && i_fid <= i_acc_est + SANDWICH_OPTIMIZER_TOL
        && i_helstrom <= i_acc_est + SANDWICH_OPTIMIZER_TOL
        && i_pgm <= i_acc_est + SANDWICH_OPTIMIZER_TOL
        && i_acc_est <= chi + SANDWICH_EXACT_TOL
        && chi <= h_p + SANDWICH_EXACT_TOL
        && chi <= chi_cap + SANDWICH_EXACT_TOL;

    Ok(BoundReport {
        p,
        chi,
        fidelity_b: b,
        h_p,
        t1,
        t2,
        lb1,
        lb2,
        subentropy_q,
        i_fid,
        i_helstrom,
        i_pgm,
        i_acc_est,
        sandwich_ok,
    })
}
