//! The uncertainty measures, all in bits.
//!
//! Two kinds of uncertainty coexist in a body of evidence: nonspecificity
//! (imprecision of the focal sets) and conflict among the evidential claims.
//! [`nonspecificity`] measures the first. For the second there are two
//! entropy-like candidates built from opposite conflict kernels:
//!
//! * [`discord`] penalizes claims according to how far each *other* focal
//!   set reaches outside the set under consideration ([`discord_conflict`]).
//!   This wrongly counts a claim on a superset as conflicting with the
//!   stronger claim it implies.
//! * [`strife`] penalizes according to how far the set under consideration
//!   reaches outside each other focal set ([`strife_conflict`]), which fixes
//!   that defect.
//!
//! Each measure is implemented on its subsethood form and cross-checkable
//! against the conflict-kernel form ([`discord_from_conflict`],
//! [`strife_from_conflict`]); the two routes agree to ~1e-15. The totals are
//! `T = N + D` and `NS = N + S`, the latter also reachable as `2N − K` via
//! the log-overlap term [`k_term`].
//!
//! On Bayesian bodies (all focal sets singletons) discord and strife both
//! collapse to the Shannon entropy, see [`shannon_if_bayesian`].

use serde::Serialize;

use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::numeric::sorted_sum;

/// Nonspecificity `N = Σ m(A)·log₂|A|`, the generalized Hartley measure.
/// Ranges over `[0, log₂ n]`; zero exactly when all focal sets are
/// singletons.
pub fn nonspecificity(body: &BodyOfEvidence) -> f64 {
    let mut terms: Vec<f64> = body
        .iter()
        .map(|(a, m)| m * (a.cardinality() as f64).log2())
        .collect();
    sorted_sum(&mut terms)
}

/// The conflict kernel of discord: `Σ_B m(B)·|B−A|/|B|`, how strongly the
/// other claims reach outside `a`, each scaled by its own size.
///
/// A claim on a strict superset of `a` contributes positively here even
/// though it is implied by the claim on `a`; that defect is what
/// [`strife_conflict`] repairs.
pub fn discord_conflict(body: &BodyOfEvidence, a: FocalSet) -> Result<f64> {
    require_focal(body, a)?;
    let mut terms: Vec<f64> = body
        .iter()
        .map(|(b, m)| m * a_over_b(b.difference_size(a), b.cardinality()))
        .collect();
    Ok(sorted_sum(&mut terms))
}

/// The conflict kernel of strife: `Σ_B m(B)·|A−B|/|A|`, how much of `a` is
/// left uncovered by each other claim, scaled by the size of `a`.
pub fn strife_conflict(body: &BodyOfEvidence, a: FocalSet) -> Result<f64> {
    require_focal(body, a)?;
    let mut terms: Vec<f64> = body
        .iter()
        .map(|(b, m)| m * a_over_b(a.difference_size(b), a.cardinality()))
        .collect();
    Ok(sorted_sum(&mut terms))
}

/// Discord `D = −Σ m(A)·log₂ Σ m(B)·|A∩B|/|B|` (the subsethood form).
pub fn discord(body: &BodyOfEvidence) -> f64 {
    neg_expected_log(body, |a, b| {
        a_over_b(a.intersection_size(b), b.cardinality())
    })
}

/// Discord on its defining form `−Σ m(A)·log₂[1 − Con(A)]` with `Con` the
/// kernel of [`discord_conflict`]. Agrees with [`discord`] to ~1e-15;
/// kept as the independent second route.
pub fn discord_from_conflict(body: &BodyOfEvidence) -> f64 {
    neg_log_one_minus_conflict(body, discord_conflict)
}

/// Strife `S = −Σ m(A)·log₂ Σ m(B)·|A∩B|/|A|`, where `|A∩B|/|A|` is the
/// degree of subsethood of `A` in `B`.
///
/// Zero exactly when some single set carries all mass; `log₂ n` exactly on
/// the uniform Bayesian body.
pub fn strife(body: &BodyOfEvidence) -> f64 {
    neg_expected_log(body, |a, b| {
        a_over_b(a.intersection_size(b), a.cardinality())
    })
}

/// Strife on its defining form `−Σ m(A)·log₂[1 − CON(A)]` with `CON` the
/// kernel of [`strife_conflict`]. Agrees with [`strife`] to ~1e-15.
pub fn strife_from_conflict(body: &BodyOfEvidence) -> f64 {
    neg_log_one_minus_conflict(body, strife_conflict)
}

/// The log-overlap term `K = Σ m(A)·log₂ Σ m(B)·|A∩B|`, which links the
/// measures: `S = N − K` and `NS = 2N − K`.
pub fn k_term(body: &BodyOfEvidence) -> f64 {
    let mut outer: Vec<f64> = body
        .iter()
        .map(|(a, ma)| {
            let mut inner: Vec<f64> = body
                .iter()
                .map(|(b, mb)| mb * a.intersection_size(b) as f64)
                .collect();
            ma * sorted_sum(&mut inner).log2()
        })
        .collect();
    sorted_sum(&mut outer)
}

/// Total uncertainty `T = N + D`.
pub fn total_t(body: &BodyOfEvidence) -> f64 {
    nonspecificity(body) + discord(body)
}

/// Total uncertainty `NS = N + S` (equivalently `2N − K`).
pub fn total_ns(body: &BodyOfEvidence) -> f64 {
    nonspecificity(body) + strife(body)
}

/// Shannon entropy `−Σ m({x})·log₂ m({x})` when the body is Bayesian,
/// `None` otherwise. On Bayesian bodies discord and strife both equal this.
pub fn shannon_if_bayesian(body: &BodyOfEvidence) -> Option<f64> {
    if !body.is_bayesian() {
        return None;
    }
    let mut terms: Vec<f64> = body.iter().map(|(_, m)| m * m.log2()).collect();
    Some(-sorted_sum(&mut terms))
}

/// Every measure of one body, computed in one pass.
///
/// The `total_ns` range `[0, log₂ n]` is conjectural; values outside it by
/// more than 1e-9 are logged at `warn` level rather than rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub nonspecificity: f64,
    pub discord: f64,
    pub strife: f64,
    pub k_term: f64,
    pub total_t: f64,
    pub total_ns: f64,
    pub is_bayesian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shannon: Option<f64>,
}

pub fn measure_report(body: &BodyOfEvidence) -> MeasureReport {
    let n = nonspecificity(body);
    let d = discord(body);
    let s = strife(body);
    let k = k_term(body);
    let total_ns = n + s;

    let ceiling = (body.frame().len() as f64).log2();
    if total_ns > ceiling + 1e-9 || total_ns < -1e-9 {
        log::warn!(
            "total_ns = {total_ns} falls outside the conjectured range [0, {ceiling}]"
        );
    }

    MeasureReport {
        nonspecificity: n,
        discord: d,
        strife: s,
        k_term: k,
        total_t: n + d,
        total_ns,
        is_bayesian: body.is_bayesian(),
        shannon: shannon_if_bayesian(body),
    }
}

/// `num/den` as f64; focal sets are never empty so `den > 0` always.
fn a_over_b(num: usize, den: usize) -> f64 {
    num as f64 / den as f64
}

/// `−Σ_A m(A)·log₂ Σ_B m(B)·kernel(A, B)`. The inner sum is at least
/// `m(A) > 0` for both kernels used, so the logarithm is always finite.
fn neg_expected_log(
    body: &BodyOfEvidence,
    kernel: impl Fn(FocalSet, FocalSet) -> f64,
) -> f64 {
    let mut outer: Vec<f64> = body
        .iter()
        .map(|(a, ma)| {
            let mut inner: Vec<f64> = body.iter().map(|(b, mb)| mb * kernel(a, b)).collect();
            ma * sorted_sum(&mut inner).log2()
        })
        .collect();
    -sorted_sum(&mut outer)
}

fn neg_log_one_minus_conflict(
    body: &BodyOfEvidence,
    conflict: impl Fn(&BodyOfEvidence, FocalSet) -> Result<f64>,
) -> f64 {
    let mut outer: Vec<f64> = body
        .iter()
        .map(|(a, ma)| {
            let con = conflict(body, a).expect("a is focal by construction");
            ma * (1.0 - con).log2()
        })
        .collect();
    -sorted_sum(&mut outer)
}

fn require_focal(body: &BodyOfEvidence, a: FocalSet) -> Result<()> {
    if body.is_focal(a) {
        Ok(())
    } else {
        Err(Error::NotAFocalSet {
            set: a.format_with(body.frame()),
        })
    }
}
