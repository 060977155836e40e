//! Seeded random bodies and the randomized subadditivity search.
//!
//! Random joints are generated directly on the product frame rather than as
//! product joins, since products are exactly the cases where additivity
//! holds and no violation can occur. Every trial is derived from the
//! `(seed, trial index)` pair alone, so any recorded violation can be
//! regenerated without replaying the whole run; ChaCha8 keeps the draws
//! identical across platforms.
//!
//! Trials are independent: [`search_subadditivity_violations`] fans them out
//! under the `parallel` feature, and the `_seq` variant is the sequential
//! reference producing bit-identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::batch;
use crate::body::{Axis, BodyOfEvidence};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::measures;

/// A joint measured above the sum of its marginals by more than the noise
/// threshold.
pub const VIOLATION_THRESHOLD: f64 = 1e-9;

/// Guards `relative_violation` against division by zero on degenerate
/// joints.
pub const RELATIVE_EPSILON: f64 = 1e-12;

/// Largest product frame the searcher accepts.
pub const MAX_SEARCH_ELEMENTS: usize = 16;

/// Which measure the searcher probes.
///
/// Nonspecificity is subadditive, so searching it is a self-check: any
/// recorded violation there is a bug, not a finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMeasure {
    Nonspecificity,
    Strife,
    TotalNs,
}

impl SearchMeasure {
    fn eval(self, body: &BodyOfEvidence) -> f64 {
        match self {
            SearchMeasure::Nonspecificity => measures::nonspecificity(body),
            SearchMeasure::Strife => measures::strife(body),
            SearchMeasure::TotalNs => measures::total_ns(body),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SearchMeasure::Nonspecificity => "N",
            SearchMeasure::Strife => "S",
            SearchMeasure::TotalNs => "NS",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub x_size: usize,
    pub y_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub measure: SearchMeasure,
}

/// One subadditivity violation: `measure(joint) > measure(m_x) + measure(m_y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationRecord {
    pub seed: u64,
    pub trial: usize,
    pub joint: BodyOfEvidence,
    pub measure: SearchMeasure,
    pub joint_value: f64,
    pub marginal_sum: f64,
    /// `joint_value − marginal_sum`, always above [`VIOLATION_THRESHOLD`].
    pub violation: f64,
    /// `violation / max(joint_value, ε)`.
    pub relative_violation: f64,
}

/// Draws `focal_count` distinct nonempty subsets uniformly (by rejection
/// from the `2ⁿ − 1` candidates) and masses uniformly from the simplex
/// (normalized exponential draws). Identical seeds give identical bodies on
/// every platform.
pub fn random_body(frame: &Frame, focal_count: usize, seed: u64) -> Result<BodyOfEvidence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_body(frame, focal_count, &mut rng)
}

fn draw_body(frame: &Frame, focal_count: usize, rng: &mut ChaCha8Rng) -> Result<BodyOfEvidence> {
    let full = frame.full_mask();
    let available = full; // 2^n − 1 nonempty subsets, and full == 2^n − 1
    if focal_count == 0 || focal_count as u64 > available {
        return Err(Error::TooManyFocalSets {
            requested: focal_count,
            available,
        });
    }

    let mut sets = Vec::with_capacity(focal_count);
    while sets.len() < focal_count {
        let bits = rng.gen_range(1..=full);
        if !sets.contains(&bits) {
            sets.push(bits);
        }
    }

    let mut masses = Vec::with_capacity(focal_count);
    let mut total = 0.0;
    for _ in 0..focal_count {
        let e = loop {
            let u: f64 = rng.gen();
            let e = -(1.0 - u).ln();
            if e > 0.0 {
                break e;
            }
        };
        masses.push(e);
        total += e;
    }

    let entries = sets
        .into_iter()
        .zip(masses)
        .map(|(bits, e)| Ok((frame.subset_from_bits(bits)?, e / total)))
        .collect::<Result<Vec<_>>>()?;
    BodyOfEvidence::new(frame.clone(), entries)
}

/// The 2x2 joint splitting mass evenly between the full product and the
/// diagonal. Its strife is `0.5·(log₂4 − log₂3) ≈ 0.2075` while both
/// marginals are vacuous with zero strife, so it witnesses the failure of
/// subadditivity; the searcher emits it as trial zero on 2x2 strife runs.
pub fn canonical_counterexample() -> BodyOfEvidence {
    let fx = Frame::with_prefix("x", 2).expect("static frame");
    let fy = Frame::with_prefix("y", 2).expect("static frame");
    let frame = Frame::product(&fx, &fy).expect("4-element product");
    let full = frame.full_set();
    let diag = frame.subset_from_bits(0b1001).expect("diagonal");
    BodyOfEvidence::new(frame, vec![(full, 0.5), (diag, 0.5)]).expect("masses sum to 1")
}

/// Regenerates the joint examined at `trial` under `cfg`. This is the same
/// path the searcher runs, so records are reproducible from `(seed, trial)`.
pub fn reproduce_joint(cfg: &SearchConfig, trial: usize) -> Result<BodyOfEvidence> {
    validate_config(cfg)?;
    if uses_canonical_trial_zero(cfg) && trial == 0 {
        return Ok(canonical_counterexample());
    }
    let fx = Frame::with_prefix("x", cfg.x_size)?;
    let fy = Frame::with_prefix("y", cfg.y_size)?;
    let frame = Frame::product(&fx, &fy)?;
    let mut rng = trial_rng(cfg.seed, trial);
    let max_focal = (frame.full_mask().min(10)) as usize;
    let focal_count = rng.gen_range(1..=max_focal);
    draw_body(&frame, focal_count, &mut rng)
}

/// Runs the trials and returns every recorded violation, sorted by
/// violation magnitude descending (ties by trial index). Parallel under the
/// `parallel` feature; output is identical to sequential execution.
pub fn search_subadditivity_violations(cfg: &SearchConfig) -> Result<Vec<ViolationRecord>> {
    search_impl(cfg, false)
}

/// Sequential reference path of [`search_subadditivity_violations`].
pub fn search_subadditivity_violations_seq(cfg: &SearchConfig) -> Result<Vec<ViolationRecord>> {
    search_impl(cfg, true)
}

type TrialOutcome = Option<ViolationRecord>;

fn search_impl(cfg: &SearchConfig, sequential: bool) -> Result<Vec<ViolationRecord>> {
    validate_config(cfg)?;
    let per_trial = |t: usize| run_trial(cfg, t);
    let outcomes = if sequential {
        batch::map_indexed_seq(cfg.trials, per_trial)
    } else {
        batch::map_indexed(cfg.trials, per_trial)
    };
    let mut records: Vec<ViolationRecord> = outcomes.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        b.violation
            .total_cmp(&a.violation)
            .then(a.trial.cmp(&b.trial))
    });
    Ok(records)
}

fn validate_config(cfg: &SearchConfig) -> Result<()> {
    let elements = cfg.x_size * cfg.y_size;
    if cfg.x_size == 0 || cfg.y_size == 0 || elements > MAX_SEARCH_ELEMENTS {
        return Err(Error::FrameTooLarge {
            n: elements,
            max: MAX_SEARCH_ELEMENTS,
        });
    }
    if cfg.trials == 0 {
        return Err(Error::NoTrials);
    }
    Ok(())
}

fn uses_canonical_trial_zero(cfg: &SearchConfig) -> bool {
    cfg.measure == SearchMeasure::Strife && cfg.x_size == 2 && cfg.y_size == 2
}

fn run_trial(cfg: &SearchConfig, trial: usize) -> TrialOutcome {
    let joint = reproduce_joint(cfg, trial).expect("config validated before trials run");
    let joint_value = cfg.measure.eval(&joint);
    let mx = joint.marginalize(Axis::First).expect("product frame");
    let my = joint.marginalize(Axis::Second).expect("product frame");
    let marginal_sum = cfg.measure.eval(&mx) + cfg.measure.eval(&my);
    let violation = joint_value - marginal_sum;
    if violation > VIOLATION_THRESHOLD {
        Some(ViolationRecord {
            seed: cfg.seed,
            trial,
            joint,
            measure: cfg.measure,
            joint_value,
            marginal_sum,
            violation,
            relative_violation: violation / joint_value.max(RELATIVE_EPSILON),
        })
    } else {
        None
    }
}

/// Per-trial generator keyed by both the run seed and the trial index.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(trial as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_focal_random_body_is_certain() {
        let f = Frame::of_size(3).unwrap();
        let body = random_body(&f, 1, 42).unwrap();
        assert_eq!(body.focal_count(), 1);
        let (_, mass) = body.iter().next().unwrap();
        assert_eq!(mass, 1.0);
    }

    #[test]
    fn random_body_is_deterministic_per_seed() {
        let f = Frame::of_size(4).unwrap();
        let a = random_body(&f, 5, 7).unwrap();
        let b = random_body(&f, 5, 7).unwrap();
        assert_eq!(a, b);
        let c = random_body(&f, 5, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_body_seed_sweep_validates() {
        let f = Frame::of_size(4).unwrap();
        for seed in 0..1000 {
            let focal = 1 + (seed as usize % 10);
            let body = random_body(&f, focal, seed).unwrap();
            assert_eq!(body.focal_count(), focal);
        }
    }

    #[test]
    fn random_body_rejects_oversubscription() {
        let f = Frame::of_size(2).unwrap();
        assert!(matches!(
            random_body(&f, 4, 0),
            Err(Error::TooManyFocalSets { .. })
        ));
        assert!(matches!(
            random_body(&f, 0, 0),
            Err(Error::TooManyFocalSets { .. })
        ));
    }

    #[test]
    fn canonical_counterexample_values() {
        let joint = canonical_counterexample();
        let expected = 0.5 * (4f64.log2() - 3f64.log2());
        assert_abs_diff_eq!(measures::strife(&joint), expected, epsilon = 1e-12);
        let mx = joint.marginalize(Axis::First).unwrap();
        let my = joint.marginalize(Axis::Second).unwrap();
        assert_eq!(measures::strife(&mx), 0.0);
        assert_eq!(measures::strife(&my), 0.0);
        assert_eq!(mx.mass(mx.frame().full_set()), Some(1.0));
        assert_eq!(my.mass(my.frame().full_set()), Some(1.0));
    }

    fn strife_2x2(trials: usize, seed: u64) -> SearchConfig {
        SearchConfig {
            x_size: 2,
            y_size: 2,
            trials,
            seed,
            measure: SearchMeasure::Strife,
        }
    }

    #[test]
    fn trial_zero_is_the_canonical_counterexample() {
        let records = search_subadditivity_violations(&strife_2x2(1, 3)).unwrap();
        assert_eq!(records.len(), 1);
        let rec = &records[0];
        assert_eq!(rec.trial, 0);
        assert_eq!(rec.joint, canonical_counterexample());
        assert_abs_diff_eq!(
            rec.joint_value,
            0.5 * (4f64.log2() - 3f64.log2()),
            epsilon = 1e-12
        );
        assert_eq!(rec.marginal_sum, 0.0);
    }

    #[test]
    fn search_is_deterministic_and_matches_sequential() {
        let cfg = strife_2x2(500, 11);
        let a = search_subadditivity_violations(&cfg).unwrap();
        let b = search_subadditivity_violations(&cfg).unwrap();
        let c = search_subadditivity_violations_seq(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn violations_are_reproducible_from_seed_and_trial() {
        let cfg = strife_2x2(2000, 5);
        let records = search_subadditivity_violations(&cfg).unwrap();
        assert!(!records.is_empty());
        for rec in records.iter().take(5) {
            let joint = reproduce_joint(&cfg, rec.trial).unwrap();
            assert_eq!(joint, rec.joint);
        }
    }

    #[test]
    fn violations_found_beyond_trial_zero() {
        let records = search_subadditivity_violations(&strife_2x2(10_000, 7)).unwrap();
        assert!(records.iter().any(|r| r.trial > 0));
        for rec in &records {
            assert!(rec.violation > VIOLATION_THRESHOLD);
            assert!(rec.relative_violation > 0.0);
        }
        // Sorted by magnitude, descending.
        for w in records.windows(2) {
            assert!(w[0].violation >= w[1].violation);
        }
    }

    #[test]
    fn nonspecificity_never_violates() {
        let cfg = SearchConfig {
            x_size: 3,
            y_size: 3,
            trials: 2000,
            seed: 13,
            measure: SearchMeasure::Nonspecificity,
        };
        let records = search_subadditivity_violations(&cfg).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn search_validates_config() {
        let mut cfg = strife_2x2(10, 0);
        cfg.x_size = 5;
        cfg.y_size = 4;
        assert!(matches!(
            search_subadditivity_violations(&cfg),
            Err(Error::FrameTooLarge { .. })
        ));
        let empty = strife_2x2(0, 0);
        assert_eq!(
            search_subadditivity_violations(&empty),
            Err(Error::NoTrials)
        );
    }
}
