//! Ordered possibility distributions and their closed-form measures.
//!
//! A possibility distribution `1 = r₁ ≥ r₂ ≥ … ≥ rₙ ≥ 0` induces a
//! consonant body with the nested focal sets `Aᵢ = {x₁..xᵢ}` and masses
//! `m(Aᵢ) = rᵢ − rᵢ₊₁` (with `rₙ₊₁ = 0` by convention). On that chain the
//! general measures reduce to short sums over the distribution, which is
//! what makes maximizing them over the simplex slice tractable.
//!
//! [`maximize`] runs a deterministic coordinate ascent with progressive grid
//! refinement over `(r₂..rₙ)`. Candidate evaluation is data-parallel under
//! the `parallel` feature; [`maximize_seq`] is the sequential reference path
//! and produces bit-identical results.

use crate::batch;
use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::frame::Frame;

/// An ordered possibility distribution.
///
/// Invariants enforced at construction: the first value is exactly 1, the
/// values are nonincreasing, and all lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityDistribution {
    values: Vec<f64>,
}

impl PossibilityDistribution {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if values[0] != 1.0 {
            return Err(Error::FirstValueNotOne { value: values[0] });
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::ValueOutOfRange { index: i, value: v });
            }
            if i > 0 && v > values[i - 1] {
                return Err(Error::NotNonincreasing {
                    index: i,
                    prev: values[i - 1],
                    next: v,
                });
            }
        }
        Ok(Self { values })
    }

    /// Parses whitespace- or newline-separated decimals.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Malformed(format!("`{tok}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds r₁ = 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The induced consonant body on `frame`: focal sets `{x₁..xᵢ}` with
    /// masses `rᵢ − rᵢ₊₁`; ties produce zero masses, which are dropped.
    pub fn to_consonant_body(&self, frame: &Frame) -> Result<BodyOfEvidence> {
        let n = self.len();
        if frame.len() != n {
            return Err(Error::SizeMismatch {
                len: n,
                n: frame.len(),
            });
        }
        let mut entries = Vec::with_capacity(n);
        for i in 1..=n {
            let mass = r_at(&self.values, i) - r_at(&self.values, i + 1);
            let bits = if i == 64 { u64::MAX } else { (1u64 << i) - 1 };
            entries.push((frame.subset_from_bits(bits)?, mass));
        }
        BodyOfEvidence::new(frame.clone(), entries)
    }
}

/// `rᵢ` with 1-based indexing and the `rₙ₊₁ = 0` convention.
fn r_at(values: &[f64], i: usize) -> f64 {
    if i <= values.len() {
        values[i - 1]
    } else {
        0.0
    }
}

/// Possibilistic nonspecificity `Σᵢ₌₂ⁿ (rᵢ − rᵢ₊₁)·log₂ i`.
pub fn possibilistic_nonspecificity(dist: &PossibilityDistribution) -> f64 {
    nonspecificity_of(&dist.values)
}

/// Possibilistic strife `N − Σᵢ₌₂ⁿ (rᵢ − rᵢ₊₁)·log₂ Σⱼ₌₁ⁱ rⱼ`.
pub fn possibilistic_strife(dist: &PossibilityDistribution) -> f64 {
    strife_of(&dist.values)
}

/// Possibilistic total uncertainty `2N − Σᵢ₌₂ⁿ (rᵢ − rᵢ₊₁)·log₂ Σⱼ₌₁ⁱ rⱼ`,
/// which equals `N + S`.
pub fn possibilistic_total_ns(dist: &PossibilityDistribution) -> f64 {
    2.0 * nonspecificity_of(&dist.values) - log_prefix_expectation(&dist.values)
}

/// Discord of the induced consonant body on the subsethood form, reduced to
/// the chain: `−Σᵢ mᵢ·log₂[Σⱼ≤ᵢ mⱼ + i·Σⱼ>ᵢ mⱼ/j]` with `mᵢ = rᵢ − rᵢ₊₁`.
pub fn possibilistic_discord(dist: &PossibilityDistribution) -> f64 {
    discord_of(&dist.values)
}

fn nonspecificity_of(values: &[f64]) -> f64 {
    let n = values.len();
    let mut total = 0.0;
    for i in 2..=n {
        let d = r_at(values, i) - r_at(values, i + 1);
        if d != 0.0 {
            total += d * (i as f64).log2();
        }
    }
    total
}

fn strife_of(values: &[f64]) -> f64 {
    nonspecificity_of(values) - log_prefix_expectation(values)
}

fn discord_of(values: &[f64]) -> f64 {
    let n = values.len();
    // Walk i descending, keeping the scaled tail Σ_{j>i} m_j/j, and i
    // ascending for the mass prefix Σ_{j≤i} m_j = 1 − r_{i+1}.
    let mut scaled_tail = vec![0.0; n + 2];
    for i in (1..=n).rev() {
        let m = r_at(values, i) - r_at(values, i + 1);
        scaled_tail[i] = scaled_tail[i + 1] + m / i as f64;
    }
    let mut total = 0.0;
    let mut prefix = 0.0;
    for i in 1..=n {
        let m = r_at(values, i) - r_at(values, i + 1);
        prefix += m;
        if m > 0.0 {
            total -= m * (prefix + i as f64 * scaled_tail[i + 1]).log2();
        }
    }
    total
}

/// `Σᵢ₌₂ⁿ (rᵢ − rᵢ₊₁)·log₂ Σⱼ₌₁ⁱ rⱼ`, the term subtracted in the strife and
/// total-uncertainty forms.
fn log_prefix_expectation(values: &[f64]) -> f64 {
    let n = values.len();
    let mut prefix = r_at(values, 1);
    let mut total = 0.0;
    for i in 2..=n {
        prefix += r_at(values, i);
        let d = r_at(values, i) - r_at(values, i + 1);
        if d != 0.0 {
            total += d * prefix.log2();
        }
    }
    total
}

/// What the maximizer climbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Strife,
    Discord,
}

impl Objective {
    fn eval(self, values: &[f64]) -> f64 {
        match self {
            Objective::Strife => strife_of(values),
            Objective::Discord => discord_of(values),
        }
    }
}

/// The best value found for one frame size, with the distribution that
/// attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximumReport {
    pub n: usize,
    pub value: f64,
    pub argmax: PossibilityDistribution,
    pub resolution: f64,
}

pub const MIN_MAXIMIZE_SIZE: usize = 2;
pub const MAX_MAXIMIZE_SIZE: usize = 24;
pub const MAX_RESOLUTION: f64 = 0.01;

#[derive(Clone, Copy)]
enum EvalMode {
    Auto,
    Sequential,
}

/// Maximizes possibilistic strife over distributions of length `n`.
pub fn maximize_strife(n: usize, resolution: f64) -> Result<MaximumReport> {
    maximize(Objective::Strife, n, resolution)
}

/// Maximizes the discord of induced consonant bodies over distributions of
/// length `n`.
pub fn maximize_discord(n: usize, resolution: f64) -> Result<MaximumReport> {
    maximize(Objective::Discord, n, resolution)
}

/// Deterministic coordinate ascent over `(r₂..rₙ)` in the nonincreasing
/// simplex slice.
///
/// Starts from the uniform decay `rᵢ = 1 − (i−1)/n`; at each step size the
/// coordinates are swept in order, each scanning a value grid over its
/// feasible interval `[rᵢ₊₁, rᵢ₋₁]`; the step halves from 1/4 down to
/// `resolution`. Ties between candidate values break toward the
/// lexicographically smallest distribution. Identical inputs produce
/// bit-identical outputs regardless of thread count.
pub fn maximize(objective: Objective, n: usize, resolution: f64) -> Result<MaximumReport> {
    maximize_impl(objective, n, resolution, EvalMode::Auto)
}

/// Sequential reference path of [`maximize`]; same contract, same bits.
pub fn maximize_seq(objective: Objective, n: usize, resolution: f64) -> Result<MaximumReport> {
    maximize_impl(objective, n, resolution, EvalMode::Sequential)
}

fn maximize_impl(
    objective: Objective,
    n: usize,
    resolution: f64,
    mode: EvalMode,
) -> Result<MaximumReport> {
    if !(MIN_MAXIMIZE_SIZE..=MAX_MAXIMIZE_SIZE).contains(&n) {
        return Err(Error::SizeOutOfRange {
            n,
            min: MIN_MAXIMIZE_SIZE,
            max: MAX_MAXIMIZE_SIZE,
        });
    }
    if !resolution.is_finite() || resolution <= 0.0 || resolution > MAX_RESOLUTION {
        return Err(Error::BadResolution {
            resolution,
            max: MAX_RESOLUTION,
        });
    }

    let mut r: Vec<f64> = (0..n).map(|i| 1.0 - i as f64 / n as f64).collect();
    let mut best = objective.eval(&r);

    let mut step = 0.25;
    while step >= resolution {
        // Sweep coordinates until a full pass makes no move. Each accepted
        // move either raises the value or keeps it while shrinking the
        // vector lexicographically, so the loop terminates; the cap is a
        // safety net.
        for _ in 0..200 {
            let mut moved = false;
            for i in 1..n {
                let lo = if i + 1 < n { r[i + 1] } else { 0.0 };
                let hi = r[i - 1];
                let mut candidates = grid(lo, hi, step);
                candidates.push(r[i]);
                candidates.sort_unstable_by(f64::total_cmp);
                candidates.dedup();

                let scratch = &r;
                let per_candidate = |ci: usize| {
                    let mut probe = scratch.clone();
                    probe[i] = candidates[ci];
                    objective.eval(&probe)
                };
                let values = match mode {
                    EvalMode::Auto => batch::map_indexed(candidates.len(), per_candidate),
                    EvalMode::Sequential => {
                        batch::map_indexed_seq(candidates.len(), per_candidate)
                    }
                };

                // Ascending candidate order plus strict improvement keeps
                // the smallest coordinate among ties.
                let mut best_c = r[i];
                let mut best_v = f64::NEG_INFINITY;
                for (c, v) in candidates.iter().zip(values.iter()) {
                    if *v > best_v {
                        best_v = *v;
                        best_c = *c;
                    }
                }
                let taking_tie = best_v == best && best_c < r[i];
                if best_v > best || taking_tie {
                    if best_c != r[i] {
                        r[i] = best_c;
                        moved = true;
                    }
                    best = best_v;
                }
            }
            if !moved {
                break;
            }
        }
        step /= 2.0;
    }

    Ok(MaximumReport {
        n,
        value: best,
        argmax: PossibilityDistribution { values: r },
        resolution,
    })
}

/// Grid points `lo, lo+step, …` up to and including `hi`.
fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).floor() as usize;
    let mut points: Vec<f64> = (0..=count)
        .map(|j| lo + j as f64 * step)
        .filter(|&c| c <= hi)
        .collect();
    points.push(hi);
    points
}
