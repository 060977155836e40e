//! Strongly symmetric focal-set families.
//!
//! A family is strongly symmetric when (a) all members share one cardinality
//! and (b) every frame element lies in the same number of members. Uniform
//! bodies over such families attain the total-uncertainty ceiling
//! `NS = log₂ |X|`. Five constructions are provided; all satisfy the
//! symmetry, which [`verify_strong_symmetry`] checks directly.

use std::collections::BTreeSet;

use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::frame::{Frame, FocalSet};

/// The five family constructions.
///
/// The partition kinds cut the frame into consecutive blocks of
/// `block_size` elements in canonical label order; `block_size` must divide
/// the frame size. Chain kinds use cyclic windows: positions
/// `{1+j, …, k+j}` modulo the span, one window per shift `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// The blocks of an equal-cardinality partition.
    EqualPartition { block_size: usize },
    /// Every subset of the frame with cardinality `k`.
    AllSubsetsOfSize { k: usize },
    /// The `n` cyclic windows of length `k` over the whole frame.
    SubsetChain { k: usize },
    /// Each partition block contributes all its `k`-subsets.
    PartitionAllSubsets { block_size: usize, k: usize },
    /// Each partition block contributes its own cyclic `k`-windows.
    PartitionChains { block_size: usize, k: usize },
}

/// Generates the family, canonically ordered by bitmask and duplicate-free
/// (cyclic windows coincide when `k` equals the span, leaving one set).
pub fn generate_family(kind: FamilyKind, frame: &Frame) -> Result<Vec<FocalSet>> {
    let n = frame.len();
    let mut sets: BTreeSet<u64> = BTreeSet::new();
    match kind {
        FamilyKind::EqualPartition { block_size } => {
            check_block(block_size, n)?;
            for b in 0..n / block_size {
                sets.insert(block_mask(block_size) << (b * block_size));
            }
        }
        FamilyKind::AllSubsetsOfSize { k } => {
            check_cardinality(k, n)?;
            sets.extend(subsets_of_size(n, k));
        }
        FamilyKind::SubsetChain { k } => {
            check_cardinality(k, n)?;
            sets.extend(cyclic_windows(n, k));
        }
        FamilyKind::PartitionAllSubsets { block_size, k } => {
            check_block(block_size, n)?;
            check_cardinality(k, block_size)?;
            for b in 0..n / block_size {
                sets.extend(subsets_of_size(block_size, k).map(|m| m << (b * block_size)));
            }
        }
        FamilyKind::PartitionChains { block_size, k } => {
            check_block(block_size, n)?;
            check_cardinality(k, block_size)?;
            for b in 0..n / block_size {
                sets.extend(cyclic_windows(block_size, k).map(|m| m << (b * block_size)));
            }
        }
    }
    sets.into_iter()
        .map(|bits| frame.subset_from_bits(bits))
        .collect()
}

fn check_block(block_size: usize, n: usize) -> Result<()> {
    if block_size == 0 || n % block_size != 0 {
        Err(Error::BadDivisibility {
            block: block_size,
            n,
        })
    } else {
        Ok(())
    }
}

fn check_cardinality(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        Err(Error::BadCardinality { k, max })
    } else {
        Ok(())
    }
}

fn block_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// All `span`-bit masks with `k` bits set, ascending (Gosper's hack).
fn subsets_of_size(span: usize, k: usize) -> impl Iterator<Item = u64> {
    let full = block_mask(span);
    let mut mask = if k == span { full } else { block_mask(k) };
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = mask;
        // Advance to the next mask with the same popcount.
        let low = mask & mask.wrapping_neg();
        match mask.checked_add(low) {
            Some(ripple) if ripple <= full => {
                mask = (((ripple ^ current) >> 2) / low) | ripple;
                if mask > full {
                    done = true;
                }
            }
            _ => done = true,
        }
        Some(current)
    })
}

/// The `span` cyclic windows of length `k` over bit positions `0..span`.
fn cyclic_windows(span: usize, k: usize) -> impl Iterator<Item = u64> {
    (0..span).map(move |j| {
        (0..k).fold(0u64, |acc, t| acc | 1u64 << ((j + t) % span))
    })
}

/// The outcome of checking strong symmetry, with the evidence either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub is_strongly_symmetric: bool,
    /// Cardinality of each family member, in family order.
    pub cardinalities: Vec<usize>,
    /// For each frame element, the number of members containing it.
    pub membership_counts: Vec<usize>,
}

/// Checks that all members share one cardinality and every element has the
/// same membership count.
pub fn verify_strong_symmetry(family: &[FocalSet], frame: &Frame) -> SymmetryReport {
    let cardinalities: Vec<usize> = family.iter().map(|s| s.cardinality()).collect();
    let mut membership_counts = vec![0usize; frame.len()];
    for set in family {
        for p in set.positions() {
            membership_counts[p] += 1;
        }
    }
    let uniform_cardinality = cardinalities.windows(2).all(|w| w[0] == w[1]);
    let uniform_membership = membership_counts.windows(2).all(|w| w[0] == w[1]);
    SymmetryReport {
        is_strongly_symmetric: !family.is_empty() && uniform_cardinality && uniform_membership,
        cardinalities,
        membership_counts,
    }
}

/// The body distributing mass uniformly over the family members.
pub fn uniform_body(family: &[FocalSet], frame: &Frame) -> Result<BodyOfEvidence> {
    let mut seen = BTreeSet::new();
    for set in family {
        if !seen.insert(set.bits()) {
            return Err(Error::DuplicateFocalSet {
                set: set.format_with(frame),
            });
        }
    }
    let mass = 1.0 / family.len() as f64;
    BodyOfEvidence::new(frame.clone(), family.iter().map(|&s| (s, mass)).collect())
}
