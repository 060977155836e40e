//! Bodies of evidence: focal sets with a basic probability assignment.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, FocalSet};
use crate::numeric::sorted_sum;

/// Masses must sum to 1 within this tolerance unless renormalization is
/// requested.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Entries with nonnegative mass below this are dropped at ingestion, so
/// measure code never sees a zero mass and `0·log 0` cannot arise.
pub const MASS_FLOOR: f64 = 1e-15;

/// Which factor of a product frame to keep when marginalizing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    First,
    Second,
}

/// A body of evidence `(F, m)`: pairwise-distinct focal sets with strictly
/// positive masses summing to 1.
///
/// Construction canonicalizes: sub-floor masses are dropped, duplicate
/// subsets are merged by summing, and entries are stored in ascending
/// bitmask order, so equal bodies compare equal and serialize identically.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyOfEvidence {
    frame: Frame,
    entries: Vec<(FocalSet, f64)>,
}

impl BodyOfEvidence {
    /// Validates and canonicalizes a raw assignment. The post-merge masses
    /// must sum to 1 within [`NORMALIZATION_TOLERANCE`].
    pub fn new(frame: Frame, entries: Vec<(FocalSet, f64)>) -> Result<Self> {
        Self::build(frame, entries, false)
    }

    /// Like [`BodyOfEvidence::new`] but rescales the merged masses to sum to
    /// exactly the unit total instead of rejecting an off-by-more-than
    /// tolerance sum. Renormalization is always explicit, never silent.
    pub fn renormalized(frame: Frame, entries: Vec<(FocalSet, f64)>) -> Result<Self> {
        Self::build(frame, entries, true)
    }

    fn build(frame: Frame, entries: Vec<(FocalSet, f64)>, renormalize: bool) -> Result<Self> {
        let mut merged: BTreeMap<u64, f64> = BTreeMap::new();
        for (index, (set, mass)) in entries.into_iter().enumerate() {
            if set.bits() == 0 {
                return Err(Error::EmptyFocalSet { index });
            }
            frame.subset_from_bits(set.bits())?;
            if !mass.is_finite() || mass < 0.0 {
                return Err(Error::MassOutOfRange {
                    set: set.format_with(&frame),
                    mass,
                });
            }
            if mass < MASS_FLOOR {
                continue;
            }
            *merged.entry(set.bits()).or_insert(0.0) += mass;
        }

        let mut entries: Vec<(FocalSet, f64)> = merged
            .into_iter()
            .map(|(bits, mass)| (frame.subset_from_bits(bits).expect("validated above"), mass))
            .collect();

        for (set, mass) in &entries {
            if *mass > 1.0 && !renormalize {
                return Err(Error::MassOutOfRange {
                    set: set.format_with(&frame),
                    mass: *mass,
                });
            }
        }

        let mut masses: Vec<f64> = entries.iter().map(|(_, m)| *m).collect();
        let sum = sorted_sum(&mut masses);
        if renormalize {
            if sum <= 0.0 {
                return Err(Error::NotNormalized {
                    sum,
                    tolerance: NORMALIZATION_TOLERANCE,
                });
            }
            for (_, mass) in &mut entries {
                *mass /= sum;
            }
        } else if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }

        Ok(Self { frame, entries })
    }

    /// The certainty body `m(set) = 1`.
    pub fn certainty(frame: Frame, set: FocalSet) -> Result<Self> {
        Self::new(frame, vec![(set, 1.0)])
    }

    /// The vacuous body `m(X) = 1`, total ignorance.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_set();
        Self::new(frame, vec![(full, 1.0)]).expect("full set is always valid")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal sets and masses in canonical (ascending bitmask) order.
    pub fn iter(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn focal_count(&self) -> usize {
        self.entries.len()
    }

    pub fn mass(&self, set: FocalSet) -> Option<f64> {
        self.entries
            .binary_search_by_key(&set.bits(), |(s, _)| s.bits())
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn is_focal(&self, set: FocalSet) -> bool {
        self.mass(set).is_some()
    }

    /// True when every focal set is a singleton, i.e. `m` is an ordinary
    /// probability distribution.
    pub fn is_bayesian(&self) -> bool {
        self.entries.iter().all(|(s, _)| s.cardinality() == 1)
    }

    /// True when the focal sets form a chain under inclusion.
    pub fn is_consonant(&self) -> bool {
        // Canonical order is not inclusion order, so sort by cardinality.
        let mut sets: Vec<FocalSet> = self.entries.iter().map(|(s, _)| *s).collect();
        sets.sort_by_key(|s| s.cardinality());
        sets.windows(2).all(|w| w[0].is_subset_of(w[1]))
    }

    /// The noninteractive product joint: focal sets `A × B` with masses
    /// `m_x(A) · m_y(B)` on the product frame.
    pub fn product_join(&self, other: &BodyOfEvidence) -> Result<BodyOfEvidence> {
        let frame = Frame::product(&self.frame, &other.frame)?;
        let ny = other.frame.len();
        let mut entries = Vec::with_capacity(self.focal_count() * other.focal_count());
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                let mut bits = 0u64;
                for i in a.positions() {
                    for j in b.positions() {
                        bits |= 1u64 << (i * ny + j);
                    }
                }
                entries.push((frame.subset_from_bits(bits)?, ma * mb));
            }
        }
        BodyOfEvidence::new(frame, entries)
    }

    /// Projects a joint body on a product frame down to one factor.
    ///
    /// The marginal mass of a set `A` is the total joint mass of the focal
    /// sets whose projection onto the chosen axis is `A`. Marginalizing the
    /// output of [`BodyOfEvidence::product_join`] recovers the factor body.
    pub fn marginalize(&self, axis: Axis) -> Result<BodyOfEvidence> {
        let (fx, fy) = self.frame.factors().ok_or(Error::NotAProductFrame)?;
        let ny = fy.len();
        let target = match axis {
            Axis::First => fx.clone(),
            Axis::Second => fy.clone(),
        };
        // Collect each projection's mass terms and sum them in value order
        // so the marginal is independent of the joint's element labeling.
        let mut projected: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
        for (set, mass) in self.iter() {
            let mut bits = 0u64;
            for p in set.positions() {
                let (i, j) = (p / ny, p % ny);
                bits |= match axis {
                    Axis::First => 1u64 << i,
                    Axis::Second => 1u64 << j,
                };
            }
            projected.entry(bits).or_default().push(mass);
        }
        let entries = projected
            .into_iter()
            .map(|(bits, mut terms)| {
                let set = target.subset_from_bits(bits)?;
                Ok((set, sorted_sum(&mut terms)))
            })
            .collect::<Result<Vec<_>>>()?;
        BodyOfEvidence::new(target, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn frame2() -> Frame {
        Frame::new(["a", "b"]).unwrap()
    }

    #[test]
    fn certainty_body_is_valid() {
        let f = Frame::new(["a"]).unwrap();
        let body = BodyOfEvidence::certainty(f.clone(), f.full_set()).unwrap();
        assert_eq!(body.focal_count(), 1);
        assert_eq!(body.mass(f.full_set()), Some(1.0));
    }

    #[test]
    fn duplicate_subsets_merge_by_summing() {
        let f = frame2();
        let a = f.subset_of(["a"]).unwrap();
        let b = f.subset_of(["b"]).unwrap();
        let body = BodyOfEvidence::new(f, vec![(a, 0.5), (a, 0.3), (b, 0.2)]).unwrap();
        assert_eq!(body.focal_count(), 2);
        assert_abs_diff_eq!(body.mass(a).unwrap(), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(body.mass(b).unwrap(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn empty_focal_set_is_rejected() {
        let f = frame2();
        assert!(matches!(
            f.subset_of(Vec::<String>::new()),
            Err(Error::EmptyFocalSet { .. })
        ));
    }

    #[test]
    fn tiny_masses_are_dropped() {
        let f = frame2();
        let a = f.subset_of(["a"]).unwrap();
        let full = f.full_set();
        let body = BodyOfEvidence::new(f, vec![(a, 1e-16), (full, 1.0)]).unwrap();
        assert_eq!(body.focal_count(), 1);
        assert!(!body.is_focal(a));
    }

    #[test]
    fn rejects_negative_oversized_and_unnormalized() {
        let f = frame2();
        let a = f.subset_of(["a"]).unwrap();
        let b = f.subset_of(["b"]).unwrap();
        assert!(matches!(
            BodyOfEvidence::new(f.clone(), vec![(a, -0.2), (b, 1.2)]),
            Err(Error::MassOutOfRange { .. })
        ));
        assert!(matches!(
            BodyOfEvidence::new(f.clone(), vec![(a, 1.5)]),
            Err(Error::MassOutOfRange { .. })
        ));
        assert!(matches!(
            BodyOfEvidence::new(f.clone(), vec![(a, 0.6), (b, 0.6)]),
            Err(Error::NotNormalized { .. })
        ));
        // Opt-in renormalization accepts the same input.
        let body = BodyOfEvidence::renormalized(f, vec![(a, 0.6), (b, 0.6)]).unwrap();
        assert_abs_diff_eq!(body.mass(a).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn canonical_order_is_by_bitmask() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        let c = f.subset_of(["c"]).unwrap();
        let ab = f.subset_of(["a", "b"]).unwrap();
        let body = BodyOfEvidence::new(f, vec![(c, 0.5), (ab, 0.5)]).unwrap();
        let sets: Vec<u64> = body.iter().map(|(s, _)| s.bits()).collect();
        assert_eq!(sets, vec![0b011, 0b100]);
    }

    #[test]
    fn bayesian_and_consonant_predicates() {
        let f = frame2();
        let a = f.subset_of(["a"]).unwrap();
        let b = f.subset_of(["b"]).unwrap();
        let full = f.full_set();
        let bayes = BodyOfEvidence::new(f.clone(), vec![(a, 0.5), (b, 0.5)]).unwrap();
        assert!(bayes.is_bayesian());
        assert!(!bayes.is_consonant());
        let nested = BodyOfEvidence::new(f, vec![(a, 0.6), (full, 0.4)]).unwrap();
        assert!(nested.is_consonant());
        assert!(!nested.is_bayesian());
    }

    #[test]
    fn product_join_of_certainties_is_certainty() {
        let fx = Frame::new(["a"]).unwrap();
        let fy = Frame::new(["u"]).unwrap();
        let x = BodyOfEvidence::vacuous(fx);
        let y = BodyOfEvidence::vacuous(fy);
        let joint = x.product_join(&y).unwrap();
        assert_eq!(joint.focal_count(), 1);
        assert_eq!(joint.frame().labels(), ["a|u"]);
        assert_eq!(joint.mass(joint.frame().full_set()), Some(1.0));
    }

    #[test]
    fn product_join_of_vacuous_is_vacuous_on_product() {
        let x = BodyOfEvidence::vacuous(frame2());
        let y = BodyOfEvidence::vacuous(Frame::new(["u", "v"]).unwrap());
        let joint = x.product_join(&y).unwrap();
        assert_eq!(joint.frame().len(), 4);
        assert_eq!(joint.mass(joint.frame().full_set()), Some(1.0));
    }

    #[test]
    fn product_join_rejects_oversized_products() {
        let x = BodyOfEvidence::vacuous(Frame::of_size(9).unwrap());
        let y = BodyOfEvidence::vacuous(Frame::of_size(8).unwrap());
        assert_eq!(
            x.product_join(&y).unwrap_err(),
            Error::FrameTooLarge { n: 72, max: 64 }
        );
    }

    #[test]
    fn marginalize_requires_product_frame() {
        let body = BodyOfEvidence::vacuous(frame2());
        assert_eq!(
            body.marginalize(Axis::First).unwrap_err(),
            Error::NotAProductFrame
        );
    }

    #[test]
    fn marginalize_round_trips_product_join() {
        let fx = frame2();
        let fy = Frame::new(["u", "v", "w"]).unwrap();
        let a = fx.subset_of(["a"]).unwrap();
        let p = BodyOfEvidence::new(fx.clone(), vec![(a, 0.7), (fx.full_set(), 0.3)]).unwrap();
        let uv = fy.subset_of(["u", "v"]).unwrap();
        let q = BodyOfEvidence::new(fy.clone(), vec![(uv, 0.25), (fy.full_set(), 0.75)]).unwrap();
        let joint = p.product_join(&q).unwrap();
        let mx = joint.marginalize(Axis::First).unwrap();
        let my = joint.marginalize(Axis::Second).unwrap();
        assert_eq!(mx.focal_count(), p.focal_count());
        for ((s, m), (t, w)) in mx.iter().zip(p.iter()) {
            assert_eq!(s, t);
            assert_abs_diff_eq!(m, w, epsilon = 1e-12);
        }
        for ((s, m), (t, w)) in my.iter().zip(q.iter()) {
            assert_eq!(s, t);
            assert_abs_diff_eq!(m, w, epsilon = 1e-12);
        }
    }
}
