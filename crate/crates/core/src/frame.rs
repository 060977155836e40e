//! Frames of discernment and bitmask-encoded subsets.
//!
//! A [`Frame`] is the finite universal set: an ordered list of distinct
//! element labels, each pinned to a bit position. A [`FocalSet`] is a
//! nonempty subset of a frame encoded as a `u64` bitmask, so set operations
//! are single machine instructions and frames are capped at 64 elements.

use crate::error::{Error, Result};

pub const MAX_FRAME_SIZE: usize = 64;

/// The separator used in product-frame pair labels (`"x|y"`). Base frame
/// labels may not contain it, which keeps pair labels unambiguous.
pub const PAIR_SEPARATOR: char = '|';

/// A finite universal set with labeled elements.
///
/// Frames constructed by [`Frame::product`] remember their two factors, and
/// only such frames can be marginalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    labels: Vec<String>,
    factors: Option<Box<(Frame, Frame)>>,
}

impl Frame {
    /// Builds a frame from element labels.
    ///
    /// Labels must be distinct, nonempty, free of the `|` pair separator,
    /// and there must be between 1 and 64 of them.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                n: labels.len(),
                max: MAX_FRAME_SIZE,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidLabel {
                    label: label.clone(),
                    reason: "label is empty",
                });
            }
            if label.contains(PAIR_SEPARATOR) {
                return Err(Error::InvalidLabel {
                    label: label.clone(),
                    reason: "label contains the reserved pair separator `|`",
                });
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(Self {
            labels,
            factors: None,
        })
    }

    /// A frame with elements `x1..xn`.
    pub fn of_size(n: usize) -> Result<Self> {
        Self::with_prefix("x", n)
    }

    /// A frame with elements `<prefix>1..<prefix>n`.
    pub fn with_prefix(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    /// Builds the product frame of two base frames.
    ///
    /// Element `(i, j)` gets bit position `i * y.len() + j` and the pair
    /// label `"xi|yj"`. Factors must be base frames (a product of products
    /// has no unambiguous pair labeling) and the product must still fit in
    /// 64 bits.
    pub fn product(x: &Frame, y: &Frame) -> Result<Self> {
        if x.is_product() || y.is_product() {
            return Err(Error::NestedProduct);
        }
        let n = x.len() * y.len();
        if n > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                n,
                max: MAX_FRAME_SIZE,
            });
        }
        let mut labels = Vec::with_capacity(n);
        for a in x.labels() {
            for b in y.labels() {
                labels.push(format!("{a}{PAIR_SEPARATOR}{b}"));
            }
        }
        Ok(Self {
            labels,
            factors: Some(Box::new((x.clone(), y.clone()))),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // frames always have at least one element
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> &str {
        &self.labels[position]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The factor frames, if this frame was built by [`Frame::product`].
    pub fn factors(&self) -> Option<(&Frame, &Frame)> {
        self.factors.as_deref().map(|(x, y)| (x, y))
    }

    pub fn is_product(&self) -> bool {
        self.factors.is_some()
    }

    /// Bitmask with every element set.
    pub fn full_mask(&self) -> u64 {
        if self.len() == MAX_FRAME_SIZE {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// The subset containing every element.
    pub fn full_set(&self) -> FocalSet {
        FocalSet {
            bits: self.full_mask(),
        }
    }

    /// The singleton subset `{element at position}`.
    pub fn singleton(&self, position: usize) -> Result<FocalSet> {
        self.subset_from_bits(1u64 << position)
    }

    /// Checks a raw bitmask against this frame: nonempty and in range.
    pub fn subset_from_bits(&self, bits: u64) -> Result<FocalSet> {
        if bits == 0 {
            return Err(Error::EmptyFocalSet { index: 0 });
        }
        if bits & !self.full_mask() != 0 {
            return Err(Error::BitsOutOfRange {
                bits,
                n: self.len(),
            });
        }
        Ok(FocalSet { bits })
    }

    /// Builds a subset from element labels. Duplicate labels are rejected.
    pub fn subset_of<I, S>(&self, labels: I) -> Result<FocalSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for label in labels {
            let label = label.as_ref();
            let pos = self.position(label).ok_or_else(|| Error::UnknownElement {
                label: label.to_string(),
            })?;
            let bit = 1u64 << pos;
            if bits & bit != 0 {
                return Err(Error::DuplicateLabel {
                    label: label.to_string(),
                });
            }
            bits |= bit;
        }
        self.subset_from_bits(bits)
    }
}

/// A nonempty subset of a frame, as a bitmask.
///
/// `FocalSet` is deliberately frame-agnostic; validity against a particular
/// frame is checked where sets enter a body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FocalSet {
    bits: u64,
}

impl FocalSet {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn cardinality(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, position: usize) -> bool {
        self.bits & (1u64 << position) != 0
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// `|self ∩ other|`.
    pub fn intersection_size(self, other: FocalSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    /// `|self − other|`, the number of elements of `self` not in `other`.
    pub fn difference_size(self, other: FocalSet) -> usize {
        (self.bits & !other.bits).count_ones() as usize
    }

    /// Bit positions of the elements, ascending.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..MAX_FRAME_SIZE).filter(move |i| bits & (1u64 << i) != 0)
    }

    /// Renders the set as `{a,b}` using the frame's labels.
    pub fn format_with(self, frame: &Frame) -> String {
        let names: Vec<&str> = self.positions().map(|p| frame.label(p)).collect();
        format!("{{{}}}", names.join(","))
    }
}
