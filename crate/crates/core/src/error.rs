use thiserror::Error;

/// Errors produced while constructing frames, bodies, families, or running
/// the searches and maximizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frame has no elements")]
    EmptyFrame,

    #[error("frame has {n} elements; at most {max} are supported here")]
    FrameTooLarge { n: usize, max: usize },

    #[error("invalid frame label `{label}`: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("duplicate frame label `{label}`")]
    DuplicateLabel { label: String },

    #[error("unknown element `{label}`")]
    UnknownElement { label: String },

    #[error("focal set at entry {index} is the empty set")]
    EmptyFocalSet { index: usize },

    #[error("subset {bits:#b} uses bit positions outside the {n}-element frame")]
    BitsOutOfRange { bits: u64, n: usize },

    #[error("mass {mass} on focal set {set} is out of range")]
    MassOutOfRange { set: String, mass: f64 },

    #[error("masses sum to {sum}, which is not 1 within tolerance {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("focal set {set} appears more than once")]
    DuplicateFocalSet { set: String },

    #[error("set {set} is not a focal set of this body")]
    NotAFocalSet { set: String },

    #[error("frame is not tagged as a product of two frames")]
    NotAProductFrame,

    #[error("cannot form a product of frames that are already products")]
    NestedProduct,

    #[error("possibility distribution is empty")]
    EmptyDistribution,

    #[error("first possibility value is {value}, expected exactly 1")]
    FirstValueNotOne { value: f64 },

    #[error("possibility values increase at position {index} ({prev} -> {next})")]
    NotNonincreasing { index: usize, prev: f64, next: f64 },

    #[error("possibility value at position {index} is {value}, expected a finite value in [0, 1]")]
    ValueOutOfRange { index: usize, value: f64 },

    #[error("distribution has {len} values but the frame has {n} elements")]
    SizeMismatch { len: usize, n: usize },

    #[error("frame size {n} is outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    #[error("resolution {resolution} is outside the supported range (0, {max}]")]
    BadResolution { resolution: f64, max: f64 },

    #[error("block size {block} does not evenly divide the frame size {n}")]
    BadDivisibility { block: usize, n: usize },

    #[error("cardinality {k} is not admissible (must be in 1..={max})")]
    BadCardinality { k: usize, max: usize },

    #[error("requested {requested} focal sets but the frame only has {available} nonempty subsets")]
    TooManyFocalSets { requested: usize, available: u64 },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("malformed body document: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
