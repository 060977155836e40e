//! Uncertainty measures for Dempster-Shafer bodies of evidence.
//!
//! A body of evidence assigns probability mass to *subsets* of a finite
//! frame rather than to single outcomes, and with that generality two kinds
//! of uncertainty coexist: nonspecificity (how imprecise the focal sets
//! are) and conflict (how much the claims disagree). This crate implements
//! the measures of both and everything needed to probe their properties:
//!
//! * [`measures`] — nonspecificity `N`, discord `D`, strife `S`, the
//!   log-overlap term `K`, the totals `T = N + D` and `NS = N + S`, and the
//!   Shannon collapse on Bayesian bodies. All values are in bits.
//! * [`body`] — validated bodies over bitmask-encoded subsets of frames of
//!   up to 64 elements, plus product joins and marginalization for the
//!   additivity and subadditivity experiments.
//! * [`possibility`] — ordered possibility distributions, their induced
//!   consonant bodies, closed-form measures, and a deterministic maximizer
//!   for possibilistic strife and discord.
//! * [`families`] — the strongly symmetric focal-set families whose uniform
//!   bodies attain the `NS = log₂ |X|` ceiling.
//! * [`explorer`] — seeded random bodies and a randomized search for
//!   subadditivity violations of strife and `NS`.
//! * [`format`] — the strict JSON body-document format used by the CLI.
//!
//! Everything is a pure function of immutable inputs and safe to call from
//! any number of threads. The `parallel` feature (default) runs the search
//! trials and maximizer candidate grids on rayon; disabling it falls back
//! to sequential loops with bit-identical results.

pub mod body;
pub mod error;
pub mod explorer;
pub mod families;
pub mod format;
pub mod frame;
pub mod measures;
pub mod possibility;

mod batch;
mod numeric;

pub use body::{Axis, BodyOfEvidence};
pub use error::{Error, Result};
pub use explorer::{SearchConfig, SearchMeasure, ViolationRecord};
pub use families::{FamilyKind, SymmetryReport};
pub use frame::{FocalSet, Frame};
pub use measures::MeasureReport;
pub use possibility::{MaximumReport, Objective, PossibilityDistribution};
