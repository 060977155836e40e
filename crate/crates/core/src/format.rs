//! The body-of-evidence text format.
//!
//! A body document is a JSON object with exactly these members:
//!
//! ```json
//! {
//!   "universe": ["a", "b"],
//!   "masses": [
//!     { "set": ["a"], "mass": 0.6 },
//!     { "set": ["a", "b"], "mass": 0.4 }
//!   ]
//! }
//! ```
//!
//! `universe` lists 1..=64 unique element names (no name may contain `|`).
//! Each `masses` record names a nonempty, duplicate-free subset. Product
//! frames additionally carry `product_of` with the two factor universes,
//! and their `universe` must be exactly the row-major pair labels:
//!
//! ```json
//! {
//!   "universe": ["a|u", "a|v", "b|u", "b|v"],
//!   "product_of": [["a", "b"], ["u", "v"]],
//!   "masses": [{ "set": ["a|u", "b|v"], "mass": 1.0 }]
//! }
//! ```
//!
//! Parsing is strict: unknown members are rejected. Serialization is
//! canonical — universe in frame order, masses in ascending bitmask order,
//! shortest-round-trip decimals — so `serialize(parse(doc))` reproduces a
//! canonical document byte for byte.

use serde::{Deserialize, Serialize};

use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::frame::Frame;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDocument {
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_of: Option<(Vec<String>, Vec<String>)>,
    pub masses: Vec<MassEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub set: Vec<String>,
    pub mass: f64,
}

impl From<&BodyOfEvidence> for BodyDocument {
    fn from(body: &BodyOfEvidence) -> Self {
        let frame = body.frame();
        BodyDocument {
            universe: frame.labels().to_vec(),
            product_of: frame
                .factors()
                .map(|(x, y)| (x.labels().to_vec(), y.labels().to_vec())),
            masses: body
                .iter()
                .map(|(set, mass)| MassEntry {
                    set: set.positions().map(|p| frame.label(p).to_string()).collect(),
                    mass,
                })
                .collect(),
        }
    }
}

/// Parses a body document. With `renormalize` the merged masses are rescaled
/// to sum to 1; otherwise an off sum is rejected.
pub fn parse_body(text: &str, renormalize: bool) -> Result<BodyOfEvidence> {
    let doc: BodyDocument =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    body_from_document(&doc, renormalize)
}

pub fn body_from_document(doc: &BodyDocument, renormalize: bool) -> Result<BodyOfEvidence> {
    let frame = match &doc.product_of {
        None => Frame::new(doc.universe.clone())?,
        Some((x_labels, y_labels)) => {
            let fx = Frame::new(x_labels.clone())?;
            let fy = Frame::new(y_labels.clone())?;
            let frame = Frame::product(&fx, &fy)?;
            if frame.labels() != doc.universe {
                return Err(Error::Malformed(
                    "universe does not match the row-major pair labels of product_of".into(),
                ));
            }
            frame
        }
    };
    let entries = doc
        .masses
        .iter()
        .enumerate()
        .map(|(index, entry)| {
            let set = frame.subset_of(&entry.set).map_err(|e| match e {
                Error::EmptyFocalSet { .. } => Error::EmptyFocalSet { index },
                other => other,
            })?;
            Ok((set, entry.mass))
        })
        .collect::<Result<Vec<_>>>()?;
    if renormalize {
        BodyOfEvidence::renormalized(frame, entries)
    } else {
        BodyOfEvidence::new(frame, entries)
    }
}

/// Canonical serialization: pretty-printed JSON plus a trailing newline.
pub fn serialize_body(body: &BodyOfEvidence) -> String {
    let doc = BodyDocument::from(body);
    let mut text = serde_json::to_string_pretty(&doc).expect("document always serializes");
    text.push('\n');
    text
}
