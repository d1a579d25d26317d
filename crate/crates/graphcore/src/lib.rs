//! Multi-oriented graphs: a directed graph in which every edge and leg carries
//! `k` extra binary directions on top of the basic one, together with the
//! canonical-form and sign machinery needed to use such graphs as basis
//! elements of exact vector spaces.
//!
//! Conventions used throughout the workspace:
//! * an internal edge is stored as `(tail, head, orient)` where `tail -> head`
//!   is the basic direction and `orient` is the word of *relative* bits for the
//!   extra colours (`+` = colour flows tail to head, `-` = it flows head to
//!   tail);
//! * a leg carries an *absolute* multidirection of length `k+1` whose basic
//!   bit must agree with the side of the vertex the leg is drawn on;
//! * the sign-carrying order is the edge list order for even `d` and the
//!   vertex id order for odd `d`.

pub mod canon;
pub mod dot;
pub mod enumerate;
pub mod graph;
pub mod json;
pub mod word;

pub use canon::{canonicalize, CanonicalClass};
pub use enumerate::{enumerate, EnumParams};
pub use graph::{DParity, Edge, Leg, MultiGraph};
pub use word::{Dir, MultiDir, OrientWord};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("colour index {0} out of range (k = {1})")]
    ColorOutOfRange(u8, u8),
    #[error("vertex id {0} out of range (n = {1})")]
    VertexOutOfRange(u8, u8),
    #[error("duplicate leg label {0:?}")]
    DuplicateLegLabel(String),
    #[error("leg {0:?}: basic bit of the multidirection contradicts the graph")]
    LegBasicMismatch(String),
    #[error("orientation word has length {0}, expected {1}")]
    WordLength(u8, u8),
    #[error("tadpole on vertex {0} not allowed at orientation level {1}")]
    TadpoleNotAllowed(u8, i8),
    #[error("vertex subset for contraction is empty or invalid")]
    BadContractionSubset,
    #[error("enumeration exceeded the configured cap of {0} classes")]
    CapExceeded(usize),
    #[error("canonical search exceeded the configured cap")]
    CanonCapExceeded,
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;
