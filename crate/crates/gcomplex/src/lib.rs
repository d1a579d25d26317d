//! The operads of multi-oriented graphs, their deformation-complex Lie
//! bracket, the one-edge Maurer-Cartan element and its differential, graph
//! cohomology tables, the colour-extension chain map, and the derivation
//! action on the homotopy Lie-bialgebra generators.

pub mod action;
pub mod cohomology;
pub mod element;
pub mod ops;

pub use action::{derivation_action, verify_chain_map, ChainMapReport};
pub use cohomology::{gc_basis, gc_cohomology, CohomologyRow, CohomologyTable};
pub use element::{GcParams, GCElement};
pub use ops::{bracket, delta0, extend_color, gamma0, gc_degree, insert};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GcError {
    #[error("graph error: {0}")]
    Graph(#[from] graphcore::GraphError),
    #[error("prop error: {0}")]
    Prop(#[from] propcalc::PropError),
    #[error("linear algebra error: {0}")]
    Linalg(#[from] linalg::LinalgError),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("inadmissible summand in insertion (wheel in an oriented colour)")]
    InadmissibleSummand,
    #[error("cap of {0} exceeded")]
    CapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, GcError>;
