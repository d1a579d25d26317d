//! Finite-dimensional and truncation-family representations of multi-oriented
//! props: braned spaces, tensor evaluation of decorated graphs, relation
//! residuals, the Manin-triple correspondence and the divergence probe.

pub mod brane;
pub mod diverge;
pub mod json;
pub mod manin;
pub mod tensor;

pub use brane::{build_braned_space, BranedSpace};
pub use diverge::{builtin_family, divergence_probe, illegal_diagram, legal_diagram, ProbeRow};
pub use json::representation_from_json;
pub use manin::{
    lie_bialgebra_oracle, manin_from_bialgebra, BialgebraData, infinitesimal_bialgebra_oracle,
};
pub use tensor::{check_relations, evaluate, LegReading, Representation, ResidualReport, Tensor};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReprError {
    #[error("prop error: {0}")]
    Prop(#[from] propcalc::PropError),
    #[error("graph error: {0}")]
    Graph(#[from] graphcore::GraphError),
    #[error("lagrangian balance violated for colour {0}: dim+ {1} != dim- {2}")]
    LagrangianImbalance(u8, usize, usize),
    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vertex {0} has no assigned tensor")]
    Undecorated(usize),
    #[error("input is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("malformed representation input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ReprError>;
