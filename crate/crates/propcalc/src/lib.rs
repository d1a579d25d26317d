//! Free multi-oriented operads and props on the generator families of the
//! workspace, their differentials, relation quotients, slice cohomology and
//! the forgetful dioperad morphisms.

pub mod dec;
pub mod delta;
pub mod family;
pub mod forget;
pub mod rel;
pub mod slice;

pub use dec::{Combination, DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot};
pub use delta::{delta, delta_on_graph, verify_d_squared, D2Report};
pub use family::{generator_basis, Corolla, Family};
pub use forget::{forgetful, verify_morphism, ForgetfulMap, MorphismReport};
pub use slice::{quotient_dim, slice_basis, slice_cohomology, Profile, SliceTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PropError {
    #[error("graph error: {0}")]
    Graph(#[from] graphcore::GraphError),
    #[error("linear algebra error: {0}")]
    Linalg(#[from] linalg::LinalgError),
    #[error("invalid corolla: {0}")]
    BadCorolla(String),
    #[error("multidirection mismatch when grafting legs {0:?} and {1:?}")]
    GraftMismatch(String, String),
    #[error("grafting produced an inadmissible graph (wheel in an oriented colour)")]
    Inadmissible,
    #[error("leg {0:?} not found")]
    NoSuchLeg(String),
    #[error("leg labels collide after grafting: {0:?}")]
    LabelClash(String),
    #[error("operation not supported for family {0:?}")]
    UnsupportedFamily(String),
    #[error("slice exceeds the configured cap of {0} basis elements")]
    CapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, PropError>;
