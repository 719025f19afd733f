use thiserror::Error;

use crate::inequalities::LinearInequality;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("instance too large for enumeration: {what} is {size}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("edge {0} is not an edge of the graph")]
    EdgeNotInGraph(usize),

    #[error("edges {0} and {1} share a node; not a matching")]
    NotAMatching(usize, usize),

    #[error("invalid family member: {0}")]
    InvalidFamily(String),

    #[error("point violates base constraints: {0}")]
    BaseConstraintViolated(String),

    #[error("point is not in the matching polytope: {inequality} is violated by {violation}")]
    NotInMatchingPolytope {
        inequality: Box<LinearInequality>,
        violation: String,
    },

    #[error("no tight certificate supplied: {0}")]
    NoTightCertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polyhedron is unbounded or contains a line")]
    Unbounded,

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
