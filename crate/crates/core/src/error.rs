use thiserror::Error;

use crate::hypercore::PointId;

/// Errors raised by the library.
///
/// Variants fall into two groups: input errors (bad instances, guards
/// exceeded) and invariant failures (a structural property that must hold
/// for valid inputs was observed to be false). The CLI maps the first group
/// to exit code 2 and the second to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty range")]
    EmptyRange,

    #[error("point {point} out of range for ground set of size {n}")]
    PointOutOfRange { point: PointId, n: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("no unique-max coloring with at most {0} colors")]
    ExceedsBound(usize),

    #[error("graph is not a tree")]
    NotATree,

    #[error("color {color} is attained by both {first} and {second} in range {range:?}")]
    ArgmaxTie {
        range: Vec<PointId>,
        color: u32,
        first: PointId,
        second: PointId,
    },

    #[error("color {color} exceeds bound {bound}")]
    ColorExceedsBound { color: u32, bound: u32 },

    #[error("online algorithm misbehaved: {0}")]
    Algorithm(String),

    #[error("hypergraph is not I-type: {0}")]
    NotIType(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("geometry invariant violated: {0}")]
    GeometryInvariant(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that signal a violated invariant or bound rather
    /// than malformed input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            Error::ArgmaxTie { .. }
                | Error::GeometryInvariant(_)
                | Error::Invariant(_)
                | Error::Algorithm(_)
                | Error::NotIType(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
