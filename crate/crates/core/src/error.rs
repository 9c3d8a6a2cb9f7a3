use thiserror::Error;

use crate::graph::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a move was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalMoveCause {
    OutOfRange,
    /// The vertex was already claimed or deleted.
    Dead,
    /// The vertex carries the opponent's tint.
    OpponentTinted,
}

impl std::fmt::Display for IllegalMoveCause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IllegalMoveCause::OutOfRange => "vertex index out of range",
            IllegalMoveCause::Dead => "vertex is no longer in play",
            IllegalMoveCause::OpponentTinted => "vertex is tinted in the opponent's colour",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph would have {vertices} vertices; at most 64 are supported")]
    TooManyVertices { vertices: usize },

    #[error("invalid size parameter: {0}")]
    InvalidSize(String),

    #[error("{family} is not a variant family")]
    NotAVariant { family: Family },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },

    #[error("illegal move at vertex {vertex}: {cause}")]
    IllegalMove {
        vertex: usize,
        cause: IllegalMoveCause,
    },

    #[error("search budget exhausted after {nodes} nodes (memo entries: {memo_entries})")]
    ResourceBudget { nodes: u64, memo_entries: usize },

    #[error("no proven strategy for {family} with n = {n}; computational evidence indicates a first player win")]
    NoStrategy { family: Family, n: usize },

    #[error("{family} with n = {n} is below the split threshold; use the small-n override")]
    BelowThreshold { family: Family, n: usize },

    #[error("split transcription error: {0}")]
    SplitTranscription(String),

    #[error("strategy precondition violated: {0}")]
    Precondition(String),

    #[error("strategy breach: vertex {vertex} is outside both mirrored components")]
    StrategyBreach { vertex: usize },
}
