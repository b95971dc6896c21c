//! Dicycle packings, uncrossing, the nesting forest and per-region
//! accounting.

mod bounds;
mod forest;
mod lemmas;
mod packing;
mod regions;
mod uncross;

use thiserror::Error;

use crate::embed::{CycleError, EmbedError};

pub use bounds::{claim1_bound, packing_bound};
pub use forest::{nesting_forest, region_phi, CycleForest, RegionNode};
pub use lemmas::{check_lemma1, check_lemma2};
pub use packing::{max_dicycle_packing, CycleCollection, PackingLimits};
pub use regions::{
    build_incidence_bipartite, check_claim1, classify_pieces, IncidenceBipartite, Piece, PieceType,
    RegionReport,
};
pub use uncross::{interiors, is_non_crossing, nesting, uncross, uncross_with, Nesting};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineryError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("cycles of the collection share an arc")]
    NotArcDisjoint,
    #[error("cycles {a} and {b} cross")]
    CrossingInput { a: usize, b: usize },
    #[error("uncrossing failed: {0}")]
    UncrossFailed(String),
    #[error("uncrossing changed the cycle count from {before} to {after}")]
    CardinalityChanged { before: usize, after: usize },
    #[error("digirth violation: {detail}")]
    DigirthViolation { detail: String },
    #[error("unexpected region piece: {0}")]
    UnexpectedPiece(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
