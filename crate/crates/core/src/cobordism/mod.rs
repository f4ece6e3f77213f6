//! Movies of elementary cobordisms and the bookkeeping they support.

pub mod ledger;
pub mod moves;

use thiserror::Error;

pub use ledger::{
    check_class_order, check_handle_order, slice_certificate, validate_movie, validate_movie_n,
    Certificate, Fate, LabelTrace, Ledger, Movie, SliceCertificate, StepRecord,
};
pub use moves::{apply_move, Applied, Move, MoveClass};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CobordismError {
    #[error("move {index} cannot be applied: {reason}")]
    InapplicableMove { index: usize, reason: String },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("n must be at least 2, got {0}")]
    InvalidN(u32),
    #[error("the second movie does not start where the first one ends")]
    Mismatch,
    #[error("movie does not end in a crossing-free unlink")]
    NotEndingInUnlink,
    #[error("movie traces a closed surface component")]
    ClosedComponent,
}
