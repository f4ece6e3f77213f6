//! The n = 2 perturbed filtered complex and the invariant s₂.

pub mod canonical;
pub mod complex;
pub mod linalg;

pub use canonical::{
    canonical_cycle, circle_labels, h_cycle, low_generator, s2, s2_of, CanonicalClass, HClass,
    Label,
};
pub use complex::{Chain, EngineError, FilteredComplex, Generator, DEFAULT_CROSSING_LIMIT};
pub use linalg::{Echelon, SparseVec};
