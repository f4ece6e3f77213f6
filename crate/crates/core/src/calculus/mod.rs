//! Interval calculus for sₙ on composite links, with genus and
//! splitting-number bounds.

pub mod bounds;
pub mod expr;
pub mod value;

use thiserror::Error;

use crate::lee::EngineError;

pub use bounds::{
    g4_lower_bound, genus_positive, sp_lower_bound, torus_g4, torus_split_schedule, torus_splitting,
};
pub use expr::{refine_with_engine, sn_diagram, sn_eval, sn_positive, LinkExpr};
pub use value::SnValue;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("diagram has a negative crossing")]
    NotPositiveDiagram,
    #[error("cannot evaluate leaf: {0}")]
    UnevaluableLeaf(String),
    #[error("known value has no provenance")]
    MissingProvenance,
    #[error("n must be at least 2, got {0}")]
    InvalidN(u32),
    #[error("values for different n: expected {expected}, found {found}")]
    MixedN { expected: u32, found: u32 },
    #[error("an input value is an interval, not exact")]
    InexactInput,
    #[error("genus formula gives a half-integer; the diagram is malformed")]
    NonIntegerGenus,
    #[error("p={p} and q={q} are not coprime")]
    NotCoprime { p: usize, q: usize },
    #[error("connected-sum component index out of range")]
    ComponentOutOfRange,
    #[error("engine value {value} lies outside the interval [{lo}, {hi}]")]
    IntervalViolation { value: i64, lo: i64, hi: i64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}
