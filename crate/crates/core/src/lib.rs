//! Concordance invariants sₙ of oriented links.
//!
//! The crate covers link diagrams and their notations ([`diagram`],
//! [`notation`]), an exact engine for s₂ ([`lee`]), an interval calculus for
//! sₙ with genus and splitting-number bounds ([`calculus`]), and a ledger for
//! cobordism movies ([`cobordism`]).
//!
//! [`corpus`] holds the named diagrams and movies used throughout,
//! [`verify`] runs the property suites over it, and [`report`] and [`cli`]
//! back the `snlink` binary.

pub mod calculus;
pub mod cli;
pub mod cobordism;
pub mod corpus;
pub mod diagram;
pub mod lee;
pub mod notation;
pub mod report;
pub mod verify;

pub use diagram::{Crossing, DiagramError, EdgeId, LinkDiagram, ResolutionStats, Side, Sign};
