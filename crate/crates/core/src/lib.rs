// Counter phases, remainders, and sweep indices are the objects of interest
// in the constructions here; index-driven loops and explicit `% n == 0`
// keep that arithmetic visible.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]

//! A toolkit for one-way and two-way finite automata.
//!
//! The crate provides exact simulation over endmarked tapes (with loop
//! detection and nondeterministic configuration-graph acceptance),
//! behavioural classifiers (reversals, sweeping, rotating, oblivious,
//! outer-nondeterministic, ambiguity), conversions between machine classes
//! (subset construction, minimization, the crossing-table two-way to one-way
//! construction, rotating to sweeping, the unary tail-and-cycles normal
//! form), generators for two parameterised witness language families, and a
//! prime-encoded reduction between directed-graph accessibility and unary
//! two-way automata, simulated by length alone.

pub mod analysis;
pub mod chrobak;
pub mod error;
pub mod families;
pub mod format;
pub mod gap;
pub mod machine;
pub mod simulate;
pub mod transform;
pub mod words;

pub use machine::{
    AcceptMode, Alphabet, Machine, Move, OneWayMachine, StartCell, StateId, Symbol, TapeSymbol,
    TwoWayMachine, Violation,
};
pub use simulate::{Configuration, Trajectory, Verdict};
