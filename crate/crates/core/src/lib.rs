//! A game engine for classical infinitary propositional logic with
//! backtracking.
//!
//! Two players debate an and/or tree: Eloise answers disjunctions and may
//! revise earlier answers, Abelard answers conjunctions and may not. The
//! crate provides the formula language ([`formula`]), the move protocol and
//! strategy interface ([`arena`]), the built-in strategies ([`strategies`]),
//! strategy-versus-strategy debates across a cut formula ([`debate`]), and
//! the pointer-structure analysis of the resulting interaction sequences
//! ([`mod@pointer`]): views, segment partitions, definite-segment nesting, the
//! ascending chain of an infinite debate, blame, and transfinite extension.

pub mod arena;
pub mod debate;
pub mod formula;
pub mod pointer;
pub mod strategies;

pub use arena::{FunctionHandle, GameRecord, GameState, Move, Payload, Player, Strategy};
pub use debate::{DebateTrace, Outcome, Role};
pub use formula::{Budget, Formula, Kind, OracleFn, Validity3};
pub use pointer::{Chain, FiniteSeq, LassoSeq, Position, Segment};
