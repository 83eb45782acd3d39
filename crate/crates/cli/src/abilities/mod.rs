//! Exhaustive verification of revision-operator abilities.
//!
//! The pipeline: enumerate all doxastic states of a small alphabet
//! ([`space`]), treat single revisions as graph moves ([`graph`]), condense
//! the move graph into strongly connected components ([`scc`]), and decide
//! each ability by reachability over the condensation ([`check`]).

pub mod check;
pub mod graph;
pub mod scc;
pub mod space;

pub use check::{
    ability_table, check_ability, check_implications, check_operator_premises, Ability,
    AbilityReport, AbilityTable, AbilityTarget, Analysis, Counterexample, IncompleteTable,
    OperatorRow, Premises, VerdictTable, Violation, Witness,
};
pub use graph::{build_move_graph, for_each_move, reachable, IdSet, MoveGraph};
pub use space::{fubini, StateSpace, TooManyVariables, MAX_EXHAUSTIVE_VARIABLES};
