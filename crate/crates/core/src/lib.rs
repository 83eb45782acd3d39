//! Doxastic states over a small propositional alphabet and the revision
//! operators that transform them.
//!
//! A doxastic state is a connected preorder over the propositional models of
//! a finite alphabet, stored as an ordered partition of the model set: the
//! first class holds the most believed models, the last the least believed.
//! Revision operators map a state and a satisfiable formula to a new state.
//!
//! The crate is organised in four layers:
//!
//! - [`logic`]: alphabets, worlds (models), world sets, and a formula parser;
//! - [`doxastic`]: the state type, canonicalization and order queries;
//! - [`operators`]: the revision operators, all pure functions;
//! - [`synthesis`]: constructive revision sequences with replay validation.
//!
//! Everything is `no_std` compatible (with `alloc`); IO, JSON and the
//! exhaustive state-space machinery live in the companion `doxa` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod doxastic;
pub mod logic;
pub mod operators;
pub mod synthesis;

pub use doxastic::DoxasticState;
pub use logic::{Alphabet, World, WorldSet};
pub use operators::OperatorId;
pub use synthesis::RevisionSequence;
