//! Exhaustive ability verification for iterated belief revision operators,
//! plus the JSON report forms used by the `doxa` command-line tool.
//!
//! The interesting machinery is in [`abilities`]; the pure building blocks
//! (states, operators, synthesizers) come from the `doxa-core` crate.

pub mod abilities;
pub mod report;
