//! Search-based resolution of goal conflicts in LTL requirements specifications.
//!
//! A requirements specification is a set of immutable domain properties plus a
//! set of goals, all in linear temporal logic. A boundary condition is a
//! formula whose truth makes the goals jointly unsatisfiable while every
//! proper subset of the goals stays satisfiable. This crate searches for
//! *resolutions*: syntactic variants of the goals that are consistent with the
//! domain, co-satisfiable with every given boundary condition, and as close as
//! possible to the original specification both syntactically and semantically.
//!
//! Module map:
//!
//! * [`ltl`] — formulas, parsing, printing, subformula surgery.
//! * [`semantics`] — bounded evaluation over lasso traces, satisfiability and
//!   base counting by exhaustive enumeration.
//! * [`objectives`] — boundary-condition checking and the four search
//!   objectives (consistency, resolved ratio, syntactic and semantic
//!   similarity).
//! * [`operators`] — mutation and crossover on formulas and specifications.
//! * [`search`] — the four multi-objective search algorithms and the Pareto
//!   machinery.
//! * [`analysis`] — quality indicators (hypervolume, IGD) and non-parametric
//!   statistics for comparing algorithms.

pub mod analysis;
pub mod ltl;
pub mod objectives;
pub mod operators;
pub mod search;
pub mod semantics;

#[cfg(feature = "test-util")]
pub mod testutil;
