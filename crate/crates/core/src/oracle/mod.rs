//! Independent reference implementations used by the test suites: a finite-model
//! semantics for consistency and entailment, a brute-force lattice solver for the
//! abduction tasks, and a seeded generator of small knowledge bases.

pub mod fuzz;
pub mod lattice;
pub mod models;
pub mod sat;
