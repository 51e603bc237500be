//! Exact combinatorics of RNA abstract shapes.
//!
//! - [`exact`]: big-integer counting functions (Catalan, Narayana, Motzkin,
//!   level-0 refinements, island diagrams) and sparse rational polynomials.
//! - [`structure`]: dot-bracket parsing, structure elements, and the island
//!   diagram, pi'-shape and pi-shape abstractions.
//! - [`paths`]: Dyck and (2-)Motzkin paths, the bracket bijections and the
//!   island-diagram decoration map.
//! - [`series`]: truncated power series, generating-function expansions,
//!   compatible-shape tables and identity verification.
//! - [`asymptotics`]: dominant singularities and the closed-form asymptotic
//!   distributions, paired with exact counts.

pub mod asymptotics;
pub mod exact;
pub mod paths;
pub mod series;
pub mod structure;
