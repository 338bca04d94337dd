//! Graph C*-algebras of quantum even-dimensional balls.
//!
//! The algebra of the quantum 2n-ball is the graph C*-algebra of a graph
//! E_n obtained from the one-vertex graph by n iterated quantum double
//! suspensions. This crate builds those graphs, enumerates their path
//! spaces, represents the Cuntz-Krieger generators and the weighted-shift
//! generators z_i as finite sparse operators on truncated path spaces, and
//! verifies the defining relations both numerically and through a symbolic
//! *-word rewriting engine.
//!
//! Modules:
//! - [`graph`]: directed graphs, double suspension, paths and loop-encoded
//!   path classes, hereditary/saturated subsets.
//! - [`word`]: symbolic *-algebra of words S_mu S_nu^* with
//!   Cuntz-Krieger reduction, gauge action, and a parser.
//! - [`rep`]: truncated path Hilbert spaces, sparse operators, generator
//!   families, weighted shifts, and the irreducible representations.
//! - [`polar`]: modulus, corner inverses, and phases of truncated
//!   operators.
//! - [`verify`]: relation check suites and machine-readable reports.

pub mod graph;
pub mod polar;
pub mod rep;
pub mod verify;
pub mod word;
