//! Large acyclic matchings in graphs of bounded maximum degree.
//!
//! [`reducer::solve`] returns an acyclic matching of size at least
//! `6n / (Δ² + 12Δ^{3/2})` for every graph without isolated vertices,
//! together with a per-stage certificate. The crate also provides exact
//! branch-and-bound solvers for small graphs ([`oracle`]), verifiers for
//! several matching classes ([`verify`]), closed-form bounds ([`bounds`]) and
//! seeded instance generators ([`gen`]).

pub mod bench;
pub mod bounds;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reducer;
pub mod unionfind;
pub mod verify;

pub use graph::{Edge, Graph, GraphError, VertexSet};
pub use reducer::{solve, solve_with, SolveOptions, SolveReport};
pub use verify::{Kind, Matching, Violation};
