//! Generalized Ramsey colorings of complete graphs and the Brown–Erdős–Sós
//! extremal hypergraphs that control them.
//!
//! The crate is organised around a handful of value types
//! ([`EdgeColoring`], [`MultiHypergraph`], [`BlockDesign`]) and families of
//! functions operating on them:
//!
//! * [`verify`] decides the defining conditions exhaustively: `(p,q)`-colorings,
//!   `(s,k)`-freeness, and the structural properties used by the
//!   quadratic-threshold construction.
//! * [`repeat`] turns color repetitions into hyperedges.
//! * [`construct`] builds explicit colorings from block designs and from
//!   extremal hypergraphs.
//! * [`search`] computes exact extremal values at small `n` by branch and bound.
//! * [`matcher`] produces configuration-avoiding colorings at the linear
//!   threshold by randomized greedy assignment.
//! * [`bounds`] evaluates thresholds and coefficients as exact rationals.
//! * [`sample`] draws seeded random instances for property tests.
//!
//! Every witness returned by the library is deterministic: the same input
//! (and seed, where randomness is involved) reproduces it exactly.

pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod matcher;
pub mod repeat;
pub mod sample;
pub mod search;
pub mod verify;
pub mod witness;

pub use coloring::{binomial, pair_count, Color, EdgeColoring, Pair, Vertex, VertexSet};
pub use construct::BlockDesign;
pub use error::{Error, Result};
pub use hypergraph::{MultiHypergraph, Uniformity};
pub use witness::{Verdict, ViolationKind, ViolationWitness};
