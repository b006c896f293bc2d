//! Chromatic polynomials, stable partitions and the coloring functor.
//!
//! * [`graph`], [`graph6`]: finite simple graphs, homomorphisms, the graph6 format.
//! * [`chromatic`], [`poly`]: exact chromatic polynomials and their
//!   falling-factorial coefficients (stable partition counts).
//! * [`partitions`]: stable partitions and the coloring decomposition.
//! * [`functor`]: pushforward/pullback of colorings and natural bijections
//!   between coloring sets of chromatically equivalent graphs.
//! * [`cbs`]: the relative Cantor–Bernstein–Schröder construction.
//! * [`infinite`]: periodic countable graphs and coloring-set cardinalities.
//! * [`corpus`]: small graph and tree corpora used by tests and the CLI.

pub mod cbs;
pub mod chromatic;
pub mod corpus;
pub mod error;
pub mod functor;
pub mod graph;
pub mod graph6;
pub mod infinite;
pub mod partitions;
pub mod poly;

pub use chromatic::{chromatic_number, chromatic_polynomial, decide_equivalent_finite, to_falling_factorial, StVector};
pub use error::{Error, Result};
pub use graph::{complete_graph, FiniteGraph, GraphHom, Injection};
pub use graph6::{emit_graph6, parse_graph6};
pub use poly::{evaluate, IntPolynomial};
