//! Vertex-partitioning solvers for chair-free graphs of bounded diameter.
//!
//! The crate bundles:
//! - [`graph`]: the immutable graph model with its linear-time primitives;
//! - [`pattern`]: induced-subgraph detection and structural classifiers;
//! - [`colouring`]: colouring verifiers, two-list colouring and bounded
//!   enumeration;
//! - [`solver`]: the linear-time pipeline answering 3-colouring,
//!   acyclic / star 3-colouring, near-bipartiteness, independent feedback
//!   vertex set and independent odd cycle transversal on chair-free graphs
//!   of bounded diameter;
//! - [`oracle`]: exponential-time ground truth for tests and verification;
//! - [`reductions`]: hardness-gadget generators and their claim checker;
//! - [`gen`]: instance generators.

pub mod colouring;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod reductions;
pub mod solver;
