//! Construction of graphs with a prescribed quotient, and measurement of
//! how well their automorphism orbits align with the coarsest equitable
//! partition.
//!
//! Pipeline: parse a [`QuotientGraph`], test it with
//! [`feasibility::is_feasible`], compute minimal cluster sizes with
//! [`solver::solve_minimal`], wire a realization with [`wiring::generate`],
//! optionally shuffle it with [`rewire::randomize`], then compare
//! [`quotient::coarsest_equitable`] with [`automorphism::orbits`].

pub mod automorphism;
pub mod error;
pub mod feasibility;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod quotient;
pub mod rewire;
pub mod rng;
pub mod solver;
pub mod wiring;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, Permutation, Provenance};
pub use quotient::QuotientGraph;
