//! Multilevel MAXCUT solver.
//!
//! The pipeline coarsens a weighted graph into a hierarchy of smaller graphs,
//! solves the coarsest level with multistart local search, and walks back up
//! the hierarchy refining the solution through fixed-size subproblems. Two
//! quantum-inspired subproblem solvers are provided: a statevector QAOA engine
//! whose parameters come from a spectral-signature transfer model, and a
//! recursive variable-elimination solver driven by single-layer QAOA
//! correlations.
//!
//! Entry point for the full pipeline is [`refine::vcycle_solve`]; the pieces
//! (coarsening, refinement, the QAOA simulator, the transfer model, QIRO, and
//! local search) are usable on their own.

pub mod coarsen;
pub mod error;
pub mod fastmath;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kdtree;
pub mod localsearch;
pub mod neldermead;
pub mod qaoa;
pub mod qiro;
pub mod refine;
pub mod seeds;
pub mod transfer;

pub use error::{Error, Result};
pub use graph::{CutAssignment, GainVector, WeightedGraph};
