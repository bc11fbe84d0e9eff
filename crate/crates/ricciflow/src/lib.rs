//! Curvature and Ricci-flow dynamics of left-invariant metrics on Lie groups
//! given by structure constants.
//!
//! A Lie algebra is described by its dimension and a sparse list of structure
//! constants `c_ijk` with `i < j`, i.e. `[X_i, X_j] = sum_k c_ijk X_k`. On top
//! of that data the crate provides:
//!
//! - [`algebra`]: the data model, the `GL_n` change-of-basis action on
//!   brackets, the `gl_n` representation `pi`, inner products on the space of
//!   skew-symmetric algebras, and structural classification (nilpotency,
//!   solvability, lower central series, derivations).
//! - [`nice`]: the nice-basis predicate on structure constants, the
//!   root/weight reformulation of that predicate, and existence heuristics
//!   (simple derivations, the Nikolayevsky type inequality).
//! - [`curvature`]: Ricci tensor/operator of any left-invariant metric,
//!   the moment-map proportionality check, and stably-Ricci-diagonal
//!   decision procedures (numeric sampling and the exact combinatorial
//!   criterion for nilpotent algebras).
//! - [`flow`]: the Ricci-flow ODE on metrics, diagonality monitoring,
//!   algebraic-soliton detection and the closed-form soliton solution.
//! - [`catalog`]: built-in algebras with their expected properties.
//! - [`cli`]: the command-line front end used by the `ricciflow` binary.
//!
//! Runnable examples live under `examples/`; see the README for a tour.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod curvature;
mod error;
pub mod flow;
mod linalg;
pub mod nice;

pub use error::{Error, Result};
