//! Exact many-body quantum interference on hypercube graphs.
//!
//! This crate builds the transfer unitaries of d-dimensional hypercube
//! interferometers (bare or with identical subgraphs on every vertex),
//! computes exact transition probabilities for bosons, fermions and
//! distinguishable particles, applies the analytic suppression laws that
//! follow from the graph's reflection symmetries, and verifies every
//! prediction against brute-force enumeration.
//!
//! # Layout
//!
//! * [`fock`]: occupation/assignment representations and final-state
//!   enumeration;
//! * [`symmetry`]: Rademacher/Walsh sign functions, composite
//!   reflections, invariance groups and the independent-symmetry count;
//! * [`unitary`]: dense complex matrices and the transfer-unitary
//!   construction routes, behind a name-keyed [`unitary::BuilderRegistry`];
//! * [`interference`]: permanents, determinants, transition
//!   probabilities and full output distributions;
//! * [`stats`]: the interchangeable particle-statistics strategies and
//!   their [`stats::StatisticsRegistry`];
//! * [`supplaw`]: suppression-law predictors, final-state
//!   classification, suppression ratios and the law verifier.
//!
//! # Example
//!
//! ```
//! use hyperwalk::fock::ModeOccupation;
//! use hyperwalk::stats::StatKind;
//! use hyperwalk::supplaw::verify;
//! use hyperwalk::unitary::HypercubeSpec;
//!
//! // Two fermions on the 2-dimensional hypercube: the antidiagonal pair
//! // is invariant under the point reflection, so the law predicts (and
//! // the brute force confirms) suppressed final states.
//! let graph = HypercubeSpec::bare(2).unwrap();
//! let initial = ModeOccupation::new(vec![1, 0, 0, 1]);
//! let report = verify(&initial, &graph, StatKind::Fermion, 1e-10).unwrap();
//! assert!(report.pass);
//! assert_eq!(report.predicted_suppressed_count, 2);
//! ```

pub mod error;
pub mod fock;
pub mod interference;
pub mod stats;
pub mod supplaw;
pub mod symmetry;
pub mod unitary;

pub use error::{Error, Result};
