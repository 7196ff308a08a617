//! Robust (necessary) preference under an incompletely specified additive
//! utility model, and explanations of it as chains of dominance steps and
//! preference swaps.
//!
//! The pipeline, bottom-up:
//!
//! - [`model`]: criteria, alternatives, preference statements, reference
//!   scales and Pareto dominance.
//! - [`format`]: the JSON instance file format.
//! - [`rounding`]: bounded/unbounded queries and their conservative rounding
//!   onto the reference scales.
//! - [`covector`]: the `{-1, 0, +1}` covector algebra over elementary
//!   preference slots.
//! - [`simplex`] and [`necessity`]: exact cone membership with certificates,
//!   plus an integer-search oracle and a sampling falsifier.
//! - [`matching`] and [`explain`]: the swap relation between criteria,
//!   term-by-term explanations, sequence rendering and breadth-first search
//!   for shortest explanations.
//! - [`cli`]: the command layer behind the `prefswap` binary.

pub mod cli;
pub mod covector;
pub mod error;
pub mod explain;
pub mod format;
pub mod matching;
pub mod model;
pub mod necessity;
pub mod rounding;
pub mod simplex;

pub use covector::{ArgumentPartition, Covector, IndexSet, Slot};
pub use error::{Error, Result};
pub use explain::{Explanation, Matching, OrderPolicy, RenderPolicy, Step, StepKind, SwapRelation};
pub use model::{
    build_reference_scales, dominates, Alternative, Criterion, Domain, Instance, Rational, ReferenceScale, Statement,
};
pub use necessity::{Certificate, ConeSystem, Decision, Engine, IntegerCertificate};
pub use rounding::{ArgumentStrength, Boundedness, Query, RoundedQuery};
