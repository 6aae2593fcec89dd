//! Power domination and zero forcing on directed graphs.
//!
//! The crate provides:
//!
//! * [`digraph`] — immutable digraphs over dense integer vertices and the
//!   fixed-universe [`VertexSet`] the closure engines operate on;
//! * [`topologies`] — generators for de Bruijn, Kautz, generalized de
//!   Bruijn and generalized Kautz digraphs, with bijective word ↔ index
//!   codecs for the classic families;
//! * [`propagation`] — the monitored-set closure (power domination) and the
//!   color-change closure (zero forcing), with traces and round counts;
//! * [`critical`] — strongly/weakly critical set predicates, the exhaustive
//!   set-cover characterizations, and prefix-partition certificates;
//! * [`constructions`] — explicit optimal zero forcing and power dominating
//!   sets for the classic families and their closed-form sizes;
//! * [`solvers`] — exact minimum search, a greedy upper bound, and solved
//!   tables for small generalized instances.
//!
//! Everything is immutable after construction and safe to share across
//! threads; the exhaustive solver optionally splits its enumeration across
//! workers without changing any reported answer.

pub mod constructions;
pub mod critical;
pub mod digraph;
mod error;
pub mod propagation;
pub mod solvers;
pub mod topologies;

pub use constructions::TheoremValue;
pub use critical::{CertFailure, Certificate, CertificateKind, CriticalKind, PartitionProfile};
pub use digraph::{Digraph, VertexSet};
pub use error::{Error, Result};
pub use propagation::{ForceEvent, ForceTrace, ForcerRule, Problem, Quantity};
pub use solvers::{Budget, OpenProblemRow, SolveOptions, SolveOutcome, SolveResult};
pub use topologies::{Family, FamilySpec, WordVertex};
