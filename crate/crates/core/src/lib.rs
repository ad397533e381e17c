//! Wiener and Harary indices, extremal graph families, exact
//! Hamiltonicity/traceability decisions with certificates, and an
//! exhaustive verification harness for index-based Hamiltonicity bounds on
//! small graphs.

pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod hamilton;
pub mod iso;
pub mod metrics;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use families::{build, FamilySpec, FamilyTag};
pub use graph::{Bipartition, Graph, VertexSet, MAX_ORDER};
pub use rational::Rational;
