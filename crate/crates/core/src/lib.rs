//! Biholes in bipartite graphs.
//!
//! A bihole of order `k` in a bipartite graph with parts `A` and `B` is an
//! independent set meeting each part in exactly `k` vertices. This crate
//! provides an exact maximum-bihole solver, polynomial constructions with
//! proven order guarantees, closed-form lower bounds evaluated in exact
//! rational arithmetic, graph generators and a verification harness.

pub mod bounds;
pub mod constructive;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod randomized;

pub use error::{Error, Result};
pub use graph::{Bihole, BipartiteGraph, ComponentView, DegreeProfile, Side};

/// Exact rational used for degrees, guarantees and bound values.
pub type Rational = num_rational::Ratio<i64>;
