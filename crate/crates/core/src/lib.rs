//! Preference dynamics on networks.
//!
//! Preferences are preorders on a finite set of alternatives. Ordered by
//! inclusion they form a complete lattice: meet is intersection and join is
//! the transitive-reflexive closure of the union. Agents on a graph exchange
//! preferences, aggregate what they receive with an r-median, and update
//! with a lattice polynomial. This crate provides the lattice, the
//! aggregation rules, the synchronous dynamics, and tools to measure and
//! verify the resulting equilibria.
//!
//! ```
//! use prefdyn_core::prelude::*;
//!
//! let alts = AlternativeSet::new(3).unwrap();
//! let a = PreferenceRelation::generated_by(alts, &[(0, 1)]).unwrap();
//! let b = PreferenceRelation::generated_by(alts, &[(1, 2)]).unwrap();
//! let j = a.join(&b).unwrap();
//! assert!(j.prefers(0, 2));
//! ```

pub mod aggregation;
pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod graph;
pub mod preorder;
pub mod relation;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::aggregation::{median, LatticePolynomial, MessageFn, UpdateFn};
    pub use crate::analysis::{dirichlet_energy, kendall_tau, KendallVariant};
    pub use crate::dynamics::{global_step, run, AgentSpec, PreferenceProfile, SystemSpec, Trajectory};
    pub use crate::exec::Execution;
    pub use crate::graph::Graph;
    pub use crate::preorder::{InformationOrder, PreferenceRelation};
    pub use crate::relation::{AlternativeSet, Relation};
}
