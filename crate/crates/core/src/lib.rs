//! Joint selection of materialized views and indexes for star-schema data
//! warehouses under a storage budget.
//!
//! The pipeline is: load a [`SchemaCatalog`] and a [`Workload`], build or
//! load a [`CandidateSet`], wrap them in a [`Problem`], price configurations
//! with a [`CostModel`], and select with [`greedy_select`] or one of the
//! baselines.

pub mod baselines;
pub mod benefit;
pub mod candidates;
pub mod catalog;
pub mod cli;
pub mod costmodel;
pub mod error;
pub mod fixtures;
pub mod problem;
pub mod report;
pub mod selection;
pub mod selector;
pub mod synth;
pub mod workload;

pub use benefit::{objective, Configuration, ObjectiveMode, ObjectiveParams};
pub use candidates::{
    build_matrices, generate_candidates, load_candidates, CandidateSet, IndexCandidate,
    IndexTarget, UsageMatrices, ViewCandidate,
};
pub use catalog::{load_catalog, SchemaCatalog, TableKind, TableStats};
pub use costmodel::{CostModel, CostReport, Rewriting};
pub use error::{AdvisorError, Result};
pub use problem::Problem;
pub use selection::{DesignObject, Member, Selection};
pub use selector::{enumerate_objects, greedy_select, Family, SelectionResult, StopReason};
pub use workload::{load_workload, Query, Workload};
