//! Bundled reference inputs: the six-table test warehouse, the eight-query
//! example workload and the fixed seven-view / twelve-index candidate set.
//!
//! Attribute cardinalities and widths in the catalog are invented fixture
//! values; only row counts and table sizes come from the reference warehouse.

use crate::candidates::{load_candidates, CandidateSet};
use crate::catalog::{load_catalog, SchemaCatalog};
use crate::workload::{load_workload, Workload};

pub const SALES_CATALOG: &str = include_str!("../fixtures/sales_catalog.toml");
pub const SALES_WORKLOAD: &str = include_str!("../fixtures/sales_workload.sql");
pub const SALES_CANDIDATES: &str = include_str!("../fixtures/sales_candidates.toml");

pub fn sales_catalog() -> SchemaCatalog {
    load_catalog(SALES_CATALOG).expect("bundled catalog is valid")
}

/// The test warehouse with row counts divided by 100.
pub fn sales_catalog_scaled() -> SchemaCatalog {
    sales_catalog()
        .scaled(100.0)
        .expect("scaled catalog is valid")
}

pub fn sales_workload(catalog: &SchemaCatalog) -> Workload {
    load_workload(SALES_WORKLOAD, catalog).expect("bundled workload is valid")
}

pub fn sales_candidates(catalog: &SchemaCatalog) -> CandidateSet {
    load_candidates(SALES_CANDIDATES, catalog).expect("bundled candidates are valid")
}
