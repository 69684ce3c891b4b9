use crate::candidates::{build_matrices, generate_candidates, CandidateSet, UsageMatrices};
use crate::catalog::SchemaCatalog;
use crate::error::{AdvisorError, Result};
use crate::workload::Workload;

/// Everything a selection run reads: catalog, workload, candidates and the
/// usage matrices derived from them. Immutable once built.
#[derive(Debug, Clone)]
pub struct Problem {
    pub catalog: SchemaCatalog,
    pub workload: Workload,
    pub candidates: CandidateSet,
    pub matrices: UsageMatrices,
}

impl Problem {
    pub fn new(
        catalog: SchemaCatalog,
        workload: Workload,
        candidates: CandidateSet,
    ) -> Result<Self> {
        candidates.validate()?;
        for index in &candidates.indexes {
            if catalog
                .attribute(&index.column.table, &index.column.attribute)
                .is_none()
            {
                return Err(AdvisorError::Validation(format!(
                    "index {} is on unknown column {}",
                    index.id, index.column
                )));
            }
        }
        let matrices = build_matrices(&workload, &candidates);
        Ok(Problem {
            catalog,
            workload,
            candidates,
            matrices,
        })
    }

    /// Builds a problem whose candidates are generated from the workload.
    pub fn generate(
        catalog: SchemaCatalog,
        workload: Workload,
        min_support: usize,
    ) -> Result<Self> {
        let candidates = generate_candidates(&workload, &catalog, min_support)?;
        Self::new(catalog, workload, candidates)
    }

    /// Same catalog and workload with a different candidate set.
    pub fn with_candidates(&self, candidates: CandidateSet) -> Result<Self> {
        Self::new(self.catalog.clone(), self.workload.clone(), candidates)
    }
}
