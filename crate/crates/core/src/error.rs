use thiserror::Error;

/// Errors surfaced by loading, validation and selection.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdvisorError {
    /// A structured-text file (catalog, candidates) could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),

    /// The input decoded but violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A workload statement does not follow the SQL subset grammar.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A table or attribute is not present in the catalog.
    #[error("unknown name at line {line}, column {column}: {name}")]
    UnknownName {
        line: usize,
        column: usize,
        name: String,
    },

    /// Wraps an error raised while processing the n-th statement (1-based) of a workload file.
    #[error("statement {index}: {source}")]
    Statement {
        index: usize,
        #[source]
        source: Box<AdvisorError>,
    },

    #[error("invalid budget: {0} bytes")]
    InvalidBudget(i64),

    #[error("too many objects for exhaustive search: {count} > {limit}")]
    TooManyObjects { count: usize, limit: usize },
}

impl AdvisorError {
    /// True for errors that stem from a violated constraint (budget, search size)
    /// rather than from malformed input.
    pub fn is_constraint_error(&self) -> bool {
        matches!(
            self,
            AdvisorError::InvalidBudget(_) | AdvisorError::TooManyObjects { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, AdvisorError>;
