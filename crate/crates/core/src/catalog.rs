//! Star-schema catalog: tables, row counts, row widths and per-attribute
//! cardinalities, plus the physical parameters every I/O estimate reads.
//!
//! The on-disk form is TOML:
//!
//! ```toml
//! block_size = 8192      # optional, bytes
//! btree_fanout = 200     # optional
//! rowid_width = 10       # optional, bytes
//!
//! [[tables]]
//! name = "sales"
//! kind = "fact"          # or "dimension"
//! row_count = 16260336
//! row_width = 24
//! attributes = [
//!   { name = "time_id", cardinality = 1461, width = 4 },
//! ]
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{AdvisorError, Result};

pub const DEFAULT_BLOCK_SIZE: u64 = 8192;
pub const DEFAULT_BTREE_FANOUT: u64 = 200;
pub const DEFAULT_ROWID_WIDTH: u64 = 10;

const BYTES_PER_MB: f64 = 1024.0 * 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Fact,
    Dimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeStats {
    pub name: String,
    /// Number of distinct values.
    pub cardinality: u64,
    /// Bytes per value.
    pub width: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStats {
    pub name: String,
    pub kind: TableKind,
    pub row_count: u64,
    /// Bytes per row.
    pub row_width: u64,
    #[serde(default)]
    pub attributes: Vec<AttributeStats>,
}

impl TableStats {
    pub fn attribute(&self, name: &str) -> Option<&AttributeStats> {
        self.attributes
            .iter()
            .find(|a| a.name.eq_ignore_ascii_case(name))
    }

    pub fn relation_size(&self) -> RelationSize {
        RelationSize {
            row_count: self.row_count,
            row_width: self.row_width,
        }
    }

    pub fn size_bytes(&self) -> u64 {
        self.row_count.saturating_mul(self.row_width)
    }

    /// Size in binary megabytes (2^20 bytes).
    pub fn size_mb(&self) -> f64 {
        self.size_bytes() as f64 / BYTES_PER_MB
    }
}

/// Row count and row width of a stored relation (table or materialized view).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationSize {
    pub row_count: u64,
    pub row_width: u64,
}

fn default_block_size() -> u64 {
    DEFAULT_BLOCK_SIZE
}

fn default_fanout() -> u64 {
    DEFAULT_BTREE_FANOUT
}

fn default_rowid_width() -> u64 {
    DEFAULT_ROWID_WIDTH
}

/// Immutable description of the warehouse schema. Build it through
/// [`SchemaCatalog::new`] or [`load_catalog`] so that invariants are checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaCatalog {
    #[serde(default = "default_block_size")]
    pub block_size: u64,
    #[serde(default = "default_fanout")]
    pub btree_fanout: u64,
    #[serde(default = "default_rowid_width")]
    pub rowid_width: u64,
    pub tables: Vec<TableStats>,
}

impl SchemaCatalog {
    /// Catalog with default physical parameters.
    pub fn new(tables: Vec<TableStats>) -> Result<Self> {
        Self::with_params(
            tables,
            DEFAULT_BLOCK_SIZE,
            DEFAULT_BTREE_FANOUT,
            DEFAULT_ROWID_WIDTH,
        )
    }

    pub fn with_params(
        tables: Vec<TableStats>,
        block_size: u64,
        btree_fanout: u64,
        rowid_width: u64,
    ) -> Result<Self> {
        let catalog = SchemaCatalog {
            block_size,
            btree_fanout,
            rowid_width,
            tables,
        };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size < 512 {
            return Err(AdvisorError::Validation(format!(
                "block_size must be at least 512, got {}",
                self.block_size
            )));
        }
        if self.btree_fanout < 2 {
            return Err(AdvisorError::Validation(format!(
                "btree_fanout must be at least 2, got {}",
                self.btree_fanout
            )));
        }
        let facts = self
            .tables
            .iter()
            .filter(|t| t.kind == TableKind::Fact)
            .count();
        if facts != 1 {
            return Err(AdvisorError::Validation(format!(
                "catalog must contain exactly one fact table, found {facts}"
            )));
        }
        let mut table_names = HashSet::new();
        for table in &self.tables {
            if table.name.is_empty() {
                return Err(AdvisorError::Validation("empty table name".into()));
            }
            if !table_names.insert(table.name.to_ascii_lowercase()) {
                return Err(AdvisorError::Validation(format!(
                    "duplicate table {}",
                    table.name
                )));
            }
            if table.row_width < 1 {
                return Err(AdvisorError::Validation(format!(
                    "table {}: row_width must be at least 1",
                    table.name
                )));
            }
            let mut attr_names = HashSet::new();
            for attr in &table.attributes {
                if !attr_names.insert(attr.name.to_ascii_lowercase()) {
                    return Err(AdvisorError::Validation(format!(
                        "duplicate attribute {}.{}",
                        table.name, attr.name
                    )));
                }
                if attr.cardinality < 1 {
                    return Err(AdvisorError::Validation(format!(
                        "attribute {}.{}: cardinality must be at least 1",
                        table.name, attr.name
                    )));
                }
                if table.row_count > 0 && attr.cardinality > table.row_count {
                    return Err(AdvisorError::Validation(format!(
                        "attribute {}.{}: cardinality {} exceeds row count {}",
                        table.name, attr.name, attr.cardinality, table.row_count
                    )));
                }
                if attr.width < 1 {
                    return Err(AdvisorError::Validation(format!(
                        "attribute {}.{}: width must be at least 1",
                        table.name, attr.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn fact_table(&self) -> &TableStats {
        self.tables
            .iter()
            .find(|t| t.kind == TableKind::Fact)
            .expect("validated catalog has a fact table")
    }

    /// Case-insensitive table lookup.
    pub fn table(&self, name: &str) -> Option<&TableStats> {
        self.tables
            .iter()
            .find(|t| t.name.eq_ignore_ascii_case(name))
    }

    pub fn attribute(&self, table: &str, attribute: &str) -> Option<&AttributeStats> {
        self.table(table).and_then(|t| t.attribute(attribute))
    }

    /// Number of blocks needed to store a relation:
    /// `ceil(row_count * row_width / block_size)`.
    pub fn blocks(&self, size: RelationSize) -> u64 {
        blocks(size, self.block_size)
    }

    /// Number of blocks needed to store `bytes` bytes.
    pub fn blocks_for_bytes(&self, bytes: u64) -> u64 {
        bytes.div_ceil(self.block_size)
    }

    pub fn table_blocks(&self, name: &str) -> Option<u64> {
        self.table(name).map(|t| self.blocks(t.relation_size()))
    }

    /// Copy of the catalog with every row count divided by `divisor` (rounded,
    /// at least one row) and cardinalities clamped to the new row counts.
    pub fn scaled(&self, divisor: f64) -> Result<Self> {
        if !(divisor.is_finite() && divisor > 0.0) {
            return Err(AdvisorError::Validation(format!(
                "scale divisor must be positive, got {divisor}"
            )));
        }
        let tables = self
            .tables
            .iter()
            .map(|t| {
                let rows = if t.row_count == 0 {
                    0
                } else {
                    ((t.row_count as f64 / divisor).round() as u64).max(1)
                };
                TableStats {
                    row_count: rows,
                    attributes: t
                        .attributes
                        .iter()
                        .map(|a| AttributeStats {
                            cardinality: if rows > 0 {
                                a.cardinality.min(rows)
                            } else {
                                a.cardinality
                            },
                            ..a.clone()
                        })
                        .collect(),
                    ..t.clone()
                }
            })
            .collect();
        Self::with_params(tables, self.block_size, self.btree_fanout, self.rowid_width)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes to TOML")
    }
}

/// `ceil(row_count * row_width / block_size)`; zero only for empty relations.
pub fn blocks(size: RelationSize, block_size: u64) -> u64 {
    let bytes = size.row_count as u128 * size.row_width as u128;
    bytes.div_ceil(block_size as u128) as u64
}

/// Parses and validates a catalog file.
pub fn load_catalog(source: &str) -> Result<SchemaCatalog> {
    let catalog: SchemaCatalog =
        toml::from_str(source).map_err(|e| AdvisorError::Parse(e.to_string()))?;
    catalog.validate()?;
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(name: &str, kind: TableKind, rows: u64, width: u64) -> TableStats {
        TableStats {
            name: name.into(),
            kind,
            row_count: rows,
            row_width: width,
            attributes: vec![],
        }
    }

    #[test]
    fn blocks_examples() {
        let rs = |row_count, row_width| RelationSize {
            row_count,
            row_width,
        };
        assert_eq!(blocks(rs(0, 24), 8192), 0);
        assert_eq!(blocks(rs(0, 10_000), 8192), 0);
        assert_eq!(blocks(rs(16_260_336, 24), 8192), 47_638);
        assert_eq!(blocks(rs(1, 24), 8192), 1);
        // five rows of any width up to 1638 bytes fit in one 8 KiB block
        assert_eq!(blocks(rs(5, 1638), 8192), 1);
        assert_eq!(blocks(rs(5, 1639), 8192), 2);
    }

    #[test]
    fn empty_catalog_has_no_fact_table() {
        assert!(matches!(
            SchemaCatalog::new(vec![]),
            Err(AdvisorError::Validation(_))
        ));
    }

    #[test]
    fn two_fact_tables_rejected() {
        let err = SchemaCatalog::new(vec![
            table("a", TableKind::Fact, 1, 1),
            table("b", TableKind::Fact, 1, 1),
        ])
        .unwrap_err();
        assert!(matches!(err, AdvisorError::Validation(_)));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(SchemaCatalog::new(vec![
            table("a", TableKind::Fact, 1, 1),
            table("A", TableKind::Dimension, 1, 1),
        ])
        .is_err());

        let mut t = table("a", TableKind::Fact, 10, 1);
        t.attributes = vec![
            AttributeStats {
                name: "x".into(),
                cardinality: 2,
                width: 1,
            },
            AttributeStats {
                name: "x".into(),
                cardinality: 2,
                width: 1,
            },
        ];
        assert!(SchemaCatalog::new(vec![t]).is_err());
    }

    #[test]
    fn cardinality_bounded_by_rows() {
        let mut t = table("a", TableKind::Fact, 3, 1);
        t.attributes = vec![AttributeStats {
            name: "x".into(),
            cardinality: 4,
            width: 1,
        }];
        assert!(SchemaCatalog::new(vec![t.clone()]).is_err());
        t.attributes[0].cardinality = 3;
        assert!(SchemaCatalog::new(vec![t]).is_ok());
    }

    #[test]
    fn physical_parameter_bounds() {
        let tables = vec![table("a", TableKind::Fact, 1, 1)];
        assert!(SchemaCatalog::with_params(tables.clone(), 511, 200, 10).is_err());
        assert!(SchemaCatalog::with_params(tables.clone(), 512, 1, 10).is_err());
        assert!(SchemaCatalog::with_params(tables, 512, 2, 10).is_ok());
    }

    #[test]
    fn malformed_file_is_parse_error() {
        assert!(matches!(
            load_catalog("tables = 3 ["),
            Err(AdvisorError::Parse(_))
        ));
        assert!(matches!(load_catalog(""), Err(AdvisorError::Parse(_))));
        assert!(matches!(
            load_catalog("tables = []"),
            Err(AdvisorError::Validation(_))
        ));
    }

    #[test]
    fn defaults_applied() {
        let c = load_catalog(
            r#"
            [[tables]]
            name = "f"
            kind = "fact"
            row_count = 10
            row_width = 8
            "#,
        )
        .unwrap();
        assert_eq!(c.block_size, 8192);
        assert_eq!(c.btree_fanout, 200);
        assert_eq!(c.rowid_width, 10);
    }

    #[test]
    fn lookup_is_case_insensitive() {
        let c = SchemaCatalog::new(vec![table("Sales", TableKind::Fact, 1, 1)]).unwrap();
        assert_eq!(c.table("sales").unwrap().name, "Sales");
        assert_eq!(c.fact_table().name, "Sales");
    }
}
