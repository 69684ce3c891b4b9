//! Query model for select-join-group-by statements over a star schema, and
//! the workload file loader.

mod lexer;
mod parser;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::catalog::SchemaCatalog;
use crate::error::{AdvisorError, Result};

pub use parser::parse_query;

/// A fully qualified attribute, `table.attribute`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColumnRef {
    pub table: String,
    pub attribute: String,
}

impl ColumnRef {
    pub fn new(table: impl Into<String>, attribute: impl Into<String>) -> Self {
        ColumnRef {
            table: table.into(),
            attribute: attribute.into(),
        }
    }
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.table, self.attribute)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Literal {
    Number(String),
    Text(String),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Number(n) => f.write_str(n),
            Literal::Text(t) => write!(f, "'{}'", t.replace('\'', "''")),
        }
    }
}

/// `column = constant`. Equality is the only predicate kind in the subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Predicate {
    pub column: ColumnRef,
    pub constant: Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AggregateFn {
    Sum,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Aggregate {
    pub function: AggregateFn,
    pub measure: ColumnRef,
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.function {
            AggregateFn::Sum => write!(f, "sum({})", self.measure),
        }
    }
}

/// Equi-join between a fact foreign key and a dimension attribute.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JoinPair {
    pub fact: ColumnRef,
    pub dimension: ColumnRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    pub id: String,
    pub select_attrs: Vec<ColumnRef>,
    pub aggregates: Vec<Aggregate>,
    /// Always contains the fact table.
    pub joined_tables: BTreeSet<String>,
    pub join_pairs: Vec<JoinPair>,
    pub predicates: Vec<Predicate>,
    pub group_by: Vec<ColumnRef>,
}

impl Query {
    pub fn predicate_columns(&self) -> impl Iterator<Item = &ColumnRef> {
        self.predicates.iter().map(|p| &p.column)
    }

    /// Columns the query filters or groups on, in first-occurrence order
    /// (predicates first), without duplicates.
    pub fn filter_and_group_columns(&self) -> Vec<&ColumnRef> {
        let mut seen = HashSet::new();
        self.predicate_columns()
            .chain(self.group_by.iter())
            .filter(|c| seen.insert(*c))
            .collect()
    }

    /// True if the query filters or groups on `column`.
    pub fn filters_or_groups_on(&self, column: &ColumnRef) -> bool {
        self.predicate_columns().any(|c| c == column) || self.group_by.contains(column)
    }

    /// Renders the query in the workload grammar; parsing the output yields
    /// an equal query.
    pub fn to_sql(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("select ")?;
        let select: Vec<String> = self
            .select_attrs
            .iter()
            .map(ToString::to_string)
            .chain(self.aggregates.iter().map(ToString::to_string))
            .collect();
        f.write_str(&select.join(", "))?;
        f.write_str(" from ")?;
        let tables: Vec<&str> = self.joined_tables.iter().map(String::as_str).collect();
        f.write_str(&tables.join(", "))?;
        let conds: Vec<String> = self
            .join_pairs
            .iter()
            .map(|j| format!("{} = {}", j.fact, j.dimension))
            .chain(
                self.predicates
                    .iter()
                    .map(|p| format!("{} = {}", p.column, p.constant)),
            )
            .collect();
        if !conds.is_empty() {
            f.write_str(" where ")?;
            f.write_str(&conds.join(" and "))?;
        }
        if !self.group_by.is_empty() {
            f.write_str(" group by ")?;
            let gb: Vec<String> = self.group_by.iter().map(ToString::to_string).collect();
            f.write_str(&gb.join(", "))?;
        }
        Ok(())
    }
}

/// The ordered query set plus the refresh-to-query ratio used by the
/// maintenance penalty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Workload {
    pub queries: Vec<Query>,
    pub refresh_ratio: f64,
}

impl Workload {
    pub fn new(queries: Vec<Query>, refresh_ratio: f64) -> Result<Self> {
        let w = Workload {
            queries,
            refresh_ratio,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.refresh_ratio.is_finite() && self.refresh_ratio >= 0.0) {
            return Err(AdvisorError::Validation(format!(
                "refresh_ratio must be a non-negative number, got {}",
                self.refresh_ratio
            )));
        }
        let mut ids = HashSet::new();
        for q in &self.queries {
            if !ids.insert(q.id.as_str()) {
                return Err(AdvisorError::Validation(format!(
                    "duplicate query id {}",
                    q.id
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn query(&self, id: &str) -> Option<&Query> {
        self.queries.iter().find(|q| q.id == id)
    }
}

/// Loads a workload file: an optional `refresh_ratio = <real>` header line
/// followed by `;`-separated statements. `#` starts a line comment. A statement
/// may be labelled `name: select ...`; unlabelled statements get ids `q1..qm`
/// by position.
pub fn load_workload(source: &str, catalog: &SchemaCatalog) -> Result<Workload> {
    let (refresh_ratio, body) = split_header(source)?;
    let statements = lexer::split_statements(&body)?;
    let mut queries = Vec::with_capacity(statements.len());
    for (n, tokens) in statements.into_iter().enumerate() {
        let index = n + 1;
        let default_id = format!("q{index}");
        let query = parser::parse_tokens(tokens, &default_id, catalog).map_err(|e| {
            AdvisorError::Statement {
                index,
                source: Box::new(e),
            }
        })?;
        queries.push(query);
    }
    Workload::new(queries, refresh_ratio.unwrap_or(0.0))
}

/// Extracts the optional `refresh_ratio = x` header (the first line that is
/// neither blank nor a comment). The header line is blanked so that positions
/// reported by the parser still match the file.
fn split_header(source: &str) -> Result<(Option<f64>, String)> {
    let mut ratio = None;
    let mut lines: Vec<String> = Vec::new();
    let mut header_done = false;
    for line in source.lines() {
        let trimmed = line.trim();
        if !header_done && !trimmed.is_empty() && !trimmed.starts_with('#') {
            header_done = true;
            if let Some((key, value)) = trimmed.split_once('=') {
                if key.trim().eq_ignore_ascii_case("refresh_ratio") {
                    let value = value.split('#').next().unwrap_or("").trim();
                    let parsed: f64 = value.parse().map_err(|_| {
                        AdvisorError::Parse(format!("invalid refresh_ratio value {value:?}"))
                    })?;
                    ratio = Some(parsed);
                    lines.push(String::new());
                    continue;
                }
            }
        }
        lines.push(line.to_string());
    }
    Ok((ratio, lines.join("\n")))
}
