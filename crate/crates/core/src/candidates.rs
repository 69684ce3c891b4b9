//! Candidate materialized views and B-tree indexes, and the three usage
//! matrices relating queries, views and indexes.
//!
//! Views are generated by grouping queries that join the same set of tables;
//! indexes by counting how many queries filter or group on each attribute.
//! A fixed candidate set can also be loaded from a TOML file:
//!
//! ```toml
//! [[views]]
//! id = "v1"
//! indexes = ["i8"]          # index candidates recommended on this view
//! definition = "select ... from ... where <joins> group by ..."
//!
//! [[indexes]]
//! id = "i8"
//! column = "times.time_fiscal_year"
//! ```
//!
//! An entry of a view's `indexes` list is either a base index id or a
//! `table.attribute` column; it yields an index candidate targeting the view,
//! with id `<entry>@<view>`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{RelationSize, SchemaCatalog};
use crate::error::{AdvisorError, Result};
use crate::workload::{parse_query, Aggregate, ColumnRef, JoinPair, Query, Workload};

/// Bytes stored per aggregate column of a view.
pub const AGGREGATE_WIDTH: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViewCandidate {
    pub id: String,
    pub joined_tables: BTreeSet<String>,
    pub join_pairs: Vec<JoinPair>,
    pub group_by: Vec<ColumnRef>,
    pub aggregates: Vec<Aggregate>,
    pub stats: RelationSize,
}

impl ViewCandidate {
    /// Builds a view from its parts and estimates its size from the catalog.
    pub fn new(
        id: impl Into<String>,
        joined_tables: BTreeSet<String>,
        join_pairs: Vec<JoinPair>,
        group_by: Vec<ColumnRef>,
        aggregates: Vec<Aggregate>,
        catalog: &SchemaCatalog,
    ) -> Result<Self> {
        let id = id.into();
        if group_by.is_empty() {
            return Err(AdvisorError::Validation(format!(
                "view {id}: group by list is empty"
            )));
        }
        let fact = catalog.fact_table();
        if !joined_tables.contains(&fact.name) {
            return Err(AdvisorError::Validation(format!(
                "view {id}: does not read the fact table"
            )));
        }
        let stats = estimate_view_stats(&group_by, aggregates.len(), catalog)?;
        Ok(ViewCandidate {
            id,
            joined_tables,
            join_pairs,
            group_by,
            aggregates,
            stats,
        })
    }

    /// Builds a view from a parsed `select ... group by` definition. The
    /// definition may only contain join conditions.
    pub fn from_query(
        id: impl Into<String>,
        query: &Query,
        catalog: &SchemaCatalog,
    ) -> Result<Self> {
        let id = id.into();
        if !query.predicates.is_empty() {
            return Err(AdvisorError::Validation(format!(
                "view {id}: constant predicates are not supported in view definitions"
            )));
        }
        Self::new(
            id,
            query.joined_tables.clone(),
            query.join_pairs.clone(),
            query.group_by.clone(),
            query.aggregates.clone(),
            catalog,
        )
    }

    /// Stored size in bytes: estimated rows times row width.
    pub fn size_bytes(&self) -> u64 {
        self.stats.row_count.saturating_mul(self.stats.row_width)
    }

    pub fn groups_on(&self, column: &ColumnRef) -> bool {
        self.group_by.contains(column)
    }
}

/// Row estimate `min(fact rows, product of group-by cardinalities)` and row
/// width `sum of group-by widths + 8 bytes per aggregate`.
pub fn estimate_view_stats(
    group_by: &[ColumnRef],
    aggregate_count: usize,
    catalog: &SchemaCatalog,
) -> Result<RelationSize> {
    let fact_rows = catalog.fact_table().row_count;
    let mut groups: u128 = 1;
    let mut width: u64 = AGGREGATE_WIDTH * aggregate_count as u64;
    for c in group_by {
        let attr = catalog
            .attribute(&c.table, &c.attribute)
            .ok_or_else(|| AdvisorError::Validation(format!("unknown column {c}")))?;
        groups = groups.saturating_mul(attr.cardinality as u128);
        width += attr.width;
    }
    Ok(RelationSize {
        row_count: groups.min(fact_rows as u128) as u64,
        row_width: width,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum IndexTarget {
    Base,
    View(String),
}

/// Single-attribute B-tree index, either on a base table or on a view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexCandidate {
    pub id: String,
    /// Indexed key. For a view target this is one of the view's group-by columns.
    pub column: ColumnRef,
    pub target: IndexTarget,
}

impl IndexCandidate {
    pub fn is_base(&self) -> bool {
        self.target == IndexTarget::Base
    }

    pub fn target_view(&self) -> Option<&str> {
        match &self.target {
            IndexTarget::View(v) => Some(v),
            IndexTarget::Base => None,
        }
    }
}

/// Candidate views and indexes. Base indexes and view indexes share one list;
/// positions in these vectors are the handles used by the matrices and the
/// cost model.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CandidateSet {
    pub views: Vec<ViewCandidate>,
    pub indexes: Vec<IndexCandidate>,
}

impl CandidateSet {
    pub fn new(views: Vec<ViewCandidate>, indexes: Vec<IndexCandidate>) -> Result<Self> {
        let set = CandidateSet { views, indexes };
        set.validate()?;
        Ok(set)
    }

    /// Checks id uniqueness and that view indexes name an existing view and
    /// one of its group-by columns.
    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for id in self
            .views
            .iter()
            .map(|v| &v.id)
            .chain(self.indexes.iter().map(|i| &i.id))
        {
            if !ids.insert(id.as_str()) {
                return Err(AdvisorError::Validation(format!(
                    "duplicate candidate id {id}"
                )));
            }
        }
        for index in &self.indexes {
            if let IndexTarget::View(v) = &index.target {
                let view = self.view(v).ok_or_else(|| {
                    AdvisorError::Validation(format!("index {} targets unknown view {v}", index.id))
                })?;
                if !view.groups_on(&index.column) {
                    return Err(AdvisorError::Validation(format!(
                        "index {}: column {} is not a group-by column of {v}",
                        index.id, index.column
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty() && self.indexes.is_empty()
    }

    pub fn view(&self, id: &str) -> Option<&ViewCandidate> {
        self.views.iter().find(|v| v.id == id)
    }

    pub fn view_position(&self, id: &str) -> Option<usize> {
        self.views.iter().position(|v| v.id == id)
    }

    pub fn index_position(&self, id: &str) -> Option<usize> {
        self.indexes.iter().position(|i| i.id == id)
    }

    pub fn base_indexes(&self) -> impl Iterator<Item = (usize, &IndexCandidate)> {
        self.indexes.iter().enumerate().filter(|(_, i)| i.is_base())
    }

    /// Views plus base indexes: the singleton objects a selection ranges over.
    pub fn singleton_count(&self) -> usize {
        self.views.len() + self.base_indexes().count()
    }

    /// Views plus all indexes (base and view).
    pub fn member_count(&self) -> usize {
        self.views.len() + self.indexes.len()
    }

    /// Keeps the first views and base indexes (in list order) such that the
    /// total member count, including the kept views' indexes, stays within
    /// `max_members`.
    pub fn truncated(&self, max_members: usize) -> CandidateSet {
        let mut views = Vec::new();
        let mut indexes: Vec<IndexCandidate> = Vec::new();
        let mut count = 0;
        for v in &self.views {
            let on_view: Vec<_> = self
                .indexes
                .iter()
                .filter(|i| i.target_view() == Some(v.id.as_str()))
                .cloned()
                .collect();
            if count + 1 + on_view.len() > max_members {
                if count < max_members {
                    views.push(v.clone());
                    count += 1;
                    let room = max_members - count;
                    indexes.extend(on_view.into_iter().take(room));
                    count = max_members;
                }
                break;
            }
            count += 1 + on_view.len();
            views.push(v.clone());
            indexes.extend(on_view);
        }
        for (_, i) in self.base_indexes() {
            if count >= max_members {
                break;
            }
            indexes.push(i.clone());
            count += 1;
        }
        // base indexes first, then view indexes, as generation lays them out
        indexes.sort_by_key(|i| !i.is_base());
        CandidateSet { views, indexes }
    }
}

/// Groups queries by their joined-table set; each group yields one view that
/// groups on every group-by and predicate column of its queries and carries
/// the union of their aggregates. Ids `v1..vk` follow first occurrence.
pub fn generate_view_candidates(
    workload: &Workload,
    catalog: &SchemaCatalog,
) -> Result<Vec<ViewCandidate>> {
    let mut order: Vec<&BTreeSet<String>> = Vec::new();
    let mut groups: HashMap<&BTreeSet<String>, Vec<&Query>> = HashMap::new();
    for q in &workload.queries {
        let entry = groups.entry(&q.joined_tables).or_default();
        if entry.is_empty() {
            order.push(&q.joined_tables);
        }
        entry.push(q);
    }

    let mut views = Vec::with_capacity(order.len());
    for (n, signature) in order.into_iter().enumerate() {
        let members = &groups[signature];
        let mut group_by: Vec<ColumnRef> = Vec::new();
        let mut aggregates: Vec<Aggregate> = Vec::new();
        let mut join_pairs: Vec<JoinPair> = Vec::new();
        for q in members {
            for c in q.group_by.iter().chain(q.predicate_columns()) {
                if !group_by.contains(c) {
                    group_by.push(c.clone());
                }
            }
            for a in &q.aggregates {
                if !aggregates.contains(a) {
                    aggregates.push(a.clone());
                }
            }
            for j in &q.join_pairs {
                if !join_pairs.contains(j) {
                    join_pairs.push(j.clone());
                }
            }
        }
        views.push(ViewCandidate::new(
            format!("v{}", n + 1),
            signature.clone(),
            join_pairs,
            group_by,
            aggregates,
            catalog,
        )?);
    }
    Ok(views)
}

/// Single-attribute index mining by support counting.
///
/// Base tables: one candidate per column that at least `min_support` queries
/// filter or group on (ids `i1..`, by first occurrence). Views: one candidate
/// per group-by column of a view that at least `min_support` of the queries
/// able to use the view filter or group on. A `min_support` of 0 is treated
/// as 1.
pub fn generate_index_candidates(
    workload: &Workload,
    views: &[ViewCandidate],
    min_support: usize,
) -> Vec<IndexCandidate> {
    let min_support = min_support.max(1);
    let mut order: Vec<&ColumnRef> = Vec::new();
    let mut support: HashMap<&ColumnRef, usize> = HashMap::new();
    for q in &workload.queries {
        for c in q.filter_and_group_columns() {
            let count = support.entry(c).or_insert(0);
            if *count == 0 {
                order.push(c);
            }
            *count += 1;
        }
    }

    let mut indexes: Vec<IndexCandidate> = order
        .into_iter()
        .filter(|c| support[c] >= min_support)
        .enumerate()
        .map(|(n, c)| IndexCandidate {
            id: format!("i{}", n + 1),
            column: c.clone(),
            target: IndexTarget::Base,
        })
        .collect();
    let base_ids: HashMap<ColumnRef, String> = indexes
        .iter()
        .map(|i| (i.column.clone(), i.id.clone()))
        .collect();

    for v in views {
        let users: Vec<&Query> = workload
            .queries
            .iter()
            .filter(|q| usable_view(q, v))
            .collect();
        for c in &v.group_by {
            let count = users.iter().filter(|q| q.filters_or_groups_on(c)).count();
            if count >= min_support {
                let key = base_ids.get(c).cloned().unwrap_or_else(|| c.to_string());
                indexes.push(IndexCandidate {
                    id: format!("{key}@{}", v.id),
                    column: c.clone(),
                    target: IndexTarget::View(v.id.clone()),
                });
            }
        }
    }
    indexes
}

/// Generates views and indexes for a workload.
pub fn generate_candidates(
    workload: &Workload,
    catalog: &SchemaCatalog,
    min_support: usize,
) -> Result<CandidateSet> {
    let views = generate_view_candidates(workload, catalog)?;
    let indexes = generate_index_candidates(workload, &views, min_support);
    CandidateSet::new(views, indexes)
}

/// True if `q` can be answered from `v` alone: the view joins at least the
/// query's tables through the same keys, groups on every column the query
/// groups or filters on, and stores every aggregate the query computes.
///
/// Joining extra dimensions along fact foreign keys does not change the
/// aggregated rows, so a view may join more tables than the query.
pub fn usable_view(q: &Query, v: &ViewCandidate) -> bool {
    q.joined_tables.is_subset(&v.joined_tables)
        && q.join_pairs.iter().all(|j| v.join_pairs.contains(j))
        && q.group_by.iter().all(|c| v.groups_on(c))
        && q.predicate_columns().all(|c| v.groups_on(c))
        && q.aggregates.iter().all(|a| v.aggregates.contains(a))
}

/// True if base index `i` is on a table the query reads and on a column it
/// filters or groups on. Always false for view indexes.
pub fn usable_index(q: &Query, i: &IndexCandidate) -> bool {
    i.is_base() && q.joined_tables.contains(&i.column.table) && q.filters_or_groups_on(&i.column)
}

/// Boolean usage matrices.
///
/// * `qv[q][v]`: query `q` can be rewritten over view `v`.
/// * `qi[q][k]`: query `q` can use the base index `qi_columns[k]`.
/// * `vi[v][i]`: index `i` (position in the candidate list) is defined on view `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct UsageMatrices {
    pub query_ids: Vec<String>,
    pub view_ids: Vec<String>,
    pub index_ids: Vec<String>,
    /// Candidate positions of the base indexes, i.e. the QI columns.
    pub qi_columns: Vec<usize>,
    pub qv: Vec<Vec<bool>>,
    pub qi: Vec<Vec<bool>>,
    pub vi: Vec<Vec<bool>>,
}

impl UsageMatrices {
    /// QI lookup by candidate position; false for view indexes.
    pub fn query_uses_index(&self, query: usize, index: usize) -> bool {
        self.qi_columns
            .iter()
            .position(|&c| c == index)
            .is_some_and(|k| self.qi[query][k])
    }

    /// Projects VI onto the base-index columns: cell `[v][k]` is set when `v`
    /// carries an index on the same column as base index `qi_columns[k]`.
    pub fn vi_by_base_key(&self, candidates: &CandidateSet) -> Vec<Vec<bool>> {
        self.vi
            .iter()
            .map(|row| {
                self.qi_columns
                    .iter()
                    .map(|&b| {
                        let key = &candidates.indexes[b].column;
                        row.iter()
                            .enumerate()
                            .any(|(i, &set)| set && candidates.indexes[i].column == *key)
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of set cells in VI.
    pub fn vi_pairs(&self) -> usize {
        self.vi.iter().flatten().filter(|&&b| b).count()
    }
}

pub fn build_matrices(workload: &Workload, candidates: &CandidateSet) -> UsageMatrices {
    let qi_columns: Vec<usize> = candidates.base_indexes().map(|(n, _)| n).collect();
    let qv = workload
        .queries
        .iter()
        .map(|q| candidates.views.iter().map(|v| usable_view(q, v)).collect())
        .collect();
    let qi = workload
        .queries
        .iter()
        .map(|q| {
            qi_columns
                .iter()
                .map(|&i| usable_index(q, &candidates.indexes[i]))
                .collect()
        })
        .collect();
    let vi = candidates
        .views
        .iter()
        .map(|v| {
            candidates
                .indexes
                .iter()
                .map(|i| i.target_view() == Some(v.id.as_str()) && v.groups_on(&i.column))
                .collect()
        })
        .collect();
    UsageMatrices {
        query_ids: workload.queries.iter().map(|q| q.id.clone()).collect(),
        view_ids: candidates.views.iter().map(|v| v.id.clone()).collect(),
        index_ids: candidates.indexes.iter().map(|i| i.id.clone()).collect(),
        qi_columns,
        qv,
        qi,
        vi,
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateFile {
    #[serde(default)]
    views: Vec<ViewEntry>,
    #[serde(default)]
    indexes: Vec<IndexEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ViewEntry {
    id: String,
    definition: String,
    #[serde(default)]
    indexes: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexEntry {
    id: String,
    column: String,
}

fn parse_column(text: &str, catalog: &SchemaCatalog) -> Result<ColumnRef> {
    let (table, attribute) = text
        .split_once('.')
        .ok_or_else(|| AdvisorError::Parse(format!("expected table.attribute, got {text:?}")))?;
    let t = catalog
        .table(table.trim())
        .ok_or_else(|| AdvisorError::Validation(format!("unknown table in column {text}")))?;
    let a = t
        .attribute(attribute.trim())
        .ok_or_else(|| AdvisorError::Validation(format!("unknown column {text}")))?;
    Ok(ColumnRef::new(t.name.clone(), a.name.clone()))
}

/// Loads a fixed candidate set.
pub fn load_candidates(source: &str, catalog: &SchemaCatalog) -> Result<CandidateSet> {
    let file: CandidateFile =
        toml::from_str(source).map_err(|e| AdvisorError::Parse(e.to_string()))?;

    let mut base = Vec::with_capacity(file.indexes.len());
    for entry in &file.indexes {
        base.push(IndexCandidate {
            id: entry.id.clone(),
            column: parse_column(&entry.column, catalog)?,
            target: IndexTarget::Base,
        });
    }

    let mut views = Vec::with_capacity(file.views.len());
    let mut view_indexes = Vec::new();
    for entry in &file.views {
        let query = parse_query(&entry.definition, catalog)
            .map_err(|e| AdvisorError::Validation(format!("view {}: {e}", entry.id)))?;
        let view = ViewCandidate::from_query(entry.id.clone(), &query, catalog)?;
        for key in &entry.indexes {
            let column = match base.iter().find(|i| &i.id == key) {
                Some(i) => i.column.clone(),
                None => parse_column(key, catalog).map_err(|_| {
                    AdvisorError::Validation(format!(
                        "view {}: {key} is neither an index id nor a column",
                        entry.id
                    ))
                })?,
            };
            view_indexes.push(IndexCandidate {
                id: format!("{key}@{}", entry.id),
                column,
                target: IndexTarget::View(entry.id.clone()),
            });
        }
        views.push(view);
    }

    base.extend(view_indexes);
    CandidateSet::new(views, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn setup() -> (SchemaCatalog, Workload) {
        let c = fixtures::sales_catalog();
        let w = fixtures::sales_workload(&c);
        (c, w)
    }

    fn col(s: &str) -> ColumnRef {
        let (t, a) = s.split_once('.').unwrap();
        ColumnRef::new(t, a)
    }

    #[test]
    fn single_query_view_matches_v1() {
        let (c, w) = setup();
        let only_q1 = Workload::new(vec![w.queries[0].clone()], 0.0).unwrap();
        let views = generate_view_candidates(&only_q1, &c).unwrap();
        assert_eq!(views.len(), 1);
        let v = &views[0];
        assert_eq!(v.id, "v1");
        assert_eq!(
            v.joined_tables,
            ["sales", "times"].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(
            v.group_by,
            vec![col("sales.time_id"), col("times.time_fiscal_year")]
        );
        // 1461 time ids x 4 fiscal years; 4 + 4 key bytes + one aggregate
        assert_eq!(v.stats.row_count, 5844);
        assert_eq!(v.stats.row_width, 16);
    }

    #[test]
    fn empty_workload_no_candidates() {
        let (c, _) = setup();
        let empty = Workload::default();
        assert!(generate_view_candidates(&empty, &c).unwrap().is_empty());
        assert!(generate_index_candidates(&empty, &[], 1).is_empty());
    }

    #[test]
    fn same_join_set_merges() {
        let (c, w) = setup();
        let q2q4 = Workload::new(vec![w.queries[1].clone(), w.queries[3].clone()], 0.0).unwrap();
        let views = generate_view_candidates(&q2q4, &c).unwrap();
        assert_eq!(views.len(), 1);
        let gb = &views[0].group_by;
        for needed in [
            "sales.prod_id",
            "products.prod_name",
            "promotions.promo_category",
        ] {
            assert!(gb.contains(&col(needed)), "missing {needed}");
        }
        assert!(usable_view(&w.queries[1], &views[0]));
        assert!(usable_view(&w.queries[3], &views[0]));
    }

    #[test]
    fn sample_generation_groups_by_signature() {
        let (c, w) = setup();
        let views = generate_view_candidates(&w, &c).unwrap();
        // {s,t} {s,p,pr} {s,c,p} {s,pr} {s,ch}
        assert_eq!(views.len(), 5);
        let m = build_matrices(&w, &CandidateSet::new(views, vec![]).unwrap());
        for (q, row) in m.qv.iter().enumerate() {
            assert!(row.iter().any(|&b| b), "query {} has no usable view", q + 1);
        }
        // generated views are usable by every query of their group
        assert!(m.qv[1][1] && m.qv[3][1] && m.qv[6][1]);
        assert!(m.qv[2][2] && m.qv[5][2]);
    }

    #[test]
    fn index_support_counting() {
        let (c, w) = setup();
        let views = generate_view_candidates(&w, &c).unwrap();
        let all = generate_index_candidates(&w, &views, 1);
        let base: Vec<&IndexCandidate> = all.iter().filter(|i| i.is_base()).collect();
        assert!(base
            .iter()
            .any(|i| i.column == col("promotions.promo_category")));
        assert!(base
            .iter()
            .any(|i| i.column == col("channels.channel_class")));

        let two = generate_index_candidates(&w, &views, 2);
        assert!(two
            .iter()
            .any(|i| i.is_base() && i.column == col("promotions.promo_category")));
        assert!(!two
            .iter()
            .any(|i| i.is_base() && i.column == col("channels.channel_class")));

        assert!(generate_index_candidates(&w, &views, 9).is_empty());
        assert_eq!(
            generate_index_candidates(&w, &views, 0),
            generate_index_candidates(&w, &views, 1)
        );
    }

    #[test]
    fn view_indexes_target_their_view() {
        let (c, w) = setup();
        let set = generate_candidates(&w, &c, 1).unwrap();
        let m = build_matrices(&w, &set);
        for (v, row) in m.vi.iter().enumerate() {
            for (i, &cell) in row.iter().enumerate() {
                if cell {
                    assert_eq!(
                        set.indexes[i].target,
                        IndexTarget::View(set.views[v].id.clone())
                    );
                }
            }
        }
        assert!(m.vi_pairs() > 0);
    }

    #[test]
    fn generation_is_idempotent() {
        let (c, w) = setup();
        assert_eq!(
            generate_candidates(&w, &c, 1).unwrap(),
            generate_candidates(&w, &c, 1).unwrap()
        );
    }

    #[test]
    fn usability_examples() {
        let (c, w) = setup();
        let set = fixtures::sales_candidates(&c);
        let q = |n: usize| &w.queries[n - 1];
        let v = |id: &str| set.view(id).unwrap();
        let i = |id: &str| &set.indexes[set.index_position(id).unwrap()];
        assert!(usable_view(q(1), v("v1")));
        assert!(!usable_view(q(1), v("v4")));
        assert!(usable_index(q(1), i("i8")));
        assert!(usable_index(q(2), i("i1")));
        assert!(!usable_index(q(8), i("i1")));
        assert!(!usable_index(q(1), i("i8@v1")));
    }

    #[test]
    fn fixture_vi_shape() {
        let (c, w) = setup();
        let set = fixtures::sales_candidates(&c);
        let m = build_matrices(&w, &set);
        assert_eq!(m.qv.len(), 8);
        assert_eq!(m.qv[0].len(), 7);
        assert_eq!(m.qi[0].len(), 12);
        assert_eq!(m.vi_pairs(), 22);
        let by_key = m.vi_by_base_key(&set);
        // v7 carries an index on promo_name (i11)
        assert!(by_key[6][10]);
    }

    #[test]
    fn no_candidates_empty_matrices() {
        let (_, w) = setup();
        let m = build_matrices(&w, &CandidateSet::default());
        assert!(m.qv.iter().all(|r| r.is_empty()));
        assert!(m.qi.iter().all(|r| r.is_empty()));
        assert!(m.vi.is_empty());
    }

    #[test]
    fn candidate_file_errors() {
        let (c, _) = setup();
        assert!(matches!(
            load_candidates("views = 1", &c),
            Err(AdvisorError::Parse(_))
        ));
        let bad_view_index = r#"
            [[views]]
            id = "v"
            indexes = ["times.day_name"]
            definition = "select sales.time_id, sum(amount_sold) from sales group by sales.time_id"
        "#;
        assert!(matches!(
            load_candidates(bad_view_index, &c),
            Err(AdvisorError::Validation(_))
        ));
        let predicate_view = r#"
            [[views]]
            id = "v"
            definition = "select sales.time_id from sales where sales.time_id = 3 group by sales.time_id"
        "#;
        assert!(load_candidates(predicate_view, &c).is_err());
        let dup = r#"
            [[indexes]]
            id = "i"
            column = "sales.time_id"
            [[indexes]]
            id = "i"
            column = "sales.prod_id"
        "#;
        assert!(matches!(
            load_candidates(dup, &c),
            Err(AdvisorError::Validation(_))
        ));
    }

    #[test]
    fn truncation_respects_limit_and_dependencies() {
        let (c, w) = setup();
        let set = fixtures::sales_candidates(&c);
        for limit in 0..=set.member_count() {
            let t = set.truncated(limit);
            assert!(t.member_count() <= limit);
            t.validate().unwrap();
        }
        let _ = w;
    }
}
