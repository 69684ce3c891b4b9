//! Block-I/O cost model.
//!
//! A query is charged the cheapest of the rewritings available under a
//! configuration:
//!
//! * scan every joined table (sum of table blocks; join work is not charged);
//! * the same, with each table that has a usable selected base index read
//!   through that index at `height + ceil(selectivity * blocks)`;
//! * scan a selected view the query can be answered from;
//! * read such a view through a selected index on it, at
//!   `height + ceil(selectivity * view blocks)`.
//!
//! Heights are `ceil(log_fanout(key cardinality))` and selectivities assume
//! uniform, independent attributes (`1 / cardinality`, multiplied across the
//! query's predicates). Sizes are in bytes, costs in blocks.

use serde::Serialize;

use crate::candidates::{IndexCandidate, IndexTarget, ViewCandidate};
use crate::catalog::{RelationSize, SchemaCatalog};
use crate::problem::Problem;
use crate::selection::{Member, Selection};
use crate::workload::{Predicate, Query};

/// Identifies the formulas below in reports.
pub const COST_MODEL_VERSION: &str = "block-io-btree/1";

pub const DEFAULT_SELECTIVITY_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModelParams {
    pub block_size: u64,
    pub btree_fanout: u64,
    pub rowid_width: u64,
    pub selectivity_floor: f64,
}

impl CostModelParams {
    pub fn from_catalog(catalog: &SchemaCatalog) -> Self {
        CostModelParams {
            block_size: catalog.block_size,
            btree_fanout: catalog.btree_fanout,
            rowid_width: catalog.rowid_width,
            selectivity_floor: DEFAULT_SELECTIVITY_FLOOR,
        }
    }
}

/// `1 / cardinality` of the predicate's attribute, floored at `floor`.
/// Unknown attributes are treated as non-selective.
pub fn selectivity(p: &Predicate, catalog: &SchemaCatalog, floor: f64) -> f64 {
    let card = catalog
        .attribute(&p.column.table, &p.column.attribute)
        .map_or(1, |a| a.cardinality.max(1));
    (1.0 / card as f64).max(floor)
}

/// Product of the selectivities of `predicates`.
pub fn combined_selectivity<'a>(
    predicates: impl IntoIterator<Item = &'a Predicate>,
    catalog: &SchemaCatalog,
    floor: f64,
) -> f64 {
    predicates
        .into_iter()
        .map(|p| selectivity(p, catalog, floor))
        .product::<f64>()
        .max(floor)
}

/// Smallest `h` with `fanout^h >= cardinality`, i.e. `ceil(log_fanout(cardinality))`.
pub fn btree_height(cardinality: u64, fanout: u64) -> u64 {
    let mut h = 0;
    let mut reach: u128 = 1;
    while reach < cardinality as u128 {
        reach *= fanout as u128;
        h += 1;
    }
    h
}

/// `height + ceil(selectivity * blocks)`.
pub fn index_access_cost(height: u64, selectivity: f64, blocks: u64) -> u64 {
    height + (selectivity * blocks as f64).ceil() as u64
}

/// Storage footprint of a view in bytes.
pub fn view_size(view: &ViewCandidate) -> u64 {
    view.size_bytes()
}

/// Row count of the relation an index is built on.
fn index_target_rows(
    index: &IndexCandidate,
    views: &[ViewCandidate],
    catalog: &SchemaCatalog,
) -> u64 {
    match &index.target {
        IndexTarget::Base => catalog
            .table(&index.column.table)
            .map_or(0, |t| t.row_count),
        IndexTarget::View(v) => views
            .iter()
            .find(|c| &c.id == v)
            .map_or(0, |c| c.stats.row_count),
    }
}

/// Storage footprint of an index: one (key, rowid) entry per target row.
pub fn index_size(index: &IndexCandidate, views: &[ViewCandidate], catalog: &SchemaCatalog) -> u64 {
    let key_width = catalog
        .attribute(&index.column.table, &index.column.attribute)
        .map_or(0, |a| a.width);
    index_target_rows(index, views, catalog).saturating_mul(key_width + catalog.rowid_width)
}

/// The rewriting that realises a query's cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Rewriting {
    Base,
    /// Base tables, reading some of them through these base indexes.
    BaseWithIndexes(Vec<usize>),
    View(usize),
    ViewWithIndex {
        view: usize,
        index: usize,
    },
}

#[derive(Debug, Clone)]
struct TableAccess {
    scan: u64,
    /// (base index position, access cost through it)
    via_index: Vec<(usize, u64)>,
}

#[derive(Debug, Clone)]
struct QueryAlternatives {
    tables: Vec<TableAccess>,
    /// (view position, blocks)
    views: Vec<(usize, u64)>,
    /// (view position, index position, access cost)
    view_indexes: Vec<(usize, usize, u64)>,
}

/// One query's cost in a [`CostReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryCost {
    pub query: String,
    pub blocks: u64,
    pub rewriting: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub model: String,
    /// In workload order.
    pub per_query: Vec<QueryCost>,
    pub total: u64,
}

/// Cost model bound to one [`Problem`]; per-query alternatives, sizes and
/// maintenance costs are computed once at construction.
#[derive(Debug, Clone)]
pub struct CostModel<'p> {
    problem: &'p Problem,
    params: CostModelParams,
    alternatives: Vec<QueryAlternatives>,
    view_sizes: Vec<u64>,
    view_blocks: Vec<u64>,
    index_sizes: Vec<u64>,
    view_maintenance: Vec<u64>,
    index_maintenance: Vec<u64>,
}

impl<'p> CostModel<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        Self::with_params(problem, CostModelParams::from_catalog(&problem.catalog))
    }

    pub fn with_params(problem: &'p Problem, params: CostModelParams) -> Self {
        let catalog = &problem.catalog;
        let cands = &problem.candidates;
        let blocks = |size: RelationSize| crate::catalog::blocks(size, params.block_size);
        let table_blocks =
            |name: &str| catalog.table(name).map_or(0, |t| blocks(t.relation_size()));
        let key_height = |index: &IndexCandidate| {
            let card = catalog
                .attribute(&index.column.table, &index.column.attribute)
                .map_or(1, |a| a.cardinality);
            btree_height(card, params.btree_fanout)
        };

        let view_sizes: Vec<u64> = cands.views.iter().map(view_size).collect();
        let view_blocks: Vec<u64> = cands.views.iter().map(|v| blocks(v.stats)).collect();
        let index_sizes: Vec<u64> = cands
            .indexes
            .iter()
            .map(|i| index_size(i, &cands.views, catalog))
            .collect();

        let view_maintenance = cands
            .views
            .iter()
            .zip(&view_blocks)
            .map(|(v, &vb)| v.joined_tables.iter().map(|t| table_blocks(t)).sum::<u64>() + vb)
            .collect();
        let index_maintenance = cands
            .indexes
            .iter()
            .zip(&index_sizes)
            .map(|(i, &size)| {
                let target = match &i.target {
                    IndexTarget::Base => table_blocks(&i.column.table),
                    IndexTarget::View(v) => cands.view_position(v).map_or(0, |p| view_blocks[p]),
                };
                target + size.div_ceil(params.block_size)
            })
            .collect();

        let alternatives = problem
            .workload
            .queries
            .iter()
            .enumerate()
            .map(|(qn, q)| {
                let tables = q
                    .joined_tables
                    .iter()
                    .map(|t| {
                        let scan = table_blocks(t);
                        let sel = combined_selectivity(
                            q.predicates.iter().filter(|p| &p.column.table == t),
                            catalog,
                            params.selectivity_floor,
                        );
                        let via_index = problem
                            .matrices
                            .qi_columns
                            .iter()
                            .enumerate()
                            .filter(|&(k, &i)| {
                                problem.matrices.qi[qn][k] && &cands.indexes[i].column.table == t
                            })
                            .map(|(_, &i)| {
                                (
                                    i,
                                    index_access_cost(key_height(&cands.indexes[i]), sel, scan),
                                )
                            })
                            .collect();
                        TableAccess { scan, via_index }
                    })
                    .collect();

                let sel_all =
                    combined_selectivity(&q.predicates, catalog, params.selectivity_floor);
                let mut views = Vec::new();
                let mut view_indexes = Vec::new();
                for (v, &usable) in problem.matrices.qv[qn].iter().enumerate() {
                    if !usable {
                        continue;
                    }
                    views.push((v, view_blocks[v]));
                    for (i, &on_view) in problem.matrices.vi[v].iter().enumerate() {
                        let index = &cands.indexes[i];
                        if on_view && q.filters_or_groups_on(&index.column) {
                            view_indexes.push((
                                v,
                                i,
                                index_access_cost(key_height(index), sel_all, view_blocks[v]),
                            ));
                        }
                    }
                }
                QueryAlternatives {
                    tables,
                    views,
                    view_indexes,
                }
            })
            .collect();

        CostModel {
            problem,
            params,
            alternatives,
            view_sizes,
            view_blocks,
            index_sizes,
            view_maintenance,
            index_maintenance,
        }
    }

    pub fn problem(&self) -> &'p Problem {
        self.problem
    }

    pub fn params(&self) -> &CostModelParams {
        &self.params
    }

    /// `taille(o)` for a single structure, in bytes.
    pub fn object_size(&self, member: Member) -> u64 {
        match member {
            Member::View(v) => self.view_sizes[v],
            Member::Index(i) => self.index_sizes[i],
        }
    }

    pub fn view_blocks(&self, v: usize) -> u64 {
        self.view_blocks[v]
    }

    /// Blocks read and written to refresh a structure: a view is recomputed
    /// from its base tables and rewritten; an index is rebuilt by reading its
    /// target and writing its entries.
    pub fn maintenance_cost(&self, member: Member) -> u64 {
        match member {
            Member::View(v) => self.view_maintenance[v],
            Member::Index(i) => self.index_maintenance[i],
        }
    }

    /// Cheapest rewriting of query `q` (workload position) under `selection`.
    pub fn query_cost(&self, q: usize, selection: &Selection) -> (u64, Rewriting) {
        let alt = &self.alternatives[q];

        let mut base_total = 0;
        let mut used = Vec::new();
        for table in &alt.tables {
            let mut best = table.scan;
            let mut best_index = None;
            for &(i, cost) in &table.via_index {
                if selection.has_index(i) && cost < best {
                    best = cost;
                    best_index = Some(i);
                }
            }
            base_total += best;
            used.extend(best_index);
        }
        let mut best = (
            base_total,
            if used.is_empty() {
                Rewriting::Base
            } else {
                Rewriting::BaseWithIndexes(used)
            },
        );

        for &(v, blocks) in &alt.views {
            if selection.has_view(v) && blocks < best.0 {
                best = (blocks, Rewriting::View(v));
            }
        }
        for &(v, i, cost) in &alt.view_indexes {
            if selection.has_view(v) && selection.has_index(i) && cost < best.0 {
                best = (cost, Rewriting::ViewWithIndex { view: v, index: i });
            }
        }
        best
    }

    /// `C(Q, config)`: sum of per-query costs.
    pub fn workload_cost(&self, selection: &Selection) -> u64 {
        (0..self.alternatives.len())
            .map(|q| self.query_cost(q, selection).0)
            .sum()
    }

    pub fn report(&self, selection: &Selection) -> CostReport {
        let mut per_query = Vec::with_capacity(self.alternatives.len());
        let mut total = 0;
        for (n, query) in self.problem.workload.queries.iter().enumerate() {
            let (blocks, rewriting) = self.query_cost(n, selection);
            total += blocks;
            per_query.push(QueryCost {
                query: query.id.clone(),
                blocks,
                rewriting: self.describe(&rewriting),
            });
        }
        CostReport {
            model: COST_MODEL_VERSION.to_string(),
            per_query,
            total,
        }
    }

    pub fn describe(&self, rewriting: &Rewriting) -> String {
        let c = &self.problem.candidates;
        match rewriting {
            Rewriting::Base => "base".into(),
            Rewriting::BaseWithIndexes(ids) => {
                let names: Vec<&str> = ids.iter().map(|&i| c.indexes[i].id.as_str()).collect();
                format!("base+{}", names.join("+"))
            }
            Rewriting::View(v) => c.views[*v].id.clone(),
            Rewriting::ViewWithIndex { view, index } => {
                format!("{}+{}", c.views[*view].id, c.indexes[*index].id)
            }
        }
    }

    pub fn query(&self, q: usize) -> &Query {
        &self.problem.workload.queries[q]
    }

    pub fn query_count(&self) -> usize {
        self.alternatives.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::workload::{ColumnRef, Literal};

    fn fixture_problem() -> Problem {
        let c = fixtures::sales_catalog();
        let w = fixtures::sales_workload(&c);
        let cands = fixtures::sales_candidates(&c);
        Problem::new(c, w, cands).unwrap()
    }

    fn pred(table: &str, attr: &str) -> Predicate {
        Predicate {
            column: ColumnRef::new(table, attr),
            constant: Literal::Number("1".into()),
        }
    }

    #[test]
    fn selectivity_examples() {
        let c = fixtures::sales_catalog();
        // cust_gender has 2 values, prod_category 20, promo_category 10
        assert_eq!(
            selectivity(&pred("times", "time_fiscal_year"), &c, 1e-9),
            0.25
        );
        assert_eq!(
            selectivity(&pred("channels", "channel_desc"), &c, 1e-9),
            0.2
        );
        let p = [
            pred("promotions", "promo_category"),
            pred("products", "prod_category"),
        ];
        assert!((combined_selectivity(&p, &c, 1e-9) - 0.005).abs() < 1e-15);
        assert_eq!(selectivity(&pred("sales", "amount_sold"), &c, 0.5), 0.5);
    }

    #[test]
    fn cardinality_one_is_not_selective() {
        let mut c = fixtures::sales_catalog();
        c.tables[0].attributes[0].cardinality = 1;
        assert_eq!(selectivity(&pred("sales", "prod_id"), &c, 1e-9), 1.0);
    }

    #[test]
    fn heights() {
        assert_eq!(btree_height(1, 200), 0);
        assert_eq!(btree_height(4, 200), 1);
        assert_eq!(btree_height(200, 200), 1);
        assert_eq!(btree_height(201, 200), 2);
        assert_eq!(btree_height(40_000, 200), 2);
        assert_eq!(btree_height(40_001, 200), 3);
        assert_eq!(btree_height(u64::MAX, 2), 64);
    }

    #[test]
    fn object_sizes() {
        let p = fixture_problem();
        let c = &p.catalog;
        let channel_desc = IndexCandidate {
            id: "x".into(),
            column: ColumnRef::new("channels", "channel_desc"),
            target: IndexTarget::Base,
        };
        assert_eq!(index_size(&channel_desc, &[], c), 130);
        let prod_id = IndexCandidate {
            id: "y".into(),
            column: ColumnRef::new("sales", "prod_id"),
            target: IndexTarget::Base,
        };
        assert_eq!(index_size(&prod_id, &[], c), 227_644_704);

        let mut empty_view = p.candidates.views[0].clone();
        empty_view.stats.row_count = 0;
        assert_eq!(view_size(&empty_view), 0);
    }

    #[test]
    fn q1_alternatives() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let empty = Selection::empty(&p.candidates);
        let (base, rw) = m.query_cost(0, &empty);
        assert_eq!(base, 47_638 + 26);
        assert_eq!(rw, Rewriting::Base);

        let v1 = p.candidates.view_position("v1").unwrap();
        let with_v1 = Selection::from_members(&p.candidates, &[Member::View(v1)]);
        let (cost_v1, rw) = m.query_cost(0, &with_v1);
        // 5844 rows x 16 bytes
        assert_eq!(cost_v1, (5844u64 * 16).div_ceil(8192));
        assert_eq!(rw, Rewriting::View(v1));
        assert!(cost_v1 < base);

        let i8v1 = p.candidates.index_position("i8@v1").unwrap();
        let both = with_v1.with(&[Member::Index(i8v1)]);
        let (cost, rw) = m.query_cost(0, &both);
        // height 1 over 4 fiscal years, a quarter of the view's blocks
        assert_eq!(cost, 1 + (0.25 * cost_v1 as f64).ceil() as u64);
        assert!(cost <= cost_v1);
        assert_eq!(
            rw,
            Rewriting::ViewWithIndex {
                view: v1,
                index: i8v1
            }
        );

        // an index on a view that is not selected is ignored
        let orphan = Selection::from_members(&p.candidates, &[Member::Index(i8v1)]);
        assert_eq!(m.query_cost(0, &orphan).0, base);
    }

    #[test]
    fn base_index_on_times() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let i8 = p.candidates.index_position("i8").unwrap();
        let s = Selection::from_members(&p.candidates, &[Member::Index(i8)]);
        let (cost, rw) = m.query_cost(0, &s);
        // times: 26 blocks -> 1 + ceil(26 / 4) = 8
        assert_eq!(cost, 47_638 + 8);
        assert_eq!(rw, Rewriting::BaseWithIndexes(vec![i8]));
        assert_eq!(m.describe(&rw), "base+i8");
    }

    #[test]
    fn empty_workload_costs_nothing() {
        let c = fixtures::sales_catalog();
        let p = Problem::new(
            c.clone(),
            Default::default(),
            fixtures::sales_candidates(&c),
        )
        .unwrap();
        let m = CostModel::new(&p);
        let r = m.report(&Selection::empty(&p.candidates));
        assert_eq!(r.total, 0);
        assert!(r.per_query.is_empty());
    }

    #[test]
    fn maintenance() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let v1 = p.candidates.view_position("v1").unwrap();
        assert_eq!(
            m.maintenance_cost(Member::View(v1)),
            47_638 + 26 + m.view_blocks(v1)
        );
        let i8 = p.candidates.index_position("i8").unwrap();
        // times blocks + ceil(1461 * 14 / 8192)
        assert_eq!(m.maintenance_cost(Member::Index(i8)), 26 + 3);
    }

    #[test]
    fn index_on_empty_table_costs_nothing_to_maintain() {
        let mut c = fixtures::sales_catalog();
        let channels = c.tables.iter_mut().find(|t| t.name == "channels").unwrap();
        channels.row_count = 0;
        let w = fixtures::sales_workload(&c);
        let cands = fixtures::sales_candidates(&c);
        let p = Problem::new(c, w, cands).unwrap();
        let m = CostModel::new(&p);
        let i2 = p.candidates.index_position("i2").unwrap();
        assert_eq!(m.object_size(Member::Index(i2)), 0);
        assert_eq!(m.maintenance_cost(Member::Index(i2)), 0);
    }

    #[test]
    fn fact_view_costlier_to_maintain_than_fact_index() {
        let c = fixtures::sales_catalog();
        let w = fixtures::sales_workload(&c);
        let src = r#"
            [[views]]
            id = "vp"
            definition = "select sales.prod_id, sales.cust_id, sum(amount_sold) from sales group by sales.prod_id, sales.cust_id"
            [[indexes]]
            id = "ip"
            column = "sales.prod_id"
        "#;
        let cands = crate::candidates::load_candidates(src, &c).unwrap();
        let p = Problem::new(c, w, cands).unwrap();
        let m = CostModel::new(&p);
        let (v, i) = (Member::View(0), Member::Index(0));
        assert!(m.object_size(i) < m.object_size(v));
        assert!(m.maintenance_cost(v) > m.maintenance_cost(i));
    }
}
