//! Advisor reports: a serializable summary of one run and its text and CSV
//! renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::baselines::{StrategyOutcome, SweepRow};
use crate::candidates::IndexTarget;
use crate::costmodel::{CostModel, COST_MODEL_VERSION};
use crate::selection::{Member, Selection};
use crate::selector::Iteration;

pub const SWEEP_HEADER: &str = "budget_fraction,strategy,total_cost_blocks,used_bytes,objects";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViewRow {
    pub id: String,
    pub tables: Vec<String>,
    pub group_by: Vec<String>,
    pub rows: u64,
    pub row_width: u64,
    pub size_bytes: u64,
    pub maintenance_blocks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexRow {
    pub id: String,
    pub column: String,
    /// `base` or the id of the view the index is built on.
    pub target: String,
    pub size_bytes: u64,
    pub maintenance_blocks: u64,
}

/// Boolean matrix as rows of `0`/`1` characters, with labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<String>,
}

impl Matrix {
    pub fn new(rows: &[String], columns: &[String], cells: &[Vec<bool>]) -> Self {
        Matrix {
            rows: rows.to_vec(),
            columns: columns.to_vec(),
            cells: cells
                .iter()
                .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.render(&mut out);
        out
    }

    fn render(&self, out: &mut String) {
        let label = self.rows.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = self.columns.iter().map(|c| c.len().max(1)).collect();
        let _ = write!(out, "  {:label$}", "");
        for (c, w) in self.columns.iter().zip(&widths) {
            let _ = write!(out, " {c:>w$}");
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.cells) {
            let _ = write!(out, "  {r:label$}");
            for (cell, w) in row.chars().zip(&widths) {
                let _ = write!(out, " {cell:>w$}");
            }
            out.push('\n');
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrices {
    pub qv: Matrix,
    pub qi: Matrix,
    pub vi: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectedRow {
    pub id: String,
    pub kind: &'static str,
    pub size_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRow {
    pub id: String,
    pub before_blocks: u64,
    pub before_plan: String,
    pub after_blocks: u64,
    pub after_plan: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdviseReport {
    pub cost_model: String,
    pub strategy: String,
    pub budget_bytes: u64,
    pub refresh_ratio: f64,
    pub objective: String,
    pub object_count: usize,
    pub views: Vec<ViewRow>,
    pub indexes: Vec<IndexRow>,
    pub matrices: Matrices,
    pub trace: Vec<Iteration>,
    pub stop_reason: Option<String>,
    pub selected: Vec<SelectedRow>,
    pub used_bytes: u64,
    pub queries: Vec<QueryRow>,
    pub total_before: u64,
    pub total_after: u64,
}

impl AdviseReport {
    pub fn new(model: &CostModel<'_>, outcome: &StrategyOutcome, budget: u64) -> Self {
        let p = model.problem();
        let c = &p.candidates;
        let m = &p.matrices;
        let views = c
            .views
            .iter()
            .enumerate()
            .map(|(n, v)| ViewRow {
                id: v.id.clone(),
                tables: v.joined_tables.iter().cloned().collect(),
                group_by: v.group_by.iter().map(ToString::to_string).collect(),
                rows: v.stats.row_count,
                row_width: v.stats.row_width,
                size_bytes: model.object_size(Member::View(n)),
                maintenance_blocks: model.maintenance_cost(Member::View(n)),
            })
            .collect();
        let indexes = c
            .indexes
            .iter()
            .enumerate()
            .map(|(n, i)| IndexRow {
                id: i.id.clone(),
                column: i.column.to_string(),
                target: match &i.target {
                    IndexTarget::Base => "base".into(),
                    IndexTarget::View(v) => v.clone(),
                },
                size_bytes: model.object_size(Member::Index(n)),
                maintenance_blocks: model.maintenance_cost(Member::Index(n)),
            })
            .collect();
        let qi_ids: Vec<String> = m
            .qi_columns
            .iter()
            .map(|&i| c.indexes[i].id.clone())
            .collect();
        let matrices = Matrices {
            qv: Matrix::new(&m.query_ids, &m.view_ids, &m.qv),
            qi: Matrix::new(&m.query_ids, &qi_ids, &m.qi),
            vi: Matrix::new(&m.view_ids, &m.index_ids, &m.vi),
        };
        let selected = outcome
            .selected
            .iter()
            .map(|&member| SelectedRow {
                id: member.id(c).to_string(),
                kind: match member {
                    Member::View(_) => "view",
                    Member::Index(i) if c.indexes[i].is_base() => "index",
                    Member::Index(_) => "view index",
                },
                size_bytes: model.object_size(member),
            })
            .collect();
        let before = model.report(&Selection::empty(c));
        let after = model.report(&outcome.selection);
        let queries = before
            .per_query
            .iter()
            .zip(&after.per_query)
            .map(|(b, a)| QueryRow {
                id: b.query.clone(),
                before_blocks: b.blocks,
                before_plan: b.rewriting.clone(),
                after_blocks: a.blocks,
                after_plan: a.rewriting.clone(),
            })
            .collect();
        AdviseReport {
            cost_model: COST_MODEL_VERSION.to_string(),
            strategy: outcome.strategy.to_string(),
            budget_bytes: budget,
            refresh_ratio: outcome.params.refresh_ratio,
            objective: match outcome.params.mode {
                crate::benefit::ObjectiveMode::Normalized => "normalized".into(),
                crate::benefit::ObjectiveMode::Literal => "literal".into(),
            },
            object_count: outcome.params.total_object_count,
            views,
            indexes,
            matrices,
            trace: outcome.iterations.clone(),
            stop_reason: outcome.stop_reason.map(|s| s.to_string()),
            selected,
            used_bytes: outcome.used_bytes,
            queries,
            total_before: before.total,
            total_after: after.total,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cost model   {}", self.cost_model);
        let _ = writeln!(out, "strategy     {}", self.strategy);
        let _ = writeln!(out, "budget       {} bytes", self.budget_bytes);
        let _ = writeln!(
            out,
            "objective    {} (refresh ratio {}, |O| = {})",
            self.objective, self.refresh_ratio, self.object_count
        );

        let _ = writeln!(out, "\ncandidate views");
        for v in &self.views {
            let _ = writeln!(
                out,
                "  {:<4} {:>12} B  {:>10} rows x {:>3} B  maint {:>8}  [{}] by {}",
                v.id,
                v.size_bytes,
                v.rows,
                v.row_width,
                v.maintenance_blocks,
                v.tables.join(", "),
                v.group_by.join(", ")
            );
        }
        let _ = writeln!(out, "\ncandidate indexes");
        for i in &self.indexes {
            let _ = writeln!(
                out,
                "  {:<10} {:>12} B  maint {:>8}  {} on {}",
                i.id, i.size_bytes, i.maintenance_blocks, i.column, i.target
            );
        }

        for (name, m) in [
            ("query/view usage (QV)", &self.matrices.qv),
            ("query/index usage (QI)", &self.matrices.qi),
            ("view/index usage (VI)", &self.matrices.vi),
        ] {
            let _ = writeln!(out, "\n{name}");
            m.render(&mut out);
        }

        let _ = writeln!(out, "\nselection trace");
        if self.trace.is_empty() {
            let _ = writeln!(out, "  (no steps)");
        }
        for it in &self.trace {
            let _ = writeln!(
                out,
                "  {:>2}. {:<14} F = {:<12.6e} +{} B, {} B left, cost {}",
                it.iteration,
                it.object,
                it.objective,
                it.added_bytes,
                it.remaining_budget,
                it.workload_cost
            );
        }
        if let Some(reason) = &self.stop_reason {
            let _ = writeln!(out, "  stop: {reason}");
        }

        let _ = writeln!(
            out,
            "\nconfiguration ({} of {} bytes)",
            self.used_bytes, self.budget_bytes
        );
        if self.selected.is_empty() {
            let _ = writeln!(out, "  (empty)");
        }
        for s in &self.selected {
            let _ = writeln!(out, "  {:<10} {:<10} {:>12} B", s.id, s.kind, s.size_bytes);
        }

        let _ = writeln!(out, "\nquery costs (blocks)");
        let _ = writeln!(out, "  query      before plan                  after plan");
        for q in &self.queries {
            let _ = writeln!(
                out,
                "  {:<6} {:>10} {:<16} {:>10} {}",
                q.id, q.before_blocks, q.before_plan, q.after_blocks, q.after_plan
            );
        }
        let _ = writeln!(
            out,
            "  {:<6} {:>10} {:<16} {:>10}",
            "total", self.total_before, "", self.total_after
        );
        out
    }
}

/// Sweep rows as CSV with [`SWEEP_HEADER`]; object ids are space separated.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.fraction,
            r.strategy.label(),
            r.total_cost,
            r.used_bytes,
            r.objects.join(" ")
        );
    }
    out
}
