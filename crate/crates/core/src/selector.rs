//! Greedy joint selection of views and indexes under a storage budget.
//!
//! Each round scores every object not yet fully selected with the objective
//! against the current configuration, commits the best one that still fits in
//! the remaining budget, and rescores. Objects are single views, single base
//! indexes, and (view, index-on-view) pairs taken from the VI matrix, so an
//! index on a view never enters a configuration without its view.

use std::cmp::Ordering;

use serde::Serialize;

use crate::benefit::{objective, Configuration, ObjectiveParams, TraceEntry};
use crate::candidates::{CandidateSet, UsageMatrices};
use crate::costmodel::CostModel;
use crate::error::{AdvisorError, Result};
use crate::selection::{DesignObject, Selection};

/// Which structure families a run may select.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Simultaneous,
    ViewsOnly,
    IndexesOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    NoPositiveF,
    CandidatesExhausted,
    BudgetExhausted,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StopReason::NoPositiveF => "no_positive_F",
            StopReason::CandidatesExhausted => "candidates_exhausted",
            StopReason::BudgetExhausted => "budget_exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Iteration {
    pub iteration: usize,
    /// Id of the chosen object (`v1+i8@v1` for a pair).
    pub object: String,
    /// Ids of the structures this step added.
    pub added: Vec<String>,
    pub objective: f64,
    pub added_bytes: u64,
    pub remaining_budget: u64,
    pub workload_cost: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub config: Configuration,
    pub iterations: Vec<Iteration>,
    pub stop_reason: StopReason,
    pub budget: u64,
}

/// Candidate objects for `family`, in a fixed order: views, then base
/// indexes, then (view, index) pairs with `VI[v][i] = 1`, each by candidate
/// position.
pub fn enumerate_objects(
    candidates: &CandidateSet,
    matrices: &UsageMatrices,
    family: Family,
) -> Vec<DesignObject> {
    let mut objects = Vec::new();
    if family != Family::IndexesOnly {
        objects.extend((0..candidates.views.len()).map(DesignObject::View));
    }
    if family != Family::ViewsOnly {
        objects.extend(
            candidates
                .base_indexes()
                .map(|(i, _)| DesignObject::Index(i)),
        );
    }
    if family == Family::Simultaneous {
        for (v, row) in matrices.vi.iter().enumerate() {
            for (i, &set) in row.iter().enumerate() {
                if set {
                    objects.push(DesignObject::Pair { view: v, index: i });
                }
            }
        }
    }
    objects
}

/// |O| for the objective: number of non-pair objects.
pub fn singleton_count(objects: &[DesignObject]) -> usize {
    objects.iter().filter(|o| !o.is_pair()).count()
}

/// Bytes the object would add: sizes of its members not already selected.
pub fn incremental_size(model: &CostModel<'_>, object: &DesignObject, config: &Selection) -> u64 {
    object
        .members()
        .into_iter()
        .filter(|&m| !config.contains(m))
        .map(|m| model.object_size(m))
        .sum()
}

struct Scored {
    object: DesignObject,
    id: String,
    objective: f64,
    size: u64,
}

/// Higher objective first, then smaller incremental size, then smaller id.
fn better(a: &Scored, b: &Scored) -> bool {
    match a.objective.total_cmp(&b.objective) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => (a.size, &a.id) < (b.size, &b.id),
    }
}

pub fn validate_budget(budget: i64) -> Result<u64> {
    u64::try_from(budget).map_err(|_| AdvisorError::InvalidBudget(budget))
}

/// Runs the greedy loop over `objects` with a budget of `budget` bytes.
///
/// Stops when the budget is used up, when every object is selected, or when
/// no object has a positive objective. An object that does not fit in the
/// remaining budget is skipped in favour of the next best; if every object
/// with a positive objective is too large the run stops with
/// [`StopReason::BudgetExhausted`].
pub fn greedy_over(
    model: &CostModel<'_>,
    objects: &[DesignObject],
    budget: i64,
    params: &ObjectiveParams,
) -> Result<SelectionResult> {
    let budget = validate_budget(budget)?;
    let candidates = &model.problem().candidates;
    let ids: Vec<String> = objects.iter().map(|o| o.id(candidates)).collect();
    let mut config = Configuration::empty(model);
    let mut iterations = Vec::new();
    let mut remaining = budget;

    let stop_reason = loop {
        if remaining == 0 {
            break StopReason::BudgetExhausted;
        }
        let open: Vec<usize> = (0..objects.len())
            .filter(|&n| {
                objects[n]
                    .members()
                    .into_iter()
                    .any(|m| !config.contains(m))
            })
            .collect();
        if open.is_empty() {
            break StopReason::CandidatesExhausted;
        }

        let mut any_positive = false;
        let mut best: Option<Scored> = None;
        for n in open {
            let object = objects[n];
            let f = objective(model, &object, config.selection(), params);
            if f.is_nan() || f <= 0.0 {
                continue;
            }
            any_positive = true;
            let size = incremental_size(model, &object, config.selection());
            if size > remaining {
                continue;
            }
            let scored = Scored {
                object,
                id: ids[n].clone(),
                objective: f,
                size,
            };
            if best.as_ref().is_none_or(|b| better(&scored, b)) {
                best = Some(scored);
            }
        }

        let Some(best) = best else {
            break if any_positive {
                StopReason::BudgetExhausted
            } else {
                StopReason::NoPositiveF
            };
        };

        let before: Vec<_> = config.selected().to_vec();
        let added_bytes = config.commit(&best.object, model);
        remaining -= added_bytes;
        let added: Vec<String> = config.selected()[before.len()..]
            .iter()
            .map(|m| m.id(candidates).to_string())
            .collect();
        let iteration = iterations.len() + 1;
        config.trace.push(TraceEntry {
            iteration,
            objects: added.clone(),
            objective: best.objective,
        });
        iterations.push(Iteration {
            iteration,
            object: best.id,
            added,
            objective: best.objective,
            added_bytes,
            remaining_budget: remaining,
            workload_cost: model.workload_cost(config.selection()),
        });
    };

    Ok(SelectionResult {
        config,
        iterations,
        stop_reason,
        budget,
    })
}

/// Joint selection over views, base indexes and view/index pairs.
pub fn greedy_select(
    model: &CostModel<'_>,
    budget: i64,
    params: &ObjectiveParams,
) -> Result<SelectionResult> {
    let p = model.problem();
    let objects = enumerate_objects(&p.candidates, &p.matrices, Family::Simultaneous);
    greedy_over(model, &objects, budget, params)
}
