//! Interaction-aware benefit of adding a view or an index to a configuration,
//! and the greedy objective `F = benefit - beta * maintenance`.
//!
//! Benefits are cost reductions per byte of storage. When the object is tied
//! to structures already in the configuration (an index on a selected view, or
//! a view whose indexes are selected), the reduction is measured with those
//! structures present and their sizes join the denominator.

use serde::{Deserialize, Serialize};

use crate::costmodel::CostModel;
use crate::selection::{DesignObject, Member, Selection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveMode {
    /// Penalty divided by the object's size, so both terms are blocks per byte.
    #[default]
    Normalized,
    /// `benefit - beta * maintenance` exactly as written, mixing units.
    Literal,
}

impl std::str::FromStr for ObjectiveMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "normalized" => Ok(ObjectiveMode::Normalized),
            "literal" => Ok(ObjectiveMode::Literal),
            other => Err(format!("unknown objective mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObjectiveParams {
    /// Proportion of refreshes relative to queries.
    pub refresh_ratio: f64,
    /// |O|, the number of candidate views and indexes.
    pub total_object_count: usize,
    pub mode: ObjectiveMode,
}

impl ObjectiveParams {
    pub fn new(refresh_ratio: f64, total_object_count: usize, mode: ObjectiveMode) -> Self {
        ObjectiveParams {
            refresh_ratio,
            total_object_count,
            mode,
        }
    }

    /// Per-object update probability `ratio / |O|`.
    pub fn update_probability(&self) -> f64 {
        if self.total_object_count == 0 {
            0.0
        } else {
            self.refresh_ratio / self.total_object_count as f64
        }
    }

    /// `beta = |Q| * p(o)`, the expected number of updates of an object.
    pub fn beta(&self, query_count: usize) -> f64 {
        query_count as f64 * self.update_probability()
    }
}

/// One committed greedy step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub objects: Vec<String>,
    pub objective: f64,
}

/// The growing set of selected structures.
///
/// `used_bytes` is the sum of the selected structures' sizes, and an index on
/// a view is only ever added together with or after its view.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    selection: Selection,
    selected: Vec<Member>,
    used_bytes: u64,
    pub trace: Vec<TraceEntry>,
}

impl Configuration {
    pub fn empty(model: &CostModel<'_>) -> Self {
        Configuration {
            selection: Selection::empty(&model.problem().candidates),
            selected: Vec::new(),
            used_bytes: 0,
            trace: Vec::new(),
        }
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    /// Selected structures in commit order.
    pub fn selected(&self) -> &[Member] {
        &self.selected
    }

    pub fn used_bytes(&self) -> u64 {
        self.used_bytes
    }

    pub fn contains(&self, member: Member) -> bool {
        self.selection.contains(member)
    }

    /// Adds the object's missing members; returns the bytes added.
    pub fn commit(&mut self, object: &DesignObject, model: &CostModel<'_>) -> u64 {
        let mut added = 0;
        for m in object.members() {
            if self.selection.insert(m) {
                self.selected.push(m);
                added += model.object_size(m);
            }
        }
        self.used_bytes += added;
        added
    }

    pub fn ids(&self, model: &CostModel<'_>) -> Vec<String> {
        let cands = &model.problem().candidates;
        self.selected
            .iter()
            .map(|m| m.id(cands).to_string())
            .collect()
    }
}

fn cost_drop(model: &CostModel<'_>, config: &Selection, added: &[Member]) -> f64 {
    let before = model.workload_cost(config);
    let after = model.workload_cost(&config.with(added));
    before.saturating_sub(after) as f64
}

fn per_byte(drop: f64, bytes: u64) -> f64 {
    if drop == 0.0 {
        0.0
    } else {
        drop / bytes.max(1) as f64
    }
}

/// Benefit of adding index `i` (candidate position) to `config`.
///
/// With `V'` the selected views `i` is defined on: if `V'` is empty the
/// benefit is `(C(config) - C(config + i)) / size(i)`; otherwise
/// `(C(config) - C(config + i + V')) / (size(i) + sum size(V'))`.
pub fn index_benefit(model: &CostModel<'_>, i: usize, config: &Selection) -> f64 {
    let matrices = &model.problem().matrices;
    let related: Vec<Member> = matrices
        .vi
        .iter()
        .enumerate()
        .filter(|(v, row)| row[i] && config.has_view(*v))
        .map(|(v, _)| Member::View(v))
        .collect();
    let mut added = vec![Member::Index(i)];
    added.extend(&related);
    let bytes: u64 = added.iter().map(|&m| model.object_size(m)).sum();
    per_byte(cost_drop(model, config, &added), bytes)
}

/// Benefit of adding view `v` to `config`; symmetric to [`index_benefit`]
/// with `I'` the selected indexes defined on `v`.
pub fn view_benefit(model: &CostModel<'_>, v: usize, config: &Selection) -> f64 {
    let matrices = &model.problem().matrices;
    let mut added = vec![Member::View(v)];
    added.extend(
        matrices.vi[v]
            .iter()
            .enumerate()
            .filter(|&(i, &on_view)| on_view && config.has_index(i))
            .map(|(i, _)| Member::Index(i)),
    );
    let bytes: u64 = added.iter().map(|&m| model.object_size(m)).sum();
    per_byte(cost_drop(model, config, &added), bytes)
}

/// Benefit of a view and an index on it added together: combined cost drop
/// over combined size. When the view is already selected this is the
/// related-view branch of [`index_benefit`].
pub fn pair_benefit(model: &CostModel<'_>, view: usize, index: usize, config: &Selection) -> f64 {
    let added = [Member::View(view), Member::Index(index)];
    let bytes = model.object_size(added[0]) + model.object_size(added[1]);
    per_byte(cost_drop(model, config, &added), bytes)
}

pub fn object_benefit(model: &CostModel<'_>, object: &DesignObject, config: &Selection) -> f64 {
    match *object {
        DesignObject::View(v) => view_benefit(model, v, config),
        DesignObject::Index(i) => index_benefit(model, i, config),
        DesignObject::Pair { view, index } => pair_benefit(model, view, index, config),
    }
}

/// Summed maintenance cost of the object's members, in blocks.
pub fn object_maintenance(model: &CostModel<'_>, object: &DesignObject) -> u64 {
    object
        .members()
        .into_iter()
        .map(|m| model.maintenance_cost(m))
        .sum()
}

/// Summed size of the object's members, in bytes.
pub fn object_size(model: &CostModel<'_>, object: &DesignObject) -> u64 {
    object
        .members()
        .into_iter()
        .map(|m| model.object_size(m))
        .sum()
}

/// `F(o) = benefit(o) - beta * maintenance(o)`, with the penalty divided by
/// `size(o)` in normalized mode.
pub fn objective(
    model: &CostModel<'_>,
    object: &DesignObject,
    config: &Selection,
    params: &ObjectiveParams,
) -> f64 {
    let benefit = object_benefit(model, object, config);
    let beta = params.beta(model.query_count());
    if beta == 0.0 {
        return benefit;
    }
    let maintenance = object_maintenance(model, object) as f64;
    let penalty = match params.mode {
        ObjectiveMode::Literal => beta * maintenance,
        ObjectiveMode::Normalized => beta * maintenance / object_size(model, object).max(1) as f64,
    };
    benefit - penalty
}
