//! Reference strategies: brute-force optimal selection for small instances,
//! single-family greedy runs, and a common runner over all strategies.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::benefit::{ObjectiveMode, ObjectiveParams};
use crate::costmodel::CostModel;
use crate::error::{AdvisorError, Result};
use crate::selection::{Member, Selection};
use crate::selector::{
    enumerate_objects, greedy_over, singleton_count, validate_budget, Family, Iteration,
    SelectionResult, StopReason,
};

/// Largest member count [`exhaustive_select`] accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveResult {
    pub selected: Vec<Member>,
    pub selection: Selection,
    pub used_bytes: u64,
    pub workload_cost: u64,
    pub maintenance: u64,
    /// `workload_cost + beta * maintenance`, the minimized quantity.
    pub objective: f64,
    pub subsets_checked: u64,
}

/// Total cost the exhaustive oracle minimizes for a given selection.
pub fn oracle_objective(
    model: &CostModel<'_>,
    selection: &Selection,
    params: &ObjectiveParams,
) -> f64 {
    let beta = params.beta(model.query_count());
    let cost = model.workload_cost(selection) as f64;
    if beta == 0.0 {
        return cost;
    }
    let maintenance: u64 = selection
        .members()
        .into_iter()
        .map(|m| model.maintenance_cost(m))
        .sum();
    cost + beta * maintenance as f64
}

/// Every structure of the problem as an exhaustive member: views, then all
/// indexes (base and on-view).
pub fn all_members(model: &CostModel<'_>) -> Vec<Member> {
    let c = &model.problem().candidates;
    (0..c.views.len())
        .map(Member::View)
        .chain((0..c.indexes.len()).map(Member::Index))
        .collect()
}

/// Tries every subset of `members` that fits in `budget` and never holds an
/// index on a view without the view, returning the one with the smallest
/// `workload_cost + beta * maintenance`. Ties go to fewer bytes, then to the
/// lexicographically smaller id list.
pub fn exhaustive_select(
    model: &CostModel<'_>,
    members: &[Member],
    budget: i64,
    params: &ObjectiveParams,
) -> Result<ExhaustiveResult> {
    let budget = validate_budget(budget)?;
    if members.len() > EXHAUSTIVE_LIMIT {
        return Err(AdvisorError::TooManyObjects {
            count: members.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let candidates = &model.problem().candidates;
    let sizes: Vec<u64> = members.iter().map(|&m| model.object_size(m)).collect();
    // bit mask of the member that must accompany each member (its view)
    let requires: Vec<Option<u32>> = members
        .iter()
        .map(|&m| match m {
            Member::Index(i) => candidates.indexes[i].target_view().map(|v| {
                let pos = candidates.view_position(v).expect("validated candidates");
                members
                    .iter()
                    .position(|&x| x == Member::View(pos))
                    .map_or(u32::MAX, |p| 1 << p)
            }),
            Member::View(_) => None,
        })
        .collect();

    let empty = Selection::empty(candidates);
    let mut best_mask = 0u32;
    let mut best_value = oracle_objective(model, &empty, params);
    let mut best_bytes = 0u64;
    let mut best_ids: Vec<&str> = Vec::new();
    let mut checked = 1u64;

    for mask in 1u32..(1u32 << members.len()) {
        let mut bytes = 0u64;
        let mut feasible = true;
        for (n, size) in sizes.iter().enumerate() {
            if mask & (1 << n) == 0 {
                continue;
            }
            if let Some(req) = requires[n] {
                if req == u32::MAX || mask & req == 0 {
                    feasible = false;
                    break;
                }
            }
            bytes += size;
        }
        if !feasible || bytes > budget {
            continue;
        }
        checked += 1;
        let chosen: Vec<Member> = (0..members.len())
            .filter(|n| mask & (1 << n) != 0)
            .map(|n| members[n])
            .collect();
        let selection = Selection::from_members(candidates, &chosen);
        let value = oracle_objective(model, &selection, params);
        let ordering = value
            .total_cmp(&best_value)
            .then(bytes.cmp(&best_bytes))
            .then_with(|| {
                let ids: Vec<&str> = selection
                    .members()
                    .iter()
                    .map(|m| m.id(candidates))
                    .collect();
                ids.cmp(&best_ids)
            });
        if ordering == Ordering::Less {
            best_mask = mask;
            best_value = value;
            best_bytes = bytes;
            best_ids = selection
                .members()
                .iter()
                .map(|m| m.id(candidates))
                .collect();
        }
    }

    let selected: Vec<Member> = (0..members.len())
        .filter(|n| best_mask & (1 << n) != 0)
        .map(|n| members[n])
        .collect();
    let selection = Selection::from_members(candidates, &selected);
    let maintenance = selected.iter().map(|&m| model.maintenance_cost(m)).sum();
    Ok(ExhaustiveResult {
        workload_cost: model.workload_cost(&selection),
        selected: selection.members(),
        selection,
        used_bytes: best_bytes,
        maintenance,
        objective: best_value,
        subsets_checked: checked,
    })
}

/// Objective parameters whose |O| is the singleton count of `family`'s
/// enumeration.
pub fn family_params(
    model: &CostModel<'_>,
    family: Family,
    refresh_ratio: f64,
    mode: ObjectiveMode,
) -> ObjectiveParams {
    let p = model.problem();
    let objects = enumerate_objects(&p.candidates, &p.matrices, family);
    ObjectiveParams::new(refresh_ratio, singleton_count(&objects), mode)
}

/// Greedy selection restricted to one structure family. Index-only runs see
/// base indexes alone, so they never pick a view or an index on one.
pub fn isolated_select(
    model: &CostModel<'_>,
    family: Family,
    budget: i64,
    params: &ObjectiveParams,
) -> Result<SelectionResult> {
    let p = model.problem();
    let objects = enumerate_objects(&p.candidates, &p.matrices, family);
    greedy_over(model, &objects, budget, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    None,
    ViewOnly,
    IndexOnly,
    Simultaneous,
    Exhaustive,
}

impl Strategy {
    /// Strategies compared in a budget sweep.
    pub const SWEEP: [Strategy; 4] = [
        Strategy::None,
        Strategy::ViewOnly,
        Strategy::IndexOnly,
        Strategy::Simultaneous,
    ];

    pub fn family(self) -> Option<Family> {
        match self {
            Strategy::ViewOnly => Some(Family::ViewsOnly),
            Strategy::IndexOnly => Some(Family::IndexesOnly),
            Strategy::Simultaneous => Some(Family::Simultaneous),
            Strategy::None | Strategy::Exhaustive => None,
        }
    }

    /// Short label used in sweep output.
    pub fn label(self) -> &'static str {
        match self {
            Strategy::None => "none",
            Strategy::ViewOnly => "views",
            Strategy::IndexOnly => "indexes",
            Strategy::Simultaneous => "simultaneous",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::None => "none",
            Strategy::ViewOnly => "view-only",
            Strategy::IndexOnly => "index-only",
            Strategy::Simultaneous => "simultaneous",
            Strategy::Exhaustive => "exhaustive",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(Strategy::None),
            "view-only" | "views" => Ok(Strategy::ViewOnly),
            "index-only" | "indexes" => Ok(Strategy::IndexOnly),
            "simultaneous" => Ok(Strategy::Simultaneous),
            "exhaustive" => Ok(Strategy::Exhaustive),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Result of any strategy, in a shape the reports share.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    pub params: ObjectiveParams,
    pub selected: Vec<Member>,
    pub selection: Selection,
    pub used_bytes: u64,
    pub total_cost: u64,
    pub iterations: Vec<Iteration>,
    pub stop_reason: Option<StopReason>,
}

pub fn run_strategy(
    model: &CostModel<'_>,
    strategy: Strategy,
    budget: i64,
    refresh_ratio: f64,
    mode: ObjectiveMode,
) -> Result<StrategyOutcome> {
    let candidates = &model.problem().candidates;
    match strategy {
        Strategy::None => {
            validate_budget(budget)?;
            let selection = Selection::empty(candidates);
            Ok(StrategyOutcome {
                strategy,
                params: ObjectiveParams::new(refresh_ratio, 0, mode),
                selected: Vec::new(),
                total_cost: model.workload_cost(&selection),
                selection,
                used_bytes: 0,
                iterations: Vec::new(),
                stop_reason: None,
            })
        }
        Strategy::Exhaustive => {
            let params = family_params(model, Family::Simultaneous, refresh_ratio, mode);
            let r = exhaustive_select(model, &all_members(model), budget, &params)?;
            Ok(StrategyOutcome {
                strategy,
                params,
                selected: r.selected,
                selection: r.selection,
                used_bytes: r.used_bytes,
                total_cost: r.workload_cost,
                iterations: Vec::new(),
                stop_reason: None,
            })
        }
        _ => {
            let family = strategy.family().expect("greedy strategy");
            let params = family_params(model, family, refresh_ratio, mode);
            let r = isolated_select(model, family, budget, &params)?;
            Ok(StrategyOutcome {
                strategy,
                params,
                selected: r.config.selected().to_vec(),
                selection: r.config.selection().clone(),
                used_bytes: r.config.used_bytes(),
                total_cost: model.workload_cost(r.config.selection()),
                iterations: r.iterations,
                stop_reason: Some(r.stop_reason),
            })
        }
    }
}

/// One row of a budget sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub fraction: f64,
    pub strategy: Strategy,
    pub budget: u64,
    pub total_cost: u64,
    pub used_bytes: u64,
    pub objects: Vec<String>,
}

/// Bytes used by an unconstrained simultaneous run: the 100% mark that sweep
/// fractions and percentage budgets refer to.
pub fn reference_budget(
    model: &CostModel<'_>,
    refresh_ratio: f64,
    mode: ObjectiveMode,
) -> Result<u64> {
    run_strategy(model, Strategy::Simultaneous, i64::MAX, refresh_ratio, mode).map(|r| r.used_bytes)
}

/// Runs every strategy in [`Strategy::SWEEP`] at each fraction of
/// [`reference_budget`]. Fractions must lie in `(0, 1]`.
pub fn budget_sweep(
    model: &CostModel<'_>,
    fractions: &[f64],
    refresh_ratio: f64,
    mode: ObjectiveMode,
) -> Result<Vec<SweepRow>> {
    if let Some(bad) = fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
        return Err(AdvisorError::Validation(format!(
            "sweep fraction {bad} is outside (0, 1]"
        )));
    }
    let reference = reference_budget(model, refresh_ratio, mode)?;
    let candidates = &model.problem().candidates;
    let mut rows = Vec::with_capacity(fractions.len() * Strategy::SWEEP.len());
    for &fraction in fractions {
        let budget = (reference as f64 * fraction).floor() as u64;
        for strategy in Strategy::SWEEP {
            let r = run_strategy(model, strategy, budget as i64, refresh_ratio, mode)?;
            rows.push(SweepRow {
                fraction,
                strategy,
                budget,
                total_cost: r.total_cost,
                used_bytes: r.used_bytes,
                objects: r
                    .selected
                    .iter()
                    .map(|m| m.id(candidates).to_string())
                    .collect(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::CandidateSet;
    use crate::fixtures;
    use crate::problem::Problem;
    use crate::selector::greedy_select;

    fn fixture_problem() -> Problem {
        let c = fixtures::sales_catalog();
        let w = fixtures::sales_workload(&c);
        let cands = fixtures::sales_candidates(&c);
        Problem::new(c, w, cands).unwrap()
    }

    fn zero() -> ObjectiveParams {
        ObjectiveParams::new(0.0, 0, ObjectiveMode::Normalized)
    }

    #[test]
    fn no_members_gives_base_cost() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let r = exhaustive_select(&m, &[], 1_000, &zero()).unwrap();
        assert!(r.selected.is_empty());
        assert_eq!(
            r.workload_cost,
            m.workload_cost(&Selection::empty(&p.candidates))
        );
    }

    #[test]
    fn guard_on_member_count() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let members = all_members(&m);
        assert!(members.len() > EXHAUSTIVE_LIMIT);
        assert_eq!(
            exhaustive_select(&m, &members[..21], 0, &zero()).unwrap_err(),
            AdvisorError::TooManyObjects {
                count: 21,
                limit: 20
            }
        );
    }

    #[test]
    fn three_independent_equal_size_budget_for_two() {
        let fam = crate::synth::uniform_index_family(&mut crate::synth::rng(3), 3).unwrap();
        let m = CostModel::new(&fam.problem);
        let empty = Selection::empty(&fam.problem.candidates);
        let c0 = m.workload_cost(&empty);
        let mut by_drop: Vec<(u64, Member)> = (0..3)
            .map(|i| {
                (
                    c0 - m.workload_cost(&empty.with(&[Member::Index(i)])),
                    Member::Index(i),
                )
            })
            .collect();
        by_drop.sort_by_key(|d| std::cmp::Reverse(d.0));
        assert!(
            by_drop[1].0 > by_drop[2].0,
            "seed should give distinct drops"
        );
        let members: Vec<Member> = (0..3).map(Member::Index).collect();
        let r = exhaustive_select(&m, &members, 2 * fam.unit_size as i64, &zero()).unwrap();
        let mut expected = vec![by_drop[0].1, by_drop[1].1];
        expected.sort();
        assert_eq!(r.selected, expected);
        assert_eq!(r.subsets_checked, 7);
    }

    #[test]
    fn dependency_enforced() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let i = p.candidates.index_position("i8@v1").unwrap();
        let r = exhaustive_select(&m, &[Member::Index(i)], i64::MAX, &zero()).unwrap();
        assert!(r.selected.is_empty());
        let v = p.candidates.view_position("v1").unwrap();
        let r =
            exhaustive_select(&m, &[Member::View(v), Member::Index(i)], i64::MAX, &zero()).unwrap();
        for member in &r.selected {
            if *member == Member::Index(i) {
                assert!(r.selected.contains(&Member::View(v)));
            }
        }
    }

    #[test]
    fn oracle_never_worse_than_greedy_on_small_fixture() {
        let p = fixture_problem();
        let small = p.with_candidates(p.candidates.truncated(10)).unwrap();
        let m = CostModel::new(&small);
        for budget in [0i64, 10_000, 1_000_000, 100_000_000, i64::MAX] {
            let params = family_params(&m, Family::Simultaneous, 0.0, ObjectiveMode::Normalized);
            let g = greedy_select(&m, budget, &params).unwrap();
            let e = exhaustive_select(&m, &all_members(&m), budget, &params).unwrap();
            assert!(e.workload_cost <= m.workload_cost(g.config.selection()));
            assert!(e.used_bytes as u128 <= budget as u128);
        }
    }

    #[test]
    fn view_only_without_views_is_empty() {
        let p = fixture_problem();
        let no_views = CandidateSet::new(
            Vec::new(),
            p.candidates
                .indexes
                .iter()
                .filter(|i| i.is_base())
                .cloned()
                .collect(),
        )
        .unwrap();
        let p = p.with_candidates(no_views).unwrap();
        let m = CostModel::new(&p);
        let r = run_strategy(
            &m,
            Strategy::ViewOnly,
            i64::MAX,
            0.0,
            ObjectiveMode::Normalized,
        )
        .unwrap();
        assert!(r.selected.is_empty());
    }

    #[test]
    fn index_only_picks_base_indexes_only() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let r = run_strategy(
            &m,
            Strategy::IndexOnly,
            i64::MAX,
            0.0,
            ObjectiveMode::Normalized,
        )
        .unwrap();
        for member in &r.selected {
            match member {
                Member::Index(i) => assert!(p.candidates.indexes[*i].is_base()),
                Member::View(_) => panic!("view in index-only run"),
            }
        }
    }

    #[test]
    fn simultaneous_beats_isolated_at_full_budget() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let run = |s| {
            run_strategy(&m, s, i64::MAX, 0.0, ObjectiveMode::Normalized)
                .unwrap()
                .total_cost
        };
        let sim = run(Strategy::Simultaneous);
        assert!(sim <= run(Strategy::ViewOnly));
        assert!(sim <= run(Strategy::IndexOnly));
        assert!(sim <= run(Strategy::None));
    }

    #[test]
    fn sweep_rows_and_none_constant() {
        let p = fixture_problem();
        let m = CostModel::new(&p);
        let rows = budget_sweep(&m, &[0.1, 1.0], 0.0, ObjectiveMode::Normalized).unwrap();
        assert_eq!(rows.len(), 8);
        let none: Vec<u64> = rows
            .iter()
            .filter(|r| r.strategy == Strategy::None)
            .map(|r| r.total_cost)
            .collect();
        assert_eq!(none[0], none[1]);
        assert!(rows.iter().all(|r| r.used_bytes <= r.budget));
        assert!(budget_sweep(&m, &[0.0], 0.0, ObjectiveMode::Normalized).is_err());
        assert!(budget_sweep(&m, &[1.5], 0.0, ObjectiveMode::Normalized).is_err());
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [
            Strategy::None,
            Strategy::ViewOnly,
            Strategy::IndexOnly,
            Strategy::Simultaneous,
            Strategy::Exhaustive,
        ] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
            assert_eq!(s.label().parse::<Strategy>().unwrap(), s);
        }
    }
}
