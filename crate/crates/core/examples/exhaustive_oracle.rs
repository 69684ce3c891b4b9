//! Compares greedy selection against brute-force search on random small
//! instances, and on a family where the two must agree exactly.
//!
//! `cargo run --example exhaustive_oracle [instances [seed]]`

use warehouse_advisor::baselines::{
    all_members, exhaustive_select, family_params, oracle_objective,
};
use warehouse_advisor::selector::{greedy_select, Family};
use warehouse_advisor::synth::{self, SynthConfig};
use warehouse_advisor::{CostModel, ObjectiveMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(Ok(50), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;
    let mut rng = synth::rng(seed);
    let cfg = SynthConfig {
        max_members: Some(12),
        ..SynthConfig::default()
    };

    let (mut optimal, mut worst_gap) = (0, 0.0f64);
    for _ in 0..n {
        let problem = synth::random_problem(&mut rng, &cfg)?;
        let model = CostModel::new(&problem);
        let total: u64 = all_members(&model)
            .iter()
            .map(|&m| model.object_size(m))
            .sum();
        let budget = synth::log_uniform_budget(&mut rng, total);
        let params = family_params(&model, Family::Simultaneous, 0.0, ObjectiveMode::Normalized);
        let greedy = greedy_select(&model, budget, &params)?;
        let best = exhaustive_select(&model, &all_members(&model), budget, &params)?;
        let g = oracle_objective(&model, greedy.config.selection(), &params);
        assert!(best.objective <= g);
        if best.objective == g {
            optimal += 1;
        }
        worst_gap = worst_gap.max(g / best.objective - 1.0);
    }
    println!(
        "random instances: greedy optimal on {optimal}/{n}, worst gap {:.2}%",
        worst_gap * 100.0
    );

    let mut equal = 0;
    for k in 0..n {
        let fam = synth::uniform_index_family(&mut rng, 1 + (k as usize % 5))?;
        let model = CostModel::new(&fam.problem);
        let slots = k as i64 % 6;
        let budget = slots * fam.unit_size as i64;
        let params = family_params(&model, Family::Simultaneous, 0.0, ObjectiveMode::Normalized);
        let greedy = greedy_select(&model, budget, &params)?;
        let best = exhaustive_select(&model, &all_members(&model), budget, &params)?;
        if model.workload_cost(greedy.config.selection()) == best.workload_cost {
            equal += 1;
        }
    }
    println!("independent equal-size indexes: greedy matches on {equal}/{n}");
    Ok(())
}
