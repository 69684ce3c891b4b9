//! Runs the joint greedy selection on the sample warehouse and prints the
//! full advisor report.
//!
//! `cargo run --example greedy_selection [budget_bytes [refresh_ratio]]`

use warehouse_advisor::baselines::{run_strategy, Strategy};
use warehouse_advisor::report::AdviseReport;
use warehouse_advisor::{fixtures, CostModel, ObjectiveMode, Problem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let budget: i64 = args.next().map_or(Ok(500_000_000), |s| s.parse())?;
    let ratio: f64 = args.next().map_or(Ok(0.0), |s| s.parse())?;

    let catalog = fixtures::sales_catalog();
    let workload = fixtures::sales_workload(&catalog);
    let candidates = fixtures::sales_candidates(&catalog);
    let problem = Problem::new(catalog, workload, candidates)?;
    let model = CostModel::new(&problem);

    let outcome = run_strategy(
        &model,
        Strategy::Simultaneous,
        budget,
        ratio,
        ObjectiveMode::Normalized,
    )?;
    print!(
        "{}",
        AdviseReport::new(&model, &outcome, budget as u64).to_text()
    );

    println!("\nsame budget, one family at a time:");
    for s in [Strategy::ViewOnly, Strategy::IndexOnly] {
        let o = run_strategy(&model, s, budget, ratio, ObjectiveMode::Normalized)?;
        println!(
            "  {:<12} {:>8} blocks, {:>11} bytes",
            s.to_string(),
            o.total_cost,
            o.used_bytes
        );
    }
    println!(
        "  {:<12} {:>8} blocks, {:>11} bytes",
        "simultaneous", outcome.total_cost, outcome.used_bytes
    );
    Ok(())
}
