//! Sweeps the storage budget on a 1/100-scale copy of the sample warehouse
//! and prints, for each strategy, the estimated workload cost in blocks.
//!
//! Run with `cargo run --example budget_sweep [fractions]`, for example
//! `cargo run --example budget_sweep 0.01,0.1,1`.

use warehouse_advisor::baselines::{budget_sweep, reference_budget, Strategy};
use warehouse_advisor::report::sweep_csv;
use warehouse_advisor::{fixtures, CostModel, ObjectiveMode, Problem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fractions: Vec<f64> = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![0.01, 0.05, 0.1, 0.25, 0.5, 1.0],
    };

    let catalog = fixtures::sales_catalog_scaled();
    let workload = fixtures::sales_workload(&catalog);
    let candidates = fixtures::sales_candidates(&catalog);
    let problem = Problem::new(catalog, workload, candidates)?;
    let model = CostModel::new(&problem);

    let reference = reference_budget(&model, 0.0, ObjectiveMode::Normalized)?;
    println!("100% = {reference} bytes (unconstrained simultaneous selection)\n");

    let rows = budget_sweep(&model, &fractions, 0.0, ObjectiveMode::Normalized)?;
    print!("{}", sweep_csv(&rows));

    println!("\ncost by fraction");
    print!("{:>9}", "fraction");
    for s in Strategy::SWEEP {
        print!(" {:>13}", s.label());
    }
    println!();
    for chunk in rows.chunks(Strategy::SWEEP.len()) {
        print!("{:>9}", chunk[0].fraction);
        for r in chunk {
            print!(" {:>13}", r.total_cost);
        }
        println!();
    }
    Ok(())
}
