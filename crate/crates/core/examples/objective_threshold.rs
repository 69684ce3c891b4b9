//! Shows how the refresh ratio trades query benefit against maintenance:
//! computes, for every candidate object, the ratio above which its objective
//! turns non-positive, then runs the selection on both sides of the largest
//! such ratio.

use warehouse_advisor::baselines::family_params;
use warehouse_advisor::benefit::{object_maintenance, objective};
use warehouse_advisor::selector::{enumerate_objects, greedy_select, Family};
use warehouse_advisor::{fixtures, CostModel, ObjectiveMode, Problem, Selection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = fixtures::sales_catalog();
    let workload = fixtures::sales_workload(&catalog);
    let candidates = fixtures::sales_candidates(&catalog);
    let problem = Problem::new(catalog, workload, candidates)?;
    let model = CostModel::new(&problem);
    let c = &problem.candidates;

    let objects = enumerate_objects(c, &problem.matrices, Family::Simultaneous);
    let unit = family_params(&model, Family::Simultaneous, 1.0, ObjectiveMode::Normalized);
    let empty = Selection::empty(c);
    let base = model.workload_cost(&empty);

    // F <= 0 exactly when ratio >= |O| / |Q| * drop / maintenance
    let mut threshold: f64 = 0.0;
    println!(
        "{:<12} {:>10} {:>10} {:>14}",
        "object", "drop", "maint", "ratio limit"
    );
    for o in &objects {
        let drop = base - model.workload_cost(&empty.with(&o.members()));
        let maint = object_maintenance(&model, o);
        let limit = unit.total_object_count as f64 / model.query_count() as f64 * drop as f64
            / maint as f64;
        threshold = threshold.max(limit);
        println!("{:<12} {:>10} {:>10} {:>14.4}", o.id(c), drop, maint, limit);
    }
    println!("\nlargest limit: {threshold:.6}");

    for ratio in [0.0, threshold * 0.5, threshold * 1.001] {
        let params = family_params(
            &model,
            Family::Simultaneous,
            ratio,
            ObjectiveMode::Normalized,
        );
        let best_f = objects
            .iter()
            .map(|o| objective(&model, o, &empty, &params))
            .fold(f64::NEG_INFINITY, f64::max);
        let r = greedy_select(&model, i64::MAX, &params)?;
        println!(
            "ratio {ratio:>10.6}: best initial F {best_f:>12.4e}, {} structures, stop {}",
            r.config.selected().len(),
            r.stop_reason
        );
    }
    Ok(())
}
