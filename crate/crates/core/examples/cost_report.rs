//! Prices the sample workload under a few hand-picked configurations and
//! prints the per-query rewriting the cost model settles on.

use warehouse_advisor::{fixtures, CostModel, Member, Problem, Selection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = fixtures::sales_catalog();
    for t in &catalog.tables {
        println!(
            "{:<11} {:>9} rows x {:>3} B = {:>8.1} MB, {:>6} blocks",
            t.name,
            t.row_count,
            t.row_width,
            t.size_mb(),
            catalog.blocks(t.relation_size())
        );
    }
    println!();

    let workload = fixtures::sales_workload(&catalog);
    let candidates = fixtures::sales_candidates(&catalog);
    let problem = Problem::new(catalog, workload, candidates)?;
    let model = CostModel::new(&problem);
    let c = &problem.candidates;
    let pick = |ids: &[&str]| -> Selection {
        let members: Vec<Member> = ids
            .iter()
            .map(|id| match c.view_position(id) {
                Some(v) => Member::View(v),
                None => Member::Index(c.index_position(id).expect("known id")),
            })
            .collect();
        Selection::from_members(c, &members)
    };

    for ids in [
        &[][..],
        &["i8"],
        &["v1"],
        &["v1", "i8@v1"],
        &["v7", "i7@v7", "i1", "v4"],
    ] {
        let report = model.report(&pick(ids));
        println!(
            "config {{{}}}: total {} blocks",
            ids.join(", "),
            report.total
        );
        for q in &report.per_query {
            println!("  {:<3} {:>7}  {}", q.query, q.blocks, q.rewriting);
        }
        println!();
    }

    for id in ["v1", "i8", "i8@v1"] {
        let m = match c.view_position(id) {
            Some(v) => Member::View(v),
            None => Member::Index(c.index_position(id).unwrap()),
        };
        println!(
            "{id:<6} size {:>7} B, maintenance {:>6} blocks",
            model.object_size(m),
            model.maintenance_cost(m)
        );
    }
    Ok(())
}
