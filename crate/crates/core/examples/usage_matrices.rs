//! Builds the query/view, query/index and view/index usage matrices for the
//! sample workload and its hand-written candidates, and shows which views and
//! indexes the matrices pair up for joint selection.

use warehouse_advisor::report::Matrix;
use warehouse_advisor::selector::{enumerate_objects, singleton_count, Family};
use warehouse_advisor::{fixtures, Problem};

fn show(title: &str, rows: &[String], cols: &[String], cells: &[Vec<bool>]) {
    println!("{title}");
    print!("{}", Matrix::new(rows, cols, cells).to_text());
    println!();
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = fixtures::sales_catalog();
    let workload = fixtures::sales_workload(&catalog);
    let candidates = fixtures::sales_candidates(&catalog);
    let problem = Problem::new(catalog, workload, candidates)?;
    let m = &problem.matrices;
    let c = &problem.candidates;

    let base_ids: Vec<String> = m
        .qi_columns
        .iter()
        .map(|&i| c.indexes[i].id.clone())
        .collect();
    show("query/view (QV)", &m.query_ids, &m.view_ids, &m.qv);
    show("query/index (QI)", &m.query_ids, &base_ids, &m.qi);
    show(
        "view/index, by indexed column (VI)",
        &m.view_ids,
        &base_ids,
        &m.vi_by_base_key(c),
    );

    let objects = enumerate_objects(c, m, Family::Simultaneous);
    println!(
        "{} objects for joint selection: {} singletons and {} view/index pairs",
        objects.len(),
        singleton_count(&objects),
        m.vi_pairs()
    );
    let pairs: Vec<String> = objects
        .iter()
        .filter(|o| o.is_pair())
        .map(|o| o.id(c))
        .collect();
    println!("pairs: {}", pairs.join(" "));
    Ok(())
}
