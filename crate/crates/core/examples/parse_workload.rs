//! Parses a workload file against a catalog and prints each query back in
//! normalized form together with what the parser resolved.
//!
//! `cargo run --example parse_workload [catalog.toml workload.sql]`; without
//! arguments the bundled sample warehouse is used.

use warehouse_advisor::{fixtures, load_catalog, load_workload};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (catalog, workload) = match args.as_slice() {
        [schema, workload] => {
            let catalog = load_catalog(&std::fs::read_to_string(schema)?)?;
            let workload = load_workload(&std::fs::read_to_string(workload)?, &catalog)?;
            (catalog, workload)
        }
        [] => {
            let catalog = fixtures::sales_catalog();
            let workload = fixtures::sales_workload(&catalog);
            (catalog, workload)
        }
        _ => return Err("usage: parse_workload [catalog.toml workload.sql]".into()),
    };

    println!("fact table: {}", catalog.fact_table().name);
    println!("refresh ratio: {}\n", workload.refresh_ratio);
    for q in &workload.queries {
        println!("{}: {}", q.id, q.to_sql());
        let tables: Vec<&str> = q.joined_tables.iter().map(String::as_str).collect();
        println!("    tables     {}", tables.join(", "));
        for p in &q.predicates {
            let card = catalog
                .attribute(&p.column.table, &p.column.attribute)
                .map_or(0, |a| a.cardinality);
            println!("    predicate  {} (cardinality {card})", p.column);
        }
        let group: Vec<String> = q.group_by.iter().map(ToString::to_string).collect();
        println!("    group by   {}", group.join(", "));
    }

    // A malformed statement reports the position of the offending token.
    let bad = "select sales.time_id, sum(amount_sold)\nfrom sales, times\nwhere sales.time_id = times.nope\ngroup by sales.time_id;";
    match load_workload(bad, &catalog) {
        Ok(_) => println!("\nunexpectedly parsed"),
        Err(e) => println!("\nerror example: {e}"),
    }
    Ok(())
}
