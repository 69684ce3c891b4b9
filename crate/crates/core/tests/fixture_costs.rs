//! Hand-computed figures for the bundled sample warehouse.

use warehouse_advisor::{fixtures, CostModel, Member, Problem, Selection};

fn problem() -> Problem {
    let c = fixtures::sales_catalog();
    let w = fixtures::sales_workload(&c);
    let cands = fixtures::sales_candidates(&c);
    Problem::new(c, w, cands).unwrap()
}

#[test]
fn table_blocks() {
    let c = fixtures::sales_catalog();
    // ceil(rows * width / 8192)
    for (t, want) in [
        ("sales", 47638),
        ("customers", 855),
        ("products", 292),
        ("times", 26),
        ("promotions", 6),
        ("channels", 1),
    ] {
        assert_eq!(c.table_blocks(t), Some(want), "{t}");
    }
}

#[test]
fn base_workload_total() {
    // q1 sales+times, q2/q4/q7 sales+products+promotions, q3/q6
    // sales+customers+products, q5 sales+promotions, q8 sales+channels
    let s = 47638;
    let want = (s + 26) + 3 * (s + 292 + 6) + 2 * (s + 855 + 292) + (s + 6) + (s + 1);
    assert_eq!(want, 384_325);
    let p = problem();
    let m = CostModel::new(&p);
    assert_eq!(m.workload_cost(&Selection::empty(&p.candidates)), want);
}

#[test]
fn scaled_fact_table() {
    let c = fixtures::sales_catalog_scaled();
    assert_eq!(c.fact_table().row_count, 162_603);
}

#[test]
fn view_one_with_its_index() {
    let p = problem();
    let m = CostModel::new(&p);
    let v1 = p.candidates.view_position("v1").unwrap();
    let i = p.candidates.index_position("i8@v1").unwrap();
    // 1461 times x 4 fiscal years = 5844 groups of 4 + 4 + 8 bytes
    assert_eq!(m.object_size(Member::View(v1)), 5844 * 16);
    let with_view = Selection::from_members(&p.candidates, &[Member::View(v1)]);
    // 93504 bytes = 12 blocks
    assert_eq!(m.query_cost(0, &with_view).0, 12);
    let both = with_view.with(&[Member::Index(i)]);
    // height ceil(log200 4) = 1, plus ceil(12 / 4) = 3
    assert_eq!(m.query_cost(0, &both).0, 4);
}
