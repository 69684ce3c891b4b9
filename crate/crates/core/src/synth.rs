//! Seeded random star-schema instances for property checks and the examples.
//!
//! Every generated instance goes through the same public loaders as user
//! input: catalogs are built with [`SchemaCatalog::new`] and workloads are
//! rendered to SQL text and parsed back.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::candidates::{CandidateSet, IndexCandidate, IndexTarget};
use crate::catalog::{AttributeStats, SchemaCatalog, TableKind, TableStats};
use crate::error::Result;
use crate::problem::Problem;
use crate::workload::{load_workload, ColumnRef};

pub use rand::SeedableRng;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Limits for [`random_problem`].
#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    /// Total tables including the fact table (2..=6).
    pub max_tables: usize,
    pub max_queries: usize,
    /// Cap on views plus indexes, `None` for no cap.
    pub max_members: Option<usize>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            max_tables: 6,
            max_queries: 12,
            max_members: None,
        }
    }
}

fn log_uniform(rng: &mut impl Rng, lo: u64, hi: u64) -> u64 {
    let (lo, hi) = (lo.max(1) as f64, hi.max(lo.max(1)) as f64);
    let x = rng.gen_range(lo.ln()..=hi.ln()).exp();
    (x.round() as u64).clamp(lo as u64, hi as u64)
}

/// Budget drawn log-uniformly from `[1, max]` bytes, with a small chance of 0.
pub fn log_uniform_budget(rng: &mut impl Rng, max: u64) -> i64 {
    if rng.gen_bool(0.05) {
        0
    } else {
        log_uniform(rng, 1, max.max(1)).min(i64::MAX as u64) as i64
    }
}

/// Star schema with fact table `f` and dimensions `d1..dn`, each dimension
/// joined through `f.dK_id = dK.id`.
pub fn random_catalog(rng: &mut impl Rng, max_tables: usize) -> SchemaCatalog {
    let dims = rng.gen_range(1..=max_tables.clamp(2, 6) - 1);
    let fact_rows = log_uniform(rng, 1_000, 20_000_000);
    let mut tables = Vec::with_capacity(dims + 1);
    let mut fact_attrs = Vec::new();
    for d in 1..=dims {
        let rows = log_uniform(rng, 2, fact_rows.min(200_000));
        let mut attrs = vec![AttributeStats {
            name: "id".into(),
            cardinality: rows,
            width: 4,
        }];
        for a in 1..=rng.gen_range(2..=4) {
            attrs.push(AttributeStats {
                name: format!("a{a}"),
                cardinality: log_uniform(rng, 1, rows),
                width: rng.gen_range(1..=40),
            });
        }
        let width = attrs.iter().map(|a| a.width).sum::<u64>() + rng.gen_range(0..=200);
        tables.push(TableStats {
            name: format!("d{d}"),
            kind: TableKind::Dimension,
            row_count: rows,
            row_width: width,
            attributes: attrs,
        });
        fact_attrs.push(AttributeStats {
            name: format!("d{d}_id"),
            cardinality: rows,
            width: 4,
        });
    }
    for m in 1..=rng.gen_range(1..=2) {
        fact_attrs.push(AttributeStats {
            name: format!("m{m}"),
            cardinality: log_uniform(rng, 1, fact_rows),
            width: rng.gen_range(2..=8),
        });
    }
    let fact_width = fact_attrs.iter().map(|a| a.width).sum::<u64>() + rng.gen_range(0..=16);
    tables.insert(
        0,
        TableStats {
            name: "f".into(),
            kind: TableKind::Fact,
            row_count: fact_rows,
            row_width: fact_width,
            attributes: fact_attrs,
        },
    );
    SchemaCatalog::new(tables).expect("generated catalog is valid")
}

/// SQL text for a random aggregate workload over `catalog`.
pub fn random_workload_sql(
    rng: &mut impl Rng,
    catalog: &SchemaCatalog,
    max_queries: usize,
) -> String {
    let dims: Vec<&TableStats> = catalog
        .tables
        .iter()
        .filter(|t| t.kind == TableKind::Dimension)
        .collect();
    let measures: Vec<&str> = catalog
        .fact_table()
        .attributes
        .iter()
        .filter(|a| a.name.starts_with('m'))
        .map(|a| a.name.as_str())
        .collect();
    let mut sql = String::new();
    for _ in 0..rng.gen_range(1..=max_queries.max(1)) {
        let k = rng.gen_range(1..=dims.len());
        let mut chosen: Vec<&TableStats> = dims.choose_multiple(rng, k).copied().collect();
        chosen.sort_by(|a, b| a.name.cmp(&b.name));
        let mut group = Vec::new();
        let mut preds = Vec::new();
        for t in &chosen {
            let attrs: Vec<&AttributeStats> = t.attributes.iter().skip(1).collect();
            let g = attrs.choose(rng).expect("dimension has attributes");
            group.push(format!("{}.{}", t.name, g.name));
            if rng.gen_bool(0.4) {
                let p = attrs.choose(rng).expect("dimension has attributes");
                preds.push(format!(
                    "{}.{} = {}",
                    t.name,
                    p.name,
                    rng.gen_range(0..p.cardinality)
                ));
            }
        }
        let measure = measures.choose(rng).expect("fact has a measure");
        let from: Vec<&str> = std::iter::once("f")
            .chain(chosen.iter().map(|t| t.name.as_str()))
            .collect();
        let mut conds: Vec<String> = chosen
            .iter()
            .map(|t| format!("f.{0}_id = {0}.id", t.name))
            .collect();
        conds.extend(preds);
        sql.push_str(&format!(
            "select {g}, sum(f.{measure}) from {from} where {conds} group by {g};\n",
            g = group.join(", "),
            from = from.join(", "),
            conds = conds.join(" and "),
        ));
    }
    sql
}

/// A random catalog, workload, and generated candidate set.
pub fn random_problem(rng: &mut impl Rng, config: &SynthConfig) -> Result<Problem> {
    let catalog = random_catalog(rng, config.max_tables);
    let sql = random_workload_sql(rng, &catalog, config.max_queries);
    let workload = load_workload(&sql, &catalog)?;
    let problem = Problem::generate(catalog, workload, 1)?;
    match config.max_members {
        Some(max) if problem.candidates.member_count() > max => {
            let cut = problem.candidates.truncated(max);
            problem.with_candidates(cut)
        }
        _ => Ok(problem),
    }
}

/// Instance whose candidates are base indexes that do not interact and all
/// have the same size.
#[derive(Debug, Clone)]
pub struct UniformFamily {
    pub problem: Problem,
    /// Size in bytes of every candidate index.
    pub unit_size: u64,
}

/// `n` dimensions with equal row counts and key widths but different row
/// widths; query `qK` filters and groups on `dK.a` only, and index `iK` sits
/// on `dK.a`. Each index can only speed up its own query, so cost drops add
/// up and the sizes are all the same.
pub fn uniform_index_family(rng: &mut impl Rng, n: usize) -> Result<UniformFamily> {
    let n = n.clamp(1, 5);
    let dim_rows = log_uniform(rng, 10_000, 400_000);
    let fact_rows = log_uniform(rng, dim_rows, 5_000_000);
    let mut tables = Vec::new();
    let mut fact_attrs = Vec::new();
    for d in 1..=n {
        let card = log_uniform(rng, 2, dim_rows);
        tables.push(TableStats {
            name: format!("d{d}"),
            kind: TableKind::Dimension,
            row_count: dim_rows,
            row_width: rng.gen_range(16..=600),
            attributes: vec![
                AttributeStats {
                    name: "id".into(),
                    cardinality: dim_rows,
                    width: 4,
                },
                AttributeStats {
                    name: "a".into(),
                    cardinality: card,
                    width: 8,
                },
            ],
        });
        fact_attrs.push(AttributeStats {
            name: format!("d{d}_id"),
            cardinality: dim_rows,
            width: 4,
        });
    }
    fact_attrs.push(AttributeStats {
        name: "m".into(),
        cardinality: 100,
        width: 4,
    });
    tables.insert(
        0,
        TableStats {
            name: "f".into(),
            kind: TableKind::Fact,
            row_count: fact_rows,
            row_width: 4 * n as u64 + 4,
            attributes: fact_attrs,
        },
    );
    let catalog = SchemaCatalog::new(tables)?;
    let mut sql = String::new();
    for d in 1..=n {
        let value = rng.gen_range(
            0..catalog
                .attribute(&format!("d{d}"), "a")
                .unwrap()
                .cardinality,
        );
        sql.push_str(&format!(
            "select d{d}.a, sum(f.m) from f, d{d} where f.d{d}_id = d{d}.id and d{d}.a = {value} group by d{d}.a;\n"
        ));
    }
    let workload = load_workload(&sql, &catalog)?;
    let indexes = (1..=n)
        .map(|d| IndexCandidate {
            id: format!("i{d}"),
            column: ColumnRef::new(format!("d{d}"), "a"),
            target: IndexTarget::Base,
        })
        .collect();
    let candidates = CandidateSet::new(Vec::new(), indexes)?;
    let unit_size = dim_rows * (8 + catalog.rowid_width);
    let problem = Problem::new(catalog, workload, candidates)?;
    Ok(UniformFamily { problem, unit_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costmodel::CostModel;
    use crate::selection::{Member, Selection};

    #[test]
    fn same_seed_same_instance() {
        let a = random_problem(&mut rng(7), &SynthConfig::default()).unwrap();
        let b = random_problem(&mut rng(7), &SynthConfig::default()).unwrap();
        assert_eq!(a.catalog, b.catalog);
        assert_eq!(a.workload, b.workload);
        assert_eq!(a.candidates, b.candidates);
    }

    #[test]
    fn respects_limits() {
        let cfg = SynthConfig {
            max_members: Some(12),
            ..SynthConfig::default()
        };
        for seed in 0..50 {
            let p = random_problem(&mut rng(seed), &cfg).unwrap();
            assert!(p.catalog.tables.len() <= 6);
            assert!(p.workload.len() <= 12);
            assert!(p.candidates.member_count() <= 12);
        }
    }

    #[test]
    fn uniform_family_is_additive() {
        for seed in 0..20 {
            let fam = uniform_index_family(&mut rng(seed), 4).unwrap();
            let m = CostModel::new(&fam.problem);
            let empty = Selection::empty(&fam.problem.candidates);
            let c0 = m.workload_cost(&empty);
            let all: Vec<Member> = (0..4).map(Member::Index).collect();
            let drops: u64 = all
                .iter()
                .map(|&x| c0 - m.workload_cost(&empty.with(&[x])))
                .sum();
            assert_eq!(c0 - m.workload_cost(&empty.with(&all)), drops);
            assert!(all.iter().all(|&x| m.object_size(x) == fam.unit_size));
        }
    }

    #[test]
    fn budget_sampler_stays_in_range() {
        let mut r = rng(1);
        for _ in 0..1000 {
            let b = log_uniform_budget(&mut r, 1 << 30);
            assert!((0..=1 << 30).contains(&b));
        }
    }
}
