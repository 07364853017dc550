//! Differences between the published tables (shipped as a fixture)
//! and the computed ones.

use std::collections::BTreeSet;
use std::fmt::Write;

use segre_core::characters::LrSource;
use segre_core::engine::{degree_bound, multiplication_table, product_bidegrees, segre_syzygies, sheaf_syzygies, BettiTable};
use serde::Deserialize;

use crate::render::{free_modules, signed};

pub const PRINTED_FIXTURE: &str = include_str!("../fixtures/published_tables.json");
pub const EXPECTED_ERRATA: &str = include_str!("../fixtures/errata.txt");

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedComponent {
    pub p: usize,
    pub t: usize,
    /// Kept raw: printed labels are not always partitions.
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub spaces: [usize; 2],
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedSummand {
    pub p: usize,
    pub twist: i64,
    pub rank: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedExample {
    pub id: String,
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    #[serde(default)]
    pub components: Option<Vec<PrintedComponent>>,
    #[serde(default)]
    pub component_count: Option<usize>,
    pub resolution: Vec<PrintedSummand>,
    #[serde(default)]
    pub products: Option<Vec<[[usize; 2]; 3]>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedAppendix {
    pub examples: Vec<PrintedExample>,
}

pub fn load_fixture() -> PrintedAppendix {
    serde_json::from_str(PRINTED_FIXTURE).expect("bundled fixture parses")
}

fn rows_label(rows: &[usize]) -> String {
    let body: Vec<String> = rows.iter().map(usize::to_string).collect();
    format!("({})", body.join(","))
}

fn component_line(p: usize, t: usize, lambda: &[usize], mu: &[usize], spaces: [usize; 2]) -> String {
    format!(
        "R_{{{p},{t}}} ⊃ Σ{} k^{} ⊗ Σ{} k^{}",
        rows_label(lambda),
        spaces[0],
        rows_label(mu),
        spaces[1]
    )
}

fn summand_line(p: usize, twist: i64, rank: u64) -> String {
    let module = if twist == 0 { "O".to_string() } else { format!("O({})", signed(twist)) };
    if rank == 1 {
        format!("F_{p} ⊃ {module}")
    } else {
        format!("F_{p} ⊃ {module}^{rank}")
    }
}

fn product_line(tr: &[[usize; 2]; 3]) -> String {
    format!(
        "R_{{{},{}}} × R_{{{},{}}} → R_{{{},{}}}",
        tr[0][0], tr[0][1], tr[1][0], tr[1][1], tr[2][0], tr[2][1]
    )
}

/// Lines `- printed` and `+ computed` for one section, ordered by key.
fn section<K: Ord + Clone>(out: &mut String, title: &str, printed: &BTreeSet<(K, String)>, computed: &BTreeSet<(K, String)>) {
    let mut lines: Vec<(K, u8, &str)> = printed
        .difference(computed)
        .map(|(k, s)| (k.clone(), 0, s.as_str()))
        .chain(computed.difference(printed).map(|(k, s)| (k.clone(), 1, s.as_str())))
        .collect();
    if lines.is_empty() {
        return;
    }
    lines.sort();
    writeln!(out, "  {title}").unwrap();
    for (_, sign, s) in lines {
        writeln!(out, "  {} {s}", if sign == 0 { '-' } else { '+' }).unwrap();
    }
}

fn computed_table(ex: &PrintedExample) -> BettiTable {
    if ex.a == 0 && ex.b == 0 {
        segre_syzygies(ex.m, ex.n).expect("fixture dimensions are valid")
    } else {
        sheaf_syzygies(ex.m, ex.n, ex.a, ex.b, degree_bound(ex.m, ex.n, ex.a, ex.b)).expect("fixture twists are valid")
    }
}

/// The diff between every printed example and the computed tables.
pub fn errata_report<L: LrSource + ?Sized>(appendix: &PrintedAppendix, lr: &L) -> String {
    let mut out = String::new();
    for ex in &appendix.examples {
        writeln!(out, "{} (m = {}, n = {}, a = {}, b = {})", ex.id, ex.m, ex.n, signed(ex.a), signed(ex.b)).unwrap();
        let table = computed_table(ex);
        let before = out.len();

        if let Some(printed) = &ex.components {
            let printed: BTreeSet<_> = printed
                .iter()
                .map(|c| ((c.p, c.t), component_line(c.p, c.t, &c.lambda, &c.mu, c.spaces)))
                .collect();
            let computed: BTreeSet<_> = table
                .iter_components()
                .filter(|c| c.p > 0)
                .map(|c| {
                    let line = component_line(c.p, c.t(), c.omega.lambda.rows(), c.omega.mu.rows(), [ex.m, ex.n]);
                    ((c.p, c.t()), line)
                })
                .collect();
            section(&mut out, "components", &printed, &computed);
        }

        if let Some(count) = ex.component_count {
            let n = table.iter_components().count();
            if n != count {
                writeln!(out, "  component count\n  - {count}\n  + {n}").unwrap();
            }
        }

        let printed: BTreeSet<_> = ex
            .resolution
            .iter()
            .map(|s| ((s.p, -s.twist), summand_line(s.p, s.twist, s.rank)))
            .collect();
        let computed: BTreeSet<_> = free_modules(&table)
            .into_iter()
            .flat_map(|(p, mods)| mods.into_iter().map(move |(t, r)| ((p, t as i64), summand_line(p, -(t as i64), r))))
            .collect();
        section(&mut out, "resolution", &printed, &computed);

        if let Some(printed) = &ex.products {
            let printed: BTreeSet<_> = printed.iter().map(|tr| (*tr, product_line(tr))).collect();
            let triples = multiplication_table(ex.m, ex.n, lr).expect("fixture dimensions are valid");
            let computed: BTreeSet<_> = product_bidegrees(&triples)
                .into_iter()
                .map(|b| {
                    let tr = [[b[0].0, b[0].1], [b[1].0, b[1].1], [b[2].0, b[2].1]];
                    (tr, product_line(&tr))
                })
                .collect();
            section(&mut out, "products", &printed, &computed);
        }

        if out.len() == before {
            writeln!(out, "  no differences").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::MemoLr;

    #[test]
    fn fixture_parses() {
        let f = load_fixture();
        assert_eq!(f.examples.len(), 3);
        assert_eq!(f.examples[1].products.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn report_equals_shipped_errata() {
        assert_eq!(errata_report(&load_fixture(), &MemoLr::new()), EXPECTED_ERRATA);
    }
}
