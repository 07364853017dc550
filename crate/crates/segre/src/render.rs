//! Text, JSON and LaTeX output for Betti tables and resolutions.

use std::collections::BTreeMap;
use std::fmt::Write;

use segre_core::engine::BettiTable;
use segre_core::partitions::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// `(2,1)`, with `∅` for the empty partition.
pub fn partition_label(p: &Partition) -> String {
    if p.is_empty() {
        "∅".to_string()
    } else {
        p.to_string()
    }
}

/// Integer with a Unicode minus sign.
pub fn signed(x: i64) -> String {
    if x < 0 {
        format!("−{}", -x)
    } else {
        x.to_string()
    }
}

/// `F_p` as `[(t, rank)]`, sorted by `t` descending.
pub fn free_modules(table: &BettiTable) -> BTreeMap<usize, Vec<(usize, u64)>> {
    let mut out: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for ((p, t), d) in table.betti_numbers() {
        out.entry(p).or_default().push((t, d));
    }
    for v in out.values_mut() {
        v.sort_by_key(|x| std::cmp::Reverse(x.0));
    }
    out
}

fn target_label(table: &BettiTable, latex: bool) -> String {
    let base = if latex { r"\mathcal{O}_X" } else { "O_X" };
    if table.a == 0 && table.b == 0 {
        base.to_string()
    } else if latex {
        format!("{base}({},{})", table.a, table.b)
    } else {
        format!("{base}({},{})", signed(table.a), signed(table.b))
    }
}

fn summand(t: usize, rank: u64, latex: bool) -> String {
    let mut s = String::new();
    match (t, latex) {
        (0, false) => s.push('O'),
        (0, true) => s.push_str(r"\mathcal{O}"),
        (t, false) => write!(s, "O(−{t})").unwrap(),
        (t, true) => write!(s, r"\mathcal{{O}}(-{t})").unwrap(),
    }
    if rank != 1 {
        if latex {
            write!(s, "^{{{rank}}}").unwrap();
        } else {
            write!(s, "^{rank}").unwrap();
        }
    }
    s
}

/// `0 → F_top → … → F_0 → O_X(a,b) → 0`, with `F_p = ⊕_t O(−t)^{b_{p,t}}`.
pub fn resolution_chain(table: &BettiTable, latex: bool) -> String {
    let (arrow, plus) = if latex { (r" \to ", r" \oplus ") } else { (" → ", " ⊕ ") };
    let mut parts = vec!["0".to_string()];
    for (_, mods) in free_modules(table).iter().rev() {
        let terms: Vec<String> = mods.iter().map(|&(t, r)| summand(t, r, latex)).collect();
        parts.push(terms.join(plus));
    }
    parts.push(target_label(table, latex));
    parts.push("0".to_string());
    parts.join(arrow)
}

/// Betti diagram: rows `t - p`, columns `p`, `.` for zero.
fn betti_diagram(table: &BettiTable) -> String {
    let betti = table.betti_numbers();
    let Some(max_p) = betti.keys().map(|&(p, _)| p).max() else {
        return "(zero table)\n".to_string();
    };
    let max_q = betti.keys().map(|&(p, t)| t - p).max().unwrap_or(0);
    let cell = |p: usize, q: usize| betti.get(&(p, p + q)).map_or(".".to_string(), |d| d.to_string());
    let width = betti.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(2);
    let mut s = String::new();
    write!(s, "{:>4}", "").unwrap();
    for p in 0..=max_p {
        write!(s, " {p:>width$}").unwrap();
    }
    s.push('\n');
    for q in 0..=max_q {
        write!(s, "{:>3}:", q).unwrap();
        for p in 0..=max_p {
            write!(s, " {:>width$}", cell(p, q)).unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn render_text(table: &BettiTable) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "m = {}, n = {}, a = {}, b = {}, t ≤ {}",
        table.m,
        table.n,
        signed(table.a),
        signed(table.b),
        table.max_t
    )
    .unwrap();
    s.push('\n');
    s.push_str(&betti_diagram(table));
    s.push('\n');
    for c in table.iter_components() {
        let mult = if c.multiplicity == 1 {
            String::new()
        } else {
            format!("{}× ", c.multiplicity)
        };
        writeln!(
            s,
            "R_{{{},{}}}  {mult}Σ{} ⊗ Σ{}  dim {}",
            c.p,
            c.t(),
            partition_label(&c.omega.lambda),
            partition_label(&c.omega.mu),
            c.dim
        )
        .unwrap();
    }
    s.push('\n');
    writeln!(s, "{}", resolution_chain(table, false)).unwrap();
    s
}

pub fn render_latex(table: &BettiTable) -> String {
    format!("\\[\n  {}\n\\]\n", resolution_chain(table, true))
}

pub fn render(table: &BettiTable, format: Format) -> String {
    match format {
        Format::Text => render_text(table),
        Format::Json => crate::json::table_to_json(table),
        Format::Latex => render_latex(table),
    }
}
