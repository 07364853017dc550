//! JSON forms of tables, decompositions and marked diagrams.

use std::collections::BTreeSet;

use segre_core::engine::{BettiTable, SyzygyComponent};
use segre_core::marked::{MarkedDiagram, WeightPair};
use segre_core::partitions::{Cell, Partition};
use segre_core::IrrDecomposition;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid partition {0:?}")]
    Partition(Vec<usize>),
    #[error("invalid marked diagram: {0}")]
    Marked(#[from] segre_core::MarkedError),
    #[error("inconsistent entry at (p, t) = ({p}, {t}): {what}")]
    Inconsistent { p: usize, t: usize, what: &'static str },
}

pub fn partition_from_rows(rows: Vec<usize>) -> Result<Partition, JsonError> {
    Partition::new(rows.clone()).map_err(|_| JsonError::Partition(rows))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub mult: u64,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub p: usize,
    pub t: usize,
    pub dim: u64,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTableJson {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub entries: Vec<EntryJson>,
}

impl From<&BettiTable> for BettiTableJson {
    fn from(table: &BettiTable) -> Self {
        let mut keys: Vec<(usize, usize)> = table.entries().keys().copied().collect();
        keys.sort_by_key(|&(p, t)| (t, p));
        let entries = keys
            .into_iter()
            .map(|(p, t)| EntryJson {
                p,
                t,
                dim: table.betti(p, t),
                components: table
                    .components(p, t)
                    .iter()
                    .map(|c| ComponentJson {
                        lambda: c.omega.lambda.rows().to_vec(),
                        mu: c.omega.mu.rows().to_vec(),
                        mult: c.multiplicity,
                        dim: c.dim,
                    })
                    .collect(),
            })
            .collect();
        BettiTableJson {
            m: table.m,
            n: table.n,
            a: table.a,
            b: table.b,
            entries,
        }
    }
}

impl BettiTableJson {
    /// Rebuilds the table; `max_t` is the largest degree present. Stored
    /// dimensions are checked against the recomputed ones.
    pub fn to_table(&self) -> Result<BettiTable, JsonError> {
        let max_t = self.entries.iter().map(|e| e.t).max().unwrap_or(0);
        let mut table = BettiTable::new(self.m, self.n, self.a, self.b, max_t);
        for e in &self.entries {
            if e.t < e.p {
                return Err(JsonError::Inconsistent {
                    p: e.p,
                    t: e.t,
                    what: "t < p",
                });
            }
            for c in &e.components {
                let omega = WeightPair::new(
                    partition_from_rows(c.lambda.clone())?,
                    partition_from_rows(c.mu.clone())?,
                );
                let comp = SyzygyComponent::new(omega, e.p, e.t - e.p, c.mult, self.m, self.n);
                if comp.dim != c.dim {
                    return Err(JsonError::Inconsistent {
                        p: e.p,
                        t: e.t,
                        what: "component dimension",
                    });
                }
                table.insert(comp);
            }
            if table.betti(e.p, e.t) != e.dim {
                return Err(JsonError::Inconsistent {
                    p: e.p,
                    t: e.t,
                    what: "entry dimension",
                });
            }
        }
        Ok(table)
    }
}

pub fn table_to_json(table: &BettiTable) -> String {
    let mut s = serde_json::to_string_pretty(&BettiTableJson::from(table)).expect("serializable");
    s.push('\n');
    s
}

pub fn table_from_json(text: &str) -> Result<BettiTable, JsonError> {
    serde_json::from_str::<BettiTableJson>(text)?.to_table()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrJson {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub mult: u64,
}

pub fn decomposition_to_json(dec: &IrrDecomposition) -> Vec<IrrJson> {
    dec.iter()
        .map(|(w, &k)| IrrJson {
            lambda: w.lambda.rows().to_vec(),
            mu: w.mu.rows().to_vec(),
            mult: k,
        })
        .collect()
}

pub fn decomposition_from_json(items: &[IrrJson]) -> Result<IrrDecomposition, JsonError> {
    items
        .iter()
        .map(|i| {
            Ok((
                WeightPair::new(
                    partition_from_rows(i.lambda.clone())?,
                    partition_from_rows(i.mu.clone())?,
                ),
                i.mult,
            ))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedJson {
    pub core: Vec<usize>,
    #[serde(rename = "L")]
    pub l: Vec<[isize; 2]>,
    #[serde(rename = "R")]
    pub r: Vec<[isize; 2]>,
}

impl From<&MarkedDiagram> for MarkedJson {
    fn from(d: &MarkedDiagram) -> Self {
        let cells = |s: &BTreeSet<Cell>| s.iter().map(|c| [c.x, c.y]).collect();
        MarkedJson {
            core: d.core().rows().to_vec(),
            l: cells(d.l_strip()),
            r: cells(d.r_strip()),
        }
    }
}

impl MarkedJson {
    pub fn to_diagram(&self) -> Result<MarkedDiagram, JsonError> {
        let cells = |v: &[[isize; 2]]| v.iter().map(|&[x, y]| Cell::new(x, y)).collect();
        Ok(MarkedDiagram::new(
            partition_from_rows(self.core.clone())?,
            cells(&self.l),
            cells(&self.r),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use segre_core::engine::{segre_syzygies, sheaf_syzygies};
    use segre_core::marked::enumerate_y;

    #[test]
    fn table_round_trip_is_byte_identical() {
        for table in [
            segre_syzygies(2, 3).unwrap(),
            segre_syzygies(3, 4).unwrap(),
            sheaf_syzygies(2, 3, -1, 1, 6).unwrap(),
            sheaf_syzygies(2, 2, 1, 1, 6).unwrap(),
        ] {
            let text = table_to_json(&table);
            let back = table_from_json(&text).unwrap();
            assert_eq!(table_to_json(&back), text);
        }
    }

    #[test]
    fn segre_2_3_schema() {
        let v: serde_json::Value = serde_json::from_str(&table_to_json(&segre_syzygies(2, 3).unwrap())).unwrap();
        let dims: Vec<(u64, u64, u64)> = v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["p"].as_u64().unwrap(), e["t"].as_u64().unwrap(), e["dim"].as_u64().unwrap()))
            .collect();
        assert_eq!(dims, [(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(v["entries"][1]["components"][0]["lambda"], serde_json::json!([1, 1]));
        assert_eq!(v["entries"][0]["components"][0]["lambda"], serde_json::json!([]));
    }

    #[test]
    fn inconsistent_tables_are_rejected() {
        let mut j = BettiTableJson::from(&segre_syzygies(2, 3).unwrap());
        j.entries[1].dim = 4;
        assert!(matches!(j.to_table(), Err(JsonError::Inconsistent { .. })));
        j.entries[1].dim = 3;
        j.entries[1].components[0].mu = vec![1, 2];
        assert!(matches!(j.to_table(), Err(JsonError::Partition(_))));
    }

    #[test]
    fn decomposition_round_trip() {
        let dec = segre_core::cauchy_wedge(3, 3, 3);
        let items = decomposition_to_json(&dec);
        let text = serde_json::to_string(&items).unwrap();
        assert!(text.starts_with("[{\"lambda\":"));
        let back: Vec<IrrJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(decomposition_from_json(&back).unwrap(), dec);
    }

    #[test]
    fn marked_round_trip() {
        for d in enumerate_y(2, 2, 1, 1, 1) {
            let j = MarkedJson::from(&d);
            let text = serde_json::to_string(&j).unwrap();
            let back: MarkedJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_diagram().unwrap(), d);
        }
        let j: MarkedJson = serde_json::from_str(r#"{"core":[1],"L":[[1,0]],"R":[[1,0]]}"#).unwrap();
        let d = j.to_diagram().unwrap();
        assert_eq!(d.lambda().rows(), [2]);
        assert_eq!(d.mu().rows(), [1, 1]);
    }
}
