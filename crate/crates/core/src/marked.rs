//! Marked Young diagrams: a core of unmarked boxes plus an `L` strip and an
//! `R` strip, possibly overlapping in boxes marked `LR`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::characters::{pieri_column, pieri_row};
use crate::partitions::{enumerate_partitions, Cell, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkedError {
    #[error("L strip has two boxes in column {0}")]
    LStripColumn(isize),
    #[error("R strip has two boxes in row {0}")]
    RStripRow(isize),
    #[error("strip box {0} lies in the core")]
    StripInCore(Cell),
    #[error("core with {0} strip is not a Young diagram")]
    NotADiagram(&'static str),
}

/// A highest weight of `GL(U) × GL(V)`, given as a pair of partitions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightPair {
    pub lambda: Partition,
    pub mu: Partition,
}

impl WeightPair {
    pub fn new(lambda: Partition, mu: Partition) -> Self {
        WeightPair { lambda, mu }
    }

    pub fn is_valid_for(&self, m: usize, n: usize) -> bool {
        self.lambda.height() <= m && self.mu.height() <= n
    }

    /// The pair with the two factors exchanged.
    pub fn swapped(&self) -> WeightPair {
        WeightPair::new(self.mu.clone(), self.lambda.clone())
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.mu)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedDiagram {
    core: Partition,
    l_strip: BTreeSet<Cell>,
    r_strip: BTreeSet<Cell>,
}

fn one_per<F: Fn(&Cell) -> isize>(cells: &BTreeSet<Cell>, key: F) -> Result<(), isize> {
    let mut seen = BTreeSet::new();
    for c in cells {
        if !seen.insert(key(c)) {
            return Err(key(c));
        }
    }
    Ok(())
}

impl MarkedDiagram {
    pub fn new(
        core: Partition,
        l_strip: BTreeSet<Cell>,
        r_strip: BTreeSet<Cell>,
    ) -> Result<Self, MarkedError> {
        one_per(&l_strip, |c| c.x).map_err(MarkedError::LStripColumn)?;
        one_per(&r_strip, |c| c.y).map_err(MarkedError::RStripRow)?;
        if let Some(c) = l_strip.iter().chain(&r_strip).find(|c| core.contains(**c)) {
            return Err(MarkedError::StripInCore(*c));
        }
        let base = core.cell_set();
        let check = |extra: &[&BTreeSet<Cell>], what| {
            let mut all = base.clone();
            for s in extra {
                all.extend(s.iter().copied());
            }
            Partition::from_cells(&all).map(|_| ()).map_err(|_| MarkedError::NotADiagram(what))
        };
        check(&[&l_strip], "L")?;
        check(&[&r_strip], "R")?;
        check(&[&l_strip, &r_strip], "L and R")?;
        Ok(MarkedDiagram {
            core,
            l_strip,
            r_strip,
        })
    }

    pub fn core(&self) -> &Partition {
        &self.core
    }

    pub fn l_strip(&self) -> &BTreeSet<Cell> {
        &self.l_strip
    }

    pub fn r_strip(&self) -> &BTreeSet<Cell> {
        &self.r_strip
    }

    /// Boxes carrying both letters.
    pub fn lr_boxes(&self) -> BTreeSet<Cell> {
        self.l_strip.intersection(&self.r_strip).copied().collect()
    }

    /// `core ∪ L`.
    pub fn lambda(&self) -> Partition {
        let mut cells = self.core.cell_set();
        cells.extend(self.l_strip.iter().copied());
        Partition::from_cells(&cells).expect("validated on construction")
    }

    /// Conjugate of `core ∪ R`.
    pub fn mu(&self) -> Partition {
        let mut cells = self.core.cell_set();
        cells.extend(self.r_strip.iter().copied());
        Partition::from_cells(&cells)
            .expect("validated on construction")
            .conjugate()
    }

    pub fn omega(&self) -> WeightPair {
        WeightPair::new(self.lambda(), self.mu())
    }
}

/// Boxes `c` of `λ ∩ μ'` with no box of `λ` directly below and no box of
/// `μ'` directly to the right. These are the boxes that may carry `LR`.
pub fn b_set(lambda: &Partition, mu: &Partition) -> Vec<Cell> {
    let mu_t = mu.conjugate();
    lambda
        .intersect(&mu_t)
        .cells()
        .filter(|c| !lambda.contains(c.below()) && !mu_t.contains(c.right()))
        .collect()
}

/// The unique marking of `λ ∪ μ'` with no `LR` boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Markings {
    pub core: Partition,
    pub l_strip: BTreeSet<Cell>,
    pub r_strip: BTreeSet<Cell>,
    /// Whether `L` has at most one box per column and `R` at most one per row.
    pub valid: bool,
}

pub fn markings_of_weight(omega: &WeightPair) -> Markings {
    let mu_t = omega.mu.conjugate();
    let core = omega.lambda.intersect(&mu_t);
    let l_strip = omega.lambda.difference(&mu_t);
    let r_strip = mu_t.difference(&omega.lambda);
    let valid = one_per(&l_strip, |c| c.x).is_ok() && one_per(&r_strip, |c| c.y).is_ok();
    Markings {
        core,
        l_strip,
        r_strip,
        valid,
    }
}

/// Every marked diagram with `w` unmarked boxes, `l` letters `L` and `r`
/// letters `R`, such that `core ∪ L` has at most `m` rows and `core ∪ R` at
/// most `n` columns.
///
/// Elements are in bijection with triples `(ν, λ, μ')` where `λ/ν` is a
/// horizontal strip and `μ'/ν` a vertical strip; the order follows
/// `ν`, then `λ`, then `μ'`, each in descending lexicographic order.
pub fn enumerate_y(m: usize, n: usize, w: usize, l: usize, r: usize) -> Vec<MarkedDiagram> {
    let mut out = Vec::new();
    for nu in enumerate_partitions(w, m, n) {
        let lambdas = pieri_row(&nu, l, m);
        let mu_ts = pieri_column(&nu, r, n);
        for lambda in &lambdas {
            let l_strip = lambda.difference(&nu);
            for mu_t in &mu_ts {
                out.push(MarkedDiagram {
                    core: nu.clone(),
                    l_strip: l_strip.clone(),
                    r_strip: mu_t.difference(&nu),
                });
            }
        }
    }
    out
}
