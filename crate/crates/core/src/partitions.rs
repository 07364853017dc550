//! Young diagrams and the operators used by the syzygy formulas.
//!
//! Coordinates are `(x, y)` with `x` the column and `y` the row, both
//! 0-based, and diagrams are drawn down and to the right from `(0, 0)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("row lengths must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("cell set is not a Young diagram")]
    NotADiagram,
}

/// A box of the plane. Negative coordinates only occur when probing
/// diagonals that start outside the quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: isize,
    pub y: isize,
}

impl Cell {
    pub const fn new(x: isize, y: isize) -> Self {
        Cell { x, y }
    }

    pub const fn below(self) -> Cell {
        Cell::new(self.x, self.y + 1)
    }

    pub const fn right(self) -> Cell {
        Cell::new(self.x + 1, self.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A partition stored as its weakly decreasing positive row lengths.
///
/// The derived ordering is lexicographic on the row sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    rows: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zero rows.
    pub fn new(mut rows: Vec<usize>) -> Result<Self, PartitionError> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(rows));
        }
        Ok(Partition { rows })
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// The one-row partition `(k)`; empty for `k = 0`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition { rows: alloc::vec![k] }
        }
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition { rows: alloc::vec![1; k] }
    }

    /// Reads a diagram off a finite set of cells with nonnegative coordinates.
    pub fn from_cells<'a, I>(cells: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = &'a Cell>,
    {
        let mut rows: Vec<usize> = Vec::new();
        let mut count = 0usize;
        for c in cells {
            if c.x < 0 || c.y < 0 {
                return Err(PartitionError::NotADiagram);
            }
            let y = c.y as usize;
            if rows.len() <= y {
                rows.resize(y + 1, 0);
            }
            rows[y] = rows[y].max(c.x as usize + 1);
            count += 1;
        }
        let p = Partition::new(rows).map_err(|_| PartitionError::NotADiagram)?;
        // Every row must be filled from the left, i.e. no holes.
        if p.weight() != count {
            return Err(PartitionError::NotADiagram);
        }
        Ok(p)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Length of the first row.
    pub fn width(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Row length, zero past the last row.
    pub fn row_len(&self, y: usize) -> usize {
        self.rows.get(y).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as usize) < self.row_len(c.y as usize)
    }

    /// Membership in the diagram extended by every cell with a negative
    /// coordinate.
    pub fn contains_extended(&self, c: Cell) -> bool {
        c.x < 0 || c.y < 0 || self.contains(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(y, &len)| (0..len).map(move |x| Cell::new(x as isize, y as isize)))
    }

    pub fn cell_set(&self) -> BTreeSet<Cell> {
        self.cells().collect()
    }

    /// Column heights, i.e. the rows of the conjugate.
    pub fn column_heights(&self) -> Vec<usize> {
        let w = self.width();
        (0..w)
            .map(|x| self.rows.iter().take_while(|&&r| r > x).count())
            .collect()
    }

    pub fn conjugate(&self) -> Partition {
        Partition {
            rows: self.column_heights(),
        }
    }

    /// Number of boxes `(k, k)` on the main diagonal.
    pub fn diagonal_length(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .take_while(|&(i, &r)| r > i)
            .count()
    }

    /// Number of `k >= 0` such that `(a + k, b + k)` lies in the diagram
    /// extended by all cells with a negative coordinate.
    ///
    /// Membership along such a diagonal is prefix closed, so this is also
    /// one more than the largest qualifying `k`.
    pub fn shifted_diagonal_length(&self, a: isize, b: isize) -> usize {
        let mut k = 0usize;
        while self.contains_extended(Cell::new(a + k as isize, b + k as isize)) {
            k += 1;
        }
        k
    }

    /// Adds one box at the bottom of each of the first `k` columns.
    /// Columns past the width become new columns of height one.
    pub fn extend_columns(&self, k: usize) -> Partition {
        let mut cols = self.column_heights();
        if cols.len() < k {
            cols.resize(k, 0);
        }
        for h in cols.iter_mut().take(k) {
            *h += 1;
        }
        // `cols` is still weakly decreasing, so it is a valid conjugate.
        Partition { rows: cols }.conjugate()
    }

    pub fn contains_partition(&self, other: &Partition) -> bool {
        other.height() <= self.height()
            && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// Boxwise intersection.
    pub fn intersect(&self, other: &Partition) -> Partition {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| a.min(b))
            .filter(|&r| r > 0)
            .collect();
        Partition { rows }
    }

    /// Boxwise union.
    pub fn union(&self, other: &Partition) -> Partition {
        let h = self.height().max(other.height());
        Partition {
            rows: (0..h).map(|y| self.row_len(y).max(other.row_len(y))).collect(),
        }
    }

    /// Cells of `self` that are not in `other`.
    pub fn difference(&self, other: &Partition) -> BTreeSet<Cell> {
        self.cells().filter(|c| !other.contains(*c)).collect()
    }

    /// Integer vector of length `len`, padded with zeros.
    pub fn to_weight(&self, len: usize) -> Option<Vec<u32>> {
        if self.height() > len {
            return None;
        }
        let mut w: Vec<u32> = self.rows.iter().map(|&r| r as u32).collect();
        w.resize(len, 0);
        Some(w)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(rows: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(rows)
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Dimension of the Schur module of `λ` over a `d`-dimensional space,
/// by the hook-content formula. Zero when `λ` has more than `d` rows.
pub fn schur_dimension(lambda: &Partition, d: usize) -> u64 {
    if lambda.height() > d {
        return 0;
    }
    let cols = lambda.column_heights();
    let mut numer: Vec<u128> = Vec::with_capacity(lambda.weight());
    let mut denom: Vec<u128> = Vec::with_capacity(lambda.weight());
    for c in lambda.cells() {
        let (x, y) = (c.x as usize, c.y as usize);
        numer.push((d + x - y) as u128);
        let arm = lambda.row_len(y) - x - 1;
        let leg = cols[x] - y - 1;
        denom.push((arm + leg + 1) as u128);
    }
    // Cancel each hook against the content factors; the quotient is integral.
    for mut h in denom {
        for n in numer.iter_mut() {
            if h == 1 {
                break;
            }
            let g = gcd(*n, h);
            *n /= g;
            h /= g;
        }
        debug_assert_eq!(h, 1);
    }
    let dim: u128 = numer.iter().product();
    u64::try_from(dim).expect("Schur dimension overflows u64")
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Binomial `C(n, k)` with `n` possibly negative, read as zero then.
pub fn binomial_signed(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

/// All partitions of `w` fitting in a `max_height × max_width` box, in
/// descending lexicographic order of their row sequences.
pub fn enumerate_partitions(w: usize, max_height: usize, max_width: usize) -> Vec<Partition> {
    fn go(
        remaining: usize,
        cap: usize,
        rows_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition { rows: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for r in (1..=cap.min(remaining)).rev() {
            // The remaining rows can hold at most r * rows_left boxes.
            if r.saturating_mul(rows_left) < remaining {
                break;
            }
            cur.push(r);
            go(remaining - r, r, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, max_width, max_height, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn rejects_increasing_rows() {
        assert!(matches!(
            Partition::new(vec![1, 2]),
            Err(PartitionError::NotDecreasing(_))
        ));
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[5, 4, 4, 2]).conjugate(), p(&[4, 4, 3, 3, 1]));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(Partition::empty().diagonal_length(), 0);
        assert_eq!(p(&[2, 1]).diagonal_length(), 1);
        assert_eq!(p(&[2, 2]).diagonal_length(), 2);
    }

    #[test]
    fn shifted_diagonal_examples() {
        assert_eq!(p(&[5, 4, 4, 2]).shifted_diagonal_length(-2, -1), 4);
        assert_eq!(Partition::empty().shifted_diagonal_length(-1, 1), 1);
        assert_eq!(Partition::empty().shifted_diagonal_length(0, 0), 0);
        assert_eq!(p(&[3, 3, 3]).shifted_diagonal_length(1, 1), 2);
    }

    #[test]
    fn extend_columns_examples() {
        assert_eq!(p(&[5, 4, 4, 2]).extend_columns(2), p(&[5, 4, 4, 2, 2]));
        assert_eq!(p(&[4, 4, 3, 3, 1]).extend_columns(3), p(&[4, 4, 3, 3, 3, 1]));
        assert_eq!(p(&[3, 1]).extend_columns(0), p(&[3, 1]));
        assert_eq!(Partition::empty().extend_columns(2), p(&[2]));
        // Past the width new columns appear in the first row.
        assert_eq!(p(&[1]).extend_columns(3), p(&[3, 1]));
    }

    #[test]
    fn schur_dimension_examples() {
        assert_eq!(schur_dimension(&p(&[2, 1]), 3), 8);
        assert_eq!(schur_dimension(&p(&[2, 2, 2]), 4), 10);
        for d in 0..7 {
            for k in 0..=d + 1 {
                assert_eq!(schur_dimension(&Partition::column(k), d), binomial(d as u64, k as u64));
            }
        }
        assert_eq!(schur_dimension(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(schur_dimension(&Partition::empty(), 0), 1);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_partitions(2, 2, 3), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(enumerate_partitions(0, 3, 4), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4, 2, 2), vec![p(&[2, 2])]);
        assert_eq!(enumerate_partitions(5, usize::MAX, usize::MAX).len(), 7);
    }

    #[test]
    fn from_cells_detects_holes() {
        let cells = [Cell::new(0, 0), Cell::new(2, 0)];
        assert_eq!(Partition::from_cells(&cells), Err(PartitionError::NotADiagram));
        let cells = [Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)];
        assert_eq!(Partition::from_cells(&cells).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn set_operations() {
        let l = p(&[3, 1]);
        let m = p(&[2, 2]);
        assert_eq!(l.intersect(&m), p(&[2, 1]));
        assert_eq!(l.union(&m), p(&[3, 2]));
        assert_eq!(
            l.difference(&m).into_iter().collect::<Vec<_>>(),
            vec![Cell::new(2, 0)]
        );
    }
}
