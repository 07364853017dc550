//! Ranks of small integer matrices: modular elimination over two primes
//! near `2^31`, with an exact fraction-free fallback.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

pub const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    /// Two primes; exact elimination only when they disagree.
    Modular,
    /// Always run exact elimination as well.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rank disagreement: modular ranks {modular:?}, exact rank {exact}")]
pub struct RankDisagreement {
    pub modular: [usize; 2],
    pub exact: usize,
}

/// A matrix with small integer entries, stored column by column as
/// `(row, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix {
            rows,
            columns: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn push_column(&mut self, col: Vec<(usize, i64)>) {
        debug_assert!(col.iter().all(|&(r, _)| r < self.rows));
        self.columns.push(col);
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] += v;
            }
        }
        out
    }
}

fn pow_mod(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    x %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % p;
        }
        x = x * x % p;
        e >>= 1;
    }
    acc
}

/// Rank over `GF(p)` for a prime `p < 2^32`.
pub fn rank_mod(m: &SparseMatrix, p: u64) -> usize {
    if m.rows == 0 || m.cols() == 0 {
        return 0;
    }
    // Eliminate along the shorter side: rows of `a` are the longer vectors.
    let (short, long) = if m.cols() <= m.rows {
        (m.cols(), m.rows)
    } else {
        (m.rows, m.cols())
    };
    let mut a = vec![vec![0u64; long]; short];
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            let (r, c) = if m.cols() <= m.rows { (j, i) } else { (i, j) };
            a[r][c] = (a[r][c] + reduce(v)) % p;
        }
    }
    let mut rank = 0;
    for c in 0..long {
        let Some(piv) = (rank..short).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let pivot_row: Vec<u64> = a[rank].iter().map(|&x| x * inv % p).collect();
        for r in rank + 1..short {
            let f = a[r][c];
            if f == 0 {
                continue;
            }
            let row = &mut a[r];
            for k in c..long {
                if pivot_row[k] != 0 {
                    row[k] = (row[k] + (p - f) * pivot_row[k]) % p;
                }
            }
        }
        a[rank] = pivot_row;
        rank += 1;
        if rank == short {
            break;
        }
    }
    rank
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    let dense = m.to_dense();
    let rows = m.rows;
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = dense
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != zero) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = zero.clone();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank with its audit trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub modular: [usize; 2],
    pub exact: Option<usize>,
}

impl RankResult {
    pub fn primes_agree(&self) -> bool {
        self.modular[0] == self.modular[1]
    }
}

pub fn block_rank(m: &SparseMatrix, mode: RankMode) -> Result<RankResult, RankDisagreement> {
    if m.is_zero() {
        return Ok(RankResult {
            rank: 0,
            modular: [0, 0],
            exact: (mode == RankMode::Exact).then_some(0),
        });
    }
    let modular = [rank_mod(m, PRIMES[0]), rank_mod(m, PRIMES[1])];
    let need_exact = mode == RankMode::Exact || modular[0] != modular[1];
    if !need_exact {
        return Ok(RankResult {
            rank: modular[0],
            modular,
            exact: None,
        });
    }
    let exact = rank_exact(m);
    // A modular rank never exceeds the rational rank.
    if exact < modular[0].max(modular[1]) {
        return Err(RankDisagreement { modular, exact });
    }
    Ok(RankResult {
        rank: exact,
        modular,
        exact: Some(exact),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = SparseMatrix::new(r);
        for j in 0..c {
            m.push_column((0..r).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect());
        }
        m
    }

    #[test]
    fn trivial_ranks() {
        let z = from_dense(&[&[0, 0], &[0, 0]]);
        assert_eq!(block_rank(&z, RankMode::Modular).unwrap().rank, 0);
        let one = from_dense(&[&[0], &[1], &[0]]);
        assert_eq!(block_rank(&one, RankMode::Exact).unwrap().rank, 1);
        assert_eq!(rank_mod(&SparseMatrix::new(4), PRIMES[0]), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = from_dense(&[&[1, -1, 0, 2], &[0, 1, -1, 1], &[1, 0, -1, 3], &[2, -1, -1, 5]]);
        for mode in [RankMode::Modular, RankMode::Exact] {
            let r = block_rank(&m, mode).unwrap();
            assert_eq!(r.rank, 2);
            assert!(r.primes_agree());
        }
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn wide_and_tall_agree() {
        let m = from_dense(&[&[1, 1, 0, 0, 1], &[0, 1, 1, 0, 0], &[1, 0, -1, 0, 1]]);
        let t = {
            let d = m.to_dense();
            let rows: Vec<Vec<i64>> = (0..5).map(|j| (0..3).map(|i| d[i][j]).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            from_dense(&refs)
        };
        assert_eq!(rank_mod(&m, PRIMES[0]), rank_mod(&t, PRIMES[0]));
        assert_eq!(rank_exact(&m), rank_exact(&t));
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn characteristic_dependence_is_visible() {
        // det = 2, so the rank drops mod 2 but not over Q.
        let m = from_dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(rank_mod(&m, 2), 1);
        assert_eq!(rank_exact(&m), 2);
    }
}
