//! Torus characters of `GL(U) × GL(V)` representations and the symmetric
//! function machinery needed to split them into irreducibles: Kostka
//! numbers, Pieri strips, the Cauchy decomposition of exterior powers and
//! Littlewood-Richardson coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::marked::WeightPair;
use crate::partitions::{enumerate_partitions, Partition};

/// A weight of the diagonal torus of `GL(d)`.
pub type Weight = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("leading weight {0:?} is not dominant")]
    NonDominantLeader((Weight, Weight)),
    #[error("peeling drove the multiplicity of {0:?} negative")]
    NegativeMultiplicity((Weight, Weight)),
}

/// All `μ ⊇ λ` such that `μ/λ` is a horizontal strip of size `k` (at most
/// one new box per column), with at most `max_height` rows.
/// Output is in descending lexicographic order.
pub fn pieri_row(lambda: &Partition, k: usize, max_height: usize) -> Vec<Partition> {
    let rows = lambda.rows();
    let h = (rows.len() + 1).min(max_height);
    if rows.len() > max_height {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(h);
    fn go(
        i: usize,
        remaining: usize,
        h: usize,
        rows: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        let base = rows.get(i).copied().unwrap_or(0);
        if i == h {
            if remaining == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing rows decrease"));
            }
            return;
        }
        // Row i may grow up to the old length of row i-1.
        let cap = if i == 0 { base + remaining } else { rows[i - 1] };
        let hi = cap.min(base + remaining);
        for len in (base..=hi).rev() {
            cur.push(len);
            go(i + 1, remaining - (len - base), h, rows, cur, out);
            cur.pop();
        }
    }
    go(0, k, h, rows, &mut cur, &mut out);
    out
}

/// All `μ ⊇ λ` with `μ/λ` a vertical strip of size `k` (at most one new box
/// per row) and at most `max_width` columns.
pub fn pieri_column(lambda: &Partition, k: usize, max_width: usize) -> Vec<Partition> {
    pieri_row(&lambda.conjugate(), k, max_width)
        .into_iter()
        .map(|p| p.conjugate())
        .collect()
}

/// Number of semistandard tableaux of shape `λ` and the given content.
pub fn kostka(lambda: &Partition, content: &[u32]) -> u64 {
    let total: u64 = content.iter().map(|&c| c as u64).sum();
    if total != lambda.weight() as u64 {
        return 0;
    }
    // Remove the largest entry as a horizontal strip and recurse.
    fn go(shape: &Partition, content: &[u32]) -> u64 {
        match content.split_last() {
            None => u64::from(shape.is_empty()),
            Some((&last, rest)) => {
                let last = last as usize;
                if last > shape.weight() {
                    return 0;
                }
                inner_horizontal_strips(shape, last)
                    .iter()
                    .map(|inner| go(inner, rest))
                    .sum()
            }
        }
    }
    go(lambda, content)
}

/// Partitions `ν ⊆ λ` with `λ/ν` a horizontal strip of size `k`.
fn inner_horizontal_strips(lambda: &Partition, k: usize) -> Vec<Partition> {
    let rows = lambda.rows();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(rows.len());
    fn go(i: usize, remaining: usize, rows: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rows.len() {
            if remaining == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing rows decrease"));
            }
            return;
        }
        let floor = rows.get(i + 1).copied().unwrap_or(0);
        let max_take = (rows[i] - floor).min(remaining);
        for take in 0..=max_take {
            cur.push(rows[i] - take);
            go(i + 1, remaining - take, rows, cur, out);
            cur.pop();
        }
    }
    go(0, k, rows, &mut cur, &mut out);
    out
}

/// Distinct rearrangements of a vector, in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Weight> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = alloc::vec![cur.clone()];
    // Standard next-permutation walk.
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Number of distinct rearrangements of `v`.
pub fn orbit_size(v: &[u32]) -> u64 {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_default() += 1;
    }
    let mut acc: u128 = 1;
    let mut placed: u64 = 0;
    for c in counts.values() {
        for i in 1..=*c {
            placed += 1;
            acc = acc * placed as u128 / i as u128;
        }
    }
    acc as u64
}

/// Weight multiplicities of the Schur module `Σ_λ` of a `d`-dimensional space.
pub fn schur_character(lambda: &Partition, d: usize) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    if lambda.height() > d {
        return out;
    }
    let w = lambda.weight();
    for mu in enumerate_partitions(w, d, w) {
        let content = mu.to_weight(d).expect("height bounded by d");
        let k = kostka(lambda, &content);
        if k == 0 {
            continue;
        }
        for perm in distinct_permutations(&content) {
            out.insert(perm, k);
        }
    }
    out
}

/// A finite torus character of `GL(m) × GL(n)` stored weight by weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    m: usize,
    n: usize,
    entries: BTreeMap<(Weight, Weight), u64>,
}

impl Character {
    pub fn new(m: usize, n: usize) -> Self {
        Character {
            m,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn entries(&self) -> &BTreeMap<(Weight, Weight), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, wu: &[u32], wv: &[u32]) -> u64 {
        self.entries
            .get(&(wu.to_vec(), wv.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn add(&mut self, wu: Weight, wv: Weight, mult: u64) {
        assert_eq!((wu.len(), wv.len()), (self.m, self.n), "weight length mismatch");
        if mult > 0 {
            *self.entries.entry((wu, wv)).or_default() += mult;
        }
    }

    /// Adds `mult` to every rearrangement of `(wu, wv)` within each factor.
    pub fn add_orbit(&mut self, wu: &[u32], wv: &[u32], mult: u64) {
        if mult == 0 {
            return;
        }
        let us = distinct_permutations(wu);
        let vs = distinct_permutations(wv);
        for u in &us {
            for v in &vs {
                self.add(u.clone(), v.clone(), mult);
            }
        }
    }

    pub fn merge(&mut self, other: &Character) {
        for ((u, v), k) in &other.entries {
            self.add(u.clone(), v.clone(), *k);
        }
    }

    /// Total dimension.
    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Whether multiplicities are invariant under permuting coordinates
    /// within each factor.
    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|((u, v), k)| {
            distinct_permutations(u).iter().all(|pu| {
                distinct_permutations(v)
                    .iter()
                    .all(|pv| self.multiplicity(pu, pv) == *k)
            })
        })
    }
}

/// Character of `Σ_λ U ⊗ Σ_μ V` with `dim U = m`, `dim V = n`.
pub fn schur_pair_character(omega: &WeightPair, m: usize, n: usize) -> Character {
    let mut ch = Character::new(m, n);
    let cu = schur_character(&omega.lambda, m);
    let cv = schur_character(&omega.mu, n);
    for (u, ku) in &cu {
        for (v, kv) in &cv {
            ch.add(u.clone(), v.clone(), ku * kv);
        }
    }
    ch
}

/// Multiplicities of irreducibles `Σ_λ U ⊗ Σ_μ V`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IrrDecomposition(pub BTreeMap<WeightPair, u64>);

impl IrrDecomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, omega: WeightPair, mult: u64) {
        if mult > 0 {
            *self.0.entry(omega).or_default() += mult;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightPair, &u64)> {
        self.0.iter()
    }

    pub fn dimension(&self, m: usize, n: usize) -> u64 {
        use crate::partitions::schur_dimension;
        self.0
            .iter()
            .map(|(w, k)| k * schur_dimension(&w.lambda, m) * schur_dimension(&w.mu, n))
            .sum()
    }

    /// The character `Σ mult · χ(λ, μ)`.
    pub fn character(&self, m: usize, n: usize) -> Character {
        let mut ch = Character::new(m, n);
        for (w, k) in &self.0 {
            let c = schur_pair_character(w, m, n);
            for ((u, v), x) in c.entries {
                ch.add(u, v, x * k);
            }
        }
        ch
    }
}

impl FromIterator<(WeightPair, u64)> for IrrDecomposition {
    fn from_iter<I: IntoIterator<Item = (WeightPair, u64)>>(iter: I) -> Self {
        let mut d = IrrDecomposition::new();
        for (w, k) in iter {
            d.add(w, k);
        }
        d
    }
}

fn is_dominant(w: &[u32]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// Splits a character into irreducibles by repeatedly peeling off the
/// irreducible whose highest weight is the lexicographically largest weight
/// still present.
pub fn decompose(chi: &Character) -> Result<IrrDecomposition, CharacterError> {
    let (m, n) = chi.dims();
    let mut rest: BTreeMap<(Weight, Weight), i128> = chi
        .entries
        .iter()
        .map(|(k, &v)| (k.clone(), v as i128))
        .collect();
    let mut out = IrrDecomposition::new();
    while let Some((lead, &mult)) = rest.iter().next_back() {
        let lead = lead.clone();
        if mult < 0 {
            return Err(CharacterError::NegativeMultiplicity(lead));
        }
        if !is_dominant(&lead.0) || !is_dominant(&lead.1) {
            return Err(CharacterError::NonDominantLeader(lead));
        }
        let omega = WeightPair::new(
            Partition::new(lead.0.iter().map(|&x| x as usize).collect()).expect("dominant"),
            Partition::new(lead.1.iter().map(|&x| x as usize).collect()).expect("dominant"),
        );
        let irr = schur_pair_character(&omega, m, n);
        for (w, k) in irr.entries {
            let slot = rest.entry(w.clone()).or_insert(0);
            *slot -= mult * k as i128;
            if *slot < 0 {
                return Err(CharacterError::NegativeMultiplicity(w));
            }
            if *slot == 0 {
                rest.remove(&w);
            }
        }
        out.add(omega, mult as u64);
    }
    Ok(out)
}

/// `Λ^w(U ⊗ V) = ⊕_{|ν| = w} Σ_ν U ⊗ Σ_ν' V` for `dim U = m`, `dim V = n`.
pub fn cauchy_wedge(w: usize, m: usize, n: usize) -> IrrDecomposition {
    enumerate_partitions(w, m, n)
        .into_iter()
        .map(|nu| {
            let t = nu.conjugate();
            (WeightPair::new(nu, t), 1)
        })
        .collect()
}

/// Counts Littlewood-Richardson tableaux of shape `ν/λ` and content `μ`:
/// rows weakly increase, columns strictly increase, and the reverse reading
/// word (right to left, top to bottom) is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.weight() != lambda.weight() + mu.weight()
        || !nu.contains_partition(lambda)
        || !nu.contains_partition(mu)
    {
        return 0;
    }
    // Cells of ν/λ in reading order.
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for y in 0..nu.height() {
        for x in (lambda.row_len(y)..nu.row_len(y)).rev() {
            cells.push((x, y));
        }
    }
    let width = nu.width();
    let height = nu.height();
    let mut grid = alloc::vec![0u8; width * height];
    let mut used = alloc::vec![0usize; mu.height() + 1];
    let content = mu.rows();

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut [u8],
        used: &mut [usize],
        content: &[usize],
        lambda: &Partition,
        width: usize,
    ) -> u64 {
        let Some(&(x, y)) = cells.get(idx) else {
            return 1;
        };
        let mut lo = 1u8;
        let mut hi = content.len() as u8;
        // Weakly increasing along the row: bounded by the cell to the right.
        if x + 1 < width && grid[y * width + x + 1] != 0 {
            hi = hi.min(grid[y * width + x + 1]);
        }
        // Strictly increasing down the column, unless the cell above is in λ.
        if y > 0 && x >= lambda.row_len(y - 1) {
            lo = lo.max(grid[(y - 1) * width + x] + 1);
        }
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if used[vi] >= content[vi - 1] {
                continue;
            }
            if vi > 1 && used[vi] + 1 > used[vi - 1] {
                continue;
            }
            used[vi] += 1;
            grid[y * width + x] = v;
            total += go(idx + 1, cells, grid, used, content, lambda, width);
            grid[y * width + x] = 0;
            used[vi] -= 1;
        }
        total
    }
    if mu.is_empty() {
        return u64::from(lambda == nu);
    }
    go(0, &cells, &mut grid, &mut used, content, lambda, width)
}

/// Source of Littlewood-Richardson coefficients; lets callers plug in a
/// memoizing implementation.
pub trait LrSource {
    fn lr(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64;
}

/// Computes every coefficient from scratch.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectLr;

impl LrSource for DirectLr {
    fn lr(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        lr_coefficient(lambda, mu, nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::schur_dimension;
    use alloc::vec;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[4]), &[4]), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[2, 0]), 0);
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1]), 0);
        assert_eq!(kostka(&p(&[3, 2]), &[1, 1, 1, 1, 1]), 5);
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_row(&p(&[1]), 1, 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(pieri_row(&p(&[1]), 2, 2), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(pieri_row(&Partition::empty(), 3, 5), vec![p(&[3])]);
        assert_eq!(pieri_row(&p(&[1]), 1, 1), vec![p(&[2])]);
        assert_eq!(pieri_column(&p(&[1]), 1, 1), vec![p(&[1, 1])]);
    }

    #[test]
    fn cauchy_examples() {
        let d = cauchy_wedge(2, 2, 3);
        let expect: IrrDecomposition = [
            (WeightPair::new(p(&[2]), p(&[1, 1])), 1),
            (WeightPair::new(p(&[1, 1]), p(&[2])), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
        assert_eq!(d.dimension(2, 3), 15);
        assert_eq!(cauchy_wedge(1, 3, 4).0.len(), 1);
        let top = cauchy_wedge(6, 2, 3);
        assert_eq!(top.0.keys().next().unwrap(), &WeightPair::new(p(&[3, 3]), p(&[2, 2, 2])));
        assert_eq!(top.dimension(2, 3), 1);
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[2, 1]), &p(&[2, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[2, 2])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1, 1]), &p(&[2, 2])), 0);
        assert_eq!(lr_coefficient(&Partition::empty(), &p(&[2]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2]), &Partition::empty(), &p(&[2])), 1);
    }

    #[test]
    fn schur_pair_character_examples() {
        let one = WeightPair::new(p(&[1]), p(&[1]));
        let ch = schur_pair_character(&one, 2, 2);
        assert_eq!(ch.entries().len(), 4);
        assert!(ch.entries().values().all(|&k| k == 1));
        let ch = schur_pair_character(&WeightPair::new(p(&[2, 1]), Partition::empty()), 3, 1);
        assert_eq!(ch.mass(), 8);
        assert!(ch.is_symmetric());
    }

    #[test]
    fn decompose_round_trips() {
        let omega = WeightPair::new(p(&[2, 1]), p(&[3]));
        let ch = schur_pair_character(&omega, 3, 2);
        let d = decompose(&ch).unwrap();
        assert_eq!(d.0.len(), 1);
        assert_eq!(d.0[&omega], 1);
        assert!(decompose(&Character::new(2, 2)).unwrap().is_empty());
    }

    #[test]
    fn decompose_wedge_character() {
        // Λ²(k² ⊗ k³) built directly from pairs of basis vectors.
        let mut ch = Character::new(2, 3);
        let basis: Vec<(usize, usize)> = (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let mut u = vec![0u32; 2];
                let mut v = vec![0u32; 3];
                for &(i, j) in &[basis[a], basis[b]] {
                    u[i] += 1;
                    v[j] += 1;
                }
                ch.add(u, v, 1);
            }
        }
        assert_eq!(decompose(&ch).unwrap(), cauchy_wedge(2, 2, 3));
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let mut ch = Character::new(2, 1);
        ch.add(vec![0, 1], vec![1], 1);
        assert!(matches!(decompose(&ch), Err(CharacterError::NonDominantLeader(_))));
        let mut ch = Character::new(2, 1);
        ch.add(vec![2, 0], vec![2], 1);
        assert!(matches!(decompose(&ch), Err(CharacterError::NegativeMultiplicity(_))));
    }

    #[test]
    fn permutations_and_orbits() {
        assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
        assert_eq!(orbit_size(&[1, 0, 1]), 3);
        assert_eq!(orbit_size(&[2, 1, 0, 0]), 12);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn schur_character_mass_is_dimension() {
        for w in 0..6 {
            for lam in enumerate_partitions(w, 4, w) {
                for d in 1..5 {
                    let mass: u64 = schur_character(&lam, d).values().sum();
                    assert_eq!(mass, schur_dimension(&lam, d));
                }
            }
        }
    }
}
