//! Brute-force Koszul complex of `M = ⊕_{k≥0} Sym^{a+k} U* ⊗ Sym^{b+k} V*`
//! over `Sym(U* ⊗ V*)`, one internal degree at a time.
//!
//! Term `p` of the strand in internal degree `t` is
//! `Λ^p(U* ⊗ V*) ⊗ Sym^{a+t-p} U* ⊗ Sym^{b+t-p} V*`. A torus weight
//! `(wU, wV)` fixes `α = wU - rows(S)` and `β = wV - cols(S)`, so inside a
//! weight block a basis element is just the subset `S ⊆ [m] × [n]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::characters::{decompose, orbit_size, Character, CharacterError, IrrDecomposition, Weight};
use crate::engine::{sheaf_syzygies, BettiTable, EngineError};
use crate::partitions::{binomial_signed, enumerate_partitions};
use crate::rank::{block_rank, RankDisagreement, RankMode, SparseMatrix, PRIMES};

/// Default cap on the predicted number of basis elements of one strand.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("strand too large: predicted {predicted} basis elements, budget {budget}")]
    BudgetExceeded { predicted: u64, budget: u64 },
    #[error("at most 31 variables supported, got m*n = {0}")]
    TooManyVariables(usize),
    #[error(transparent)]
    Rank(#[from] RankDisagreement),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandSpec {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub t: usize,
}

impl StrandSpec {
    pub fn new(m: usize, n: usize, a: i64, b: i64, t: usize) -> Self {
        StrandSpec { m, n, a, b, t }
    }

    /// Largest homological degree with a possibly nonzero term.
    pub fn max_p(&self) -> usize {
        self.t.min(self.m * self.n)
    }

    /// `dim` of term `p`, from the closed formula.
    pub fn term_dim(&self, p: usize) -> u64 {
        let (m, n) = (self.m as i64, self.n as i64);
        let k = self.t as i64 - p as i64;
        if k < 0 || self.a + k < 0 || self.b + k < 0 {
            return 0;
        }
        binomial_signed(m * n, p as i64)
            * binomial_signed(m - 1 + self.a + k, m - 1)
            * binomial_signed(n - 1 + self.b + k, n - 1)
    }

    pub fn term_dims(&self) -> Vec<u64> {
        (0..=self.max_p()).map(|p| self.term_dim(p)).collect()
    }

    pub fn predicted_size(&self) -> u64 {
        self.term_dims().iter().sum()
    }

    fn degree_u(&self) -> Option<u32> {
        u32::try_from(self.a + self.t as i64).ok()
    }

    fn degree_v(&self) -> Option<u32> {
        u32::try_from(self.b + self.t as i64).ok()
    }
}

/// Which torus weights a strand materializes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockScope {
    /// Every weight.
    All,
    /// Weakly decreasing weights only, each standing for its `S_m × S_n` orbit.
    Dominant,
}

/// The part of a strand of one torus weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBlock {
    pub wu: Weight,
    pub wv: Weight,
    /// Number of weights this block represents.
    pub orbit: u64,
    /// `terms[p]`: subsets `S` with `|S| = p` as bit masks (bit `i*n + j`),
    /// increasing.
    pub terms: Vec<Vec<u32>>,
}

impl WeightBlock {
    pub fn term_dims(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.len() as u64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub spec: StrandSpec,
    pub scope: BlockScope,
    pub blocks: Vec<WeightBlock>,
}

/// All vectors of `parts` nonnegative integers summing to `total`,
/// in decreasing lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Weight> {
    fn go(total: u32, parts: usize, prefix: &mut Weight, out: &mut Vec<Weight>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    } else if total == 0 {
        out.push(Vec::new());
    }
    out
}

fn dominant_weights(total: u32, parts: usize) -> Vec<Weight> {
    enumerate_partitions(total as usize, parts, total as usize)
        .iter()
        .filter_map(|p| p.to_weight(parts))
        .collect()
}

fn row_col_counts(mask: u32, m: usize, n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut rows = vec![0u32; m];
    let mut cols = vec![0u32; n];
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        rows[k / n] += 1;
        cols[k % n] += 1;
        bits &= bits - 1;
    }
    (rows, cols)
}

fn fits(mask: u32, wu: &[u32], wv: &[u32], n: usize) -> bool {
    let (rows, cols) = row_col_counts(mask, wu.len(), n);
    rows.iter().zip(wu).all(|(r, w)| r <= w) && cols.iter().zip(wv).all(|(c, w)| c <= w)
}

/// Subsets of `[0, vars)` of size `p`, increasing as integers.
fn subsets_of_size(vars: usize, p: usize) -> Vec<u32> {
    if p > vars {
        return Vec::new();
    }
    if p == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u32 = (1u32 << p) - 1;
    let limit: u64 = 1u64 << vars;
    while (s as u64) < limit {
        out.push(s);
        // Gosper's hack.
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

pub fn build_strand(spec: StrandSpec, scope: BlockScope, budget: u64) -> Result<Strand, OracleError> {
    let vars = spec.m * spec.n;
    if vars > 31 {
        return Err(OracleError::TooManyVariables(vars));
    }
    let predicted = spec.predicted_size();
    if predicted > budget {
        return Err(OracleError::BudgetExceeded { predicted, budget });
    }
    let (Some(du), Some(dv)) = (spec.degree_u(), spec.degree_v()) else {
        return Ok(Strand {
            spec,
            scope,
            blocks: Vec::new(),
        });
    };
    let (us, vs) = match scope {
        BlockScope::All => (compositions(du, spec.m), compositions(dv, spec.n)),
        BlockScope::Dominant => (dominant_weights(du, spec.m), dominant_weights(dv, spec.n)),
    };
    let by_size: Vec<Vec<u32>> = (0..=spec.max_p()).map(|p| subsets_of_size(vars, p)).collect();
    let mut blocks = Vec::new();
    for wu in &us {
        for wv in &vs {
            let terms: Vec<Vec<u32>> = by_size
                .iter()
                .map(|ss| ss.iter().copied().filter(|&s| fits(s, wu, wv, spec.n)).collect())
                .collect();
            let orbit = match scope {
                BlockScope::All => 1,
                BlockScope::Dominant => orbit_size(wu) * orbit_size(wv),
            };
            blocks.push(WeightBlock {
                wu: wu.clone(),
                wv: wv.clone(),
                orbit,
                terms,
            });
        }
    }
    Ok(Strand { spec, scope, blocks })
}

/// `w_S ⊗ x^α ⊗ y^β`, with `S` a sorted list of pairs `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub s: Vec<(usize, usize)>,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl BasisElement {
    pub fn weight(&self) -> (Weight, Weight) {
        let mut wu = self.alpha.clone();
        let mut wv = self.beta.clone();
        for &(i, j) in &self.s {
            wu[i] += 1;
            wv[j] += 1;
        }
        (wu, wv)
    }

    pub fn p(&self) -> usize {
        self.s.len()
    }
}

fn mask_to_pairs(mask: u32, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        out.push((k / n, k % n));
        bits &= bits - 1;
    }
    out
}

fn element_of(block: &WeightBlock, mask: u32, n: usize) -> BasisElement {
    let m = block.wu.len();
    let (rows, cols) = row_col_counts(mask, m, n);
    BasisElement {
        s: mask_to_pairs(mask, n),
        alpha: block.wu.iter().zip(&rows).map(|(w, r)| w - r).collect(),
        beta: block.wv.iter().zip(&cols).map(|(w, c)| w - c).collect(),
    }
}

impl Strand {
    /// Dimensions of the terms actually materialized, orbits expanded.
    pub fn term_dims(&self) -> Vec<u64> {
        let mut dims = vec![0u64; self.spec.max_p() + 1];
        for b in &self.blocks {
            for (p, t) in b.terms.iter().enumerate() {
                dims[p] += b.orbit * t.len() as u64;
            }
        }
        dims
    }

    /// Materialized basis of term `p`, sorted lexicographically on `(S, α, β)`.
    pub fn basis(&self, p: usize) -> Vec<BasisElement> {
        let mut out: Vec<BasisElement> = self
            .blocks
            .iter()
            .flat_map(|b| {
                b.terms
                    .get(p)
                    .into_iter()
                    .flatten()
                    .map(move |&s| element_of(b, s, self.spec.n))
            })
            .collect();
        out.sort();
        out
    }
}

/// Koszul differential: `Σ_{(i,j) ∈ S} (-1)^{pos} w_{S∖(i,j)} ⊗ x^{α+e_i} ⊗ y^{β+e_j}`.
pub fn differential(e: &BasisElement) -> Vec<(i64, BasisElement)> {
    e.s.iter()
        .enumerate()
        .map(|(pos, &(i, j))| {
            let mut s = e.s.clone();
            s.remove(pos);
            let mut alpha = e.alpha.clone();
            let mut beta = e.beta.clone();
            alpha[i] += 1;
            beta[j] += 1;
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            (sign, BasisElement { s, alpha, beta })
        })
        .collect()
}

/// Matrix of `d: terms[p] → terms[p-1]` inside one block.
pub fn block_matrix(block: &WeightBlock, p: usize) -> SparseMatrix {
    let target = &block.terms[p - 1];
    let mut mat = SparseMatrix::new(target.len());
    for &s in &block.terms[p] {
        let mut col = Vec::new();
        let mut bits = s;
        let mut pos = 0;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let row = target
                .binary_search(&(s & !low))
                .expect("face of a fitting subset fits");
            col.push((row, if pos % 2 == 0 { 1 } else { -1 }));
            bits &= bits - 1;
            pos += 1;
        }
        mat.push_column(col);
    }
    mat
}

/// Cohomology of one weight block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCohomology {
    pub wu: Weight,
    pub wv: Weight,
    pub orbit: u64,
    pub term_dims: Vec<u64>,
    /// `ranks[p]` = rank of `d` out of term `p` (`ranks[0] = 0`).
    pub ranks: Vec<usize>,
    pub dims: Vec<u64>,
    pub primes_agree: bool,
    pub exact_used: bool,
}

pub fn block_cohomology(block: &WeightBlock, mode: RankMode) -> Result<BlockCohomology, OracleError> {
    let len = block.terms.len();
    let mut ranks = vec![0usize; len + 1];
    let mut primes_agree = true;
    let mut exact_used = false;
    for p in 1..len {
        if block.terms[p].is_empty() || block.terms[p - 1].is_empty() {
            continue;
        }
        let r = block_rank(&block_matrix(block, p), mode)?;
        primes_agree &= r.primes_agree();
        exact_used |= r.exact.is_some();
        ranks[p] = r.rank;
    }
    let dims = (0..len)
        .map(|p| (block.terms[p].len() - ranks[p] - ranks[p + 1]) as u64)
        .collect();
    ranks.truncate(len);
    Ok(BlockCohomology {
        wu: block.wu.clone(),
        wv: block.wv.clone(),
        orbit: block.orbit,
        term_dims: block.term_dims(),
        ranks,
        dims,
        primes_agree,
        exact_used,
    })
}

/// Cohomology of one strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub spec: StrandSpec,
    /// `dims[p]` for `p = 0..=max_p`.
    pub dims: Vec<u64>,
    /// Per `p` with nonzero cohomology, when characters were requested.
    pub characters: Option<BTreeMap<usize, Character>>,
    pub decompositions: Option<BTreeMap<usize, IrrDecomposition>>,
    pub primes: [u64; 2],
    pub primes_agree: bool,
    pub exact_used: bool,
}

impl CohomologyReport {
    pub fn dim(&self, p: usize) -> u64 {
        self.dims.get(p).copied().unwrap_or(0)
    }
}

/// Sums block results into a report; the order of `blocks` is irrelevant.
pub fn assemble(
    spec: StrandSpec,
    blocks: &[BlockCohomology],
    with_character: bool,
) -> Result<CohomologyReport, OracleError> {
    let mut dims = vec![0u64; spec.max_p() + 1];
    let mut chars: BTreeMap<usize, Character> = BTreeMap::new();
    let mut primes_agree = true;
    let mut exact_used = false;
    for b in blocks {
        primes_agree &= b.primes_agree;
        exact_used |= b.exact_used;
        for (p, &d) in b.dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            dims[p] += d * b.orbit;
            if with_character {
                let ch = chars.entry(p).or_insert_with(|| Character::new(spec.m, spec.n));
                if b.orbit == 1 {
                    ch.add(b.wu.clone(), b.wv.clone(), d);
                } else {
                    ch.add_orbit(&b.wu, &b.wv, d);
                }
            }
        }
    }
    let (characters, decompositions) = if with_character {
        let decs = chars
            .iter()
            .map(|(&p, ch)| decompose(ch).map(|d| (p, d)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        (Some(chars), Some(decs))
    } else {
        (None, None)
    };
    Ok(CohomologyReport {
        spec,
        dims,
        characters,
        decompositions,
        primes: PRIMES,
        primes_agree,
        exact_used,
    })
}

/// Sequential cohomology of a built strand.
pub fn strand_cohomology(
    strand: &Strand,
    with_character: bool,
    mode: RankMode,
) -> Result<CohomologyReport, OracleError> {
    let blocks = strand
        .blocks
        .iter()
        .map(|b| block_cohomology(b, mode))
        .collect::<Result<Vec<_>, _>>()?;
    assemble(strand.spec, &blocks, with_character)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MismatchKind {
    Dimension,
    Components,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: usize,
    pub t: usize,
    pub kind: MismatchKind,
    pub expected: u64,
    pub found: u64,
}

/// Outcome of comparing one strand against the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandComparison {
    pub t: usize,
    pub oracle: Vec<u64>,
    pub table: Vec<u64>,
    pub characters_checked: bool,
    pub mismatches: Vec<Mismatch>,
}

impl StrandComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub strands: Vec<StrandComparison>,
}

impl ComparisonReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &Mismatch> {
        self.strands.iter().flat_map(|s| s.mismatches.iter())
    }

    pub fn is_match(&self) -> bool {
        self.strands.iter().all(StrandComparison::matches)
    }
}

/// Compares one oracle report with the table entries of the same degree.
pub fn compare_strand(table: &BettiTable, report: &CohomologyReport) -> StrandComparison {
    let t = report.spec.t;
    let len = report.dims.len().max(
        table
            .entries()
            .keys()
            .filter(|&&(_, tt)| tt == t)
            .map(|&(p, _)| p + 1)
            .max()
            .unwrap_or(0),
    );
    let oracle: Vec<u64> = (0..len).map(|p| report.dim(p)).collect();
    let expected: Vec<u64> = (0..len).map(|p| table.betti(p, t)).collect();
    let mut mismatches = Vec::new();
    for p in 0..len {
        if oracle[p] != expected[p] {
            mismatches.push(Mismatch {
                p,
                t,
                kind: MismatchKind::Dimension,
                expected: expected[p],
                found: oracle[p],
            });
        } else if let Some(decs) = &report.decompositions {
            let found = decs.get(&p).cloned().unwrap_or_default();
            let want = table.decomposition(p, t);
            if found != want {
                mismatches.push(Mismatch {
                    p,
                    t,
                    kind: MismatchKind::Components,
                    expected: want.0.len() as u64,
                    found: found.0.len() as u64,
                });
            }
        }
    }
    StrandComparison {
        t,
        oracle,
        table: expected,
        characters_checked: report.decompositions.is_some(),
        mismatches,
    }
}

/// Oracle against closed form for every `t <= max_t`, sequentially.
pub fn verify(
    m: usize,
    n: usize,
    a: i64,
    b: i64,
    max_t: usize,
    with_character: bool,
    mode: RankMode,
) -> Result<ComparisonReport, OracleError> {
    let table = sheaf_syzygies(m, n, a, b, max_t)?;
    let mut strands = Vec::new();
    for t in 0..=max_t {
        let strand = build_strand(StrandSpec::new(m, n, a, b, t), BlockScope::Dominant, DEFAULT_BUDGET)?;
        let report = strand_cohomology(&strand, with_character, mode)?;
        strands.push(compare_strand(&table, &report));
    }
    Ok(ComparisonReport { m, n, a, b, strands })
}
