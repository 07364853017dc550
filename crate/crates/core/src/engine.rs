//! Closed-form syzygies of the Segre embedding `P(U) × P(V) ⊂ P(U ⊗ V)`
//! and of the twisted modules `⊕_k Sym^{a+k} U* ⊗ Sym^{b+k} V*`.
//!
//! Each isotypic component of the Koszul complex is a (possibly clipped)
//! combinatorial cube whose directions are the boxes of [`b_set`]. A cube of
//! positive dimension is acyclic unless clipped; a 0-cube contributes its
//! module once; a `k`-th clipped `N`-cube contributes `C(N-1, k-1)` copies in
//! homological degree `wt(ν) - k` with `q = 0`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use thiserror::Error;

use crate::characters::{pieri_column, pieri_row, IrrDecomposition, LrSource};
use crate::marked::{b_set, markings_of_weight, WeightPair};
use crate::partitions::{binomial, binomial_signed, enumerate_partitions, schur_dimension, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("twist out of range: need a >= -{m} and b >= -{n}, got a = {a}, b = {b}")]
    Range { m: usize, n: usize, a: i64, b: i64 },
    #[error("dimensions must be positive, got m = {m}, n = {n}")]
    EmptySpace { m: usize, n: usize },
}

/// What the isotypic component of one weight contributes to cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentFate {
    /// The weight does not occur in the complex.
    Absent,
    /// A full cube of positive dimension; no cohomology.
    Acyclic { cube_dim: usize },
    /// A 0-cube: one copy in degree `p`, `q = t - p`.
    ZeroCube { p: usize, q: usize },
    /// A clipped cube: `multiplicity` copies in degree `p` with `q = 0`.
    Clipped {
        p: usize,
        multiplicity: u64,
        cube_dim: usize,
        clip: usize,
    },
}

impl ComponentFate {
    /// `(p, t, multiplicity)` when the component survives in cohomology.
    pub fn contribution(&self) -> Option<(usize, usize, u64)> {
        match *self {
            ComponentFate::ZeroCube { p, q } => Some((p, p + q, 1)),
            ComponentFate::Clipped { p, multiplicity, .. } => Some((p, p, multiplicity)),
            _ => None,
        }
    }
}

pub fn classify_weight(omega: &WeightPair, a: i64, b: i64, m: usize, n: usize) -> ComponentFate {
    debug_assert!(omega.is_valid_for(m, n));
    let mk = markings_of_weight(omega);
    if !mk.valid {
        return ComponentFate::Absent;
    }
    let l = mk.l_strip.len() as i64;
    let r = mk.r_strip.len() as i64;
    if l - a != r - b {
        return ComponentFate::Absent;
    }
    let q0 = l - a;
    let clip = -q0;
    let cube_dim = b_set(&omega.lambda, &omega.mu).len();
    let wt = mk.core.weight();
    if cube_dim == 0 {
        return if q0 >= 0 {
            ComponentFate::ZeroCube {
                p: wt,
                q: q0 as usize,
            }
        } else {
            ComponentFate::Absent
        };
    }
    if clip <= 0 {
        ComponentFate::Acyclic { cube_dim }
    } else if clip as usize <= cube_dim {
        let clip = clip as usize;
        ComponentFate::Clipped {
            p: wt - clip,
            multiplicity: binomial(cube_dim as u64 - 1, clip as u64 - 1),
            cube_dim,
            clip,
        }
    } else {
        ComponentFate::Absent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SyzygyComponent {
    pub omega: WeightPair,
    /// Homological degree.
    pub p: usize,
    /// Internal degree minus `p`.
    pub q: usize,
    pub multiplicity: u64,
    pub dim: u64,
}

impl SyzygyComponent {
    pub fn new(omega: WeightPair, p: usize, q: usize, multiplicity: u64, m: usize, n: usize) -> Self {
        let dim = multiplicity * schur_dimension(&omega.lambda, m) * schur_dimension(&omega.mu, n);
        SyzygyComponent {
            omega,
            p,
            q,
            multiplicity,
            dim,
        }
    }

    /// Internal degree.
    pub fn t(&self) -> usize {
        self.p + self.q
    }

    /// `λ ∩ μ'`, the unmarked core of the component.
    pub fn core(&self) -> Partition {
        self.omega.lambda.intersect(&self.omega.mu.conjugate())
    }
}

/// Graded Betti numbers with their equivariant structure, for internal
/// degrees up to `max_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub m: usize,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub max_t: usize,
    /// `(p, t)` to components sorted by `(λ, μ)`.
    entries: BTreeMap<(usize, usize), Vec<SyzygyComponent>>,
}

impl BettiTable {
    pub fn new(m: usize, n: usize, a: i64, b: i64, max_t: usize) -> Self {
        BettiTable {
            m,
            n,
            a,
            b,
            max_t,
            entries: BTreeMap::new(),
        }
    }

    /// Adds a component, merging multiplicities of repeated weights.
    pub fn insert(&mut self, c: SyzygyComponent) {
        let slot = self.entries.entry((c.p, c.t())).or_default();
        match slot.iter_mut().find(|x| x.omega == c.omega) {
            Some(x) => {
                x.multiplicity += c.multiplicity;
                x.dim += c.dim;
            }
            None => {
                slot.push(c);
                slot.sort_by(|x, y| x.omega.cmp(&y.omega));
            }
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Vec<SyzygyComponent>> {
        &self.entries
    }

    pub fn components(&self, p: usize, t: usize) -> &[SyzygyComponent] {
        self.entries.get(&(p, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn betti(&self, p: usize, t: usize) -> u64 {
        self.components(p, t).iter().map(|c| c.dim).sum()
    }

    /// Nonzero `(p, t) → dim`.
    pub fn betti_numbers(&self) -> BTreeMap<(usize, usize), u64> {
        self.entries
            .keys()
            .map(|&(p, t)| ((p, t), self.betti(p, t)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    pub fn decomposition(&self, p: usize, t: usize) -> IrrDecomposition {
        self.components(p, t)
            .iter()
            .map(|c| (c.omega.clone(), c.multiplicity))
            .collect()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(p, _)| p).max()
    }

    /// All components in emission order: by `t`, then `p`, then `(λ, μ)`.
    pub fn iter_components(&self) -> impl Iterator<Item = &SyzygyComponent> {
        let mut keys: Vec<&(usize, usize)> = self.entries.keys().collect();
        keys.sort_by_key(|&&(p, t)| (t, p));
        keys.into_iter().flat_map(move |k| self.entries[k].iter())
    }

    /// Entries with `t <= max_t`, everything else dropped.
    pub fn truncated(&self, max_t: usize) -> BettiTable {
        BettiTable {
            max_t,
            entries: self
                .entries
                .iter()
                .filter(|(&(_, t), _)| t <= max_t)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// `Σ_{p} (-1)^p betti(p, t)` for `t = 0..=order`.
    pub fn betti_series(&self, order: usize) -> Vec<i128> {
        let mut s = alloc::vec![0i128; order + 1];
        for (&(p, t), comps) in &self.entries {
            if t <= order {
                let d: u64 = comps.iter().map(|c| c.dim).sum();
                let sign = if p % 2 == 0 { 1 } else { -1 };
                s[t] += sign * d as i128;
            }
        }
        s
    }
}

fn check_range(m: usize, n: usize, a: i64, b: i64) -> Result<(), EngineError> {
    if m == 0 || n == 0 {
        return Err(EngineError::EmptySpace { m, n });
    }
    if a < -(m as i64) || b < -(n as i64) {
        return Err(EngineError::Range { m, n, a, b });
    }
    Ok(())
}

/// Internal degree past which every table is zero.
pub fn degree_bound(m: usize, n: usize, a: i64, b: i64) -> usize {
    let neg = 0.max(-a).max(-b) as usize;
    m * n + m.min(n) + neg
}

/// Hilbert function of the module: `dim Sym^{a+j} ⊗ Sym^{b+j}`.
pub fn module_hilbert_function(m: usize, n: usize, a: i64, b: i64, j: usize) -> u64 {
    let ja = a + j as i64;
    let jb = b + j as i64;
    if ja < 0 || jb < 0 {
        return 0;
    }
    binomial_signed(m as i64 - 1 + ja, m as i64 - 1) * binomial_signed(n as i64 - 1 + jb, n as i64 - 1)
}

/// Coefficients of `(1 - x)^{mn} · Σ_j h(j) x^j` up to `x^order`, where `h`
/// is [`module_hilbert_function`].
pub fn hilbert_numerator(m: usize, n: usize, a: i64, b: i64, order: usize) -> Vec<i128> {
    let mn = (m * n) as u64;
    (0..=order)
        .map(|t| {
            (0..=t.min(m * n))
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binomial(mn, i as u64) as i128
                        * module_hilbert_function(m, n, a, b, t - i) as i128
                })
                .sum()
        })
        .collect()
}

/// Syzygies of the Segre embedding from the closed form: for each `λ` with
/// `s = l(λ)`, the component `(e(λ, s), e(λ', s))` at `p = wt(λ)`, `t = p + s`.
pub fn segre_syzygies(m: usize, n: usize) -> Result<BettiTable, EngineError> {
    check_range(m, n, 0, 0)?;
    let mut table = BettiTable::new(m, n, 0, 0, degree_bound(m, n, 0, 0));
    for w in 0..=m * n {
        for lam in enumerate_partitions(w, m, n) {
            let s = lam.diagonal_length();
            let omega = WeightPair::new(lam.extend_columns(s), lam.conjugate().extend_columns(s));
            if !omega.is_valid_for(m, n) {
                continue;
            }
            table.insert(SyzygyComponent::new(omega, w, s, 1, m, n));
        }
    }
    Ok(table)
}

/// Every weight whose isotypic component can contribute in internal degree
/// at most `max_t`, listed once each as `(ω, fate)`.
///
/// A surviving component built on core `ν` with `l` letters `L` lives in
/// internal degree `wt(ν) + l - a`, which bounds both `ν` and the strips.
pub fn candidate_weights(
    m: usize,
    n: usize,
    a: i64,
    b: i64,
    max_t: usize,
) -> Vec<(WeightPair, ComponentFate)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let max_core = (max_t as i64 + a.max(0)) as usize;
    for w in 0..=max_core.min(m * n) {
        for nu in enumerate_partitions(w, m, n) {
            let l_max = max_t as i64 + a - w as i64;
            for l in 0..=l_max.max(-1) {
                let r = l - a + b;
                if r < 0 {
                    continue;
                }
                let mu_ts = pieri_column(&nu, r as usize, n);
                for lambda in pieri_row(&nu, l as usize, m) {
                    for mu_t in &mu_ts {
                        // Disjoint strips give the canonical representative.
                        if lambda.intersect(mu_t) != nu {
                            continue;
                        }
                        let omega = WeightPair::new(lambda.clone(), mu_t.conjugate());
                        if !seen.insert(omega.clone()) {
                            continue;
                        }
                        let fate = classify_weight(&omega, a, b, m, n);
                        out.push((omega, fate));
                    }
                }
            }
        }
    }
    out
}

/// Syzygies of `⊕_{k≥0} Sym^{a+k} U* ⊗ Sym^{b+k} V*` for `t <= max_t`,
/// assembled from [`classify_weight`] over all candidate weights.
pub fn sheaf_syzygies(m: usize, n: usize, a: i64, b: i64, max_t: usize) -> Result<BettiTable, EngineError> {
    check_range(m, n, a, b)?;
    let mut table = BettiTable::new(m, n, a, b, max_t);
    for (omega, fate) in candidate_weights(m, n, a, b, max_t) {
        if let Some((p, t, mult)) = fate.contribution() {
            if t <= max_t {
                table.insert(SyzygyComponent::new(omega, p, t - p, mult, m, n));
            }
        }
    }
    Ok(table)
}

/// The 0-cube components given directly by the shifted diagonal length:
/// `ν` with `l^{a,b}(ν) = q` gives `(e(ν, a+q), e(ν', b+q))` at `p = wt(ν)`.
pub fn zero_cube_components(m: usize, n: usize, a: i64, b: i64, max_t: usize) -> Vec<SyzygyComponent> {
    let mut out = Vec::new();
    for w in 0..=max_t.min(m * n) {
        for nu in enumerate_partitions(w, m, n) {
            let q = nu.shifted_diagonal_length(a as isize, b as isize);
            if w + q > max_t {
                continue;
            }
            // The first probe outside the diagram has both coordinates >= 0.
            let ea = (a + q as i64) as usize;
            let eb = (b + q as i64) as usize;
            let omega = WeightPair::new(nu.extend_columns(ea), nu.conjugate().extend_columns(eb));
            if omega.is_valid_for(m, n) {
                out.push(SyzygyComponent::new(omega, w, q, 1, m, n));
            }
        }
    }
    out.sort_by(|x, y| (x.t(), x.p, &x.omega).cmp(&(y.t(), y.p, &y.omega)));
    out
}

/// Whether the product of the syzygy classes `c1 · c2` has a nonzero
/// projection to `c3` (all three Segre components with `a = b = 0`).
pub fn product_nonzero<L: LrSource + ?Sized>(
    c1: &SyzygyComponent,
    c2: &SyzygyComponent,
    c3: &SyzygyComponent,
    lr: &L,
) -> bool {
    let (n1, n2, n3) = (c1.core(), c2.core(), c3.core());
    let (s1, s2, s3) = (n1.diagonal_length(), n2.diagonal_length(), n3.diagonal_length());
    s1 + s2 == s3 && n1.weight() + n2.weight() == n3.weight() && lr.lr(&n1, &n2, &n3) >= 1
}

/// One nonzero multiplication map between components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTriple {
    pub left: SyzygyComponent,
    pub right: SyzygyComponent,
    pub product: SyzygyComponent,
}

impl ProductTriple {
    /// `((p1, t1), (p2, t2), (p3, t3))`.
    pub fn bidegrees(&self) -> [(usize, usize); 3] {
        [
            (self.left.p, self.left.t()),
            (self.right.p, self.right.t()),
            (self.product.p, self.product.t()),
        ]
    }
}

/// All nonzero products among positive-degree syzygy components, taking
/// each unordered pair once (`left` precedes `right` in emission order).
pub fn multiplication_table<L: LrSource + ?Sized>(
    m: usize,
    n: usize,
    lr: &L,
) -> Result<Vec<ProductTriple>, EngineError> {
    let table = segre_syzygies(m, n)?;
    let comps: Vec<&SyzygyComponent> = table.iter_components().filter(|c| c.p > 0).collect();
    let mut out = Vec::new();
    for (i, c1) in comps.iter().enumerate() {
        for c2 in &comps[i..] {
            for c3 in &comps {
                if c3.p == c1.p + c2.p && product_nonzero(c1, c2, c3, lr) {
                    out.push(ProductTriple {
                        left: (*c1).clone(),
                        right: (*c2).clone(),
                        product: (*c3).clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The products grouped by the bigraded pieces they connect.
pub fn product_bidegrees(triples: &[ProductTriple]) -> BTreeSet<[(usize, usize); 3]> {
    triples.iter().map(ProductTriple::bidegrees).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::DirectLr;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn w(l: &[usize], m: &[usize]) -> WeightPair {
        WeightPair::new(p(l), p(m))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_weight(&w(&[1, 1], &[1, 1]), 0, 0, 2, 3),
            ComponentFate::ZeroCube { p: 1, q: 1 }
        );
        assert_eq!(
            classify_weight(&w(&[2], &[2]), 0, 0, 2, 3),
            ComponentFate::Acyclic { cube_dim: 1 }
        );
        assert_eq!(
            classify_weight(&w(&[1], &[1]), 1, 1, 2, 2),
            ComponentFate::Clipped {
                p: 0,
                multiplicity: 1,
                cube_dim: 1,
                clip: 1
            }
        );
        // l - a != r - b
        assert_eq!(classify_weight(&w(&[1], &[]), 0, 0, 2, 2), ComponentFate::Absent);
    }

    #[test]
    fn segre_2_3() {
        let t = segre_syzygies(2, 3).unwrap();
        let betti: Vec<_> = t.betti_numbers().into_iter().collect();
        assert_eq!(betti, [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert_eq!(t.components(1, 2)[0].omega, w(&[1, 1], &[1, 1]));
        assert_eq!(t.components(2, 3)[0].omega, w(&[2, 1], &[1, 1, 1]));
    }

    #[test]
    fn segre_3_4() {
        let t = segre_syzygies(3, 4).unwrap();
        let betti: Vec<_> = t.betti_numbers().into_iter().collect();
        assert_eq!(
            betti,
            [
                ((0, 0), 1),
                ((1, 2), 18),
                ((2, 3), 52),
                ((3, 4), 60),
                ((4, 5), 24),
                ((4, 6), 10),
                ((5, 7), 12),
                ((6, 8), 3)
            ]
        );
        let r34: Vec<_> = t.components(3, 4).iter().map(|c| c.omega.clone()).collect();
        assert_eq!(r34, [w(&[2, 1, 1], &[2, 1, 1]), w(&[3, 1], &[1, 1, 1, 1])]);
    }

    #[test]
    fn sheaf_minus_one_one() {
        let t = sheaf_syzygies(2, 3, -1, 1, 5).unwrap();
        let betti: Vec<_> = t.betti_numbers().into_iter().collect();
        assert_eq!(betti, [((0, 1), 6), ((1, 2), 16), ((2, 3), 15), ((3, 4), 6), ((4, 5), 1)]);
        let comps: Vec<_> = t.iter_components().map(|c| c.omega.clone()).collect();
        assert_eq!(
            comps,
            [
                w(&[], &[2]),
                w(&[1], &[2, 1]),
                w(&[1, 1], &[2, 2]),
                w(&[2], &[2, 1, 1]),
                w(&[2, 1], &[2, 2, 1]),
                w(&[2, 2], &[2, 2, 2]),
            ]
        );
    }

    #[test]
    fn sheaf_one_one_clipped() {
        let t = sheaf_syzygies(2, 2, 1, 1, 5).unwrap();
        assert_eq!(t.betti(0, 0), 4);
        assert_eq!(t.betti(1, 1), 7);
        let r11: Vec<_> = t.components(1, 1).iter().map(|c| (c.omega.clone(), c.dim)).collect();
        assert_eq!(
            r11,
            [(w(&[1, 1], &[1, 1]), 1), (w(&[1, 1], &[2]), 3), (w(&[2], &[1, 1]), 3)]
        );
    }

    #[test]
    fn range_errors() {
        assert_eq!(
            sheaf_syzygies(2, 3, -3, 0, 3),
            Err(EngineError::Range { m: 2, n: 3, a: -3, b: 0 })
        );
        assert!(sheaf_syzygies(2, 3, -2, -3, 3).is_ok());
        assert!(segre_syzygies(0, 3).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let seg = segre_syzygies(3, 4).unwrap();
        let find = |nu: &[usize]| {
            seg.iter_components()
                .find(|c| c.core() == p(nu))
                .unwrap()
                .clone()
        };
        let lr = DirectLr;
        assert!(product_nonzero(&find(&[1]), &find(&[2, 1]), &find(&[2, 2]), &lr));
        assert!(!product_nonzero(&find(&[1]), &find(&[1]), &find(&[2]), &lr));
        assert!(product_nonzero(&find(&[2]), &find(&[2]), &find(&[2, 2]), &lr));
        assert!(multiplication_table(2, 3, &lr).unwrap().is_empty());
    }

    #[test]
    fn multiplication_3_4_bidegrees() {
        let triples = multiplication_table(3, 4, &DirectLr).unwrap();
        let got: Vec<_> = product_bidegrees(&triples).into_iter().collect();
        assert_eq!(
            got,
            [
                [(1, 2), (3, 4), (4, 6)],
                [(1, 2), (4, 5), (5, 7)],
                [(2, 3), (2, 3), (4, 6)],
                [(2, 3), (3, 4), (5, 7)],
                [(2, 3), (4, 5), (6, 8)],
                [(3, 4), (3, 4), (6, 8)],
            ]
        );
        for t in &triples {
            assert_eq!(t.left.p + t.right.p, t.product.p);
        }
    }

    #[test]
    fn hilbert_numerator_matches_euler_examples() {
        assert_eq!(hilbert_numerator(2, 3, 0, 0, 2)[2], -3);
        assert_eq!(hilbert_numerator(3, 4, 0, 0, 6)[6], 10);
        assert_eq!(hilbert_numerator(3, 4, 0, 0, 4)[4], -60);
    }
}
