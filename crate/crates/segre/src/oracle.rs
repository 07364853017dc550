//! Parallel, disk-cached runs of the Koszul oracle.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use rayon::prelude::*;
use segre_core::characters::{Character, LrSource};
use segre_core::engine::{sheaf_syzygies, BettiTable};
use segre_core::koszul::{
    assemble, block_cohomology, build_strand, compare_strand, BlockScope, CohomologyReport, ComparisonReport,
    OracleError, StrandSpec, DEFAULT_BUDGET,
};
use segre_core::partitions::Partition;
use segre_core::rank::{RankMode, PRIMES};
use segre_core::{lr_coefficient, IrrDecomposition};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::json::{decomposition_from_json, decomposition_to_json, IrrJson, JsonError};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "SEGRE_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cache io: {0}")]
    Io(#[from] io::Error),
    #[error("cache entry {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Littlewood–Richardson coefficients behind a shared memo table.
#[derive(Debug, Default)]
pub struct MemoLr {
    table: RwLock<HashMap<(Partition, Partition, Partition), u64>>,
}

impl MemoLr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl LrSource for MemoLr {
    fn lr(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        let key = (lambda.clone(), mu.clone(), nu.clone());
        if let Some(&v) = self.table.read().expect("memo lock").get(&key) {
            return v;
        }
        let v = lr_coefficient(lambda, mu, nu);
        self.table.write().expect("memo lock").insert(key, v);
        v
    }
}

/// Where oracle results live: `<root>/oracle/m{m}n{n}a{a}b{b}/t{t}.json`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cache {
    pub root: PathBuf,
}

/// On-disk form of one strand's cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub dims: BTreeMap<String, u64>,
    pub character_digest: String,
    pub primes: Vec<u64>,
    pub components: BTreeMap<String, Vec<IrrJson>>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    /// `$SEGRE_CACHE_DIR`, or `./.segre-cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(".segre-cache"), PathBuf::from))
    }

    pub fn oracle_dir(&self) -> PathBuf {
        self.root.join("oracle")
    }

    pub fn path(&self, s: &StrandSpec) -> PathBuf {
        self.oracle_dir()
            .join(format!("m{}n{}a{}b{}", s.m, s.n, s.a, s.b))
            .join(format!("t{}.json", s.t))
    }

    pub fn read(&self, s: &StrandSpec) -> Result<Option<(CohomologyReport, String)>, RunError> {
        let path = self.path(s);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |reason: String| RunError::Cache {
            path: path.clone(),
            reason,
        };
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if entry.version != CACHE_VERSION {
            return Ok(None);
        }
        let report = entry_to_report(*s, &entry).map_err(|e| bad(e.to_string()))?;
        let digest = character_digest(report.characters.as_ref().expect("rebuilt"));
        if digest != entry.character_digest {
            return Err(bad("character digest does not match components".into()));
        }
        Ok(Some((report, text)))
    }

    /// Writes through a temporary file and a rename, so concurrent writers
    /// never expose a partial file.
    pub fn write(&self, s: &StrandSpec, text: &str) -> Result<(), RunError> {
        let path = self.path(s);
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".t{}.{}.{}.tmp",
            s.t,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn clear(&self) -> Result<usize, RunError> {
        let dir = self.oracle_dir();
        let (files, _) = self.stats()?;
        match fs::remove_dir_all(&dir) {
            Ok(()) => Ok(files),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(0),
            Err(e) => Err(e.into()),
        }
    }

    /// `(files, bytes)` under the oracle directory.
    pub fn stats(&self) -> Result<(usize, u64), RunError> {
        fn walk(p: &Path, acc: &mut (usize, u64)) -> io::Result<()> {
            for e in fs::read_dir(p)? {
                let e = e?;
                let meta = e.metadata()?;
                if meta.is_dir() {
                    walk(&e.path(), acc)?;
                } else if e.path().extension().is_some_and(|x| x == "json") {
                    acc.0 += 1;
                    acc.1 += meta.len();
                }
            }
            Ok(())
        }
        let mut acc = (0, 0);
        match walk(&self.oracle_dir(), &mut acc) {
            Ok(()) => Ok(acc),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok((0, 0)),
            Err(e) => Err(e.into()),
        }
    }
}

/// SHA-256 over the weight multiplicities, one `p:wU|wV:k` line each.
pub fn character_digest(chars: &BTreeMap<usize, Character>) -> String {
    let mut h = Sha256::new();
    for (p, ch) in chars {
        for ((u, v), k) in ch.entries() {
            h.update(format!("{p}:{u:?}|{v:?}:{k}\n").as_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn report_to_entry(r: &CohomologyReport) -> CacheEntry {
    let chars = r.characters.as_ref().expect("cached reports carry characters");
    let decs = r.decompositions.as_ref().expect("cached reports carry characters");
    CacheEntry {
        version: CACHE_VERSION,
        dims: r.dims.iter().enumerate().map(|(p, &d)| (p.to_string(), d)).collect(),
        character_digest: character_digest(chars),
        primes: r.primes.to_vec(),
        components: decs
            .iter()
            .map(|(p, d)| (p.to_string(), decomposition_to_json(d)))
            .collect(),
    }
}

pub fn entry_text(r: &CohomologyReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_to_entry(r)).expect("serializable");
    s.push('\n');
    s
}

fn entry_to_report(spec: StrandSpec, e: &CacheEntry) -> Result<CohomologyReport, JsonError> {
    let mut dims = vec![0u64; spec.max_p() + 1];
    for (p, &d) in &e.dims {
        if let Some(slot) = p.parse::<usize>().ok().and_then(|p| dims.get_mut(p)) {
            *slot = d;
        }
    }
    let mut decs: BTreeMap<usize, IrrDecomposition> = BTreeMap::new();
    for (p, items) in &e.components {
        if let Ok(p) = p.parse::<usize>() {
            decs.insert(p, decomposition_from_json(items)?);
        }
    }
    let characters = decs.iter().map(|(&p, d)| (p, d.character(spec.m, spec.n))).collect();
    Ok(CohomologyReport {
        spec,
        dims,
        characters: Some(characters),
        decompositions: Some(decs),
        primes: PRIMES,
        primes_agree: true,
        exact_used: false,
    })
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub mode: RankMode,
    /// Worker threads; 0 means the available parallelism.
    pub jobs: usize,
    pub cache: Option<Cache>,
    /// Recompute cached strands and require byte-identical cache files.
    pub recheck: bool,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: RankMode::Modular,
            jobs: 0,
            cache: None,
            recheck: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// One strand computed in parallel over its weight blocks.
pub fn strand_report(spec: StrandSpec, mode: RankMode, budget: u64) -> Result<CohomologyReport, OracleError> {
    let strand = build_strand(spec, BlockScope::Dominant, budget)?;
    let blocks = strand
        .blocks
        .par_iter()
        .map(|b| block_cohomology(b, mode))
        .collect::<Result<Vec<_>, _>>()?;
    assemble(spec, &blocks, true)
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub table: BettiTable,
    pub comparison: ComparisonReport,
    pub reports: Vec<CohomologyReport>,
    pub cache_hits: usize,
    /// Strands whose recomputation differed from the cached bytes.
    pub stale: Vec<usize>,
}

impl VerifyOutcome {
    pub fn is_match(&self) -> bool {
        self.comparison.is_match() && self.stale.is_empty()
    }
}

fn one_strand(spec: StrandSpec, opts: &VerifyOptions) -> Result<(CohomologyReport, bool, bool), RunError> {
    let cached = match &opts.cache {
        Some(c) => c.read(&spec)?,
        None => None,
    };
    match cached {
        Some((report, _)) if !opts.recheck => Ok((report, true, false)),
        Some((_, text)) => {
            let report = strand_report(spec, opts.mode, opts.budget)?;
            let stale = entry_text(&report) != text;
            Ok((report, true, stale))
        }
        None => {
            let report = strand_report(spec, opts.mode, opts.budget)?;
            if let Some(c) = &opts.cache {
                c.write(&spec, &entry_text(&report))?;
            }
            Ok((report, false, false))
        }
    }
}

/// Oracle against closed form for all `t <= max_t`, strands and blocks in
/// parallel.
pub fn verify(m: usize, n: usize, a: i64, b: i64, max_t: usize, opts: &VerifyOptions) -> Result<VerifyOutcome, RunError> {
    let table = sheaf_syzygies(m, n, a, b, max_t).map_err(OracleError::from)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build()?;
    let results = pool.install(|| {
        (0..=max_t)
            .into_par_iter()
            .map(|t| one_strand(StrandSpec::new(m, n, a, b, t), opts))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut reports = Vec::new();
    let mut strands = Vec::new();
    let mut cache_hits = 0;
    let mut stale = Vec::new();
    for (t, (report, hit, is_stale)) in results.into_iter().enumerate() {
        strands.push(compare_strand(&table, &report));
        cache_hits += usize::from(hit);
        if is_stale {
            stale.push(t);
        }
        reports.push(report);
    }
    Ok(VerifyOutcome {
        table,
        comparison: ComparisonReport { m, n, a, b, strands },
        reports,
        cache_hits,
        stale,
    })
}

/// Caveat for twists on the boundary of the supported range.
pub fn boundary_banner(m: usize, n: usize, a: i64, b: i64) -> Option<String> {
    let mut which = Vec::new();
    if a == -(m as i64) {
        which.push(format!("a = −{m}"));
    }
    if b == -(n as i64) {
        which.push(format!("b = −{n}"));
    }
    if which.is_empty() {
        return None;
    }
    Some(format!(
        "warning: {} is on the boundary of the twist range; the table is Tor of the graded module \
         ⊕_k Sym^(a+k) U* ⊗ Sym^(b+k) V*, which need not be the module of sections of O(a,b) here",
        which.join(" and ")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use segre_core::characters::DirectLr;

    #[test]
    fn memo_matches_direct() {
        let memo = MemoLr::new();
        let p = |r: &[usize]| Partition::new(r.to_vec()).unwrap();
        let triples = [
            (p(&[2, 1]), p(&[2, 1]), p(&[3, 2, 1])),
            (p(&[1]), p(&[2, 1]), p(&[2, 2])),
            (p(&[2, 1]), p(&[2, 1]), p(&[3, 2, 1])),
        ];
        for (l, m, n) in &triples {
            assert_eq!(memo.lr(l, m, n), DirectLr.lr(l, m, n));
        }
        assert_eq!(memo.len(), 2);
        assert_eq!(memo.lr(&triples[0].0, &triples[0].1, &triples[0].2), 2);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec = StrandSpec::new(2, 3, -1, 1, 3);
        assert!(cache.read(&spec).unwrap().is_none());
        let report = strand_report(spec, RankMode::Modular, DEFAULT_BUDGET).unwrap();
        cache.write(&spec, &entry_text(&report)).unwrap();
        assert!(cache.path(&spec).ends_with("oracle/m2n3a-1b1/t3.json"));
        let (back, text) = cache.read(&spec).unwrap().unwrap();
        assert_eq!(back.dims, report.dims);
        assert_eq!(back.decompositions, report.decompositions);
        assert_eq!(entry_text(&back), text);
        assert_eq!(cache.stats().unwrap().0, 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert_eq!(cache.stats().unwrap(), (0, 0));
    }

    #[test]
    fn tampered_cache_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec = StrandSpec::new(2, 3, 0, 0, 2);
        let report = strand_report(spec, RankMode::Modular, DEFAULT_BUDGET).unwrap();
        let text = entry_text(&report).replace("\"mult\": 1", "\"mult\": 2");
        cache.write(&spec, &text).unwrap();
        assert!(matches!(cache.read(&spec), Err(RunError::Cache { .. })));
    }

    #[test]
    fn parallel_verify_with_cache() {
        let dir = tempfile::tempdir().unwrap();
        let opts = VerifyOptions {
            jobs: 2,
            cache: Some(Cache::new(dir.path())),
            ..VerifyOptions::default()
        };
        let first = verify(2, 3, -1, 1, 5, &opts).unwrap();
        assert!(first.is_match());
        assert_eq!(first.cache_hits, 0);
        let second = verify(2, 3, -1, 1, 5, &opts).unwrap();
        assert_eq!(second.cache_hits, 6);
        assert_eq!(second.comparison, first.comparison);
        let recheck = verify(2, 3, -1, 1, 5, &VerifyOptions { recheck: true, ..opts }).unwrap();
        assert!(recheck.stale.is_empty() && recheck.is_match());
    }

    #[test]
    fn banners() {
        assert!(boundary_banner(2, 3, -1, 1).is_none());
        assert!(boundary_banner(2, 3, -2, 0).unwrap().contains("a = −2"));
        assert!(boundary_banner(2, 3, -2, -3).unwrap().contains("a = −2 and b = −3"));
    }
}
