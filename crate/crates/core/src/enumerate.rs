//! Streaming enumeration and census of all operations of a given order.
//!
//! Orders up to 3 are always scanned code by code. At order 4 the group,
//! monoid and semigroup classes come from structured generators, while the
//! classes that need the full 4^16-code scan require an explicit opt-in.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::classify::{identity_raw, is_assoc_raw, is_nd_raw};
use crate::compat::{code_of, Odometer};
use crate::duality::all_group_ops;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::table::{check_order, space_size, CayleyTable, OpCode, MAX_CODE_ORDER};

/// Codes between two checkpoint writes of a full scan.
pub const CHECKPOINT_INTERVAL: u64 = 100_000_000;

/// Node budget for the structured generators.
pub const GENERATOR_BUDGET: u64 = 500_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    All,
    Nd,
    Sg,
    Mn,
    Gr,
    NdNotSg,
    SgNotNd,
}

impl ClassFilter {
    pub const ALL_FILTERS: [ClassFilter; 7] = [
        ClassFilter::All,
        ClassFilter::Nd,
        ClassFilter::Sg,
        ClassFilter::Mn,
        ClassFilter::Gr,
        ClassFilter::NdNotSg,
        ClassFilter::SgNotNd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::All => "all",
            ClassFilter::Nd => "nd",
            ClassFilter::Sg => "sg",
            ClassFilter::Mn => "mn",
            ClassFilter::Gr => "gr",
            ClassFilter::NdNotSg => "nd-not-sg",
            ClassFilter::SgNotNd => "sg-not-nd",
        }
    }

    /// Membership test on raw row-major entries.
    pub fn accepts(self, n: usize, t: &[u8]) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Nd => is_nd_raw(n, t),
            ClassFilter::Sg => is_assoc_raw(n, t),
            ClassFilter::Mn => identity_raw(n, t).is_some() && is_assoc_raw(n, t),
            ClassFilter::Gr => is_group_raw(n, t),
            ClassFilter::NdNotSg => is_nd_raw(n, t) && !is_assoc_raw(n, t),
            ClassFilter::SgNotNd => !is_nd_raw(n, t) && is_assoc_raw(n, t),
        }
    }

    fn needs_full_scan(self) -> bool {
        matches!(self, ClassFilter::All | ClassFilter::Nd | ClassFilter::NdNotSg)
    }
}

fn is_group_raw(n: usize, t: &[u8]) -> bool {
    let Some(e) = identity_raw(n, t) else {
        return false;
    };
    is_assoc_raw(n, t)
        && (0..n).all(|a| (0..n).any(|b| t[a * n + b] as usize == e && t[b * n + a] as usize == e))
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassFilter::ALL_FILTERS
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s) || f.name().replace('-', "_").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown filter {s:?}"),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub filter: ClassFilter,
    pub count: u64,
    pub elapsed: Duration,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub exec: Exec,
    /// Permits the 4^16-code scans at order 4.
    pub opt_in_large: bool,
    /// Shard width in codes; defaults to the code range split evenly across workers.
    pub shard_width: Option<u64>,
    /// Progress file for resumable full scans.
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_interval: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            exec: Exec::default(),
            opt_in_large: false,
            shard_width: None,
            checkpoint: None,
            checkpoint_interval: CHECKPOINT_INTERVAL,
        }
    }
}

impl ScanOptions {
    pub fn with_exec(exec: Exec) -> Self {
        ScanOptions {
            exec,
            ..ScanOptions::default()
        }
    }
}

/// Visits every operation of order `n` in `filter`, in ascending code order
/// within each shard, and returns the census.
pub fn enumerate_ops<V>(n: usize, filter: ClassFilter, options: &ScanOptions, visitor: V) -> Result<Census>
where
    V: Fn(OpCode) + Sync,
{
    run(n, filter, options, Some(&visitor))
}

/// Count-only form of [`enumerate_ops`].
pub fn count_ops(n: usize, filter: ClassFilter, options: &ScanOptions) -> Result<Census> {
    run(n, filter, options, None)
}

fn run(
    n: usize,
    filter: ClassFilter,
    options: &ScanOptions,
    visitor: Option<&(dyn Fn(OpCode) + Sync)>,
) -> Result<Census> {
    check_order(n)?;
    if n > MAX_CODE_ORDER {
        return Err(Error::Overflow { n });
    }
    let start = Instant::now();
    let count = if n <= 3 || filter.needs_full_scan() {
        if n == 4 && !options.opt_in_large {
            return Err(Error::Method {
                method: "full scan",
                reason: format!("scanning all 4^16 operations for filter {filter} requires the opt-in flag"),
            });
        }
        full_scan(n, filter, options, visitor)?
    } else {
        let tables = structured(n, filter)?;
        if let Some(v) = visitor {
            for t in &tables {
                v(t.encode()?);
            }
        }
        tables.len() as u64
    };
    Ok(Census {
        n,
        filter,
        count,
        elapsed: start.elapsed(),
        workers: options.exec.workers(),
    })
}

fn structured(n: usize, filter: ClassFilter) -> Result<Vec<CayleyTable>> {
    Ok(match filter {
        ClassFilter::Gr => all_group_ops(n)?,
        ClassFilter::Mn => monoids(n)?,
        ClassFilter::Sg => semigroups(n)?,
        ClassFilter::SgNotNd => semigroups(n)?
            .into_iter()
            .filter(|t| !is_nd_raw(n, t.entries()))
            .collect(),
        _ => unreachable!("full-scan filters are handled by the caller"),
    })
}

/// Progress of one shard: codes in `lo..done` have been processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardState {
    pub lo: u64,
    pub hi: u64,
    pub done: u64,
    pub count: u64,
}

impl fmt::Display for ShardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shard={}..{} done={} count={}", self.lo, self.hi, self.done, self.count)
    }
}

impl FromStr for ShardState {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("checkpoint line {line:?}: {msg}"),
        };
        let mut parts = line.split_whitespace();
        let range = parts
            .next()
            .and_then(|p| p.strip_prefix("shard="))
            .ok_or_else(|| bad("missing shard="))?;
        let (lo, hi) = range.split_once("..").ok_or_else(|| bad("missing range"))?;
        let mut field = |key: &str| -> Result<u64> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(key))
        };
        let done = field("done=")?;
        let count = field("count=")?;
        let lo: u64 = lo.parse().map_err(|_| bad("bad lower bound"))?;
        let hi: u64 = hi.parse().map_err(|_| bad("bad upper bound"))?;
        if !(lo <= done && done <= hi) {
            return Err(bad("done outside shard"));
        }
        Ok(ShardState { lo, hi, done, count })
    }
}

pub fn read_checkpoint(text: &str) -> Result<Vec<ShardState>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::parse)
        .collect()
}

pub fn write_checkpoint(states: &[ShardState]) -> String {
    states.iter().map(|s| format!("{s}\n")).collect()
}

fn full_scan(
    n: usize,
    filter: ClassFilter,
    options: &ScanOptions,
    visitor: Option<&(dyn Fn(OpCode) + Sync)>,
) -> Result<u64> {
    let size = space_size(n)?;
    let width = options
        .shard_width
        .unwrap_or_else(|| size.div_ceil(options.exec.workers() as u64))
        .max(1);
    let mut states: Vec<ShardState> = (0..size.div_ceil(width))
        .map(|s| {
            let lo = s * width;
            ShardState {
                lo,
                hi: (lo + width).min(size),
                done: lo,
                count: 0,
            }
        })
        .collect();

    if let Some(path) = &options.checkpoint {
        if let Ok(text) = fs::read_to_string(path) {
            let saved = read_checkpoint(&text)?;
            let same_layout = saved.len() == states.len()
                && saved.iter().zip(&states).all(|(a, b)| (a.lo, a.hi) == (b.lo, b.hi));
            if !same_layout {
                return Err(Error::Verification(format!(
                    "checkpoint {} was written with a different shard layout",
                    path.display()
                )));
            }
            states = saved;
        }
    }

    let shared = Mutex::new(states.clone());
    let interval = options.checkpoint_interval.max(1);
    let save = |index: usize, state: ShardState| -> Result<()> {
        let Some(path) = &options.checkpoint else {
            return Ok(());
        };
        let mut all = shared.lock().expect("checkpoint lock poisoned");
        all[index] = state;
        fs::write(path, write_checkpoint(&all))
            .map_err(|e| Error::Verification(format!("writing checkpoint: {e}")))
    };

    let results = options.exec.try_map_indexed(states.len(), |i| {
        let mut state = states[i];
        let mut cursor = Odometer::at(n, state.done);
        let mut since_save = 0u64;
        while state.done < state.hi {
            if filter.accepts(n, cursor.digits()) {
                state.count += 1;
                if let Some(v) = visitor {
                    v(code_of(n, cursor.digits()));
                }
            }
            cursor.step();
            state.done += 1;
            since_save += 1;
            if since_save == interval {
                save(i, state)?;
                since_save = 0;
            }
        }
        save(i, state)?;
        Ok::<_, Error>(state.count)
    })?;
    Ok(results.iter().sum())
}

/// Backtracking generator for associative tables, filled row-major.
///
/// `forced` pins entries before the search; a triple is tested as soon as the
/// four entries it reads are known.
struct AssocSearch {
    n: usize,
    forced: Vec<Option<u8>>,
    budget: u64,
}

impl AssocSearch {
    fn run(&self) -> Result<Vec<CayleyTable>> {
        let n = self.n;
        let m = n * n;
        let mut t: Vec<u8> = self.forced.iter().map(|f| f.unwrap_or(0)).collect();
        let free: Vec<usize> = (0..m).filter(|&p| self.forced[p].is_none()).collect();
        let mut known: Vec<bool> = self.forced.iter().map(Option::is_some).collect();
        let mut out = Vec::new();
        if !self.consistent(&t, &known) {
            return Ok(out);
        }
        if free.is_empty() {
            out.push(CayleyTable::from_entries_unchecked(n, t));
            return Ok(out);
        }
        let mut nodes = 0u64;
        let mut k = 0usize;
        t[free[0]] = 0;
        known[free[0]] = true;
        loop {
            nodes += 1;
            if nodes > self.budget {
                return Err(Error::Budget { budget: self.budget });
            }
            let ok = self.consistent(&t, &known);
            if ok && k + 1 < free.len() {
                k += 1;
                t[free[k]] = 0;
                known[free[k]] = true;
                continue;
            }
            if ok {
                out.push(CayleyTable::from_entries_unchecked(n, t.clone()));
            }
            loop {
                let p = free[k];
                if (t[p] as usize) + 1 < n {
                    t[p] += 1;
                    break;
                }
                known[p] = false;
                if k == 0 {
                    out.sort();
                    return Ok(out);
                }
                k -= 1;
            }
        }
    }

    fn consistent(&self, t: &[u8], known: &[bool]) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if !known[a * n + b] {
                    continue;
                }
                let ab = t[a * n + b] as usize;
                for c in 0..n {
                    let (p1, p2) = (ab * n + c, b * n + c);
                    if !known[p1] || !known[p2] {
                        continue;
                    }
                    let p3 = a * n + t[p2] as usize;
                    if known[p3] && t[p1] != t[p3] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All associative operations of order `n`, sorted.
pub fn semigroups(n: usize) -> Result<Vec<CayleyTable>> {
    check_order(n)?;
    AssocSearch {
        n,
        forced: vec![None; n * n],
        budget: GENERATOR_BUDGET,
    }
    .run()
}

/// All monoid operations of order `n`, sorted, generated identity by
/// identity with the identity's row and column pinned.
pub fn monoids(n: usize) -> Result<Vec<CayleyTable>> {
    check_order(n)?;
    let mut out = Vec::new();
    for e in 0..n {
        let mut forced = vec![None; n * n];
        for j in 0..n {
            forced[e * n + j] = Some(j as u8);
            forced[j * n + e] = Some(j as u8);
        }
        out.extend(
            AssocSearch {
                n,
                forced,
                budget: GENERATOR_BUDGET,
            }
            .run()?,
        );
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicU64, Ordering};

    fn seq() -> ScanOptions {
        ScanOptions::with_exec(Exec::Sequential)
    }

    #[test]
    fn census_examples() {
        assert_eq!(count_ops(2, ClassFilter::All, &seq()).unwrap().count, 16);
        assert_eq!(count_ops(3, ClassFilter::All, &seq()).unwrap().count, 19683);
        assert_eq!(count_ops(3, ClassFilter::Gr, &seq()).unwrap().count, 3);
        assert_eq!(count_ops(1, ClassFilter::Sg, &seq()).unwrap().count, 1);
    }

    #[test]
    fn visitor_sees_ascending_codes() {
        let seen = Mutex::new(Vec::new());
        let c = enumerate_ops(3, ClassFilter::Gr, &seq(), |code| seen.lock().unwrap().push(code)).unwrap();
        let seen = seen.into_inner().unwrap();
        assert_eq!(c.count, 3);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seen[0].decode(), CayleyTable::cyclic(3).unwrap());
    }

    #[test]
    fn counts_do_not_depend_on_workers() {
        for filter in ClassFilter::ALL_FILTERS {
            let counts: Vec<u64> = [1, 2, 8]
                .iter()
                .map(|&w| count_ops(3, filter, &ScanOptions::with_exec(Exec::with_workers(w))).unwrap().count)
                .collect();
            assert!(counts.iter().all(|&c| c == counts[0]), "{filter}: {counts:?}");
        }
    }

    #[test]
    fn uneven_shards_cover_everything() {
        let opts = ScanOptions {
            shard_width: Some(1000),
            ..ScanOptions::with_exec(Exec::with_workers(3))
        };
        let hits = AtomicU64::new(0);
        let c = enumerate_ops(3, ClassFilter::All, &opts, |_| {
            hits.fetch_add(1, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(c.count, 19683);
        assert_eq!(hits.load(Ordering::Relaxed), 19683);
    }

    #[test]
    fn order_four_guards() {
        assert!(matches!(
            count_ops(4, ClassFilter::All, &seq()),
            Err(Error::Method { .. })
        ));
        assert!(matches!(count_ops(4, ClassFilter::Nd, &seq()), Err(Error::Method { .. })));
        assert_eq!(count_ops(4, ClassFilter::Gr, &seq()).unwrap().count, 16);
        assert_eq!(count_ops(5, ClassFilter::Gr, &seq()), Err(Error::Overflow { n: 5 }));
        assert_eq!(count_ops(0, ClassFilter::All, &seq()), Err(Error::Order(0)));
    }

    #[test]
    fn generators_match_scans() {
        for n in 1..=3 {
            for (filter, generated) in [
                (ClassFilter::Sg, semigroups(n).unwrap()),
                (ClassFilter::Mn, monoids(n).unwrap()),
            ] {
                let scanned = Mutex::new(Vec::new());
                enumerate_ops(n, filter, &seq(), |c| scanned.lock().unwrap().push(c.decode())).unwrap();
                assert_eq!(scanned.into_inner().unwrap(), generated, "n={n} {filter}");
            }
        }
    }

    #[test]
    fn checkpoint_lines_round_trip() {
        let s = ShardState { lo: 0, hi: 100, done: 40, count: 3 };
        assert_eq!(s.to_string(), "shard=0..100 done=40 count=3");
        assert_eq!(read_checkpoint(&write_checkpoint(&[s, s])).unwrap(), vec![s, s]);
        assert!("shard=0..10 done=11 count=0".parse::<ShardState>().is_err());
        assert!("done=1".parse::<ShardState>().is_err());
    }

    #[test]
    fn scans_resume_from_checkpoints() {
        let dir = std::env::temp_dir().join(format!("magma-ckpt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("scan.txt");
        let _ = fs::remove_file(&path);
        let opts = ScanOptions {
            shard_width: Some(5000),
            checkpoint: Some(path.clone()),
            checkpoint_interval: 1000,
            ..seq()
        };
        let full = count_ops(3, ClassFilter::Nd, &opts).unwrap().count;
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().all(|l| l.parse::<ShardState>().unwrap().done == l.parse::<ShardState>().unwrap().hi));

        // pretend the scan stopped part-way through every shard
        let partial: Vec<ShardState> = read_checkpoint(&text)
            .unwrap()
            .into_iter()
            .map(|s| {
                let done = s.lo + (s.hi - s.lo) / 2;
                let count = (s.lo..done)
                    .filter(|&c| ClassFilter::Nd.accepts(3, OpCode::new(3, c).unwrap().decode().entries()))
                    .count() as u64;
                ShardState { done, count, ..s }
            })
            .collect();
        fs::write(&path, write_checkpoint(&partial)).unwrap();
        assert_eq!(count_ops(3, ClassFilter::Nd, &opts).unwrap().count, full);

        let other = ScanOptions { shard_width: Some(7000), ..opts };
        assert!(matches!(count_ops(3, ClassFilter::Nd, &other), Err(Error::Verification(_))));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn filter_names_parse() {
        for f in ClassFilter::ALL_FILTERS {
            assert_eq!(f.name().parse::<ClassFilter>().unwrap(), f);
        }
        assert_eq!("GR".parse::<ClassFilter>().unwrap(), ClassFilter::Gr);
        assert_eq!("sg_not_nd".parse::<ClassFilter>().unwrap(), ClassFilter::SgNotNd);
        assert!("xx".parse::<ClassFilter>().is_err());
    }
}
