//! Evidence for the open question about duals of nondegenerate,
//! non-associative operations:
//!
//! 1. Is `⋃ { S*_z : z ∈ ND \ SG }` equal to `SG \ ND`?
//! 2. Does every associative `z` have a nondegenerate member in `S*_z`?
//!
//! Both parts are decided from the associative side. Compatibility is
//! symmetric, so `t ∈ SG \ ND` is covered by the union exactly when `S*_t`
//! contains a nondegenerate non-associative table. Every semigroup dual is
//! searched, which is cheap for `n <= 4`.
//!
//! The forward direction (every dual of a `z ∈ ND \ SG` lies inside
//! `SG \ ND`) is checked by scanning `ND \ SG` in code order. It is complete
//! for `n <= 3`; at `n = 4` it runs until the time budget is spent and the
//! report lists the code range it covered.

use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::classify::{is_assoc_raw, is_nd_raw};
use crate::compat::{code_of, hat_into, DualSearch, DEFAULT_BUDGET};
use crate::enumerate::{count_ops, enumerate_ops, semigroups, ClassFilter, ScanOptions};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::table::{check_order, space_size, CayleyTable, Element, OpCode, MAX_CODE_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Not every case was decided within the budget and no counterexample
    /// was found among those that were.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Undetermined => "UNDETERMINED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStatus {
    Complete,
    Partial,
}

impl fmt::Display for ScanStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanStatus::Complete => "COMPLETE",
            ScanStatus::Partial => "PARTIAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanCounts {
    pub sg: u64,
    pub sg_not_nd: u64,
    /// Semigroups whose dual was searched to a conclusion.
    pub sg_resolved: u64,
    /// Members of `ND \ SG` whose duals were checked in the forward pass.
    pub nd_not_sg_scanned: u64,
    /// Size of `ND \ SG` when the forward pass covered it entirely.
    pub nd_not_sg_total: Option<u64>,
    /// Code ranges `lo..hi` covered by the forward pass.
    pub forward_ranges: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionReport {
    pub n: usize,
    pub status: ScanStatus,
    pub part1: Verdict,
    /// Members of `SG \ ND` not compatible with any `z ∈ ND \ SG`.
    pub part1_missing: Vec<OpCode>,
    /// For each covered `t ∈ SG \ ND`, the smallest `z ∈ ND \ SG` compatible with it.
    pub part1_cover: Vec<(OpCode, OpCode)>,
    pub part2: Verdict,
    /// Associative tables whose dual has no nondegenerate member.
    pub part2_failures: Vec<OpCode>,
    /// For each passing associative `t`, the smallest nondegenerate member of `S*_t`.
    pub part2_cover: Vec<(OpCode, OpCode)>,
    /// Semigroups left undecided when the budget ran out.
    pub unresolved: Vec<OpCode>,
    pub scanned: ScanCounts,
}

impl QuestionReport {
    pub fn part1_holds(&self) -> bool {
        self.part1 == Verdict::Holds
    }

    pub fn part2_holds(&self) -> bool {
        self.part2 == Verdict::Holds
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExploreOptions {
    pub budget: Duration,
    pub exec: Exec,
    /// Node budget for each dual search.
    pub node_budget: u64,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            budget: Duration::from_secs(60),
            exec: Exec::default(),
            node_budget: DEFAULT_BUDGET,
        }
    }
}

/// What a search of `S*_t` found.
#[derive(Debug, Clone, Copy, Default)]
struct DualProbe {
    first_nd: Option<OpCode>,
    first_nd_not_sg: Option<OpCode>,
}

fn probe_dual(t: &CayleyTable, node_budget: u64) -> Result<DualProbe> {
    let n = t.order();
    let mut probe = DualProbe::default();
    DualSearch::new(t).run(node_budget, |w| {
        if is_nd_raw(n, w) {
            if probe.first_nd.is_none() {
                probe.first_nd = Some(code_of(n, w));
            }
            if probe.first_nd_not_sg.is_none() && !is_assoc_raw(n, w) {
                probe.first_nd_not_sg = Some(code_of(n, w));
            }
        }
        if probe.first_nd.is_some() && probe.first_nd_not_sg.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(probe)
}

fn associative_tables(n: usize, exec: Exec) -> Result<Vec<CayleyTable>> {
    if n <= 3 {
        let found = std::sync::Mutex::new(Vec::new());
        enumerate_ops(n, ClassFilter::Sg, &ScanOptions::with_exec(exec), |c| {
            found.lock().expect("lock").push(c.decode())
        })?;
        let mut v = found.into_inner().expect("lock");
        v.sort();
        Ok(v)
    } else {
        semigroups(n)
    }
}

const CHUNK: usize = 256;

/// Scans both parts of the question for order `n` within `options.budget`.
pub fn scan_question(n: usize, options: &ExploreOptions) -> Result<QuestionReport> {
    check_order(n)?;
    if n > MAX_CODE_ORDER {
        return Err(Error::Overflow { n });
    }
    let deadline = Instant::now() + options.budget;
    let exec = options.exec;

    // associative side, decided exactly
    let sg = associative_tables(n, exec)?;
    let mut probes: Vec<Option<DualProbe>> = Vec::with_capacity(sg.len());
    for chunk in sg.chunks(CHUNK) {
        if Instant::now() > deadline {
            probes.extend(std::iter::repeat_n(None, chunk.len()));
            continue;
        }
        let results = exec.map_indexed(chunk.len(), |i| match probe_dual(&chunk[i], options.node_budget) {
            Ok(p) => Some(p),
            Err(Error::Budget { .. }) => None,
            Err(e) => panic!("dual search failed unexpectedly: {e}"),
        });
        probes.extend(results);
    }

    let mut scanned = ScanCounts {
        sg: sg.len() as u64,
        ..ScanCounts::default()
    };
    let mut part1_missing = Vec::new();
    let mut part1_cover = Vec::new();
    let mut part2_failures = Vec::new();
    let mut part2_cover = Vec::new();
    let mut unresolved = Vec::new();
    for (t, probe) in sg.iter().zip(&probes) {
        let code = t.encode()?;
        let degenerate = !is_nd_raw(n, t.entries());
        if degenerate {
            scanned.sg_not_nd += 1;
        }
        let Some(p) = probe else {
            unresolved.push(code);
            continue;
        };
        scanned.sg_resolved += 1;
        match p.first_nd {
            Some(w) => part2_cover.push((code, w)),
            None => part2_failures.push(code),
        }
        if degenerate {
            match p.first_nd_not_sg {
                Some(w) => part1_cover.push((code, w)),
                None => part1_missing.push(code),
            }
        }
    }

    // forward direction: duals of ND \ SG stay inside SG \ ND
    let covered: Vec<OpCode> = {
        let mut v: Vec<OpCode> = part1_cover.iter().map(|&(t, _)| t).collect();
        v.sort_unstable();
        v
    };
    let forward = forward_pass(n, options, deadline)?;
    scanned.nd_not_sg_scanned = forward.scanned;
    scanned.forward_ranges = forward.ranges.clone();
    let forward_complete = forward.complete;
    if forward_complete {
        scanned.nd_not_sg_total = Some(forward.scanned);
        if unresolved.is_empty() && forward.union != covered {
            return Err(Error::Verification(
                "forward and reverse coverage of SG \\ ND disagree".into(),
            ));
        }
    }

    let verdict = |failures: &[OpCode]| {
        if !failures.is_empty() {
            Verdict::Fails
        } else if unresolved.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Undetermined
        }
    };
    let status = if forward_complete && unresolved.is_empty() {
        ScanStatus::Complete
    } else {
        ScanStatus::Partial
    };
    Ok(QuestionReport {
        n,
        status,
        part1: verdict(&part1_missing),
        part1_missing,
        part1_cover,
        part2: verdict(&part2_failures),
        part2_failures,
        part2_cover,
        unresolved,
        scanned,
    })
}

struct Forward {
    scanned: u64,
    ranges: Vec<(u64, u64)>,
    complete: bool,
    union: Vec<OpCode>,
}

/// Duals of `z ∈ ND \ SG`, in code order, until the deadline. Any member
/// outside `SG \ ND` is a verification failure.
fn forward_pass(n: usize, options: &ExploreOptions, deadline: Instant) -> Result<Forward> {
    let size = space_size(n)?;
    let exec = options.exec;
    let block = 1u64 << 14;
    let mut union = Vec::new();
    let mut scanned = 0u64;
    let mut lo = 0u64;
    while lo < size {
        if Instant::now() > deadline {
            break;
        }
        let hi = (lo + block).min(size);
        let shards = exec.workers() as u64;
        let width = (hi - lo).div_ceil(shards);
        let parts = exec.try_map_indexed(shards as usize, |s| {
            let a = lo + s as u64 * width;
            let b = (a + width).min(hi);
            let mut members = Vec::new();
            let mut count = 0u64;
            for code in a..b {
                let z = OpCode::new(n, code)?.decode();
                if !ClassFilter::NdNotSg.accepts(n, z.entries()) {
                    continue;
                }
                count += 1;
                let mut bad = None;
                DualSearch::new(&z).run(options.node_budget, |w| {
                    if ClassFilter::SgNotNd.accepts(n, w) {
                        members.push(code_of(n, w));
                        ControlFlow::Continue(())
                    } else {
                        bad = Some(code_of(n, w));
                        ControlFlow::Break(())
                    }
                })?;
                if let Some(w) = bad {
                    return Err(Error::Verification(format!(
                        "dual of nondegenerate non-associative {code} contains {w}, outside SG \\ ND"
                    )));
                }
            }
            Ok((count, members))
        })?;
        for (count, members) in parts {
            scanned += count;
            union.extend(members);
        }
        lo = hi;
    }
    union.sort_unstable();
    union.dedup();
    Ok(Forward {
        scanned,
        ranges: if lo > 0 { vec![(0, lo)] } else { Vec::new() },
        complete: lo == size,
        union,
    })
}

/// `|ND \ SG|` for `n <= 3`, used to cross-check the forward pass.
pub fn nd_not_sg_count(n: usize) -> Result<u64> {
    Ok(count_ops(n, ClassFilter::NdNotSg, &ScanOptions::default())?.count)
}

/// Whether duals of degenerate tables are closed under the hat operations,
/// which is only known for nondegenerate tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCensus {
    pub n: usize,
    /// Degenerate tables with a non-empty dual.
    pub degenerate: u64,
    /// Those among them whose dual is closed under every `^a`.
    pub closed: u64,
    /// The smallest degenerate `z` with a dual that is not closed, and the
    /// smallest `(z1, a, z2)` with `z1 ^a z2` outside it.
    pub first_open: Option<(OpCode, OpCode, Element, OpCode)>,
}

/// Measures hat-closure of `S*_z` over every degenerate `z` of order `n <= 3`.
pub fn hat_closure_census(n: usize, exec: Exec) -> Result<ClosureCensus> {
    check_order(n)?;
    if n > 3 {
        return Err(Error::Method {
            method: "closure census",
            reason: format!("needs every dual of order n <= 3 (got {n})"),
        });
    }
    let size = space_size(n)? as usize;
    let m = n * n;
    let verdicts = exec.try_map_indexed(size, |i| {
        let z = OpCode::new(n, i as u64)?.decode();
        if is_nd_raw(n, z.entries()) {
            return Ok(None);
        }
        let mut members: Vec<Vec<u8>> = Vec::new();
        DualSearch::new(&z).run(DEFAULT_BUDGET, |w| {
            members.push(w.to_vec());
            ControlFlow::Continue(())
        })?;
        if members.is_empty() {
            return Ok(None);
        }
        let mut h = vec![0u8; m];
        for x in &members {
            for a in 0..n {
                for y in &members {
                    hat_into(n, x, a, y, &mut h);
                    if members.binary_search(&h).is_err() {
                        let witness = (code_of(n, x), a, code_of(n, y));
                        return Ok::<_, Error>(Some(Some(witness)));
                    }
                }
            }
        }
        Ok(Some(None))
    })?;
    let mut census = ClosureCensus {
        n,
        degenerate: 0,
        closed: 0,
        first_open: None,
    };
    for (i, v) in verdicts.into_iter().enumerate() {
        match v {
            None => {}
            Some(None) => {
                census.degenerate += 1;
                census.closed += 1;
            }
            Some(Some((x, a, y))) => {
                census.degenerate += 1;
                census.first_open.get_or_insert((OpCode::new(n, i as u64)?, x, a, y));
            }
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_census_is_consistent() {
        for n in 1..=3 {
            let c = hat_closure_census(n, Exec::default()).unwrap();
            assert_eq!(c, hat_closure_census(n, Exec::Sequential).unwrap());
            assert!(c.closed <= c.degenerate);
            assert_eq!(c.first_open.is_none(), c.closed == c.degenerate);
        }
        assert!(hat_closure_census(4, Exec::Sequential).is_err());
    }

    fn opts() -> ExploreOptions {
        ExploreOptions {
            budget: Duration::from_secs(600),
            exec: Exec::Sequential,
            node_budget: DEFAULT_BUDGET,
        }
    }

    #[test]
    fn order_one_holds_vacuously() {
        let r = scan_question(1, &opts()).unwrap();
        assert_eq!(r.status, ScanStatus::Complete);
        assert!(r.part1_holds() && r.part1_missing.is_empty() && r.part1_cover.is_empty());
        assert!(r.part2_holds());
        assert_eq!(r.scanned.sg, 1);
        assert_eq!(r.scanned.sg_not_nd, 0);
        assert_eq!(r.scanned.nd_not_sg_total, Some(0));
    }

    #[test]
    fn verdicts_match_witness_lists() {
        for n in 1..=3 {
            let r = scan_question(n, &opts()).unwrap();
            assert_eq!(r.status, ScanStatus::Complete);
            assert_eq!(r.part1_holds(), r.part1_missing.is_empty());
            assert_eq!(r.part2_holds(), r.part2_failures.is_empty());
            assert_eq!(r.scanned.nd_not_sg_total, Some(nd_not_sg_count(n).unwrap()));
            assert_eq!(
                r.part1_missing.len() + r.part1_cover.len(),
                r.scanned.sg_not_nd as usize
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = scan_question(3, &opts()).unwrap();
        let b = scan_question(3, &ExploreOptions { exec: Exec::with_workers(4), ..opts() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhausted_budget_is_partial() {
        let r = scan_question(
            3,
            &ExploreOptions {
                budget: Duration::ZERO,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(r.status, ScanStatus::Partial);
        assert_eq!(r.part1, Verdict::Undetermined);
        assert_eq!(r.part2, Verdict::Undetermined);
        assert_eq!(r.unresolved.len(), 113);
        assert!(r.scanned.forward_ranges.is_empty());
    }

    #[test]
    fn order_five_is_rejected() {
        assert!(scan_question(5, &opts()).is_err());
    }
}
