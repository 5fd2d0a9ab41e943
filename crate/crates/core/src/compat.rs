//! Induced operations on tables, compatibility, and duals.
//!
//! For an element `a`, two tables `z1`, `z2` induce
//!
//! * `b (z1 ^a z2) c = (b z1 a) z2 c` (the hat operation), and
//! * `b (z1 va z2) c = b z1 (a z2 c)` (the check operation).
//!
//! `z1` and `z2` are compatible when `(a z1 b) z2 c = a z1 (b z2 c)` and
//! `(a z2 b) z1 c = a z2 (b z1 c)` for every triple. The dual of `z` is the set
//! of all tables compatible with `z`.

use std::fmt;
use std::ops::ControlFlow;

use crate::classify::{identity_raw, is_assoc_raw};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::table::{space_size, CayleyTable, Element, OpCode, MAX_CODE_ORDER};

/// Default node budget for the backtracking dual search.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

pub(crate) fn hat_into(n: usize, z1: &[u8], a: usize, z2: &[u8], out: &mut [u8]) {
    for b in 0..n {
        let ba = z1[b * n + a] as usize;
        out[b * n..b * n + n].copy_from_slice(&z2[ba * n..ba * n + n]);
    }
}

pub(crate) fn check_into(n: usize, z1: &[u8], a: usize, z2: &[u8], out: &mut [u8]) {
    let row_a = &z2[a * n..a * n + n];
    for b in 0..n {
        let row_b = &z1[b * n..b * n + n];
        for c in 0..n {
            out[b * n + c] = row_b[row_a[c] as usize];
        }
    }
}

fn check_element(n: usize, a: Element) -> Result<()> {
    if a < n {
        Ok(())
    } else {
        Err(Error::Range {
            value: a as u64,
            n,
        })
    }
}

/// `z1 ^a z2`: `b (z1 ^a z2) c = (b z1 a) z2 c`.
pub fn hat_op(z1: &CayleyTable, a: Element, z2: &CayleyTable) -> Result<CayleyTable> {
    z1.same_order(z2)?;
    let n = z1.order();
    check_element(n, a)?;
    let mut out = vec![0; n * n];
    hat_into(n, z1.entries(), a, z2.entries(), &mut out);
    Ok(CayleyTable::from_entries_unchecked(n, out))
}

/// `z1 va z2`: `b (z1 va z2) c = b z1 (a z2 c)`.
pub fn check_op(z1: &CayleyTable, a: Element, z2: &CayleyTable) -> Result<CayleyTable> {
    z1.same_order(z2)?;
    let n = z1.order();
    check_element(n, a)?;
    let mut out = vec![0; n * n];
    check_into(n, z1.entries(), a, z2.entries(), &mut out);
    Ok(CayleyTable::from_entries_unchecked(n, out))
}

/// Which of the two multi-associativity equations failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatEquation {
    /// `(a z1 b) z2 c != a z1 (b z2 c)`
    HatNeCheck1,
    /// `(a z2 b) z1 c != a z2 (b z1 c)`
    HatNeCheck2,
}

impl fmt::Display for CompatEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompatEquation::HatNeCheck1 => "HAT_NE_CHECK_1",
            CompatEquation::HatNeCheck2 => "HAT_NE_CHECK_2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatReport {
    pub compatible: bool,
    pub failing_equation: Option<CompatEquation>,
    pub witness: Option<(Element, Element, Element)>,
}

/// Checks both equations over all triples in lexicographic order, testing the
/// first equation before the second at each triple.
pub fn are_compatible(z1: &CayleyTable, z2: &CayleyTable) -> Result<CompatReport> {
    z1.same_order(z2)?;
    let n = z1.order();
    let (x, y) = (z1.entries(), z2.entries());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let found = if y[x[a * n + b] as usize * n + c] != x[a * n + y[b * n + c] as usize] {
                    Some(CompatEquation::HatNeCheck1)
                } else if x[y[a * n + b] as usize * n + c] != y[a * n + x[b * n + c] as usize] {
                    Some(CompatEquation::HatNeCheck2)
                } else {
                    None
                };
                if let Some(eq) = found {
                    return Ok(CompatReport {
                        compatible: false,
                        failing_equation: Some(eq),
                        witness: Some((a, b, c)),
                    });
                }
            }
        }
    }
    Ok(CompatReport {
        compatible: true,
        failing_equation: None,
        witness: None,
    })
}

/// Allocation-free compatibility test for hot loops.
#[inline]
pub(crate) fn compatible_raw(n: usize, x: &[u8], y: &[u8]) -> bool {
    for a in 0..n {
        let xa = &x[a * n..a * n + n];
        let ya = &y[a * n..a * n + n];
        for b in 0..n {
            let xab = &y[xa[b] as usize * n..xa[b] as usize * n + n];
            let yab = &x[ya[b] as usize * n..ya[b] as usize * n + n];
            let yb = &y[b * n..b * n + n];
            let xb = &x[b * n..b * n + n];
            for c in 0..n {
                if xab[c] != xa[yb[c] as usize] || yab[c] != ya[xb[c] as usize] {
                    return false;
                }
            }
        }
    }
    true
}

/// How a dual is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualMethod {
    /// Test every table of the order; `n <= 3`.
    Exhaustive,
    /// Depth-first fill of the unknown table with constraint pruning; `n <= 4`.
    Backtrack,
    /// `{ z ^a z : a in S }`; only valid for monoids.
    Sandwich,
}

impl DualMethod {
    pub fn name(self) -> &'static str {
        match self {
            DualMethod::Exhaustive => "EXHAUSTIVE",
            DualMethod::Backtrack => "BACKTRACK",
            DualMethod::Sandwich => "SANDWICH",
        }
    }
}

impl fmt::Display for DualMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The dual of `base` as a sorted list of codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSet {
    pub base: OpCode,
    pub members: Vec<OpCode>,
    pub method: DualMethod,
}

impl DualSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, code: OpCode) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    pub fn tables(&self) -> impl Iterator<Item = CayleyTable> + '_ {
        self.members.iter().map(|c| c.decode())
    }

    /// Same members, ignoring how they were found.
    pub fn same_members(&self, other: &DualSet) -> bool {
        self.members == other.members
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DualConfig {
    pub budget: u64,
    pub exec: Exec,
}

impl Default for DualConfig {
    fn default() -> Self {
        DualConfig {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

pub fn dual_set(z: &CayleyTable, method: DualMethod) -> Result<DualSet> {
    dual_set_with(z, method, &DualConfig::default())
}

pub fn dual_set_with(z: &CayleyTable, method: DualMethod, config: &DualConfig) -> Result<DualSet> {
    let n = z.order();
    let base = z.encode()?;
    let members = match method {
        DualMethod::Exhaustive => {
            if n > 3 {
                return Err(Error::Method {
                    method: method.name(),
                    reason: format!("exhaustive duals are limited to n <= 3 (got {n})"),
                });
            }
            exhaustive_members(z, config.exec)
        }
        DualMethod::Backtrack => {
            if n > MAX_CODE_ORDER {
                return Err(Error::Method {
                    method: method.name(),
                    reason: format!("backtracking duals are limited to n <= {MAX_CODE_ORDER}"),
                });
            }
            let mut members = Vec::new();
            DualSearch::new(z).run(config.budget, |w| {
                members.push(code_of(n, w));
                ControlFlow::Continue(())
            })?;
            members
        }
        DualMethod::Sandwich => sandwich_tables(z)?
            .iter()
            .map(OpCode::encode)
            .collect::<Result<Vec<_>>>()?,
    };
    let mut members = members;
    members.sort_unstable();
    members.dedup();
    Ok(DualSet {
        base,
        members,
        method,
    })
}

/// The sandwich operations `z ^a z` for every `a`, in element order.
/// Requires `z` to be a monoid.
pub fn sandwich_tables(z: &CayleyTable) -> Result<Vec<CayleyTable>> {
    let n = z.order();
    if !is_assoc_raw(n, z.entries()) || identity_raw(n, z.entries()).is_none() {
        return Err(Error::Method {
            method: DualMethod::Sandwich.name(),
            reason: "sandwich duals are only complete for monoids".into(),
        });
    }
    (0..n).map(|a| hat_op(z, a, z)).collect()
}

pub(crate) fn code_of(n: usize, entries: &[u8]) -> OpCode {
    let code = entries
        .iter()
        .fold(0u64, |acc, &d| acc * n as u64 + d as u64);
    OpCode::new(n, code).expect("entries of a valid table")
}

fn exhaustive_members(z: &CayleyTable, exec: Exec) -> Vec<OpCode> {
    let n = z.order();
    let size = space_size(n).expect("order checked by caller");
    let shards = exec.workers().max(1) as u64;
    let width = size.div_ceil(shards);
    let parts = exec.map_indexed(shards as usize, |s| {
        let lo = s as u64 * width;
        let hi = ((s as u64 + 1) * width).min(size);
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        let mut cursor = Odometer::at(n, lo);
        for code in lo..hi {
            if compatible_raw(n, z.entries(), cursor.digits()) {
                out.push(OpCode::new(n, code).expect("in range"));
            }
            cursor.step();
        }
        out
    });
    parts.concat()
}

/// Row-major base-`n` digits of consecutive codes.
#[derive(Debug, Clone)]
pub(crate) struct Odometer {
    n: u8,
    digits: Vec<u8>,
}

impl Odometer {
    pub(crate) fn at(n: usize, code: u64) -> Self {
        let mut digits = vec![0u8; n * n];
        let mut rest = code;
        for d in digits.iter_mut().rev() {
            *d = (rest % n as u64) as u8;
            rest /= n as u64;
        }
        Odometer {
            n: n as u8,
            digits,
        }
    }

    #[inline]
    pub(crate) fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Advances to the next code; wraps to all zeros after the last one.
    #[inline]
    pub(crate) fn step(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.n {
                return;
            }
            *d = 0;
        }
    }
}

/// One multi-associativity equation with the base table folded in.
///
/// Checks `w[p] == base[fixed][w[q]]` when `left`, else `w[p] == base[w[q]][fixed]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    p: u16,
    q: u16,
    fixed: u8,
    left: bool,
}

/// Backtracking search for the tables compatible with a fixed base table.
///
/// The unknown table is filled in row-major order. Each constraint is
/// scheduled at the deepest position it references, so it is tested exactly
/// once, as soon as it is decidable.
pub(crate) struct DualSearch {
    n: usize,
    base: Vec<u8>,
    by_level: Vec<Vec<Constraint>>,
}

impl DualSearch {
    pub(crate) fn new(z: &CayleyTable) -> Self {
        let n = z.order();
        let t = z.entries();
        let mut by_level: Vec<Vec<Constraint>> = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // (a z b) w c = a z (b w c)
                    let first = Constraint {
                        p: (t[a * n + b] as usize * n + c) as u16,
                        q: (b * n + c) as u16,
                        fixed: a as u8,
                        left: true,
                    };
                    // (a w b) z c = a w (b z c)
                    let second = Constraint {
                        p: (a * n + t[b * n + c] as usize) as u16,
                        q: (a * n + b) as u16,
                        fixed: c as u8,
                        left: false,
                    };
                    for k in [first, second] {
                        by_level[k.p.max(k.q) as usize].push(k);
                    }
                }
            }
        }
        for level in &mut by_level {
            level.sort_unstable();
            level.dedup();
        }
        DualSearch {
            n,
            base: t.to_vec(),
            by_level,
        }
    }

    #[inline]
    fn consistent(&self, level: usize, w: &[u8]) -> bool {
        let n = self.n;
        self.by_level[level].iter().all(|k| {
            let v = w[k.q as usize] as usize;
            let rhs = if k.left {
                self.base[k.fixed as usize * n + v]
            } else {
                self.base[v * n + k.fixed as usize]
            };
            w[k.p as usize] == rhs
        })
    }

    /// Visits every compatible table in ascending code order. Returns the
    /// number of nodes (tentative assignments) explored.
    pub(crate) fn run<F>(&self, budget: u64, mut visit: F) -> Result<u64>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let n = self.n as u8;
        let m = self.n * self.n;
        let mut w = vec![0u8; m];
        let mut k = 0usize;
        let mut nodes = 0u64;
        loop {
            nodes += 1;
            if nodes > budget {
                return Err(Error::Budget { budget });
            }
            let mut descend = false;
            if self.consistent(k, &w) {
                if k + 1 == m {
                    if visit(&w).is_break() {
                        return Ok(nodes);
                    }
                } else {
                    descend = true;
                }
            }
            if descend {
                k += 1;
                w[k] = 0;
                continue;
            }
            // next sibling, popping exhausted levels
            loop {
                if w[k] + 1 < n {
                    w[k] += 1;
                    break;
                }
                if k == 0 {
                    return Ok(nodes);
                }
                k -= 1;
            }
        }
    }
}
