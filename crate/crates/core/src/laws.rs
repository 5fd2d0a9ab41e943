//! Executable forms of the structural results about duals, swept
//! exhaustively over small orders and by random sampling at order 4.
//!
//! Each law is counted separately: how many cases satisfied its
//! precondition, how many violated it, and a description of the first
//! violation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{identity_raw, is_assoc_raw, is_nd_raw};
use crate::compat::{
    are_compatible, check_into, compatible_raw, dual_set, dual_set_with, hat_into, hat_op,
    DualConfig, DualMethod,
};
use crate::duality::{all_group_ops, are_isomorphic, automorphisms, conjugate, phi, phi_inverse};
use crate::enumerate::{monoids, semigroups};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{permutations, Permutation};
use crate::table::{space_size, CayleyTable, OpCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `z1 ∈ S*_{z2}` iff `z2 ∈ S*_{z1}`.
    Symmetry,
    /// `z1` nondegenerate and compatible with `z2` gives `S*_{z1} ⊆ S*_{z2}`,
    /// with equality when `z2` is nondegenerate too.
    CatalystInclusion,
    /// For nondegenerate `z`: members of `S*_z` are pairwise compatible and
    /// associative, and degenerate when `z` is not associative.
    PairwiseCompatible,
    /// For nondegenerate `z`: `S*_z` is closed under every hat operation.
    HatClosure,
    /// For nondegenerate `z`: `(z1 ^a z2) ^b z3 = z1 ^a (z2 ^b z3)` in `S*_z`.
    DualMultiAssociativity,
    /// `z1 ^a z2` is associative whenever `z1`, `z2` are compatible.
    HatAssociative,
    /// For a group `z1` and any `z2`, the duals are disjoint or equal.
    GroupDualsDisjointOrEqual,
    /// Compatible iff hat and check agree in both orders for every element.
    HatCheckAgreement,
    /// The backtracking dual equals the exhaustive one, or is sound and
    /// complete on probes where no exhaustive dual exists.
    BacktrackMatchesExhaustive,
    /// `z^(σ∘τ) = (z^τ)^σ`, and `z^σ = z` iff `σ ∈ Aut(z)`.
    ConjugationAction,
    /// `Aut(z)` contains the identity and is closed under composition and inverses.
    AutomorphismGroup,
    /// For a monoid `z0`, `φ` is a bijection onto `S*_{z0}` with `φ(e) = z0`
    /// and `φ(b φ(a) c) = φ(b) ^a φ(c)`.
    SandwichDuality,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Symmetry => "compatibility symmetry",
            Law::CatalystInclusion => "nondegenerate catalyst inclusion/equality",
            Law::PairwiseCompatible => "pairwise compatibility in duals",
            Law::HatClosure => "dual closed under hat",
            Law::DualMultiAssociativity => "multi-associativity in duals",
            Law::HatAssociative => "hat of compatible pair is associative",
            Law::GroupDualsDisjointOrEqual => "group duals disjoint or equal",
            Law::HatCheckAgreement => "hat/check agreement iff compatible",
            Law::BacktrackMatchesExhaustive => "backtrack dual equals exhaustive dual",
            Law::ConjugationAction => "conjugation action laws",
            Law::AutomorphismGroup => "automorphism group axioms",
            Law::SandwichDuality => "sandwich duality isomorphism",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: Law,
    pub cases: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl LawOutcome {
    fn new(law: Law) -> Self {
        LawOutcome {
            law,
            cases: 0,
            violations: 0,
            first_violation: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }
}

/// Per-law tallies, kept sorted by law.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    fn slot(&mut self, law: Law) -> &mut LawOutcome {
        let i = match self.outcomes.binary_search_by(|o| o.law.cmp(&law)) {
            Ok(i) => i,
            Err(i) => {
                self.outcomes.insert(i, LawOutcome::new(law));
                i
            }
        };
        &mut self.outcomes[i]
    }

    fn record(&mut self, law: Law, ok: bool, describe: impl FnOnce() -> String) {
        let slot = self.slot(law);
        slot.cases += 1;
        if !ok {
            slot.violations += 1;
            if slot.first_violation.is_none() {
                slot.first_violation = Some(describe());
            }
        }
    }

    /// Merges in index order so first violations are deterministic.
    pub fn merge(&mut self, other: LawReport) {
        for o in other.outcomes {
            let slot = self.slot(o.law);
            slot.cases += o.cases;
            slot.violations += o.violations;
            if slot.first_violation.is_none() {
                slot.first_violation = o.first_violation;
            }
        }
    }

    pub fn get(&self, law: Law) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.law == law)
    }

    pub fn total_violations(&self) -> u64 {
        self.outcomes.iter().map(|o| o.violations).sum()
    }
}

fn show(n: usize, t: &[u8]) -> String {
    format!("{:?}", CayleyTable::from_entries_unchecked(n, t.to_vec()))
}

const MAX_SMALL: usize = 16;

/// `z1 ^a z2 == z1 va z2` and `z2 ^a z1 == z2 va z1` for every `a`.
fn hat_check_agree(n: usize, x: &[u8], y: &[u8]) -> bool {
    let m = n * n;
    let mut h = [0u8; MAX_SMALL];
    let mut c = [0u8; MAX_SMALL];
    for a in 0..n {
        for (p, q) in [(x, y), (y, x)] {
            hat_into(n, p, a, q, &mut h[..m]);
            check_into(n, p, a, q, &mut c[..m]);
            if h[..m] != c[..m] {
                return false;
            }
        }
    }
    true
}

/// Decoded tables and backtracking duals for every code of order `n <= 3`.
pub struct DualIndex {
    n: usize,
    tables: Vec<Vec<u8>>,
    duals: Vec<Vec<u32>>,
}

impl DualIndex {
    pub fn build(n: usize, exec: Exec) -> Result<Self> {
        if n > 3 {
            return Err(Error::Method {
                method: "dual index",
                reason: format!("complete dual index needs n <= 3 (got {n})"),
            });
        }
        let size = space_size(n)? as usize;
        let tables: Vec<Vec<u8>> = (0..size as u64)
            .map(|c| OpCode::new(n, c).map(|o| o.decode().entries().to_vec()))
            .collect::<Result<_>>()?;
        let config = DualConfig {
            exec: Exec::Sequential,
            ..DualConfig::default()
        };
        let duals = exec.try_map_indexed(size, |i| {
            let z = CayleyTable::from_entries_unchecked(n, tables[i].clone());
            let d = dual_set_with(&z, DualMethod::Backtrack, &config)?;
            Ok::<_, Error>(d.members.iter().map(|c| c.value() as u32).collect())
        })?;
        Ok(DualIndex { n, tables, duals })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dual(&self, code: u32) -> &[u32] {
        &self.duals[code as usize]
    }

    pub fn table(&self, code: u32) -> &[u8] {
        &self.tables[code as usize]
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    fn contains(&self, base: u32, member: u32) -> bool {
        self.duals[base as usize].binary_search(&member).is_ok()
    }

    fn code(&self, t: &[u8]) -> u32 {
        t.iter().fold(0u32, |acc, &d| acc * self.n as u32 + d as u32)
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Every law over every table (and every pair where a law ranges over pairs)
/// of order `n <= 3`.
pub fn exhaustive_sweep(n: usize, exec: Exec) -> Result<LawReport> {
    let index = DualIndex::build(n, exec)?;
    let size = index.len();
    let perms = permutations(n, None);
    let groups: Vec<u32> = (0..size as u32)
        .filter(|&c| {
            let t = index.table(c);
            is_assoc_raw(n, t) && group_raw(n, t)
        })
        .collect();

    let parts = exec.map_indexed(size, |i| {
        let mut r = LawReport::default();
        let z = i as u32;
        let zt = index.table(z);
        let dual = index.dual(z);

        // all-pairs pass: exhaustive dual, hat/check agreement, symmetry
        let mut exhaustive = Vec::new();
        let mut agreement_failures = 0u64;
        let mut first = None;
        for j in 0..size as u32 {
            let wt = index.table(j);
            let compatible = compatible_raw(n, zt, wt);
            if compatible {
                exhaustive.push(j);
            }
            if compatible != hat_check_agree(n, zt, wt) {
                agreement_failures += 1;
                first.get_or_insert_with(|| format!("{} vs {}", show(n, zt), show(n, wt)));
            }
        }
        {
            let slot = r.slot(Law::HatCheckAgreement);
            slot.cases += size as u64;
            slot.violations += agreement_failures;
            slot.first_violation = first;
        }
        r.record(Law::BacktrackMatchesExhaustive, exhaustive == dual, || {
            format!("dual of {}", show(n, zt))
        });
        for &w in dual {
            r.record(Law::Symmetry, index.contains(w, z), || {
                format!("{} in dual of {} but not conversely", show(n, index.table(w)), show(n, zt))
            });
            let mut h = vec![0u8; n * n];
            for a in 0..n {
                hat_into(n, zt, a, index.table(w), &mut h);
                r.record(Law::HatAssociative, is_assoc_raw(n, &h), || {
                    format!("{} ^{a} {}", show(n, zt), show(n, index.table(w)))
                });
            }
        }

        if is_nd_raw(n, zt) {
            nondegenerate_laws(&index, z, &mut r);
        }

        for &g in &groups {
            let (dg, dz) = (index.dual(g), dual);
            let meets = dg.iter().any(|c| dz.binary_search(c).is_ok());
            r.record(Law::GroupDualsDisjointOrEqual, !meets || dg == dz, || {
                format!("group {} and {}", show(n, index.table(g)), show(n, zt))
            });
        }

        let table = CayleyTable::from_entries_unchecked(n, zt.to_vec());
        action_laws(&table, &perms, &perms, &mut r);
        r
    });

    let mut report = LawReport::default();
    for p in parts {
        report.merge(p);
    }

    for z0 in monoids(n)? {
        let members: Vec<CayleyTable> = index
            .dual(index.code(z0.entries()))
            .iter()
            .map(|&c| CayleyTable::from_entries_unchecked(n, index.table(c).to_vec()))
            .collect();
        sandwich_law(&z0, &members, &mut report)?;
    }
    Ok(report)
}

fn group_raw(n: usize, t: &[u8]) -> bool {
    match identity_raw(n, t) {
        Some(e) => (0..n).all(|a| (0..n).any(|b| t[a * n + b] as usize == e && t[b * n + a] as usize == e)),
        None => false,
    }
}

fn nondegenerate_laws(index: &DualIndex, z: u32, r: &mut LawReport) {
    let n = index.order();
    let zt = index.table(z);
    let dual = index.dual(z);
    let z_assoc = is_assoc_raw(n, zt);
    let mut h = vec![0u8; n * n];
    for &z1 in dual {
        let t1 = index.table(z1);
        // catalyst: S*_z ⊆ S*_{z1}, equal when z1 is nondegenerate
        let inner = index.dual(z1);
        let ok = is_subset(dual, inner) && (!is_nd_raw(n, t1) || inner == dual);
        r.record(Law::CatalystInclusion, ok, || {
            format!("{} with {}", show(n, zt), show(n, t1))
        });
        let ok = is_assoc_raw(n, t1) && (z_assoc || !is_nd_raw(n, t1));
        r.record(Law::PairwiseCompatible, ok, || {
            format!("member {} of dual of {}", show(n, t1), show(n, zt))
        });
        for &z2 in dual {
            let t2 = index.table(z2);
            r.record(Law::PairwiseCompatible, compatible_raw(n, t1, t2), || {
                format!("members {} and {} of dual of {}", show(n, t1), show(n, t2), show(n, zt))
            });
            for a in 0..n {
                hat_into(n, t1, a, t2, &mut h);
                let code = index.code(&h);
                r.record(Law::HatClosure, dual.binary_search(&code).is_ok(), || {
                    format!("{} ^{a} {} leaves dual of {}", show(n, t1), show(n, t2), show(n, zt))
                });
            }
        }
    }
    multi_associativity(n, zt, &dual.iter().map(|&c| index.table(c).to_vec()).collect::<Vec<_>>(), r);
}

/// `(z1 ^a z2) ^b z3 = z1 ^a (z2 ^b z3)` over all members and elements.
fn multi_associativity(n: usize, zt: &[u8], members: &[Vec<u8>], r: &mut LawReport) {
    let m = n * n;
    let (mut l1, mut l2, mut r1, mut r2) = (vec![0; m], vec![0; m], vec![0; m], vec![0; m]);
    for t1 in members {
        for t2 in members {
            for t3 in members {
                for a in 0..n {
                    hat_into(n, t1, a, t2, &mut l1);
                    for b in 0..n {
                        hat_into(n, &l1, b, t3, &mut l2);
                        hat_into(n, t2, b, t3, &mut r1);
                        hat_into(n, t1, a, &r1, &mut r2);
                        r.record(Law::DualMultiAssociativity, l2 == r2, || {
                            format!("in dual of {} at a={a} b={b}", show(n, zt))
                        });
                    }
                }
            }
        }
    }
}

fn action_laws(z: &CayleyTable, sigmas: &[Permutation], taus: &[Permutation], r: &mut LawReport) {
    let aut = automorphisms(z);
    let id = Permutation::identity(z.order());
    let closed = aut.contains(&id)
        && aut.iter().all(|p| {
            aut.contains(&p.inverse()) && aut.iter().all(|q| aut.binary_search(&p.compose(q)).is_ok())
        });
    r.record(Law::AutomorphismGroup, closed, || format!("Aut of {z:?}"));
    for s in sigmas {
        let zs = conjugate(z, s).expect("same degree");
        r.record(Law::ConjugationAction, (zs == *z) == aut.binary_search(s).is_ok(), || {
            format!("fixed points of {s:?} on {z:?}")
        });
        for t in taus {
            let lhs = conjugate(z, &s.compose(t)).expect("same degree");
            let rhs = conjugate(&conjugate(z, t).expect("same degree"), s).expect("same degree");
            r.record(Law::ConjugationAction, lhs == rhs, || {
                format!("{s:?} after {t:?} on {z:?}")
            });
        }
    }
}

/// Checks `φ(a) = z0 ^a z0` against an independently computed dual.
fn sandwich_law(z0: &CayleyTable, dual: &[CayleyTable], r: &mut LawReport) -> Result<()> {
    let n = z0.order();
    let e = identity_raw(n, z0.entries()).ok_or(Error::NotMonoid)?;
    let images: Vec<CayleyTable> = (0..n).map(|a| phi(z0, a)).collect::<Result<_>>()?;
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let bijective = sorted.len() == n && sorted == dual;
    r.record(Law::SandwichDuality, bijective && images[e] == *z0, || {
        format!("phi of {z0:?} is not a bijection onto the dual")
    });
    for a in 0..n {
        r.record(Law::SandwichDuality, phi_inverse(z0, &images[a])? == a, || {
            format!("phi inverse of {z0:?} at {a}")
        });
        for b in 0..n {
            for c in 0..n {
                let lhs = &images[images[a].at(b, c)];
                let rhs = hat_op(&images[b], a, &images[c])?;
                r.record(Law::SandwichDuality, *lhs == rhs, || {
                    format!("phi of {z0:?} at a={a} b={b} c={c}")
                });
            }
        }
    }
    Ok(())
}

/// Node budget for individual dual searches in the sampled sweep. Searches
/// that exceed it are skipped; only degenerate tables with very large duals
/// get there.
const SAMPLE_NODE_BUDGET: u64 = 2_000_000;

/// Reverse-direction duals are only recomputed for members with small duals.
const SYMMETRY_NODE_BUDGET: u64 = 200_000;

struct Pools {
    semigroups: Vec<CayleyTable>,
    semigroup_duals: Vec<Vec<OpCode>>,
    groups: Vec<(CayleyTable, Vec<OpCode>)>,
    perms: Vec<Permutation>,
}

fn dual_codes(z: &CayleyTable, budget: u64) -> Result<Option<Vec<OpCode>>> {
    let config = DualConfig {
        budget,
        exec: Exec::Sequential,
    };
    match dual_set_with(z, DualMethod::Backtrack, &config) {
        Ok(d) => Ok(Some(d.members)),
        Err(Error::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn draw(n: usize, pools: &Pools, rng: &mut ChaCha8Rng) -> CayleyTable {
    let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..pools.semigroups.len());
    let mut z = match rng.gen_range(0..5) {
        0 => {
            let entries = (0..n * n).map(|_| rng.gen_range(0..n as u8)).collect();
            CayleyTable::from_entries_unchecked(n, entries)
        }
        1 => pools.semigroups[pick(rng)].clone(),
        2 => {
            let i = pick(rng);
            match pools.semigroup_duals[i].choose(rng) {
                Some(m) => m.decode(),
                None => pools.semigroups[i].clone(),
            }
        }
        3 => {
            let p = pools.perms.choose(rng).expect("pool");
            conjugate(&pools.semigroups[pick(rng)], p).expect("same degree")
        }
        _ => {
            let i = pick(rng);
            let s = &pools.semigroups[i];
            match pools.semigroup_duals[i].choose(rng) {
                Some(m) => hat_op(s, rng.gen_range(0..n), &m.decode()).expect("same order"),
                None => s.clone(),
            }
        }
    };
    if rng.gen_bool(0.1) {
        let mut entries = z.entries().to_vec();
        let k = rng.gen_range(0..n * n);
        entries[k] = rng.gen_range(0..n as u8);
        z = CayleyTable::from_entries_unchecked(n, entries);
    }
    z
}

fn sample_laws(n: usize, pools: &Pools, seed: u64, r: &mut LawReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = draw(n, pools, &mut rng);
    let Some(dual) = dual_codes(&z, SAMPLE_NODE_BUDGET)? else {
        return Ok(());
    };
    let code = z.encode()?;
    let nd = is_nd_raw(n, z.entries());

    // soundness on a subset of members, completeness on one-entry mutations
    for w in dual.choose_multiple(&mut rng, 64) {
        let w = w.decode();
        r.record(Law::BacktrackMatchesExhaustive, are_compatible(&z, &w)?.compatible, || {
            format!("{w:?} listed in dual of {z:?}")
        });
    }
    for _ in 0..8 {
        let base = dual.choose(&mut rng).map_or_else(|| z.clone(), |c| c.decode());
        let mut entries = base.entries().to_vec();
        let k = rng.gen_range(0..n * n);
        entries[k] = rng.gen_range(0..n as u8);
        let probe = CayleyTable::from_entries_unchecked(n, entries);
        let listed = dual.binary_search(&probe.encode()?).is_ok();
        let compatible = are_compatible(&z, &probe)?.compatible;
        r.record(Law::BacktrackMatchesExhaustive, listed == compatible, || {
            format!("{probe:?} against dual of {z:?}")
        });
        r.record(
            Law::HatCheckAgreement,
            compatible == hat_check_agree(n, z.entries(), probe.entries()),
            || format!("{z:?} vs {probe:?}"),
        );
    }

    for w in dual.choose_multiple(&mut rng, 4) {
        let w = w.decode();
        r.record(Law::HatCheckAgreement, hat_check_agree(n, z.entries(), w.entries()), || {
            format!("{z:?} vs {w:?}")
        });
        for a in 0..n {
            let h = hat_op(&z, a, &w)?;
            r.record(Law::HatAssociative, is_assoc_raw(n, h.entries()), || {
                format!("{z:?} ^{a} {w:?}")
            });
        }
        if let Some(back) = dual_codes(&w, SYMMETRY_NODE_BUDGET)? {
            r.record(Law::Symmetry, back.binary_search(&code).is_ok(), || {
                format!("{w:?} in dual of {z:?} but not conversely")
            });
        }
    }

    if nd {
        let tables: Vec<CayleyTable> = dual.iter().map(|c| c.decode()).collect();
        for z2 in tables.choose_multiple(&mut rng, 4) {
            let mut ok = tables.iter().all(|m| compatible_raw(n, m.entries(), z2.entries()));
            if is_nd_raw(n, z2.entries()) {
                ok &= dual_codes(z2, SAMPLE_NODE_BUDGET)?.is_some_and(|d| d == dual);
            }
            r.record(Law::CatalystInclusion, ok, || format!("{z:?} with {z2:?}"));
        }
        let z_assoc = is_assoc_raw(n, z.entries());
        for t1 in &tables {
            let ok = is_assoc_raw(n, t1.entries()) && (z_assoc || !is_nd_raw(n, t1.entries()));
            r.record(Law::PairwiseCompatible, ok, || format!("member {t1:?} of dual of {z:?}"));
            for t2 in &tables {
                r.record(Law::PairwiseCompatible, compatible_raw(n, t1.entries(), t2.entries()), || {
                    format!("members {t1:?} and {t2:?} of dual of {z:?}")
                });
                for a in 0..n {
                    let h = hat_op(t1, a, t2)?;
                    r.record(Law::HatClosure, dual.binary_search(&h.encode()?).is_ok(), || {
                        format!("{t1:?} ^{a} {t2:?} leaves dual of {z:?}")
                    });
                }
            }
        }
        let members: Vec<Vec<u8>> = tables.iter().map(|t| t.entries().to_vec()).collect();
        multi_associativity(n, z.entries(), &members, r);
    }

    let (g, gdual) = pools.groups.choose(&mut rng).expect("pool");
    let meets = gdual.iter().any(|m| dual.binary_search(m).is_ok());
    r.record(Law::GroupDualsDisjointOrEqual, !meets || *gdual == dual, || {
        format!("group {g:?} and {z:?}")
    });

    let sigmas: Vec<Permutation> = pools.perms.choose_multiple(&mut rng, 3).cloned().collect();
    let taus: Vec<Permutation> = pools.perms.choose_multiple(&mut rng, 3).cloned().collect();
    action_laws(&z, &sigmas, &taus, r);
    for s in &sigmas {
        let image = conjugate(&z, s)?;
        let ok = are_isomorphic(&z, &image).is_some_and(|p| conjugate(&z, &p).ok() == Some(image.clone()));
        r.record(Law::ConjugationAction, ok, || format!("isomorphism {z:?} -> {image:?}"));
    }
    Ok(())
}

/// Random sampling at order `n <= 4` (intended for `n = 4`): `samples` draws
/// from a mix of uniform tables, semigroups, dual members, conjugates,
/// sandwich products and one-entry mutations, plus every monoid of order `n`
/// for the sandwich duality.
pub fn sampled_sweep(n: usize, samples: usize, seed: u64, exec: Exec) -> Result<LawReport> {
    let groups = all_group_ops(n)?
        .into_iter()
        .map(|g| Ok((g.clone(), dual_set(&g, DualMethod::Backtrack)?.members)))
        .collect::<Result<Vec<_>>>()?;
    let semigroups = semigroups(n)?;
    let semigroup_duals = exec.try_map_indexed(semigroups.len(), |i| {
        dual_codes(&semigroups[i], u64::MAX).map(|d| d.expect("unbounded search"))
    })?;
    let pools = Pools {
        semigroups,
        semigroup_duals,
        groups,
        perms: permutations(n, None),
    };
    let parts = exec.try_map_indexed(samples, |i| {
        let mut r = LawReport::default();
        sample_laws(n, &pools, seed.wrapping_add(i as u64), &mut r)?;
        Ok::<_, Error>(r)
    })?;
    let mut report = LawReport::default();
    for p in parts {
        report.merge(p);
    }

    let mn = monoids(n)?;
    let checked = exec.try_map_indexed(mn.len(), |i| {
        let mut r = LawReport::default();
        let members: Vec<CayleyTable> = dual_set(&mn[i], DualMethod::Backtrack)?.tables().collect();
        sandwich_law(&mn[i], &members, &mut r)?;
        Ok::<_, Error>(r)
    })?;
    for p in checked {
        report.merge(p);
    }
    Ok(report)
}

/// The sandwich duality for every monoid of order `1..=max_n`, each checked
/// against an exhaustively computed dual when `n <= 3`.
pub fn sandwich_sweep(max_n: usize, exec: Exec) -> Result<(usize, LawReport)> {
    let mut report = LawReport::default();
    let mut checked = 0;
    for n in 1..=max_n {
        let method = if n <= 3 {
            DualMethod::Exhaustive
        } else {
            DualMethod::Backtrack
        };
        let config = DualConfig {
            exec: Exec::Sequential,
            ..DualConfig::default()
        };
        let mn = monoids(n)?;
        let parts = exec.try_map_indexed(mn.len(), |i| {
            let mut r = LawReport::default();
            let members: Vec<CayleyTable> = dual_set_with(&mn[i], method, &config)?.tables().collect();
            sandwich_law(&mn[i], &members, &mut r)?;
            Ok::<_, Error>(r)
        })?;
        checked += mn.len();
        for p in parts {
            report.merge(p);
        }
    }
    Ok((checked, report))
}
