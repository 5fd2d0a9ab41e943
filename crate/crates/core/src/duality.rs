//! The sandwich bijection onto duals, conjugation by permutations,
//! isomorphism search, and the group-operation census built on them.

use crate::classify::{classify_op, find_identity, identity_raw, inverse_of, is_assoc_raw};
use crate::compat::{are_compatible, dual_set, hat_op, sandwich_tables, DualMethod, DualSet};
use crate::error::{Error, Result};
use crate::perm::{permutations, Permutation};
use crate::table::{check_order, CayleyTable, Element, OpCode, MAX_CODE_ORDER};

/// Largest order accepted by the group searches.
pub const MAX_GROUP_ORDER: usize = 6;

/// Node budget for the Latin-square search; far above what order 6 needs.
pub const GROUP_SEARCH_BUDGET: u64 = 50_000_000;

fn monoid_identity(z: &CayleyTable) -> Result<Element> {
    let n = z.order();
    match identity_raw(n, z.entries()) {
        Some(e) if is_assoc_raw(n, z.entries()) => Ok(e),
        _ => Err(Error::NotMonoid),
    }
}

/// `φ(a) = z0 ^a z0` for a monoid `z0`.
pub fn phi(z0: &CayleyTable, a: Element) -> Result<CayleyTable> {
    monoid_identity(z0)?;
    hat_op(z0, a, z0)
}

/// The element `a` with `φ(a) = z`, read off as `e z e`.
pub fn phi_inverse(z0: &CayleyTable, z: &CayleyTable) -> Result<Element> {
    let e = monoid_identity(z0)?;
    if !are_compatible(z0, z)?.compatible {
        return Err(Error::NotInDual);
    }
    Ok(z.at(e, e))
}

/// `z^σ`, the table making `σ` an isomorphism from `z`:
/// `σ(a) z^σ σ(b) = σ(a z b)`.
pub fn conjugate(z: &CayleyTable, sigma: &Permutation) -> Result<CayleyTable> {
    let n = z.order();
    if sigma.len() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: sigma.len(),
        });
    }
    let s = sigma.bytes();
    let t = z.entries();
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            out[s[a] as usize * n + s[b] as usize] = s[t[a * n + b] as usize];
        }
    }
    Ok(CayleyTable::from_entries_unchecked(n, out))
}

/// Number of distinct left powers `a, a·a, (a·a)·a, …`; for groups this is
/// the element order. Preserved by every isomorphism.
fn power_count(z: &CayleyTable, a: Element) -> usize {
    let mut seen = vec![false; z.order()];
    let mut x = a;
    let mut count = 0;
    while !seen[x] {
        seen[x] = true;
        count += 1;
        x = z.at(x, a);
    }
    count
}

fn signature(z: &CayleyTable, a: Element) -> (usize, bool) {
    (power_count(z, a), z.at(a, a) == a)
}

/// Depth-first search over `σ(0), σ(1), …` in ascending order, so
/// isomorphisms `z1 → z2` are found in lexicographic order.
fn search_isomorphisms(
    z1: &CayleyTable,
    z2: &CayleyTable,
    first_only: bool,
) -> Vec<Permutation> {
    let n = z1.order();
    if z2.order() != n {
        return Vec::new();
    }
    let mut forced = vec![None; n];
    match (find_identity(z1), find_identity(z2)) {
        (Some(e1), Some(e2)) => forced[e1] = Some(e2),
        (None, None) => {}
        _ => return Vec::new(),
    }
    let sig1: Vec<_> = (0..n).map(|a| signature(z1, a)).collect();
    let sig2: Vec<_> = (0..n).map(|a| signature(z2, a)).collect();

    struct Search<'a> {
        n: usize,
        z1: &'a CayleyTable,
        z2: &'a CayleyTable,
        forced: Vec<Option<Element>>,
        sig1: Vec<(usize, bool)>,
        sig2: Vec<(usize, bool)>,
        image: Vec<u8>,
        used: Vec<bool>,
        out: Vec<Permutation>,
        first_only: bool,
    }

    impl Search<'_> {
        /// All products among `0..=i` stay consistent with a partial map.
        fn consistent(&self, i: usize) -> bool {
            let im = &self.image;
            for a in 0..=i {
                for b in 0..=i {
                    if a != i && b != i {
                        continue;
                    }
                    let c = self.z1.at(a, b);
                    let target = self.z2.at(im[a] as usize, im[b] as usize);
                    if c <= i {
                        if im[c] as usize != target {
                            return false;
                        }
                    } else if self.used[target] {
                        return false;
                    }
                }
            }
            // products of earlier pairs whose value just became mapped
            for a in 0..i {
                for b in 0..i {
                    if self.z1.at(a, b) == i
                        && self.z2.at(im[a] as usize, im[b] as usize) != im[i] as usize
                    {
                        return false;
                    }
                }
            }
            true
        }

        fn extend(&mut self, i: usize) -> bool {
            if i == self.n {
                self.out
                    .push(Permutation::from_bytes_unchecked(self.image.clone()));
                return self.first_only;
            }
            for v in 0..self.n {
                if self.used[v] || self.sig1[i] != self.sig2[v] {
                    continue;
                }
                if matches!(self.forced[i], Some(f) if f != v) {
                    continue;
                }
                self.image[i] = v as u8;
                self.used[v] = true;
                let done = self.consistent(i) && self.extend(i + 1);
                self.used[v] = false;
                if done {
                    return true;
                }
            }
            false
        }
    }

    let mut search = Search {
        n,
        z1,
        z2,
        forced,
        sig1,
        sig2,
        image: vec![0; n],
        used: vec![false; n],
        out: Vec::new(),
        first_only,
    };
    search.extend(0);
    search.out
}

/// The lexicographically smallest `σ` with `conjugate(z1, σ) = z2`.
pub fn are_isomorphic(z1: &CayleyTable, z2: &CayleyTable) -> Option<Permutation> {
    search_isomorphisms(z1, z2, true).into_iter().next()
}

/// `Aut(S, z)` in lexicographic order.
pub fn automorphisms(z: &CayleyTable) -> Vec<Permutation> {
    search_isomorphisms(z, z, false)
}

/// The `(n-1)!` permutations fixing `e`, in lexicographic order.
pub fn sym_fixing(n: usize, e: Element) -> Result<Vec<Permutation>> {
    check_order(n)?;
    if e >= n {
        return Err(Error::Range {
            value: e as u64,
            n,
        });
    }
    Ok(permutations(n, Some(e)))
}

fn check_group_args(n: usize, e: Element) -> Result<()> {
    check_order(n)?;
    if n > MAX_GROUP_ORDER {
        return Err(Error::Order(n));
    }
    if e >= n {
        return Err(Error::Range {
            value: e as u64,
            n,
        });
    }
    Ok(())
}

/// Latin squares of order `n` whose row and column `e` are the identity map,
/// in lexicographic order.
fn bordered_latin_squares(n: usize, e: Element, budget: u64) -> Result<Vec<Vec<u8>>> {
    let mut t = vec![0u8; n * n];
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    for j in 0..n {
        t[e * n + j] = j as u8;
        t[j * n + e] = j as u8;
        row_used[e] |= 1 << j;
        col_used[j] |= 1 << j;
        row_used[j] |= 1 << j;
        col_used[e] |= 1 << j;
    }
    let free: Vec<usize> = (0..n * n)
        .filter(|&p| p / n != e && p % n != e)
        .collect();

    struct Fill<'a> {
        n: usize,
        free: &'a [usize],
        t: Vec<u8>,
        row_used: Vec<u32>,
        col_used: Vec<u32>,
        nodes: u64,
        budget: u64,
        out: Vec<Vec<u8>>,
    }

    impl Fill<'_> {
        fn go(&mut self, k: usize) -> Result<()> {
            if k == self.free.len() {
                self.out.push(self.t.clone());
                return Ok(());
            }
            let p = self.free[k];
            let (i, j) = (p / self.n, p % self.n);
            for v in 0..self.n {
                let bit = 1u32 << v;
                if (self.row_used[i] | self.col_used[j]) & bit != 0 {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::Budget {
                        budget: self.budget,
                    });
                }
                self.t[p] = v as u8;
                self.row_used[i] |= bit;
                self.col_used[j] |= bit;
                let r = self.go(k + 1);
                self.row_used[i] &= !bit;
                self.col_used[j] &= !bit;
                r?;
            }
            Ok(())
        }
    }

    let mut fill = Fill {
        n,
        free: &free,
        t,
        row_used,
        col_used,
        nodes: 0,
        budget,
        out: Vec::new(),
    };
    fill.go(0)?;
    Ok(fill.out)
}

/// Every group operation on `{0, …, n-1}` with identity `e`, sorted.
///
/// Generated as Latin squares bordered by `e`, then filtered by associativity;
/// no isomorphism machinery is involved.
pub fn group_ops_with_identity(n: usize, e: Element) -> Result<Vec<CayleyTable>> {
    check_group_args(n, e)?;
    let mut out: Vec<CayleyTable> = bordered_latin_squares(n, e, GROUP_SEARCH_BUDGET)?
        .into_iter()
        .filter(|t| is_assoc_raw(n, t))
        .map(|t| CayleyTable::from_entries_unchecked(n, t))
        .collect();
    out.sort();
    Ok(out)
}

/// Every group operation of order `n`, over all identities, sorted.
pub fn all_group_ops(n: usize) -> Result<Vec<CayleyTable>> {
    check_group_args(n, 0)?;
    let mut out = Vec::new();
    for e in 0..n {
        out.extend(group_ops_with_identity(n, e)?);
    }
    out.sort();
    Ok(out)
}

/// Group operations split into duals of the groups with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub n: usize,
    pub identity: Element,
    pub blocks: Vec<DualSet>,
    pub total: usize,
}

/// Builds one sandwich dual per group with identity 0 and verifies that the
/// duals are pairwise disjoint, have `n` members each and cover exactly the
/// group operations generated independently for every identity.
pub fn partition_group_ops(n: usize) -> Result<PartitionReport> {
    check_order(n)?;
    if n > MAX_CODE_ORDER {
        return Err(Error::Overflow { n });
    }
    let reps = group_ops_with_identity(n, 0)?;
    let blocks = reps
        .iter()
        .map(|z| dual_set(z, DualMethod::Sandwich))
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<OpCode> = all_group_ops(n)?
        .iter()
        .map(CayleyTable::encode)
        .collect::<Result<_>>()?;
    verify_partition(n, &blocks, &all)?;
    Ok(PartitionReport {
        n,
        identity: 0,
        total: n * reps.len(),
        blocks,
    })
}

pub(crate) fn verify_partition(n: usize, blocks: &[DualSet], all: &[OpCode]) -> Result<()> {
    for b in blocks {
        if b.len() != n {
            return Err(Error::Verification(format!(
                "block of {} has {} members, expected {n}",
                b.base,
                b.len()
            )));
        }
    }
    let mut union: Vec<OpCode> = blocks.iter().flat_map(|b| b.members.iter().copied()).collect();
    union.sort_unstable();
    if let Some(w) = union.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Verification(format!(
            "operation {} lies in two blocks",
            w[0]
        )));
    }
    if union != all {
        let missing = all.iter().find(|c| union.binary_search(c).is_err());
        let extra = union.iter().find(|c| all.binary_search(c).is_err());
        return Err(Error::Verification(format!(
            "blocks do not cover the group operations (first uncovered: {missing:?}, first extra: {extra:?})"
        )));
    }
    Ok(())
}

/// One isomorphism class of groups with a fixed identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    /// Smallest member.
    pub representative: CayleyTable,
    pub members: Vec<CayleyTable>,
    pub aut_size: usize,
    /// `(n-1)! / |Aut|`.
    pub predicted_size: usize,
}

impl ClassReport {
    pub fn representative_code(&self) -> Result<OpCode> {
        self.representative.encode()
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Splits the groups with identity `e` into isomorphism classes and checks
/// every class size against `(n-1)! / |Aut|`.
pub fn iso_classes(n: usize, e: Element) -> Result<Vec<ClassReport>> {
    let members = group_ops_with_identity(n, e)?;
    let mut classes: Vec<Vec<CayleyTable>> = Vec::new();
    for z in members {
        match classes
            .iter_mut()
            .find(|c| are_isomorphic(&c[0], &z).is_some())
        {
            Some(class) => class.push(z),
            None => classes.push(vec![z]),
        }
    }
    classes
        .into_iter()
        .map(|members| {
            let representative = members[0].clone();
            let aut_size = automorphisms(&representative).len();
            let predicted_size = factorial(n - 1) / aut_size;
            if members.len() != predicted_size || !factorial(n - 1).is_multiple_of(aut_size) {
                return Err(Error::Verification(format!(
                    "class of {representative:?} has {} members, expected {predicted_size}",
                    members.len()
                )));
            }
            Ok(ClassReport {
                representative,
                members,
                aut_size,
                predicted_size,
            })
        })
        .collect()
}

/// Number of group structures on a set of `n` elements.
pub fn count_group_structures(n: usize) -> Result<usize> {
    Ok(iso_classes(n, 0)?.len())
}

/// Checks, for a group `z0`, that every member `z` of its dual is a group
/// with the same dual, isomorphic to `z0`, and that `b ↦ b z0 a⁻¹` with
/// `a = e z e` is an explicit isomorphism `(S, z0) → (S, z)`.
pub fn verify_group_dual(z0: &CayleyTable) -> Result<bool> {
    if !classify_op(z0).gr {
        return Err(Error::NotGroup);
    }
    let n = z0.order();
    let members: Vec<CayleyTable> = if n <= MAX_CODE_ORDER {
        dual_set(z0, DualMethod::Backtrack)?.tables().collect()
    } else {
        sandwich_tables(z0)?
    };
    let reference = dual_of(z0)?;
    for z in &members {
        if !are_compatible(z0, z)?.compatible || !classify_op(z).gr {
            return Ok(false);
        }
        if dual_of(z)? != reference || are_isomorphic(z0, z).is_none() {
            return Ok(false);
        }
        let a = phi_inverse(z0, z)?;
        let a_inv = inverse_of(z0, a)?.ok_or(Error::NotGroup)?;
        let psi: Vec<Element> = (0..n).map(|b| z0.at(b, a_inv)).collect();
        let Ok(psi) = Permutation::from_image(&psi) else {
            return Ok(false);
        };
        if conjugate(z0, &psi)? != *z {
            return Ok(false);
        }
    }
    Ok(members.len() == n)
}

fn dual_of(z: &CayleyTable) -> Result<Vec<CayleyTable>> {
    if z.order() <= MAX_CODE_ORDER {
        Ok(dual_set(z, DualMethod::Backtrack)?.tables().collect())
    } else {
        let mut v = sandwich_tables(z)?;
        v.sort();
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_inline, LabelMap};

    fn t3(rows: &str) -> CayleyTable {
        parse_inline(rows).unwrap().0
    }

    fn z(rows: &str) -> CayleyTable {
        let (t, l) = parse_inline(rows).unwrap();
        assert_eq!(l, LabelMap::letters(t.order()));
        t
    }

    fn n3() -> [CayleyTable; 6] {
        [
            t3("a b c / b c a / c a b"),
            t3("c a b / a b c / b c a"),
            t3("b c a / c a b / a b c"),
            t3("a b c / b a c / c c c"),
            t3("b a c / a b c / c c c"),
            t3("c c c / c c c / c c c"),
        ]
    }

    fn n4() -> [CayleyTable; 4] {
        [
            z("a b c d / b c d a / c d a b / d a b c"),
            z("a b c d / b a d c / c d b a / d c a b"),
            z("a b c d / b d a c / c a d b / d c b a"),
            z("a b c d / b a d c / c d a b / d c b a"),
        ]
    }

    #[test]
    fn phi_examples() {
        let [z1, _, z3, z4, _, z6] = n3();
        assert_eq!(phi(&z1, 0).unwrap(), z1);
        assert_eq!(phi(&z1, 1).unwrap(), z3);
        assert_eq!(phi(&z4, 2).unwrap(), z6);
        assert_eq!(phi(&z6, 0), Err(Error::NotMonoid));
    }

    #[test]
    fn phi_inverse_examples() {
        let [z1, _, z3, z4, _, z6] = n3();
        assert_eq!(phi_inverse(&z1, &z3), Ok(1));
        assert_eq!(phi_inverse(&z1, &z1), Ok(0));
        assert_eq!(phi_inverse(&z4, &z6), Ok(2));
        assert_eq!(phi_inverse(&z1, &z4), Err(Error::NotInDual));
    }

    #[test]
    fn conjugate_examples() {
        let [z1, z2, z3, _] = n4();
        let sigma0 = Permutation::swap(4, 1, 2).unwrap();
        let tau0 = Permutation::swap(4, 1, 3).unwrap();
        assert_eq!(conjugate(&z1, &sigma0).unwrap(), z2);
        assert_eq!(conjugate(&z1, &tau0.compose(&sigma0)).unwrap(), z3);
        assert_eq!(conjugate(&z1, &Permutation::identity(4)).unwrap(), z1);
        assert!(conjugate(&z1, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let [z1, z2, ..] = n3();
        assert!(are_isomorphic(&z1, &z2).is_some());
        let [c4, .., klein] = n4();
        assert_eq!(are_isomorphic(&c4, &klein), None);
        assert_eq!(are_isomorphic(&c4, &c4), Some(Permutation::identity(4)));
    }

    #[test]
    fn isomorphism_is_smallest_and_correct() {
        let [z1, z2, z3, _] = n4();
        for (a, b) in [(&z1, &z2), (&z2, &z3), (&z3, &z1)] {
            let sigma = are_isomorphic(a, b).unwrap();
            assert_eq!(conjugate(a, &sigma).unwrap(), *b);
            let brute = permutations(4, None)
                .into_iter()
                .find(|p| conjugate(a, p).unwrap() == *b)
                .unwrap();
            assert_eq!(sigma, brute);
        }
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&n3()[0]).len(), 2);
        assert_eq!(automorphisms(&n4()[3]).len(), 6);
        for z in n3() {
            assert!(automorphisms(&z).contains(&Permutation::identity(3)));
        }
        // no identity: search is unrestricted
        assert_eq!(automorphisms(&n3()[5]).len(), 2);
    }

    #[test]
    fn sym_fixing_examples() {
        assert_eq!(sym_fixing(3, 0).unwrap().len(), 2);
        assert_eq!(sym_fixing(4, 0).unwrap().len(), 6);
        assert_eq!(sym_fixing(1, 0).unwrap(), vec![Permutation::identity(1)]);
        assert!(matches!(sym_fixing(3, 3), Err(Error::Range { .. })));
    }

    #[test]
    fn group_generation_examples() {
        assert_eq!(group_ops_with_identity(3, 0).unwrap(), vec![n3()[0].clone()]);
        let mut expected = n4().to_vec();
        expected.sort();
        assert_eq!(group_ops_with_identity(4, 0).unwrap(), expected);
        assert_eq!(
            group_ops_with_identity(1, 0).unwrap(),
            vec![CayleyTable::constant(1, 0).unwrap()]
        );
        assert_eq!(group_ops_with_identity(7, 0), Err(Error::Order(7)));
        assert!(matches!(group_ops_with_identity(3, 5), Err(Error::Range { .. })));
    }

    #[test]
    fn partition_examples() {
        let r = partition_group_ops(3).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.total, 3);
        let r = partition_group_ops(4).unwrap();
        assert_eq!(r.blocks.len(), 4);
        assert!(r.blocks.iter().all(|b| b.len() == 4));
        assert_eq!(r.total, 16);
        assert_eq!(partition_group_ops(5), Err(Error::Overflow { n: 5 }));
    }

    #[test]
    fn partition_verification_catches_gaps() {
        let r = partition_group_ops(4).unwrap();
        let all: Vec<OpCode> = all_group_ops(4)
            .unwrap()
            .iter()
            .map(|t| t.encode().unwrap())
            .collect();
        assert!(verify_partition(4, &r.blocks[..3], &all).is_err());
        let mut doubled = r.blocks.clone();
        doubled.push(r.blocks[0].clone());
        assert!(verify_partition(4, &doubled, &all).is_err());
    }

    #[test]
    fn class_examples() {
        let classes = iso_classes(4, 0).unwrap();
        let mut sizes: Vec<_> = classes.iter().map(|c| (c.members.len(), c.aut_size)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 6), (3, 2)]);
        let classes = iso_classes(3, 0).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), 1);
        assert_eq!(classes[0].predicted_size, 1);
    }

    #[test]
    fn group_counts() {
        assert_eq!(count_group_structures(1), Ok(1));
        assert_eq!(count_group_structures(2), Ok(1));
        assert_eq!(count_group_structures(3), Ok(1));
        assert_eq!(count_group_structures(4), Ok(2));
        assert_eq!(count_group_structures(5), Ok(1));
        assert_eq!(count_group_structures(6), Ok(2));
    }

    #[test]
    fn group_dual_examples() {
        assert_eq!(verify_group_dual(&n3()[0]), Ok(true));
        assert_eq!(verify_group_dual(&n4()[3]), Ok(true));
        assert_eq!(verify_group_dual(&CayleyTable::constant(1, 0).unwrap()), Ok(true));
        assert_eq!(verify_group_dual(&CayleyTable::cyclic(6).unwrap()), Ok(true));
        assert_eq!(verify_group_dual(&n3()[3]), Err(Error::NotGroup));
    }
}
