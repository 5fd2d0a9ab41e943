//! Membership in the nondegenerate, semigroup, monoid and group classes.

use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};

/// Class flags of a table together with the witnesses behind them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub nd: bool,
    pub sg: bool,
    pub mn: bool,
    pub gr: bool,
    pub identity: Option<Element>,
    /// Smallest `(a, b, c)` with `(a z b) z c != a z (b z c)`.
    pub assoc_counterexample: Option<(Element, Element, Element)>,
    /// Smallest element that is never a product.
    pub missing_image: Option<Element>,
    /// Smallest element without a two-sided inverse, when an identity exists.
    pub non_invertible: Option<Element>,
    /// Reported for information only.
    pub commutative: bool,
}

/// Returns whether `z` is associative and, if not, the lexicographically
/// smallest failing triple.
pub fn is_associative(z: &CayleyTable) -> (bool, Option<(Element, Element, Element)>) {
    match assoc_counterexample(z.order(), z.entries()) {
        None => (true, None),
        Some(w) => (false, Some(w)),
    }
}

#[inline]
pub(crate) fn assoc_counterexample(n: usize, t: &[u8]) -> Option<(Element, Element, Element)> {
    for a in 0..n {
        let ra = &t[a * n..a * n + n];
        for b in 0..n {
            let ab = ra[b] as usize;
            let rab = &t[ab * n..ab * n + n];
            let rb = &t[b * n..b * n + n];
            for c in 0..n {
                if rab[c] != ra[rb[c] as usize] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

#[inline]
pub(crate) fn is_assoc_raw(n: usize, t: &[u8]) -> bool {
    assoc_counterexample(n, t).is_none()
}

/// Returns whether every element is a product and, if not, the smallest
/// element that never occurs.
pub fn is_nondegenerate(z: &CayleyTable) -> (bool, Option<Element>) {
    match missing_image(z.order(), z.entries()) {
        None => (true, None),
        Some(m) => (false, Some(m)),
    }
}

#[inline]
pub(crate) fn missing_image(n: usize, t: &[u8]) -> Option<Element> {
    let mut seen = vec![false; n];
    for &v in t {
        seen[v as usize] = true;
    }
    seen.iter().position(|&s| !s)
}

#[inline]
pub(crate) fn is_nd_raw(n: usize, t: &[u8]) -> bool {
    if n <= 64 {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        t.iter().fold(0u64, |m, &v| m | (1 << v)) == full
    } else {
        missing_image(n, t).is_none()
    }
}

/// The two-sided identity of `z`, if any.
pub fn find_identity(z: &CayleyTable) -> Option<Element> {
    identity_raw(z.order(), z.entries())
}

pub(crate) fn identity_raw(n: usize, t: &[u8]) -> Option<Element> {
    let mut found = None;
    for e in 0..n {
        let is_identity = (0..n).all(|a| t[e * n + a] as usize == a && t[a * n + e] as usize == a);
        if is_identity {
            // e = e z f = f for any second identity f
            assert!(found.is_none(), "two distinct two-sided identities");
            found = Some(e);
        }
    }
    found
}

/// The unique `b` with `a z b = b z a = e`, or `None` when `a` has no
/// two-sided inverse.
pub fn inverse_of(z: &CayleyTable, a: Element) -> Result<Option<Element>> {
    let e = find_identity(z).ok_or(Error::NoIdentity)?;
    let n = z.order();
    if a >= n {
        return Err(Error::Range {
            value: a as u64,
            n,
        });
    }
    Ok((0..n).find(|&b| z.at(a, b) == e && z.at(b, a) == e))
}

fn is_latin(z: &CayleyTable) -> bool {
    let n = z.order();
    let mut seen_row = vec![false; n];
    let mut seen_col = vec![false; n];
    for i in 0..n {
        seen_row.fill(false);
        seen_col.fill(false);
        for j in 0..n {
            seen_row[z.at(i, j)] = true;
            seen_col[z.at(j, i)] = true;
        }
        if !seen_row.iter().chain(&seen_col).all(|&s| s) {
            return false;
        }
    }
    true
}

/// Runs every class test and fills in all the witnesses.
pub fn classify_op(z: &CayleyTable) -> ClassificationRecord {
    let n = z.order();
    let missing = missing_image(n, z.entries());
    let counterexample = assoc_counterexample(n, z.entries());
    let identity = find_identity(z);
    let non_invertible = identity.and_then(|_| {
        (0..n).find(|&a| matches!(inverse_of(z, a), Ok(None)))
    });

    let sg = counterexample.is_none();
    let mn = sg && identity.is_some();
    let gr = mn && non_invertible.is_none();
    if gr {
        assert!(is_latin(z), "group table that is not a Latin square");
    }
    ClassificationRecord {
        nd: missing.is_none(),
        sg,
        mn,
        gr,
        identity,
        assoc_counterexample: counterexample,
        missing_image: missing,
        non_invertible,
        commutative: (0..n).all(|a| (0..a).all(|b| z.at(a, b) == z.at(b, a))),
    }
}
