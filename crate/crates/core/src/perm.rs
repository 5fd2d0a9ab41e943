//! Permutations of `{0, …, n-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::io::LabelMap;
use crate::table::{check_order, Element};

/// A bijection given by its images: `image[i] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    pub fn from_image(image: &[Element]) -> Result<Self> {
        let n = image.len();
        check_order(n).map_err(|_| Error::Permutation(format!("unsupported length {n}")))?;
        let mut seen = vec![false; n];
        for &v in image {
            if v >= n || seen[v] {
                return Err(Error::Permutation(format!("{image:?} is not a bijection")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            image: image.iter().map(|&v| v as u8).collect(),
        })
    }

    pub(crate) fn from_bytes_unchecked(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: Element, b: Element) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::Permutation(format!("swap ({a} {b}) out of range for {n}")));
        }
        let mut p = Permutation::identity(n);
        p.image.swap(a, b);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: Element) -> Element {
        self.image[i] as usize
    }

    pub fn image(&self) -> Vec<Element> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn bytes(&self) -> &[u8] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            image: other.image.iter().map(|&i| self.image[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Non-trivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<Element>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation over `labels`, e.g. `(b c)`; the identity is `()`.
    pub fn to_cycle_string(&self, labels: &LabelMap) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&i| labels.label(i)).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }

    /// Parses `b<->c`, cycle notation such as `(b c d)(a e)`, or `()`.
    ///
    /// A product of cycles is composed right to left.
    pub fn parse(spec: &str, labels: &LabelMap) -> Result<Self> {
        let n = labels.len();
        let lookup = |name: &str| {
            labels
                .index_of(name.trim())
                .ok_or_else(|| Error::Permutation(format!("unknown label {:?}", name.trim())))
        };
        let spec = spec.trim();
        if let Some((a, b)) = spec.split_once("<->") {
            return Permutation::swap(n, lookup(a)?, lookup(b)?);
        }
        if spec.is_empty() || spec == "id" {
            return Ok(Permutation::identity(n));
        }
        let mut result = Permutation::identity(n);
        let mut rest = spec;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Permutation(format!("malformed cycle notation {spec:?}")))?;
            let (inside, tail) = body;
            let items = inside
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(lookup)
                .collect::<Result<Vec<_>>>()?;
            let mut image: Vec<usize> = (0..n).collect();
            for (k, &from) in items.iter().enumerate() {
                if items[..k].contains(&from) {
                    return Err(Error::Permutation(format!("repeated element in cycle {inside:?}")));
                }
                image[from] = items[(k + 1) % items.len()];
            }
            let cycle = Permutation::from_image(&image)?;
            result = result.compose(&cycle);
            rest = tail.trim_start();
        }
        Ok(result)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.image)
    }
}

/// All permutations of degree `n` in lexicographic order of their images,
/// optionally restricted to those fixing `fixed`.
pub(crate) fn permutations(n: usize, fixed: Option<Element>) -> Vec<Permutation> {
    fn extend(
        n: usize,
        fixed: Option<Element>,
        prefix: &mut Vec<u8>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let i = prefix.len();
        if i == n {
            out.push(Permutation::from_bytes_unchecked(prefix.clone()));
            return;
        }
        for v in 0..n {
            if used[v] || (fixed == Some(i)) != (fixed == Some(v)) {
                continue;
            }
            used[v] = true;
            prefix.push(v as u8);
            extend(n, fixed, prefix, used, out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    extend(n, fixed, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}
