//! Cayley tables over `{0, …, n-1}` and their integer codes.

use std::fmt;

use crate::error::{Error, Result};

/// An element of the carrier, identified by its index.
pub type Element = usize;

/// Largest supported order. Entries are stored as bytes.
pub const MAX_ORDER: usize = 255;

/// Largest order for which operation codes are defined.
pub const MAX_CODE_ORDER: usize = 4;

/// A binary operation on `{0, …, n-1}` stored row-major:
/// `entries[a * n + b] = a z b`.
///
/// The derived ordering compares the order first and then the entries
/// lexicographically, which for a fixed order is the same as comparing
/// [`OpCode`]s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u8>,
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::Order(n))
    } else {
        Ok(())
    }
}

impl CayleyTable {
    /// Builds a table from `n` rows of `n` entries each.
    pub fn from_rows<R: AsRef<[Element]>>(n: usize, rows: &[R]) -> Result<Self> {
        check_order(n)?;
        if rows.len() != n {
            return Err(Error::Shape {
                row: rows.len(),
                len: 0,
                n,
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Shape {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Range { value: v as u64, n });
                }
                entries.push(v as u8);
            }
        }
        Ok(CayleyTable { n, entries })
    }

    /// Builds a table from its row-major entries.
    pub fn from_entries(n: usize, entries: Vec<u8>) -> Result<Self> {
        check_order(n)?;
        if entries.len() != n * n {
            return Err(Error::Shape {
                row: entries.len() / n,
                len: entries.len() % n,
                n,
            });
        }
        if let Some(&v) = entries.iter().find(|&&v| v as usize >= n) {
            return Err(Error::Range { value: v as u64, n });
        }
        Ok(CayleyTable { n, entries })
    }

    /// Caller guarantees shape and range.
    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&v| (v as usize) < n));
        CayleyTable { n, entries }
    }

    /// The operation sending every pair to `value`.
    pub fn constant(n: usize, value: Element) -> Result<Self> {
        check_order(n)?;
        if value >= n {
            return Err(Error::Range {
                value: value as u64,
                n,
            });
        }
        Ok(CayleyTable {
            n,
            entries: vec![value as u8; n * n],
        })
    }

    /// The cyclic group `a z b = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        check_order(n)?;
        let entries = (0..n * n).map(|k| ((k / n + k % n) % n) as u8).collect();
        Ok(CayleyTable { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks_exact(self.n)
    }

    /// `a z b`, checking that both operands are in range.
    pub fn apply(&self, a: Element, b: Element) -> Result<Element> {
        for v in [a, b] {
            if v >= self.n {
                return Err(Error::Range {
                    value: v as u64,
                    n: self.n,
                });
            }
        }
        Ok(self.at(a, b))
    }

    /// `a z b`; panics if an operand is out of range.
    #[inline]
    pub fn at(&self, a: Element, b: Element) -> Element {
        self.entries[a * self.n + b] as usize
    }

    pub fn encode(&self) -> Result<OpCode> {
        OpCode::encode(self)
    }

    pub(crate) fn same_order(&self, other: &CayleyTable) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(n={}; ", self.n)?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str(")")
    }
}

/// Base-`n` code of a table, entry `(0, 0)` most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpCode {
    n: usize,
    code: u64,
}

/// `n^(n²)`, the number of binary operations of order `n`, when it has codes.
pub fn space_size(n: usize) -> Result<u64> {
    check_order(n)?;
    if n > MAX_CODE_ORDER {
        return Err(Error::Overflow { n });
    }
    Ok((n as u64).pow((n * n) as u32))
}

impl OpCode {
    pub fn new(n: usize, code: u64) -> Result<Self> {
        let size = space_size(n)?;
        if code >= size {
            return Err(Error::Range { value: code, n });
        }
        Ok(OpCode { n, code })
    }

    pub fn encode(table: &CayleyTable) -> Result<Self> {
        space_size(table.n)?;
        let base = table.n as u64;
        let code = table
            .entries
            .iter()
            .fold(0u64, |acc, &d| acc * base + d as u64);
        Ok(OpCode { n: table.n, code })
    }

    pub fn decode(self) -> CayleyTable {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        let mut rest = self.code;
        for slot in entries.iter_mut().rev() {
            *slot = (rest % n as u64) as u8;
            rest /= n as u64;
        }
        CayleyTable::from_entries_unchecked(n, entries)
    }

    pub fn order(self) -> usize {
        self.n
    }

    pub fn value(self) -> u64 {
        self.code
    }
}

impl fmt::Display for OpCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// `make_table` with error reporting for every malformed input.
pub fn make_table<R: AsRef<[Element]>>(n: usize, rows: &[R]) -> Result<CayleyTable> {
    CayleyTable::from_rows(n, rows)
}

pub fn encode_op(table: &CayleyTable) -> Result<OpCode> {
    OpCode::encode(table)
}

pub fn decode_op(code: OpCode) -> CayleyTable {
    code.decode()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z1() -> CayleyTable {
        CayleyTable::from_rows(3, &[[0, 1, 2], [1, 2, 0], [2, 0, 1]]).unwrap()
    }

    #[test]
    fn make_table_examples() {
        let t = CayleyTable::from_rows(1, &[[0]]).unwrap();
        assert_eq!(t.entries(), &[0]);
        assert_eq!(z1().entries(), &[0, 1, 2, 1, 2, 0, 2, 0, 1]);
        assert_eq!(
            CayleyTable::from_rows(2, &[[0, 2], [0, 1]]),
            Err(Error::Range { value: 2, n: 2 })
        );
    }

    #[test]
    fn make_table_rejects_bad_shapes() {
        let empty: [[usize; 0]; 0] = [];
        assert_eq!(CayleyTable::from_rows(0, &empty), Err(Error::Order(0)));
        let ragged: Vec<Vec<usize>> = vec![vec![0, 1], vec![1]];
        assert!(matches!(
            CayleyTable::from_rows(2, &ragged),
            Err(Error::Shape { row: 1, len: 1, n: 2 })
        ));
        let short: Vec<Vec<usize>> = vec![vec![0, 1]];
        assert!(matches!(
            CayleyTable::from_rows(2, &short),
            Err(Error::Shape { .. })
        ));
        assert!(CayleyTable::from_entries(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(z1().apply(1, 1), Ok(2));
        let z6 = CayleyTable::constant(3, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(z6.apply(a, b), Ok(2));
            }
        }
        assert_eq!(CayleyTable::constant(1, 0).unwrap().apply(0, 0), Ok(0));
        assert!(matches!(z1().apply(3, 0), Err(Error::Range { .. })));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            CayleyTable::constant(1, 0).unwrap().encode().unwrap().value(),
            0
        );
        assert_eq!(z1().encode().unwrap().value(), 4069);
        assert_eq!(
            CayleyTable::constant(2, 0).unwrap().encode().unwrap().value(),
            0
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            OpCode::new(1, 0).unwrap().decode(),
            CayleyTable::constant(1, 0).unwrap()
        );
        assert_eq!(OpCode::new(3, 4069).unwrap().decode(), z1());
        assert_eq!(
            OpCode::new(2, 15).unwrap().decode(),
            CayleyTable::from_rows(2, &[[1, 1], [1, 1]]).unwrap()
        );
        assert_eq!(OpCode::new(2, 16), Err(Error::Range { value: 16, n: 2 }));
    }

    #[test]
    fn codes_stop_at_order_four() {
        assert_eq!(space_size(4), Ok(4_294_967_296));
        assert_eq!(space_size(5), Err(Error::Overflow { n: 5 }));
        let t = CayleyTable::cyclic(5).unwrap();
        assert_eq!(t.encode(), Err(Error::Overflow { n: 5 }));
    }

    #[test]
    fn codec_is_bijective_up_to_order_three() {
        for n in 1..=3 {
            let size = space_size(n).unwrap();
            for code in 0..size {
                let c = OpCode::new(n, code).unwrap();
                assert_eq!(c.decode().encode().unwrap(), c);
            }
        }
    }

    #[test]
    fn table_order_matches_code_order() {
        let mut tables: Vec<CayleyTable> = [9u64, 3, 15, 0, 7, 12, 1]
            .iter()
            .map(|&c| OpCode::new(2, c).unwrap().decode())
            .collect();
        tables.sort();
        let codes: Vec<u64> = tables.iter().map(|t| t.encode().unwrap().value()).collect();
        let mut sorted = codes.clone();
        sorted.sort_unstable();
        assert_eq!(codes, sorted);
    }
}
