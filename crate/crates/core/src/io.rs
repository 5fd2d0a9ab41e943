//! Text format for Cayley tables.
//!
//! ```text
//! # optional comments
//! n=3
//! labels=a,b,c
//! a b c
//! b c a
//! c a b
//! ```
//!
//! Row `i`, column `j` holds `i z j`. Without a `labels=` line the symbols are
//! read as decimal indices when they all are numbers, as the default letter
//! labels when they all are, and otherwise labels are taken in first-row order.

use crate::error::{Error, Result};
use crate::table::{check_order, CayleyTable};

/// Display names for the elements `0..n`. Purely cosmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelMap {
    labels: Vec<String>,
}

fn letter_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::Labels("empty label".into()));
    }
    if label.starts_with('#')
        || label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '/' | '=' | '(' | ')' | '<' | '>'))
    {
        return Err(Error::Labels(format!("label {label:?} contains a reserved character")));
    }
    Ok(())
}

impl LabelMap {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Labels("no labels".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if labels[..i].contains(l) {
                return Err(Error::Labels(format!("duplicate label {l:?}")));
            }
        }
        Ok(LabelMap { labels })
    }

    /// `a, b, c, …`; elements past `z` are named `e26`, `e27`, ….
    pub fn letters(n: usize) -> Self {
        LabelMap {
            labels: (0..n).map(letter_label).collect(),
        }
    }

    /// `0, 1, 2, …`.
    pub fn indices(n: usize) -> Self {
        LabelMap {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn tokens(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push(Token {
                    line: line_no,
                    column: line[..s].chars().count() + 1,
                    text: &line[s..pos],
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the table file format.
pub fn read_table(text: &str) -> Result<(CayleyTable, LabelMap)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .peekable();

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing \"n=<order>\" line"))?;
    let n = parse_header(line_no, header)?;

    let mut labels = None;
    if let Some(&(line_no, line)) = lines.peek() {
        if let Some(rest) = line.trim().strip_prefix("labels=") {
            let col = line.find("labels=").unwrap_or(0) + "labels=".len() + 1;
            let parsed = LabelMap::new(rest.split(',').map(str::trim))
                .map_err(|e| parse_err(line_no, col, e.to_string()))?;
            if parsed.len() != n {
                return Err(parse_err(
                    line_no,
                    col,
                    format!("expected {n} labels, found {}", parsed.len()),
                ));
            }
            labels = Some(parsed);
            lines.next();
        }
    }

    let rows: Vec<Vec<Token>> = lines.map(|(no, l)| tokens(no, l)).collect();
    let last_line = text.lines().count().max(1);
    resolve(n, labels, rows, last_line)
}

/// Parses `"a b c / b c a / c a b"`: rows separated by `/`, order taken from
/// the row count.
pub fn parse_inline(spec: &str) -> Result<(CayleyTable, LabelMap)> {
    let rows: Vec<Vec<Token>> = spec
        .split('/')
        .enumerate()
        .map(|(i, r)| tokens(i + 1, r))
        .filter(|r| !r.is_empty())
        .collect();
    let n = rows.len();
    check_order(n).map_err(|_| parse_err(1, 1, "inline table has no rows"))?;
    resolve(n, None, rows, n)
}

fn parse_header(line_no: usize, line: &str) -> Result<usize> {
    let t = line.trim();
    let col = line.len() - line.trim_start().len() + 1;
    let value = t
        .strip_prefix("n")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line_no, col, "expected \"n=<order>\""))?
        .trim();
    let n: usize = value
        .parse()
        .map_err(|_| parse_err(line_no, col, format!("invalid order {value:?}")))?;
    check_order(n).map_err(|e| parse_err(line_no, col, e.to_string()))?;
    Ok(n)
}

fn resolve(
    n: usize,
    labels: Option<LabelMap>,
    rows: Vec<Vec<Token>>,
    last_line: usize,
) -> Result<(CayleyTable, LabelMap)> {
    if rows.len() != n {
        let (line, column) = rows
            .get(n)
            .and_then(|r| r.first())
            .map_or((last_line, 1), |t| (t.line, t.column));
        return Err(parse_err(
            line,
            column,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    for row in &rows {
        if row.len() != n {
            let (line, column) = row
                .get(n)
                .or(row.last())
                .map_or((0, 1), |t| (t.line, t.column));
            return Err(parse_err(
                line,
                column,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
    }

    let all = || rows.iter().flatten();
    let labels = match labels {
        Some(l) => l,
        None if all().all(|t| t.text.bytes().all(|b| b.is_ascii_digit())) => {
            for t in all() {
                let v: u64 = t
                    .text
                    .parse()
                    .map_err(|_| parse_err(t.line, t.column, "invalid index"))?;
                if v >= n as u64 {
                    return Err(Error::Range { value: v, n });
                }
            }
            LabelMap::indices(n)
        }
        None => {
            let letters = LabelMap::letters(n);
            if all().all(|t| letters.index_of(t.text).is_some()) {
                letters
            } else {
                let first = &rows[0];
                let names: Vec<&str> = first.iter().map(|t| t.text).collect();
                LabelMap::new(names.iter().copied()).map_err(|e| {
                    parse_err(first[0].line, first[0].column, format!("first row: {e}"))
                })?
            }
        }
    };

    let mut entries = Vec::with_capacity(n * n);
    for t in all() {
        let v = labels
            .index_of(t.text)
            .ok_or_else(|| parse_err(t.line, t.column, format!("unknown label {:?}", t.text)))?;
        entries.push(v as u8);
    }
    Ok((CayleyTable::from_entries_unchecked(n, entries), labels))
}

/// Canonical text for a table: header, labels line, one row per line.
pub fn write_table(table: &CayleyTable, labels: &LabelMap) -> String {
    assert_eq!(labels.len(), table.order(), "label map has the wrong length");
    let mut out = format!("n={}\nlabels={}\n", table.order(), labels.labels().join(","));
    for row in table.rows() {
        let line: Vec<&str> = row.iter().map(|&v| labels.label(v as usize)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
