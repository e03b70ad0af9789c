//! The alist sparse-matrix text format.
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! col_degree_1 ... col_degree_n
//! row_degree_1 ... row_degree_m
//! <n lines: 1-based row indices of each column, optionally 0-padded>
//! <m lines: 1-based column indices of each row, optionally 0-padded>
//! ```
//!
//! Adjacency lists are read one per line, so a column or row of degree zero
//! may appear as an empty line. Both lists must describe the same matrix.

use std::collections::BTreeSet;
use std::fmt::Write;

use llps_core::BitMatrix;

use crate::error::SimError;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next line as `(1-based line number, text)`, or an error naming the
    /// line where input ran out.
    fn next_line(&mut self, last: &mut usize, what: &str) -> Result<(usize, &'a str), SimError> {
        match self.inner.next() {
            Some((i, l)) => {
                *last = i + 1;
                Ok((i + 1, l))
            }
            None => Err(SimError::alist(
                *last + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn next_nonblank(&mut self, last: &mut usize, what: &str) -> Result<(usize, &'a str), SimError> {
        loop {
            let (no, l) = self.next_line(last, what)?;
            if !l.trim().is_empty() {
                return Ok((no, l));
            }
        }
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, SimError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| SimError::alist(line, format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn exactly(line: usize, vals: Vec<usize>, count: usize, what: &str) -> Result<Vec<usize>, SimError> {
    if vals.len() != count {
        return Err(SimError::alist(
            line,
            format!("expected {count} {what}, found {}", vals.len()),
        ));
    }
    Ok(vals)
}

/// Reads adjacency lists, dropping zero padding and converting to 0-based.
fn adjacency(
    lines: &mut Lines<'_>,
    last: &mut usize,
    degrees: &[usize],
    max_degree: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<Vec<usize>>, SimError> {
    degrees
        .iter()
        .enumerate()
        .map(|(j, &deg)| {
            let (no, text) = lines.next_line(last, what)?;
            let raw = numbers(no, text)?;
            if raw.len() > max_degree.max(deg) {
                return Err(SimError::alist(
                    no,
                    format!(
                        "{what} {} lists {} entries, max degree is {max_degree}",
                        j + 1,
                        raw.len()
                    ),
                ));
            }
            let idx: Vec<usize> = raw.into_iter().filter(|&v| v != 0).collect();
            if idx.len() != deg {
                return Err(SimError::alist(
                    no,
                    format!("{what} {} has {} entries, declared degree {deg}", j + 1, idx.len()),
                ));
            }
            if let Some(&bad) = idx.iter().find(|&&v| v > bound) {
                return Err(SimError::alist(no, format!("index {bad} out of range 1..={bound}")));
            }
            let unique: BTreeSet<usize> = idx.iter().copied().collect();
            if unique.len() != idx.len() {
                return Err(SimError::alist(no, format!("{what} {} repeats an index", j + 1)));
            }
            Ok(idx.into_iter().map(|v| v - 1).collect())
        })
        .collect()
}

/// Parses alist text into an `m × n` parity-check matrix.
pub fn parse_alist(text: &str) -> Result<BitMatrix, SimError> {
    let mut lines = Lines::new(text);
    let mut last = 0;

    let (no, l) = lines.next_nonblank(&mut last, "header `n m`")?;
    let dims = exactly(no, numbers(no, l)?, 2, "header values (n m)")?;
    let (n, m) = (dims[0], dims[1]);
    if n == 0 || m == 0 {
        return Err(SimError::alist(no, "n and m must be positive"));
    }

    let (no, l) = lines.next_nonblank(&mut last, "maximum degrees")?;
    let maxes = exactly(no, numbers(no, l)?, 2, "maximum degrees")?;
    let (max_col, max_row) = (maxes[0], maxes[1]);

    let (no, l) = lines.next_nonblank(&mut last, "column degrees")?;
    let col_deg = exactly(no, numbers(no, l)?, n, "column degrees")?;
    if let Some(d) = col_deg.iter().find(|&&d| d > max_col || d > m) {
        return Err(SimError::alist(
            no,
            format!("column degree {d} exceeds maximum {}", max_col.min(m)),
        ));
    }

    let (no, l) = lines.next_nonblank(&mut last, "row degrees")?;
    let row_deg = exactly(no, numbers(no, l)?, m, "row degrees")?;
    if let Some(d) = row_deg.iter().find(|&&d| d > max_row || d > n) {
        return Err(SimError::alist(
            no,
            format!("row degree {d} exceeds maximum {}", max_row.min(n)),
        ));
    }
    if col_deg.iter().sum::<usize>() != row_deg.iter().sum::<usize>() {
        return Err(SimError::alist(no, "row and column degree sums differ"));
    }

    let cols = adjacency(&mut lines, &mut last, &col_deg, max_col, m, "column")?;
    let rows = adjacency(&mut lines, &mut last, &row_deg, max_row, n, "row")?;

    for (extra, l) in lines.inner {
        if !l.trim().is_empty() {
            return Err(SimError::alist(extra + 1, "trailing content after row lists"));
        }
    }

    let mut h = BitMatrix::zeros(m, n);
    for (c, list) in cols.iter().enumerate() {
        for &r in list {
            h.set(r, c, true);
        }
    }
    for (r, list) in rows.iter().enumerate() {
        for &c in list {
            if !h.get(r, c) {
                return Err(SimError::alist(
                    last,
                    format!(
                        "row {} lists column {} but that column does not list the row",
                        r + 1,
                        c + 1
                    ),
                ));
            }
        }
    }
    Ok(h)
}

/// Writes `h` in alist form with zero-padded adjacency lists.
pub fn to_alist(h: &BitMatrix) -> String {
    let (m, n) = (h.nrows(), h.ncols());
    let cols: Vec<Vec<usize>> = (0..n).map(|c| (0..m).filter(|&r| h.get(r, c)).collect()).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|r| h.row(r).ones_positions().collect()).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);

    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "{n} {m}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut rows.iter().map(Vec::len))).unwrap();
    for (list, max) in cols
        .iter()
        .map(|l| (l, max_col))
        .chain(rows.iter().map(|l| (l, max_row)))
    {
        let padded = list
            .iter()
            .map(|&i| i + 1)
            .chain(std::iter::repeat_n(0, max - list.len()));
        writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
    }
    out
}
