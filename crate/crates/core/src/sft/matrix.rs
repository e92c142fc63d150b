use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Square 0-1 matrix of allowed symbol transitions.
///
/// Entry `(i, j)` is `true` when symbol `i` may be followed by symbol `j`.
/// Indices are zero-based in the API; the text format is the only place
/// where symbols appear unindexed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    order: usize,
    entries: Vec<bool>,
}

impl TransitionMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("matrix order must be >= 1".into()));
        }
        Ok(Self {
            order,
            entries: vec![false; order * order],
        })
    }

    /// Full shift on `order` symbols.
    pub fn full_shift(order: usize) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        m.entries.iter_mut().for_each(|e| *e = true);
        Ok(m)
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut m = Self::zeros(order)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {order}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(Error::Parse(format!(
                            "entry ({}, {}) is {other}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter_map(|(j, &e)| e.then_some(j))
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e).count()
    }

    pub fn rows_u8(&self) -> Vec<Vec<u8>> {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|&e| e as u8).collect())
            .collect()
    }

    /// Submatrix on the given symbols, in the given order.
    pub fn induced(&self, symbols: &[usize]) -> Result<Self> {
        let mut m = Self::zeros(symbols.len())?;
        for (a, &i) in symbols.iter().enumerate() {
            for (b, &j) in symbols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        Ok(m)
    }

    /// Removes row and column `drop_index` (zero-based).
    pub fn principal_minor(&self, drop_index: usize) -> Result<Self> {
        if drop_index >= self.order || self.order < 2 {
            return Err(Error::IndexOutOfRange {
                index: drop_index,
                order: self.order,
            });
        }
        let keep: Vec<usize> = (0..self.order).filter(|&k| k != drop_index).collect();
        self.induced(&keep)
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.order {
            return Err(Error::IndexOutOfRange {
                index: k,
                order: self.order,
            });
        }
        let keep: Vec<usize> = (0..k).collect();
        self.induced(&keep)
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|&e| if e { 1.0 } else { 0.0 })
            .collect()
    }

    /// Text form: the order on the first line, then one line per row.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for i in 0..self.order {
            let line: Vec<&str> = self
                .row(i)
                .iter()
                .map(|&e| if e { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows_u8()).finish()
    }
}

impl FromStr for TransitionMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let order: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad order line {header:?}")))?;
        let mut rows = Vec::with_capacity(order);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        if rows.len() != order {
            return Err(Error::Parse(format!(
                "expected {order} rows, found {}",
                rows.len()
            )));
        }
        Self::from_rows(&rows)
    }
}
