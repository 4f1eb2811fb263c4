use crate::{Error, Result, MAX_ALPHABET};

/// A `k x n` matrix over the alphabet `{0..v-1}`, stored column-major.
///
/// This is the universal object of the workspace: constructions emit it,
/// counting operations consume it, and the text format below round-trips
/// it bit-exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMatrix {
    v: u32,
    k: usize,
    n: usize,
    /// entries[j * k + i] is the symbol at row i, column j.
    entries: Vec<u8>,
}

impl AlphabetMatrix {
    pub fn new(v: u32, k: usize, n: usize, entries: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&v) {
            return Err(Error::invalid(format!(
                "alphabet size must be in [2, {MAX_ALPHABET}], got {v}"
            )));
        }
        if k == 0 || n == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if entries.len() != k * n {
            return Err(Error::invalid(format!(
                "expected {} entries for a {k} x {n} matrix, got {}",
                k * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| (e as u32) >= v) {
            return Err(Error::invalid(format!("entry {bad} is outside [0, {v})")));
        }
        Ok(AlphabetMatrix { v, k, n, entries })
    }

    /// Build from a closure giving the entry at (row, col).
    pub fn from_fn(v: u32, k: usize, n: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let mut entries = vec![0u8; k * n];
        for j in 0..n {
            for i in 0..k {
                entries[j * k + i] = f(i, j);
            }
        }
        Self::new(v, k, n, entries)
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[j * self.k + i]
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[u8] {
        &self.entries[j * self.k..(j + 1) * self.k]
    }

    /// New matrix keeping only the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        let mut entries = Vec::with_capacity(cols.len() * self.k);
        for &j in cols {
            if j >= self.n {
                return Err(Error::invalid(format!("column index {j} out of range")));
            }
            entries.extend_from_slice(self.column(j));
        }
        AlphabetMatrix::new(self.v, self.k, cols.len(), entries)
    }

    /// Serialize to the canonical text format:
    /// line 1 is `v k n`, then `k` lines of `n` space-separated symbols,
    /// each line terminated by a newline.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::with_capacity(16 + self.k * self.n * 2);
        writeln!(out, "{} {} {}", self.v, self.k, self.n).unwrap();
        for i in 0..self.k {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                write!(out, "{}", self.get(i, j)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Strict parser for the text format. Exactly one space between fields,
    /// no leading/trailing blanks, trailing newline required.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = StrictLines::new(text);
        let header = lines.next_line()?;
        let parts: Vec<&str> = header.split(' ').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line: 1,
                msg: "header must be `v k n`".into(),
            });
        }
        let v: u32 = parse_field(parts[0], 1)?;
        let k: usize = parse_field(parts[1], 1)?;
        let n: usize = parse_field(parts[2], 1)?;
        let cells = k.checked_mul(n).ok_or_else(|| Error::Parse {
            line: 1,
            msg: "dimensions overflow".into(),
        })?;
        if cells > 1 << 28 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("matrix of {cells} cells exceeds the parser limit"),
            });
        }
        let mut entries = vec![0u8; cells];
        for i in 0..k {
            let line_no = i + 2;
            let row = lines.next_line().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected {k} data rows"),
            })?;
            let mut count = 0usize;
            for (j, tok) in row.split(' ').enumerate() {
                if j >= n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("row has more than {n} entries"),
                    });
                }
                let sym: u32 = parse_field(tok, line_no)?;
                if sym >= v {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("symbol {sym} is outside [0, {v})"),
                    });
                }
                entries[j * k + i] = sym as u8;
                count += 1;
            }
            if count != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {n} entries, found {count}"),
                });
            }
        }
        lines.expect_end(k + 2)?;
        AlphabetMatrix::new(v, k, n, entries)
    }
}

/// Newline-strict line reader: every line must end with `\n` and the
/// input must end immediately after the last line.
struct StrictLines<'a> {
    rest: &'a str,
}

impl<'a> StrictLines<'a> {
    fn new(text: &'a str) -> Self {
        StrictLines { rest: text }
    }

    fn next_line(&mut self) -> Result<&'a str> {
        match self.rest.find('\n') {
            Some(pos) => {
                let line = &self.rest[..pos];
                self.rest = &self.rest[pos + 1..];
                if line.contains('\r') || line.contains('\t') {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "only plain spaces and newlines are accepted".into(),
                    });
                }
                Ok(line)
            }
            None => Err(Error::Parse {
                line: 0,
                msg: "missing trailing newline".into(),
            }),
        }
    }

    fn expect_end(&self, line: usize) -> Result<()> {
        if !self.rest.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "unexpected trailing content".into(),
            });
        }
        Ok(())
    }
}

fn parse_field<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    if tok.is_empty() || tok.chars().any(|c| !c.is_ascii_digit()) {
        return Err(Error::Parse {
            line,
            msg: format!("malformed field {tok:?}"),
        });
    }
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("field {tok:?} out of range"),
    })
}
