//! Plain-text matrix format: a header line `"m n"` followed by `m` lines of
//! exactly `n` characters from `{0,1}`, every line terminated by `\n`.

use super::BooleanMatrix;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_dim(token: &str, what: &str) -> Result<usize> {
    let ok = !token.is_empty()
        && token.bytes().all(|b| b.is_ascii_digit())
        && !(token.len() > 1 && token.starts_with('0'));
    if !ok {
        return Err(parse_err(
            1,
            format!("{what} is not a canonical decimal: {token:?}"),
        ));
    }
    let v: usize = token
        .parse()
        .map_err(|_| parse_err(1, format!("{what} overflows: {token:?}")))?;
    if v == 0 {
        return Err(parse_err(1, format!("{what} must be positive")));
    }
    Ok(v)
}

impl BooleanMatrix {
    /// Serializes to the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows() * (self.cols() + 1) + 24);
        out.push_str(&format!("{} {}\n", self.rows(), self.cols()));
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(if self.get(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Strict parser for the text format; rejects anything `to_text` would
    /// not produce.
    pub fn from_text(input: &str) -> Result<Self> {
        let (header, body) = input
            .split_once('\n')
            .ok_or_else(|| parse_err(1, "missing header line"))?;
        let (m_tok, n_tok) = header
            .split_once(' ')
            .ok_or_else(|| parse_err(1, "header must be \"m n\""))?;
        let rows = parse_dim(m_tok, "row count")?;
        let cols = parse_dim(n_tok, "column count")?;

        // Checked before allocating so a lying header cannot request memory.
        let expected = rows
            .checked_mul(cols + 1)
            .ok_or_else(|| parse_err(1, "dimensions overflow"))?;
        if body.len() != expected {
            return Err(parse_err(
                1,
                format!(
                    "body has {} bytes, header {rows}x{cols} requires {expected}",
                    body.len()
                ),
            ));
        }

        let mut m = BooleanMatrix::zeros(rows, cols)?;
        for (i, line) in body.as_bytes().chunks(cols + 1).enumerate() {
            let lineno = i + 2;
            if line[cols] != b'\n' {
                return Err(parse_err(
                    lineno,
                    format!("row must have exactly {cols} entries"),
                ));
            }
            for (j, &c) in line[..cols].iter().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    other => {
                        return Err(parse_err(
                            lineno,
                            format!("unexpected byte {other:#04x} at column {}", j + 1),
                        ))
                    }
                }
            }
        }
        Ok(m)
    }
}
