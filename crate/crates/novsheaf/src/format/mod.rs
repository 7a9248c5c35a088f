//! Line-oriented text formats. Blank lines and `#` comments are ignored
//! everywhere; errors carry 1-based line numbers.

mod barcode;
mod dga;
mod matrix;
mod pl;
mod twisted;

pub use barcode::{read_barcode, write_barcode};
pub use dga::{read_dga, write_dga, write_mc_outcome};
pub use matrix::{read_matrix, read_module, read_normal_form, write_matrix};
pub use pl::{read_pl, write_pl};
pub use twisted::{read_twisted, write_twisted};

use novsheaf_core::novikov::{parse_exponent, parse_rational, parse_scalar, Exponent, Field, NovikovScalar, Rational};

use crate::error::{Error, Result};

/// `(line number, content)` with comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn rational(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::parse(line, format!("`{}`: {}", s, e.message)))
}

pub(crate) fn exponent(line: usize, s: &str) -> Result<Exponent> {
    parse_exponent(s).map_err(|e| Error::parse(line, format!("`{}`: {}", s, e.message)))
}

pub(crate) fn scalar(line: usize, s: &str, field: Field, cutoff: &Exponent) -> Result<NovikovScalar> {
    parse_scalar(strip_parens(s), field, Some(cutoff))
        .map_err(|e| Error::parse(line, format!("`{}`: {}", s, e.message)))
}

/// Drop one pair of parentheses enclosing the whole string.
pub(crate) fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    if !(s.starts_with('(') && s.ends_with(')')) {
        return s;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < s.len() {
                    return s;
                }
            }
            _ => {}
        }
    }
    s[1..s.len() - 1].trim()
}

/// Parse `q`, `fp:<p>`.
pub fn parse_field(s: &str) -> std::result::Result<Field, String> {
    match s {
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| format!("unknown field `{}`; use q or fp:<p>", s))?;
            let p: u64 = p.parse().map_err(|_| format!("bad prime `{}`", p))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}
