use std::fmt::Write;

use novsheaf_core::barcode::{PlainBar, PlainBarcode};

use super::{content_lines, exponent, rational};
use crate::error::{Error, Result};

/// One bar per line: `birth length [degree]`, with `inf` allowed as length.
pub fn read_barcode(text: &str) -> Result<PlainBarcode> {
    let mut bars = Vec::new();
    for (ln, l) in content_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(Error::parse(ln, "expected `birth length [degree]`"));
        }
        let mut bar = PlainBar::new(rational(ln, parts[0])?, exponent(ln, parts[1])?);
        if let Some(d) = parts.get(2) {
            bar = bar.in_degree(d.parse().map_err(|_| Error::parse(ln, format!("bad degree `{}`", d)))?);
        }
        bars.push(bar);
    }
    PlainBarcode::new(bars).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_barcode(b: &PlainBarcode) -> String {
    let mut out = String::new();
    for bar in b.bars() {
        if bar.degree == 0 {
            writeln!(out, "{} {}", bar.birth, bar.length).unwrap();
        } else {
            writeln!(out, "{} {} {}", bar.birth, bar.length, bar.degree).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let b = read_barcode("0 inf\n1/5 4/5\n3/2 inf 1\n").unwrap();
        assert_eq!(b.bars().len(), 3);
        assert_eq!(read_barcode(&write_barcode(&b)).unwrap(), b);
        assert!(read_barcode("0 0\n").is_err());
        assert!(read_barcode("0\n").is_err());
    }
}
