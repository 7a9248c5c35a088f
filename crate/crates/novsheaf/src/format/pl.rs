use std::fmt::Write;

use novsheaf_core::persist1d::{Base, PLFunction};

use super::{content_lines, rational};
use crate::error::{Error, Result};

/// `base circle|interval x0 x1|pt`, then `x v` per breakpoint. A point
/// function may give its value alone.
pub fn read_pl(text: &str) -> Result<PLFunction> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty function file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let base = match parts.as_slice() {
        ["base", "circle"] => Base::Circle,
        ["base", "pt"] => Base::Point,
        ["base", "interval", a, b] => Base::Interval(rational(hl, a)?, rational(hl, b)?),
        _ => return Err(Error::parse(hl, "expected `base circle`, `base pt` or `base interval x0 x1`")),
    };
    let mut points = Vec::new();
    for (ln, l) in lines {
        let p: Vec<&str> = l.split_whitespace().collect();
        match (p.as_slice(), &base) {
            ([x, v], _) => points.push((rational(ln, x)?, rational(ln, v)?)),
            ([v], Base::Point) => points.push((novsheaf_core::novikov::rat(0, 1), rational(ln, v)?)),
            _ => return Err(Error::parse(ln, "expected `x v`")),
        }
    }
    PLFunction::new(base, points).map_err(|e| Error::parse(hl, e.to_string()))
}

pub fn write_pl(f: &PLFunction) -> String {
    let mut out = String::new();
    match f.base() {
        Base::Point => out.push_str("base pt\n"),
        Base::Circle => out.push_str("base circle\n"),
        Base::Interval(a, b) => writeln!(out, "base interval {} {}", a, b).unwrap(),
    }
    for (x, v) in f.points() {
        writeln!(out, "{} {}", x, v).unwrap();
    }
    out
}
