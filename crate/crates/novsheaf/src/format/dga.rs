use std::collections::BTreeMap;
use std::fmt::Write;

use novsheaf_core::curved::{CurvedDGA, Element, Generator, McOutcome};
use novsheaf_core::matrix::Matrix;
use novsheaf_core::novikov::{Exponent, Field, NovikovScalar, Rational, Ring};

use super::{content_lines, exponent, rational, scalar, strip_parens};
use crate::error::{Error, Result};

/// Split `a + b - c` at top-level signs, keeping the sign with each term.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut neg) = (0i32, 0usize, false);
    let mut prev = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let body = s[start..i].trim();
                let after_op = matches!(prev, Some('*' | '^' | '·'));
                if !body.is_empty() && !after_op {
                    out.push((neg, body));
                    start = i + c.len_utf8();
                    neg = c == '-';
                } else if body.is_empty() {
                    start = i + c.len_utf8();
                    neg ^= c == '-';
                }
            }
            _ => {}
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    let body = s[start..].trim();
    if !body.is_empty() {
        out.push((neg, body));
    }
    out
}

/// `Σ coef*name`; `0` is the empty sum.
fn read_sum(line: usize, s: &str, names: &BTreeMap<String, usize>, field: Field, cutoff: &Exponent) -> Result<Element> {
    let ring = Ring::new(cutoff.clone(), field);
    let mut v = vec![NovikovScalar::zero(&ring); names.len()];
    if s.trim() == "0" {
        return Ok(v);
    }
    for (neg, term) in split_terms(s) {
        let mut depth = 0;
        let mut cut = None;
        for (i, c) in term.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '*' | '·' if depth == 0 => cut = Some((i, c.len_utf8())),
                _ => {}
            }
        }
        let (coef, name) = match cut {
            Some((i, w)) => (scalar(line, &term[..i], field, cutoff)?, term[i + w..].trim()),
            None => (NovikovScalar::one(&ring), term),
        };
        let k = *names
            .get(strip_parens(name))
            .ok_or_else(|| Error::parse(line, format!("unknown generator `{}`", name)))?;
        v[k] = if neg { &v[k] - &coef } else { &v[k] + &coef };
    }
    Ok(v)
}

/// Keywords, one per line:
///
/// ```text
/// cutoff 3
/// gapping 0 1
/// basis one 0
/// basis x 1
/// mult x*x = y
/// d x = (T^3)*y
/// curvature = T*y
/// unit = one
/// ```
///
/// Unlisted products, differentials and the curvature are zero; without a
/// `unit` line a basis element acting as identity is used.
pub fn read_dga(text: &str, field: Field, default_cutoff: Option<&Exponent>) -> Result<CurvedDGA> {
    let mut cutoff = default_cutoff.cloned().unwrap_or(Exponent::Infinite);
    let mut gapping: Option<Vec<Rational>> = None;
    let mut basis: Vec<Generator> = Vec::new();
    let mut rest = Vec::new();
    for (ln, l) in content_lines(text) {
        let (kw, body) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let body = body.trim();
        match kw {
            "cutoff" => cutoff = exponent(ln, body)?,
            "gapping" => {
                gapping = Some(body.split_whitespace().map(|t| rational(ln, t)).collect::<Result<_>>()?);
            }
            "basis" => {
                let p: Vec<&str> = body.split_whitespace().collect();
                let [name, deg] = p.as_slice() else {
                    return Err(Error::parse(ln, "expected `basis <name> <degree>`"));
                };
                let degree = deg.parse().map_err(|_| Error::parse(ln, format!("bad degree `{}`", deg)))?;
                basis.push(Generator { name: name.to_string(), degree });
            }
            "mult" | "d" | "curvature" | "unit" => rest.push((ln, kw, body)),
            _ => return Err(Error::parse(ln, format!("unknown keyword `{}`", kw))),
        }
    }
    let gapping = gapping.ok_or_else(|| Error::parse(0, "missing `gapping` line"))?;
    let ring = Ring::try_new(cutoff.clone(), field).map_err(|e| Error::parse(0, e.to_string()))?;
    let mut names = BTreeMap::new();
    for (i, g) in basis.iter().enumerate() {
        if names.insert(g.name.clone(), i).is_some() {
            return Err(Error::parse(0, format!("duplicate generator `{}`", g.name)));
        }
    }
    let n = basis.len();
    let mut mult = Vec::new();
    let mut diff = Matrix::zeros(n, n, &ring);
    let mut curvature = vec![NovikovScalar::zero(&ring); n];
    let mut unit = None;
    let lookup = |ln: usize, s: &str| {
        names.get(s.trim()).copied().ok_or_else(|| Error::parse(ln, format!("unknown generator `{}`", s.trim())))
    };
    for (ln, kw, body) in rest {
        let (lhs, rhs) = body.split_once('=').ok_or_else(|| Error::parse(ln, "missing `=`"))?;
        let value = read_sum(ln, rhs, &names, field, &cutoff)?;
        match kw {
            "mult" => {
                let (a, b) = lhs.split_once(['*', '·']).ok_or_else(|| Error::parse(ln, "expected `mult a*b = ...`"))?;
                let (i, j) = (lookup(ln, a)?, lookup(ln, b)?);
                for (k, c) in value.into_iter().enumerate() {
                    if !c.is_zero() {
                        mult.push((i, j, k, c));
                    }
                }
            }
            "d" => {
                let j = lookup(ln, lhs)?;
                for (i, c) in value.into_iter().enumerate() {
                    diff.set(i, j, c);
                }
            }
            "curvature" => curvature = value,
            _ => unit = Some(value),
        }
    }
    Ok(CurvedDGA::new(basis, &mult, diff, curvature, gapping, unit)?)
}

fn write_sum(a: &CurvedDGA, v: &Element) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({})*{}", c, a.basis()[k].name))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn write_dga(a: &CurvedDGA) -> String {
    let mut out = String::new();
    writeln!(out, "cutoff {}", a.ring().cutoff).unwrap();
    let gaps: Vec<String> = a.gapping().iter().map(ToString::to_string).collect();
    writeln!(out, "gapping {}", gaps.join(" ")).unwrap();
    for g in a.basis() {
        writeln!(out, "basis {} {}", g.name, g.degree).unwrap();
    }
    let mut products: BTreeMap<(usize, usize), Element> = BTreeMap::new();
    for (i, j, k, c) in a.mult_entries() {
        products.entry((i, j)).or_insert_with(|| a.zero())[k] = c;
    }
    for ((i, j), v) in &products {
        writeln!(out, "mult {}*{} = {}", a.basis()[*i].name, a.basis()[*j].name, write_sum(a, v)).unwrap();
    }
    for j in 0..a.dim() {
        let col = a.diff().column(j);
        if col.iter().any(|c| !c.is_zero()) {
            writeln!(out, "d {} = {}", a.basis()[j].name, write_sum(a, &col)).unwrap();
        }
    }
    if a.curvature().iter().any(|c| !c.is_zero()) {
        writeln!(out, "curvature = {}", write_sum(a, a.curvature())).unwrap();
    }
    writeln!(out, "unit = {}", write_sum(a, a.unit())).unwrap();
    out
}

/// `solved` with the nonzero components of `b`, or `obstructed` with the
/// level, the class on the degree-2 generators and the partial solution.
pub fn write_mc_outcome(a: &CurvedDGA, outcome: &McOutcome) -> String {
    let mut out = String::new();
    let components = |out: &mut String, v: &Element| {
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            writeln!(out, "  {} = {} level={}", a.basis()[k].name, c, c.valuation()).unwrap();
        }
    };
    match outcome {
        McOutcome::Solved(b) => {
            writeln!(out, "mc solved").unwrap();
            components(&mut out, b);
        }
        McOutcome::Obstructed(r) => {
            writeln!(out, "mc obstructed level={}", r.level).unwrap();
            let names: Vec<String> = a
                .degree_indices(2)
                .iter()
                .zip(&r.class)
                .map(|(&k, c)| format!("{}: {}", a.basis()[k].name, c))
                .collect();
            writeln!(out, "class [{}]", names.join(", ")).unwrap();
            writeln!(out, "partial").unwrap();
            components(&mut out, &r.partial);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use novsheaf_core::curved::mc_solve;

    const FIXTURE: &str = "cutoff inf\ngapping 0 1\nbasis one 0\nbasis x 1\nbasis y 2\n\
        mult one*one = one\nmult one*x = x\nmult x*one = x\nmult one*y = y\nmult y*one = y\n\
        mult x*x = y\nd x = (T^2)*y\n";

    #[test]
    fn terms_split_at_top_level() {
        assert_eq!(split_terms("(1 + T)*x - T^2*y"), vec![(false, "(1 + T)*x"), (true, "T^2*y")]);
        assert_eq!(split_terms("-x"), vec![(true, "x")]);
    }

    #[test]
    fn round_trip() {
        let a = read_dga(FIXTURE, Field::Rational, None).unwrap();
        assert_eq!(a.dim(), 3);
        let again = read_dga(&write_dga(&a), Field::Rational, None).unwrap();
        assert_eq!(again, a);
        let text = write_mc_outcome(&a, &mc_solve(&a).unwrap());
        assert!(text.starts_with("mc solved"));
        assert!(read_dga("gapping 0\nbasis a 0\nfoo\n", Field::Rational, None).is_err());
    }
}
