use std::fmt::Write;

use novsheaf_core::barcode::EqBarcode;
use novsheaf_core::matrix::Matrix;
use novsheaf_core::modcat::{normal_form, NormalForm, PresentationModule};
use novsheaf_core::novikov::{Exponent, Field, Ring};

use super::{content_lines, exponent, rational, scalar};
use crate::error::{Error, Result};

/// Header `rows cols cutoff`, then `rows·cols` comma-separated literals in
/// row-major order, spread over any number of lines.
pub fn read_matrix(text: &str, field: Field) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty matrix file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::parse(hl, "header must be `rows cols cutoff`"));
    }
    let count = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(hl, format!("bad dimension `{}`", s)));
    let (rows, cols) = (count(parts[0])?, count(parts[1])?);
    let cutoff = exponent(hl, parts[2])?;
    let ring = Ring::try_new(cutoff.clone(), field).map_err(|e| Error::parse(hl, e.to_string()))?;
    let mut entries = Vec::with_capacity(rows * cols);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        for tok in l.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            entries.push(scalar(ln, tok, field, &cutoff)?);
        }
    }
    if entries.len() != rows * cols {
        return Err(Error::parse(last, format!("expected {} entries, found {}", rows * cols, entries.len())));
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(rows, cols, &ring));
    }
    let rows_vec = entries.chunks(cols).map(<[_]>::to_vec).collect();
    Ok(Matrix::from_rows(rows_vec, &ring).expect("uniform rows"))
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.ring().cutoff).unwrap();
    write!(out, "{}", m).unwrap();
    out
}

/// `torsion: [c1, c2, ...], free: r`
pub fn read_normal_form(line: usize, s: &str) -> Result<NormalForm> {
    let bad = || Error::parse(line, "expected `torsion: [c1, ...], free: r`");
    let rest = s.trim().strip_prefix("torsion:").ok_or_else(bad)?.trim();
    let rest = rest.strip_prefix('[').ok_or_else(bad)?;
    let (list, tail) = rest.split_once(']').ok_or_else(bad)?;
    let tail = tail.trim().strip_prefix(',').ok_or_else(bad)?.trim();
    let free = tail.strip_prefix("free:").ok_or_else(bad)?.trim();
    let free: usize = free.parse().map_err(|_| bad())?;
    let mut torsion = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let c = rational(line, tok)?;
        if c <= novsheaf_core::novikov::rat(0, 1) {
            return Err(Error::parse(line, format!("torsion length `{}` must be positive", tok)));
        }
        torsion.push(c);
    }
    Ok(NormalForm::new(torsion, free))
}

/// An equivariant barcode given either as a normal form line (at
/// `cutoff`, default `∞`) or as a presentation matrix file, whose header
/// fixes the cutoff.
pub fn read_module(text: &str, field: Field, cutoff: Option<&Exponent>) -> Result<EqBarcode> {
    let first = content_lines(text).next();
    match first {
        Some((ln, l)) if l.starts_with("torsion") => {
            let nf = read_normal_form(ln, l)?;
            if let Some((extra, _)) = content_lines(text).nth(1) {
                return Err(Error::parse(extra, "a normal form file holds a single line"));
            }
            let cutoff = cutoff.cloned().unwrap_or(Exponent::Infinite);
            Ok(EqBarcode::from_normal_form(&nf, cutoff)?)
        }
        _ => {
            let m = read_matrix(text, field)?;
            if let Some(c) = cutoff {
                if c != &m.ring().cutoff {
                    return Err(Error::Usage(format!(
                        "--cutoff {} disagrees with the matrix header cutoff {}",
                        c,
                        m.ring().cutoff
                    )));
                }
            }
            let nf = normal_form(&PresentationModule::new(m.clone()));
            Ok(EqBarcode::from_normal_form(&nf, m.ring().cutoff.clone())?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use novsheaf_core::novikov::rat;

    #[test]
    fn matrix_round_trip() {
        let text = "# relations\n2 2 5/2\nT^2, 0\n1 + T^(1/2), T\n";
        let m = read_matrix(text, Field::Rational).unwrap();
        assert_eq!(m.ring().cutoff, Exponent::ratio(5, 2));
        assert_eq!(read_matrix(&write_matrix(&m), Field::Rational).unwrap(), m);
        assert!(read_matrix("2 2 inf\nT, 1\n", Field::Rational).is_err());
        assert!(read_matrix("2 two inf\n", Field::Rational).is_err());
    }

    #[test]
    fn normal_forms() {
        let nf = read_normal_form(1, "torsion: [2, 1/3], free: 1").unwrap();
        assert_eq!(nf, NormalForm::new(vec![rat(2, 1), rat(1, 3)], 1));
        assert_eq!(read_normal_form(1, &nf.to_string()).unwrap(), nf);
        assert_eq!(read_normal_form(1, "torsion: [], free: 0").unwrap(), NormalForm::zero());
        assert!(read_normal_form(1, "torsion: [0], free: 0").is_err());
        let e = read_module("1 1 inf\nT^2\n", Field::Rational, None).unwrap();
        assert_eq!(e.torsion(), &[rat(2, 1)]);
    }
}
