use std::collections::BTreeMap;
use std::fmt::Write;

use novsheaf_core::curved::{LevelObject, TwistedComplex};
use novsheaf_core::matrix::Matrix;
use novsheaf_core::novikov::{Exponent, Field, Ring};

use super::{content_lines, exponent, rational, scalar};
use crate::error::{Error, Result};

/// ```text
/// cutoff inf
/// level 0 : 3 4        # offset, then the degree of each slot
/// level 1 : 2
/// d 0 1 0 = 1          # level, row, column
/// f 1 0 1 0 = T        # f_ij: level i -> level j, row, column
/// ```
pub fn read_twisted(text: &str, field: Field, default_cutoff: Option<&Exponent>) -> Result<TwistedComplex> {
    let mut cutoff = default_cutoff.cloned().unwrap_or(Exponent::Infinite);
    let mut levels = Vec::new();
    let mut entries = Vec::new();
    for (ln, l) in content_lines(text) {
        let (kw, body) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match kw {
            "cutoff" => cutoff = exponent(ln, body.trim())?,
            "level" => {
                let (off, degs) =
                    body.split_once(':').ok_or_else(|| Error::parse(ln, "expected `level <offset> : <degrees>`"))?;
                let degrees = degs
                    .split_whitespace()
                    .map(|d| d.parse::<i32>().map_err(|_| Error::parse(ln, format!("bad degree `{}`", d))))
                    .collect::<Result<Vec<_>>>()?;
                levels.push((ln, rational(ln, off.trim())?, degrees));
            }
            "d" | "f" => entries.push((ln, kw, body)),
            _ => return Err(Error::parse(ln, format!("unknown keyword `{}`", kw))),
        }
    }
    let ring = Ring::try_new(cutoff.clone(), field).map_err(|e| Error::parse(0, e.to_string()))?;
    let mut diffs: Vec<Matrix> = levels.iter().map(|(_, _, d)| Matrix::zeros(d.len(), d.len(), &ring)).collect();
    let mut maps: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
    for (ln, kw, body) in entries {
        let (idx, value) = body.split_once('=').ok_or_else(|| Error::parse(ln, "missing `=`"))?;
        let idx = idx
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad index `{}`", t))))
            .collect::<Result<Vec<_>>>()?;
        let v = scalar(ln, value, field, &cutoff)?;
        let dim =
            |k: usize| levels.get(k).map(|l| l.2.len()).ok_or_else(|| Error::parse(ln, format!("no level {}", k)));
        match (kw, idx.as_slice()) {
            ("d", &[k, r, c]) => {
                if r >= dim(k)? || c >= dim(k)? {
                    return Err(Error::parse(ln, "entry out of range"));
                }
                diffs[k].set(r, c, v);
            }
            ("f", &[i, j, r, c]) => {
                let (rows, cols) = (dim(j)?, dim(i)?);
                if r >= rows || c >= cols {
                    return Err(Error::parse(ln, "entry out of range"));
                }
                maps.entry((i, j)).or_insert_with(|| Matrix::zeros(rows, cols, &ring)).set(r, c, v);
            }
            _ => return Err(Error::parse(ln, "expected `d k row col = s` or `f i j row col = s`")),
        }
    }
    let mut objects = Vec::new();
    for ((ln, off, degrees), d) in levels.into_iter().zip(diffs) {
        objects.push(LevelObject::new(degrees, d, off).map_err(|e| Error::parse(ln, e.to_string()))?);
    }
    Ok(TwistedComplex::new(objects, maps, ring)?)
}

pub fn write_twisted(t: &TwistedComplex) -> String {
    let mut out = String::new();
    writeln!(out, "cutoff {}", t.ring().cutoff).unwrap();
    for o in t.objects() {
        let degs: Vec<String> = o.degrees().iter().map(ToString::to_string).collect();
        writeln!(out, "level {} : {}", o.offset(), degs.join(" ")).unwrap();
    }
    for (k, o) in t.objects().iter().enumerate() {
        let d = o.differential();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if !d.get(r, c).is_zero() {
                    writeln!(out, "d {} {} {} = {}", k, r, c, d.get(r, c)).unwrap();
                }
            }
        }
    }
    for ((i, j), f) in t.maps() {
        for r in 0..f.rows() {
            for c in 0..f.cols() {
                if !f.get(r, c).is_zero() {
                    writeln!(out, "f {} {} {} {} = {}", i, j, r, c, f.get(r, c)).unwrap();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use novsheaf_core::curved::tc_residual;

    #[test]
    fn round_trip() {
        let text =
            "level 0 : 3 4\nlevel 1 : 2\nlevel 2 : 0\nd 0 1 0 = 1\nf 2 1 0 0 = T\nf 1 0 1 0 = T\nf 2 0 0 0 = -T^2\n";
        let t = read_twisted(text, Field::Rational, None).unwrap();
        assert!(tc_residual(&t).values().all(Matrix::is_zero));
        assert_eq!(read_twisted(&write_twisted(&t), Field::Rational, None).unwrap(), t);
        assert!(read_twisted("level 0 : 1\nd 3 0 0 = 1\n", Field::Rational, None).is_err());
    }
}
