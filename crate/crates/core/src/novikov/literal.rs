//! The scalar literal grammar.
//!
//! ```text
//! scalar  := ['-'] term (('+' | '-') term)* [annotation]
//! term    := number ['*' power] | power
//! power   := 'T' ['^' (number | '(' ['-'] number ')')]
//! number  := digits ['/' digits | '.' digits]
//! annotation := '@cutoff' number | '@inf'
//! ```
//!
//! Printing is canonical: increasing exponents, unit coefficients omitted
//! in front of `T`, integer exponents bare and fractional ones in
//! parentheses, zero printed as `0`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exponent::{is_integer, Exponent, Rational};
use super::field::{Field, FieldElement};
use super::scalar::NovikovScalar;
use super::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: &str) -> Self {
        ParseError { position, message: message.to_string() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

/// Exact rational in `p/q`, integer or finite decimal notation.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let neg = p.eat(b'-');
    let q = p.number()?;
    p.skip_ws();
    if !p.done() {
        return Err(ParseError::new(p.pos, "trailing input after number"));
    }
    Ok(if neg { -q } else { q })
}

/// A rational or `inf`.
pub fn parse_exponent(text: &str) -> Result<Exponent, ParseError> {
    let t = text.trim();
    if t == "inf" || t == "∞" || t == "+inf" {
        return Ok(Exponent::Infinite);
    }
    parse_rational(t).map(Exponent::Finite)
}

type Terms = (Vec<(Rational, Rational)>, Option<Exponent>);

/// Terms `(exponent, coefficient)` in source order plus the optional
/// annotation. Exponents may be negative here; callers decide.
pub(crate) fn parse_terms(text: &str) -> Result<Terms, ParseError> {
    let mut p = Parser::new(text);
    let mut terms = Vec::new();
    p.skip_ws();
    let mut sign_neg = p.eat(b'-');
    loop {
        p.skip_ws();
        let (e, c) = p.term()?;
        terms.push((e, if sign_neg { -c } else { c }));
        p.skip_ws();
        if p.eat(b'+') {
            sign_neg = false;
        } else if p.eat(b'-') {
            sign_neg = true;
        } else {
            break;
        }
    }
    let cutoff = if p.eat(b'@') {
        if p.eat_word("inf") {
            Some(Exponent::Infinite)
        } else if p.eat_word("cutoff") {
            p.skip_ws();
            if p.eat_word("inf") {
                Some(Exponent::Infinite)
            } else {
                Some(Exponent::Finite(p.number()?))
            }
        } else {
            return Err(ParseError::new(p.pos, "expected `@cutoff <q>` or `@inf`"));
        }
    } else {
        None
    };
    p.skip_ws();
    if !p.done() {
        return Err(ParseError::new(p.pos, "unexpected character"));
    }
    Ok((terms, cutoff))
}

/// Parse a scalar of `Λ₀/T^c` over `field`.
///
/// An `@cutoff`/`@inf` annotation must agree with `cutoff` when both are
/// present; with neither the scalar is exact (cutoff `∞`).
pub fn parse_scalar(text: &str, field: Field, cutoff: Option<&Exponent>) -> Result<NovikovScalar, ParseError> {
    let (terms, annotated) = parse_terms(text)?;
    let cutoff = match (annotated, cutoff) {
        (Some(a), Some(c)) if &a != c => return Err(ParseError::new(0, "annotated cutoff disagrees with context")),
        (Some(a), _) => a,
        (None, Some(c)) => c.clone(),
        (None, None) => Exponent::Infinite,
    };
    let ring = Ring::try_new(cutoff, field).map_err(|e| ParseError { position: 0, message: e.to_string() })?;
    let mut converted = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if e.is_negative() {
            return Err(ParseError::new(0, "negative exponent in a Λ₀ scalar"));
        }
        let c = field.from_rational(&c).map_err(|e| ParseError { position: 0, message: e.to_string() })?;
        converted.push((e, c));
    }
    NovikovScalar::from_terms(converted, &ring).map_err(|e| ParseError { position: 0, message: e.to_string() })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { s: text.as_bytes(), pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.s[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        let text = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("ascii digits parse"))
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let whole = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            return Ok(Rational::new(whole, den));
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let start = self.pos;
            let frac = self.digits()?;
            let places = (self.pos - start) as u32;
            let scale = num_traits::pow(BigInt::from(10), places as usize);
            return Ok(Rational::new(whole * &scale + frac, scale));
        }
        Ok(Rational::from_integer(whole))
    }

    fn power(&mut self) -> Result<Rational, ParseError> {
        // the 'T' has been consumed
        if !self.eat(b'^') {
            return Ok(Rational::one());
        }
        self.skip_ws();
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let q = self.number()?;
            if !self.eat(b')') {
                return Err(ParseError::new(self.pos, "expected `)`"));
            }
            Ok(if neg { -q } else { q })
        } else {
            self.number()
        }
    }

    fn term(&mut self) -> Result<(Rational, Rational), ParseError> {
        self.skip_ws();
        if self.eat(b'T') {
            let e = self.power()?;
            return Ok((e, Rational::one()));
        }
        let c = self.number()?;
        if self.eat(b'*') {
            if !self.eat(b'T') {
                return Err(ParseError::new(self.pos, "expected `T` after `*`"));
            }
            let e = self.power()?;
            return Ok((e, c));
        }
        Ok((Rational::zero(), c))
    }
}

/// `T`, `T^2`, `T^(1/2)`, `T^(-1)`; empty for exponent zero.
pub fn format_exponent(e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "T".to_string()
    } else if is_integer(e) && e.is_positive() {
        alloc::format!("T^{}", e)
    } else {
        alloc::format!("T^({})", e)
    }
}

pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Rational, &'a FieldElement)>,
{
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mag = c.abs();
        if e.is_zero() {
            write!(f, "{}", mag)?;
        } else if mag.is_one() {
            f.write_str(&format_exponent(e))?;
        } else {
            write!(f, "{}*{}", mag, format_exponent(e))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn q(text: &str) -> NovikovScalar {
        parse_scalar(text, Field::Rational, None).unwrap()
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(q("T^(1/2) + 1").to_string(), "1 + T^(1/2)");
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("-3/2*T^2 + T").to_string(), "T - 3/2*T^2");
        assert_eq!(q("T - T").to_string(), "0");
        assert_eq!(q("-T").to_string(), "-T");
    }

    #[test]
    fn annotations_and_decimals() {
        let s = parse_scalar("T^2 + T^3 @cutoff 5/2", Field::Rational, None).unwrap();
        assert_eq!(s.to_string(), "T^2");
        assert_eq!(s.cutoff(), &Exponent::ratio(5, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert!(parse_scalar("T @inf", Field::Rational, Some(&Exponent::int(2))).is_err());
    }

    #[test]
    fn malformed_literals() {
        for bad in ["", "T^", "1 +", "2*", "1/0", "T^(1/2", "x", "T @foo", "T^(-1)"] {
            assert!(parse_scalar(bad, Field::Rational, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn prime_field_coefficients() {
        let f = Field::prime(5).unwrap();
        let s = parse_scalar("1/2 + 7*T", f, None).unwrap();
        assert_eq!(s.to_string(), "3 + 2*T");
    }
}
