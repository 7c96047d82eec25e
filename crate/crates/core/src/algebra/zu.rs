//! Polynomials in the chart coordinates `z`, `u`, Laurent in `z`.

use std::collections::BTreeMap;
use std::fmt;

use rug::Integer;

use super::field::{format_rational, Field, Rational};
use crate::error::ParseError;

/// `sum c_{r,s} u^r z^s` with `r >= 0` and `s` any integer.
/// Keys are `(r, s)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZuPoly<F> {
    terms: BTreeMap<(u32, i64), F>,
}

impl<F: Field> ZuPoly<F> {
    pub fn zero() -> Self {
        ZuPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(r: u32, s: i64, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(r, s, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, i64), F)>) -> Self {
        let mut p = Self::zero();
        for ((r, s), c) in terms {
            p.add_term(r, s, c);
        }
        p
    }

    pub fn add_term(&mut self, r: u32, s: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((r, s)).or_insert_with(F::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&(r, s));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(r, s)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &F)> {
        self.terms.iter().map(|((r, s), c)| (*r, *s, c))
    }

    pub fn coefficient(&self, r: u32, s: i64) -> F {
        self.terms.get(&(r, s)).cloned().unwrap_or_else(F::zero)
    }

    /// Largest power of `u`, if nonzero.
    pub fn u_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(r, _)| *r).max()
    }

    /// Smallest power of `u`, if nonzero.
    pub fn u_order(&self) -> Option<u32> {
        self.terms.keys().map(|(r, _)| *r).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, s), c) in &other.terms {
            out.add_term(*r, *s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, s), c) in &other.terms {
            out.add_term(*r, *s, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a.mul(c))))
    }

    /// Multiplication by `c * u^r * z^s`.
    pub fn shift(&self, r: u32, s: i64, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), x)| ((a + r, b + s), x.mul(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((r1, s1), a) in &self.terms {
            for ((r2, s2), b) in &other.terms {
                out.add_term(r1 + r2, s1 + s2, a.mul(b));
            }
        }
        out
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<ZuPoly<G>> {
        let mut out = ZuPoly::zero();
        for ((r, s), c) in &self.terms {
            out.add_term(*r, *s, f(c)?);
        }
        Some(out)
    }

    /// Restriction to `u = 0`, as a Laurent polynomial in `z`.
    pub fn at_u_zero(&self) -> BTreeMap<i64, F> {
        self.terms
            .iter()
            .filter(|((r, _), _)| *r == 0)
            .map(|((_, s), c)| (*s, c.clone()))
            .collect()
    }
}

impl ZuPoly<Rational> {
    /// Canonical serialisation: terms sorted by `(r, s)` with explicit
    /// coefficients, e.g. `1*z*u - 3/2*z^2*u`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((r, s), c)) in self.terms.iter().enumerate() {
            let neg = *c.numer() < 0;
            let mag = if neg { Rational::from(-c) } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format_rational(&mag));
            let mono = mono_text(*r, *s);
            if !mono.is_empty() {
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the input grammar
    /// `poly := term (('+'|'-') term)*`,
    /// `term := coeff ('*'? mono)? | mono`,
    /// `mono := ('z'('^'int)?)? ('*'? 'u'('^'int)?)?`,
    /// `coeff := int ('/' int)?`, ignoring whitespace. A leading sign is
    /// allowed, `z` may carry a negative exponent, and `u` may precede `z`.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        Parser::new(input).poly()
    }
}

fn mono_text(r: u32, s: i64) -> String {
    let mut parts = Vec::new();
    match s {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{s}")),
    }
    match r {
        0 => {}
        1 => parts.push("u".to_string()),
        _ => parts.push(format!("u^{r}")),
    }
    parts.join("*")
}

impl<F: Field> fmt::Debug for ZuPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for ZuPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((r, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            let mono = mono_text(*r, *s);
            if !mono.is_empty() {
                write!(f, "*{mono}")?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        Parser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<i64, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = allow_negative && self.eat('-');
        let Some(d) = self.digits() else {
            return self.err("expected exponent");
        };
        let Ok(v) = d.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        Ok(if neg { -v } else { v })
    }

    fn poly(&mut self) -> Result<ZuPoly<Rational>, ParseError> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = ZuPoly::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (r, s, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            out.add_term(r, s, c);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else if self.pos == self.chars.len() {
                return Ok(out);
            } else {
                return self.err(format!("unexpected character '{}'", self.chars[self.pos]));
            }
        }
    }

    fn term(&mut self) -> Result<(u32, i64, Rational), ParseError> {
        let coeff = match self.digits() {
            Some(n) => {
                let num: Integer = n.parse().expect("digits");
                let den: Integer = if self.eat('/') {
                    match self.digits() {
                        Some(d) => d.parse().expect("digits"),
                        None => return self.err("expected denominator"),
                    }
                } else {
                    Integer::from(1)
                };
                if den == 0 {
                    return self.err("zero denominator");
                }
                Some(Rational::from((num, den)))
            }
            None => None,
        };
        let had_star = coeff.is_some() && self.eat('*');
        let (r, s, found) = self.mono()?;
        if coeff.is_none() && !found {
            return self.err("expected a term");
        }
        if had_star && !found {
            return self.err("expected a monomial after '*'");
        }
        Ok((r, s, coeff.unwrap_or_else(|| Rational::from(1))))
    }

    fn mono(&mut self) -> Result<(u32, i64, bool), ParseError> {
        let mut r: Option<i64> = None;
        let mut s: Option<i64> = None;
        loop {
            let save = self.pos;
            let starred = (r.is_some() || s.is_some()) && self.eat('*');
            match self.peek() {
                Some('z') if s.is_none() => {
                    self.pos += 1;
                    s = Some(self.exponent(true)?);
                }
                Some('u') if r.is_none() => {
                    self.pos += 1;
                    r = Some(self.exponent(false)?);
                }
                _ => {
                    if starred {
                        self.pos = save;
                        return self.err("expected 'z' or 'u' after '*'");
                    }
                    break;
                }
            }
        }
        let found = r.is_some() || s.is_some();
        let r = r.unwrap_or(0);
        if r > u32::MAX as i64 {
            return self.err("exponent out of range");
        }
        Ok((r as u32, s.unwrap_or(0), found))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_serialises() {
        let p = ZuPoly::parse("z*u + 2*z^2*u").unwrap();
        assert_eq!(p.to_canonical(), "1*z*u + 2*z^2*u");
        let q = ZuPoly::parse(" -3/2 z^2 u - u z ").unwrap();
        assert_eq!(q.to_canonical(), "-1*z*u - 3/2*z^2*u");
        assert_eq!(ZuPoly::parse("u^2*z^-1").unwrap().to_canonical(), "1*z^-1*u^2");
        assert_eq!(ZuPoly::parse("zu - zu").unwrap().to_canonical(), "0");
        assert_eq!(ZuPoly::parse("5").unwrap().to_canonical(), "5");
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "z*", "1/0*u", "z^", "x", "u+", "2**u", "z z"] {
            assert!(ZuPoly::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_form_round_trips() {
        let p = ZuPoly::parse("7/3*u^3*z^-2 - z^4*u^2 + u").unwrap();
        assert_eq!(ZuPoly::parse(&p.to_canonical()).unwrap(), p);
    }
}
