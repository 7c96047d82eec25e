use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::monomial::{default_names, Monomial};

/// Multivariate polynomial with terms kept in strictly decreasing grevlex
/// order. No stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: out }
    }

    /// Trusted constructor for already sorted, merged, nonzero terms.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.grevlex_cmp(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
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

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Constant coefficient if the polynomial has degree zero.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| m.grevlex_cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(t, a)| (t * m, a.mul(c))).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// `self + c * m * other`, by a single merge.
    pub fn add_scaled(&self, c: &F, m: &Monomial, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let scaled = other.terms.iter().map(|(t, a)| (t * m, a.mul(c)));
        Polynomial { nvars: self.nvars, terms: merge(self.terms.iter().cloned(), scaled) }
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map_or(0, |p| p.nvars);
        let mut acc = Polynomial::zero(target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let g = f(c)?;
            if !g.is_zero() {
                terms.push((m.clone(), g));
            }
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, names }
    }
}

/// Merges two descending term streams, summing equal monomials.
pub(crate) fn merge<F: Field>(
    a: impl Iterator<Item = (Monomial, F)>,
    b: impl Iterator<Item = (Monomial, F)>,
) -> Vec<(Monomial, F)> {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::new();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((ma, _)), Some((mb, _))) => ma.grevlex_cmp(mb),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, ca) = a.next().unwrap();
                let (_, cb) = b.next().unwrap();
                let c = ca.add(&cb);
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        Polynomial { nvars: self.nvars, terms: merge(self.terms.iter().cloned(), rhs.terms.iter().cloned()) }
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let neg = rhs.terms.iter().map(|(m, c)| (m.clone(), c.neg()));
        Polynomial { nvars: self.nvars, terms: merge(self.terms.iter().cloned(), neg) }
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().neg())
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, large);
        }
        acc
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a, F> {
    poly: &'a Polynomial<F>,
    names: &'a [String],
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let text = c.to_string();
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                m.fmt_with(self.names, f)?;
            }
        }
        Ok(())
    }
}
