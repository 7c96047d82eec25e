use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u16; 8]>;

/// A power product `x_0^e_0 ... x_{n-1}^e_{n-1}`.
///
/// The total degree is cached; monomials over different numbers of
/// variables must never be compared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: SmallVec::from_slice(exps), deg }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exponents = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Single-variable power `x_i^e`, if this is one.
    pub fn pure_power(&self) -> Option<usize> {
        let mut support = self.exps.iter().enumerate().filter(|(_, e)| **e > 0);
        let first = support.next()?;
        if support.next().is_some() {
            None
        } else {
            Some(first.0)
        }
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    /// Writes the monomial using the given variable names; `1` for the unit.
    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.deg == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Mul for &Monomial {
    type Output = Monomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + rhs.deg }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let x0x2 = Monomial::from_exponents(&[1, 0, 1]);
        let x1sq = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(x1sq.grevlex_cmp(&x0x2), Ordering::Greater);
        let x0 = Monomial::var(3, 0);
        assert_eq!(x0.grevlex_cmp(&Monomial::var(3, 1)), Ordering::Greater);
        assert_eq!(x0.grevlex_cmp(&x1sq), Ordering::Less);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[0, 1, 3]);
        let l = a.lcm(&b);
        assert_eq!(l.exponents(), &[1, 2, 3]);
        assert_eq!(a.quotient_of(&l).unwrap().exponents(), &[0, 0, 3]);
        assert!(b.quotient_of(&a).is_none());
        assert!(!a.is_coprime(&b));
        assert_eq!(Monomial::from_exponents(&[0, 0, 4]).pure_power(), Some(2));
    }
}
