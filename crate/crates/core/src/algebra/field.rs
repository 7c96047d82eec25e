//! Coefficient fields.
//!
//! Everything above this module is generic over [`Field`]. Two fields are
//! provided: exact rationals ([`Rational`]) and the prime field [`Fp`] with
//! modulus `2^31 - 1`.

use std::fmt;

use rug::{Integer, Rational as GmpRational};

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = GmpRational;

pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short tag used in diagnostics.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn from_i64(n: i64) -> Self;
    /// Image of a rational number, `None` when the denominator is not invertible.
    fn from_rational(q: &Rational) -> Option<Self>;
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn is_one(&self) -> bool {
        *self.numer() == 1 && *self.denom() == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn inv(&self) -> Self {
        assert!(*self.numer() != 0, "inverse of zero");
        self.clone().recip()
    }
    fn div(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Modulus of [`Fp`]: the Mersenne prime `2^31 - 1`.
pub const PRIME: u64 = 2_147_483_647;

/// Element of GF(p) with `p = 2^31 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u32);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp((v % PRIME) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            e >>= 1;
        }
        Fp(acc as u32)
    }

    fn from_integer(n: &Integer) -> Self {
        let r = Integer::from(n.mod_u(PRIME as u32));
        Fp(r.to_u32().expect("residue fits"))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    const NAME: &'static str = "GF(2^31-1)";

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp::new(self.0 as u64 + rhs.0 as u64)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp::new(self.0 as u64 + PRIME - rhs.0 as u64)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp::new(self.0 as u64 * rhs.0 as u64)
    }
    fn neg(&self) -> Self {
        Fp::new(PRIME - self.0 as u64)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(PRIME - 2)
    }
    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(PRIME as i64) as u32)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let den = Fp::from_integer(q.denom());
        if den.is_zero() {
            return None;
        }
        let num = Fp::from_integer(q.numer());
        Some(num.mul(&den.inv()))
    }
}

/// Parses `n` or `n/d` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Integer = n.parse().ok()?;
    let d: Integer = d.parse().ok()?;
    if d == 0 {
        return None;
    }
    Some(Rational::from((n, d)))
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalised() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(*q.numer(), -3);
        assert_eq!(*q.denom(), 2);
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        for v in [1u64, 2, 3, 12345, PRIME - 1] {
            let x = Fp::new(v);
            assert_eq!(x.mul(&x.inv()), Fp::one());
        }
        assert_eq!(Fp::from_i64(-1), Fp::new(PRIME - 1));
    }

    #[test]
    fn rational_maps_into_prime_field() {
        let q = parse_rational("-3/4").unwrap();
        let x = Fp::from_rational(&q).unwrap();
        assert_eq!(x.mul(&Fp::from_i64(4)), Fp::from_i64(-3));
        let bad = Rational::from((1, PRIME));
        assert!(Fp::from_rational(&bad).is_none());
    }
}
