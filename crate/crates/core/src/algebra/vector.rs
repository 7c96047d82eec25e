use std::fmt;

use super::field::Field;
use super::monomial::{default_names, Monomial};
use super::poly::Polynomial;

/// A free module `P^rank` over the polynomial ring in `nvars` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub nvars: usize,
    pub rank: usize,
}

impl FreeModule {
    pub fn new(nvars: usize, rank: usize) -> Self {
        FreeModule { nvars, rank }
    }

    pub fn zero<F: Field>(&self) -> FreeVector<F> {
        FreeVector::zero(self.nvars, self.rank)
    }

    pub fn basis<F: Field>(&self, i: usize) -> FreeVector<F> {
        FreeVector::unit(self.nvars, self.rank, i)
    }
}

/// Element of a free module: one polynomial per slot.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeVector<F> {
    nvars: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> FreeVector<F> {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        FreeVector { nvars, entries: vec![Polynomial::zero(nvars); rank] }
    }

    pub fn unit(nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, rank);
        v.entries[i] = Polynomial::one(nvars);
        v
    }

    pub fn from_entries(nvars: usize, entries: Vec<Polynomial<F>>) -> Self {
        assert!(entries.iter().all(|p| p.nvars() == nvars), "variable count mismatch");
        FreeVector { nvars, entries }
    }

    /// A polynomial viewed as a vector of rank one.
    pub fn scalar(p: Polynomial<F>) -> Self {
        FreeVector { nvars: p.nvars(), entries: vec![p] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn space(&self) -> FreeModule {
        FreeModule::new(self.nvars, self.rank())
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial<F>> {
        self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial<F> {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, p: Polynomial<F>) {
        self.entries[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        FreeVector { nvars: self.nvars, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        FreeVector { nvars: self.nvars, entries }
    }

    pub fn scale(&self, f: &Polynomial<F>) -> Self {
        let entries = self.entries.iter().map(|a| a * f).collect();
        FreeVector { nvars: self.nvars, entries }
    }

    /// Dot product with a vector of polynomial coefficients.
    pub fn dot(&self, coeffs: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(self.rank(), coeffs.len(), "rank mismatch");
        let mut acc = Polynomial::zero(self.nvars);
        for (a, c) in self.entries.iter().zip(coeffs) {
            acc = &acc + &(a * c);
        }
        acc
    }

    /// `sum_i coeffs[i] * vectors[i]`.
    pub fn combination(space: FreeModule, coeffs: &[Polynomial<F>], vectors: &[FreeVector<F>]) -> Self {
        let mut acc = space.zero();
        for (c, v) in coeffs.iter().zip(vectors) {
            if !c.is_zero() {
                acc = acc.add(&v.scale(c));
            }
        }
        acc
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G> + Copy) -> Option<FreeVector<G>> {
        let entries = self.entries.iter().map(|p| p.map_coefficients(f)).collect::<Option<Vec<_>>>()?;
        Some(FreeVector { nvars: self.nvars, entries })
    }

    /// Writes the vector as a linear form in the given generator names,
    /// e.g. `x1*b0 - x0*b1`.
    pub fn as_linear_form(&self, var_names: &[String], gen_names: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, p) in self.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let text = p.display_with(var_names).to_string();
            let body = if p.len() == 1 {
                match p.as_constant() {
                    Some(c) if c.is_one() => gen_names[i].clone(),
                    _ => format!("{text}*{}", gen_names[i]),
                }
            } else {
                format!("({text})*{}", gen_names[i])
            };
            parts.push(body);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, part) in parts.into_iter().enumerate() {
            match (i, part.strip_prefix('-')) {
                (0, _) => out.push_str(&part),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&part);
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for FreeVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for FreeVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        f.write_str("(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", p.display_with(&names))?;
        }
        f.write_str(")")
    }
}

/// Monomial `m * e_pos` of a free module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub pos: usize,
    pub mon: Monomial,
}

impl Term {
    pub fn divides(&self, other: &Term) -> bool {
        self.pos == other.pos && self.mon.divides(&other.mon)
    }
}
