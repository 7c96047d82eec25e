//! Rank-2 bundles on `Z_k` with vanishing first Chern class.
//!
//! Such a bundle with splitting type `j` is an extension of `O(-j)` by
//! `O(j)` with class `p = sum p_rs u^r z^s`, where `1 <= r <= (2j-2)/k` and
//! `kr - j + 1 <= s <= j - 1`. On the chart overlap its transition matrix is
//! `[[z^j, p], [0, z^-j]]`; a section `(a, b)` over the first chart maps to
//! `(z^j a + p b, z^-j b)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::linalg::RowSpace;
use crate::algebra::{Field, Rational, ZuPoly};
use crate::Error;

/// `(k, j, p)` with `p` in canonical support.
#[derive(Clone, PartialEq, Eq)]
pub struct CanonicalBundle {
    k: u32,
    j: u32,
    p: ZuPoly<Rational>,
}

/// Whether `u^r z^s` is an admissible extension slot.
pub fn in_support(k: u32, j: u32, r: u32, s: i64) -> bool {
    let (k, j, r) = (k as i64, j as i64, r as i64);
    r >= 1 && k * r <= 2 * j - 2 && k * r - j < s && s < j
}

/// All admissible slots `(r, s)`, in increasing order.
pub fn ext_slots(k: u32, j: u32) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    if j == 0 {
        return out;
    }
    let (ki, ji) = (k as i64, j as i64);
    let rmax = (2 * ji - 2).div_euclid(ki);
    for r in 1..=rmax {
        for s in (ki * r - ji + 1)..=(ji - 1) {
            out.push((r as u32, s));
        }
    }
    out
}

/// Number of admissible slots: `sum_{r=1}^{(2j-2)/k} (2j - 1 - kr)`.
pub fn ext_param_count(k: u32, j: u32) -> usize {
    if j == 0 {
        return 0;
    }
    let (ki, ji) = (k as i64, j as i64);
    let rmax = (2 * ji - 2).div_euclid(ki);
    (1..=rmax).map(|r| (2 * ji - 1 - ki * r) as usize).sum()
}

/// Checks the support of `p` and returns the bundle.
pub fn validate_extension_class(k: i64, j: i64, p: ZuPoly<Rational>) -> Result<CanonicalBundle, Error> {
    if k < 1 || k > u16::MAX as i64 {
        return Err(Error::InvalidK(k));
    }
    if j < 0 || j > u16::MAX as i64 {
        return Err(Error::InvalidJ(j));
    }
    let (k, j) = (k as u32, j as u32);
    if let Some((r, s, _)) = p.terms().find(|(r, s, _)| !in_support(k, j, *r, *s)) {
        return Err(Error::OutOfSupport { k, j, r, s });
    }
    Ok(CanonicalBundle { k, j, p })
}

impl CanonicalBundle {
    pub fn new(k: i64, j: i64, p: ZuPoly<Rational>) -> Result<Self, Error> {
        validate_extension_class(k, j, p)
    }

    /// Parses `p` and validates it.
    pub fn parse(k: i64, j: i64, p: &str) -> Result<Self, Error> {
        validate_extension_class(k, j, ZuPoly::parse(p)?)
    }

    /// `O(j) + O(-j)`.
    pub fn split(k: i64, j: i64) -> Result<Self, Error> {
        validate_extension_class(k, j, ZuPoly::zero())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn p(&self) -> &ZuPoly<Rational> {
        &self.p
    }

    pub fn is_split(&self) -> bool {
        self.p.is_zero()
    }

    /// Every monomial of `p` is regular on both charts, `0 <= s <= kr`.
    pub fn p_is_holomorphic(&self) -> bool {
        self.p.terms().all(|(r, s, _)| s >= 0 && s <= self.k as i64 * r as i64)
    }

    /// `p` with coefficients in another field, `None` when a denominator
    /// vanishes there.
    pub fn p_in<F: Field>(&self) -> Option<ZuPoly<F>> {
        self.p.map_coefficients(F::from_rational)
    }

    pub fn transition_matrix(&self) -> TransitionMatrix {
        transition_matrix(self)
    }

    pub fn splitting_class(&self) -> SplittingClass {
        SplittingClass { k: self.k, residue: self.j % self.k }
    }
}

impl fmt::Debug for CanonicalBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, j={}, p={})", self.k, self.j, self.p.to_canonical())
    }
}

/// `2x2` matrix over Laurent polynomials in `z` with polynomial `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub entries: [[ZuPoly<Rational>; 2]; 2],
}

pub fn transition_matrix(b: &CanonicalBundle) -> TransitionMatrix {
    let one = Rational::one();
    let j = b.j as i64;
    TransitionMatrix {
        entries: [
            [ZuPoly::monomial(0, j, one.clone()), b.p.clone()],
            [ZuPoly::zero(), ZuPoly::monomial(0, -j, one)],
        ],
    }
}

impl TransitionMatrix {
    pub fn det(&self) -> ZuPoly<Rational> {
        let e = &self.entries;
        e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det() == ZuPoly::monomial(0, 0, Rational::one())
    }

    /// Restriction to the zero section `u = 0`.
    pub fn restrict(&self) -> TransitionMatrix {
        let cut = |p: &ZuPoly<Rational>| ZuPoly::from_terms(p.at_u_zero().into_iter().map(|(s, c)| ((0, s), c)));
        TransitionMatrix {
            entries: [
                [cut(&self.entries[0][0]), cut(&self.entries[0][1])],
                [cut(&self.entries[1][0]), cut(&self.entries[1][1])],
            ],
        }
    }
}

type Laurent = BTreeMap<i64, Rational>;

/// The `j >= 0` with `E|_l = O(j) + O(-j)`: the largest `d` for which the
/// twist `E|_l(-d)` has a nonzero section.
///
/// A section of the twist is a polynomial pair `(a, b)` such that
/// `z^d T (a, b)` has no positive powers of `z`. Since `T^-1 = adj T`, the
/// degrees of `a` and `b` are at most `e - d`, where `e` is the top
/// exponent of `adj T`.
pub fn splitting_type(t: &TransitionMatrix) -> Result<u32, Error> {
    let t = t.restrict();
    if !t.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let m: Vec<Vec<Laurent>> = t.entries.iter().map(|row| row.iter().map(|p| p.at_u_zero()).collect()).collect();
    let top = m.iter().flatten().filter_map(|p| p.keys().next_back().copied()).max().unwrap_or(0);
    for d in (0..=top.max(0)).rev() {
        let bound = top - d;
        if bound < 0 {
            continue;
        }
        if has_twisted_section(&m, d, bound) {
            return Ok(d as u32);
        }
    }
    Ok(0)
}

fn has_twisted_section(m: &[Vec<Laurent>], d: i64, bound: i64) -> bool {
    let n = (bound + 1) as usize;
    // unknowns: a_0..a_bound, then b_0..b_bound
    let mut rows: BTreeMap<(usize, i64), Vec<(usize, Rational)>> = BTreeMap::new();
    for (row, entries) in m.iter().enumerate() {
        for (col, poly) in entries.iter().enumerate() {
            for (e, c) in poly {
                for deg in 0..=bound {
                    let out = e + deg + d;
                    if out > 0 {
                        rows.entry((row, out)).or_default().push((col * n + deg as usize, c.clone()));
                    }
                }
            }
        }
    }
    let mut rs = RowSpace::new();
    for (_, mut r) in rows {
        r.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::new();
        for (c, v) in r {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !Field::is_zero(v));
        rs.insert(&merged);
    }
    rs.rank() < 2 * n
}

/// Two elementary transformations along the zero section followed by a
/// twist: with frames `u^-1 e1`, `u e2` on the first chart and
/// `v e1`, `v^-1 e2` on the second (`v = z^k u`), the transition matrix
/// becomes `[[z^(j+k), z^k u^2 p], [0, z^-(j+k)]]`, again in canonical form.
pub fn elementary_transform(b: &CanonicalBundle) -> CanonicalBundle {
    let t = transition_matrix(b);
    let k = b.k as i64;
    let one = Rational::one();
    let v = ZuPoly::monomial(1, k, one.clone());
    let p = t.entries[0][1].mul(&v).shift(1, 0, &one);
    CanonicalBundle { k: b.k, j: b.j + b.k, p }
}

/// Bundles agree off the zero section iff their splitting types agree mod k.
pub fn iso_on_punctured(b1: &CanonicalBundle, b2: &CanonicalBundle) -> Result<bool, Error> {
    if b1.k != b2.k {
        return Err(Error::MismatchedK(b1.k, b2.k));
    }
    Ok(b1.j % b1.k == b2.j % b2.k)
}

/// Trivial off the zero section, i.e. `k | j`.
pub fn is_instanton(b: &CanonicalBundle) -> bool {
    b.j.is_multiple_of(b.k)
}

/// Splitting type modulo `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplittingClass {
    pub k: u32,
    pub residue: u32,
}

/// Dimension `2j - k - 2` of the open stratum of bundles with splitting
/// type `j >= k`. A negative value means the stratum is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuliDim {
    pub value: i64,
    pub empty_stratum: bool,
}

pub fn moduli_dim(k: u32, j: u32) -> Result<ModuliDim, Error> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if j < k {
        return Err(Error::SplitAndRigid { k, j });
    }
    let value = 2 * j as i64 - k as i64 - 2;
    Ok(ModuliDim { value, empty_stratum: value < 0 })
}
