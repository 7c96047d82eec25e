//! Presentation of `M = pi_* E` over the cone ring.
//!
//! Sections of `E` near the zero section are pairs `(a, b)` of polynomials
//! in `z, u` such that `f = z^j a + p b` and `z^-j b` are regular on the
//! second chart, i.e. contain no `u^r z^s` with `s > kr`. The section space
//! is filtered by `u`-degree; generators at level `d` span a complement of
//! what the lower levels already produce.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::linalg::{RowSpace, SparseVec};
use crate::algebra::{kernel, Field, FreeModule, FreeVector, IncrementalBasis, ModuleOrder, Polynomial, ZuPoly};
use crate::bundle::CanonicalBundle;
use crate::cone::{cone_ring, reflexive_defect, ConeRing, FPModule};
use crate::{ComputeOptions, Error, Truncation};

/// Coefficient symbol of a generic section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Coefficient of `u^r z^s` in `a`.
    A { r: u32, s: i64 },
    /// Coefficient of `u^r z^s` in `b`.
    B { r: u32, s: i64 },
}

impl Symbol {
    pub fn level(&self) -> u32 {
        match *self {
            Symbol::A { r, .. } | Symbol::B { r, .. } => r,
        }
    }

    fn shifted(&self, s_shift: i64) -> Symbol {
        match *self {
            Symbol::A { r, s } => Symbol::A { r: r + 1, s: s + s_shift },
            Symbol::B { r, s } => Symbol::B { r: r + 1, s: s + s_shift },
        }
    }
}

/// Symbol table for `a = sum a_rs u^r z^s`, `b = sum b_rs u^r z^s` with
/// `r <= rmax` and `0 <= s <= kr + j`. The bound on `b` makes `z^-j b`
/// regular; the same bound on `a` is never binding.
#[derive(Clone, Debug)]
pub struct GenericSection {
    k: u32,
    j: u32,
    rmax: Option<u32>,
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl GenericSection {
    pub fn new(k: u32, j: u32, rmax: u32) -> Self {
        let mut symbols = Vec::new();
        for r in 0..=rmax {
            for s in 0..=(k as i64 * r as i64 + j as i64) {
                symbols.push(Symbol::A { r, s });
            }
        }
        for r in 0..=rmax {
            for s in 0..=(k as i64 * r as i64 + j as i64) {
                symbols.push(Symbol::B { r, s });
            }
        }
        let index = symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        GenericSection { k, j, rmax: Some(rmax), symbols, index }
    }

    /// A scaffold without symbols.
    pub fn empty(k: u32, j: u32) -> Self {
        GenericSection { k, j, rmax: None, symbols: Vec::new(), index: HashMap::new() }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn rmax(&self) -> Option<u32> {
        self.rmax
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Section with the given symbol coordinates.
    pub fn section<F: Field>(&self, coords: &[(usize, F)], level: u32) -> Section<F> {
        let mut a = ZuPoly::zero();
        let mut b = ZuPoly::zero();
        for (i, c) in coords {
            match self.symbols[*i] {
                Symbol::A { r, s } => a.add_term(r, s, c.clone()),
                Symbol::B { r, s } => b.add_term(r, s, c.clone()),
            }
        }
        Section { a, b, level }
    }
}

/// One linear condition: the coefficient of `u^r z^s` in `f` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint<F> {
    pub r: u32,
    pub s: i64,
    pub coeffs: SparseVec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem<F> {
    pub constraints: Vec<Constraint<F>>,
}

impl<F: Field> ConstraintSystem<F> {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// The constraint at `u^r z^s`, if any.
    pub fn at(&self, r: u32, s: i64) -> Option<&Constraint<F>> {
        self.constraints.iter().find(|c| c.r == r && c.s == s)
    }
}

fn p_over<F: Field>(b: &CanonicalBundle) -> Result<ZuPoly<F>, Error> {
    b.p_in::<F>()
        .ok_or_else(|| Error::Unconfirmed("a coefficient of p has a denominator divisible by the prime".into()))
}

/// Vanishing conditions on the coefficients of `f = z^j a + p b` at every
/// `u^r z^s` with `s > kr`.
pub fn second_chart_constraints<F: Field>(
    b: &CanonicalBundle,
    g: &GenericSection,
) -> Result<ConstraintSystem<F>, Error> {
    let p = p_over::<F>(b)?;
    let (k, j) = (b.k() as i64, b.j() as i64);
    let mut rows: BTreeMap<(u32, i64), BTreeMap<usize, F>> = BTreeMap::new();
    let mut put = |r: u32, s: i64, col: usize, c: F| {
        if s > k * r as i64 {
            let e = rows.entry((r, s)).or_default().entry(col).or_insert_with(F::zero);
            *e = e.add(&c);
        }
    };
    for (col, sym) in g.symbols().iter().enumerate() {
        match *sym {
            Symbol::A { r, s } => put(r, s + j, col, F::one()),
            Symbol::B { r, s } => {
                for (pr, ps, c) in p.terms() {
                    put(r + pr, s + ps, col, c.clone());
                }
            }
        }
    }
    let constraints = rows
        .into_iter()
        .filter_map(|((r, s), m)| {
            let coeffs: SparseVec<F> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            (!coeffs.is_empty()).then_some(Constraint { r, s, coeffs })
        })
        .collect();
    Ok(ConstraintSystem { constraints })
}

/// A section `(a, b)` of `E` over the first chart, with its filtration level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section<F: Field> {
    pub a: ZuPoly<F>,
    pub b: ZuPoly<F>,
    pub level: u32,
}

impl<F: Field> Section<F> {
    /// First component on the second chart, `z^j a + p b`.
    pub fn image(&self, j: u32, p: &ZuPoly<F>) -> ZuPoly<F> {
        self.a.shift(0, j as i64, &F::one()).add(&p.mul(&self.b))
    }

    /// Both components are regular on the second chart.
    pub fn is_regular(&self, k: u32, j: u32, p: &ZuPoly<F>) -> bool {
        let k = k as i64;
        let ok = |q: &ZuPoly<F>, shift: i64| q.terms().all(|(r, s, _)| s + shift <= k * r as i64);
        ok(&self.image(j, p), 0) && ok(&self.b, -(j as i64)) && self.a.terms().all(|(_, s, _)| s >= 0)
    }
}

/// `M` together with the sections its generators stand for.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub module: FPModule<F>,
    pub sections: Vec<Section<F>>,
    pub rmax: u32,
}

impl<F: Field> Presentation<F> {
    /// Same generators, degrees and relations.
    pub fn same_as(&self, other: &Presentation<F>) -> bool {
        self.sections == other.sections && self.module.relations() == other.module.relations()
    }
}

/// Presentation of `M` from sections of `u`-degree at most `rmax`.
pub fn build_presentation<F: Field>(b: &CanonicalBundle, rmax: u32) -> Result<Presentation<F>, Error> {
    if rmax < 1 {
        return Err(Error::InvalidTruncation(rmax));
    }
    let ring = cone_ring::<F>(b.k() as i64)?;
    let p = p_over::<F>(b)?;
    let g = GenericSection::new(b.k(), b.j(), rmax);
    let system = second_chart_constraints::<F>(b, &g)?;
    let k = b.k();

    let mut sections: Vec<Section<F>> = Vec::new();
    let mut previous: Vec<SparseVec<F>> = Vec::new();
    for d in 0..=rmax {
        let level_space = sections_up_to(&g, &system, d);
        let mut span = RowSpace::new();
        for v in &previous {
            span.insert(v);
            for i in 0..=k as i64 {
                span.insert(&multiply(&g, v, i));
            }
        }
        for v in &level_space {
            let r = span.reduce(v);
            if !r.is_empty() {
                span.insert(&r);
                let sec = g.section(&r, d);
                if !sec.is_regular(k, b.j(), &p) {
                    return Err(Error::CrossCheck(format!("generator at level {d} is not a section")));
                }
                sections.push(sec);
            }
        }
        previous = level_space;
    }
    let module = relations_for(&ring, &sections)?;
    Ok(Presentation { module, sections, rmax })
}

/// Basis of the sections whose symbols all have level at most `d`.
fn sections_up_to<F: Field>(g: &GenericSection, system: &ConstraintSystem<F>, d: u32) -> Vec<SparseVec<F>> {
    let local: Vec<usize> = (0..g.len()).filter(|&i| g.symbols()[i].level() <= d).collect();
    let mut to_local = vec![usize::MAX; g.len()];
    for (l, &i) in local.iter().enumerate() {
        to_local[i] = l;
    }
    let mut rs = RowSpace::new();
    for c in &system.constraints {
        let row: SparseVec<F> =
            c.coeffs.iter().filter(|(i, _)| to_local[*i] != usize::MAX).map(|(i, v)| (to_local[*i], v.clone())).collect();
        if !row.is_empty() {
            rs.insert(&row);
        }
    }
    rs.nullspace(local.len())
        .into_iter()
        .map(|v| {
            let mut w: SparseVec<F> = v.into_iter().map(|(l, c)| (local[l], c)).collect();
            w.sort_by_key(|(i, _)| *i);
            w
        })
        .collect()
}

/// Action of `x_i = z^i u` on symbol coordinates.
fn multiply<F: Field>(g: &GenericSection, v: &[(usize, F)], i: i64) -> SparseVec<F> {
    let mut out: SparseVec<F> = v
        .iter()
        .map(|(c, a)| {
            let sym = g.symbols()[*c].shifted(i);
            (g.index_of(&sym).expect("shifted symbol in range"), a.clone())
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

/// Relations among the generators, computed exactly as the kernel of
/// `S^n -> S^2`, `e_i -> u^c (a_i, b_i)`. The shift `u^c` moves every
/// monomial into `S`, and it does not change the kernel because `S` is a
/// domain.
fn relations_for<F: Field>(ring: &ConeRing<F>, sections: &[Section<F>]) -> Result<FPModule<F>, Error> {
    let k = ring.k() as i64;
    let nvars = ring.nvars();
    let n = sections.len();
    let excess = |q: &ZuPoly<F>| q.terms().map(|(r, s, _)| s - k * r as i64).max().unwrap_or(0).max(0);
    let top = sections.iter().map(|s| excess(&s.a).max(excess(&s.b))).max().unwrap_or(0);
    let c = (top + k - 1) / k;
    let embed = |q: &ZuPoly<F>| {
        Polynomial::from_terms(nvars, q.terms().map(|(r, s, v)| (ring.monomial_for(r + c as u32, s), v.clone())).collect())
    };
    let columns: Vec<FreeVector<F>> =
        sections.iter().map(|sec| FreeVector::from_entries(nvars, vec![embed(&sec.a), embed(&sec.b)])).collect();
    let target = FreeModule::new(nvars, 2);
    let rels = if n == 0 { Vec::new() } else { kernel(target, &columns, &[], ring.ideal_gb()) };
    let rels = crate::cone::prune_generators(ring, FreeModule::new(nvars, n), rels);
    let degrees = sections.iter().map(|s| s.level as i64).collect();
    Ok(FPModule::new(ring, n, rels).with_degrees(degrees))
}

/// Removes generators that a relation with a unit entry expresses through
/// the others, then relations implied by the remaining ones.
pub fn minimize_presentation<F: Field>(m: &FPModule<F>) -> FPModule<F> {
    minimize_with_map(m).0
}

/// As [`minimize_presentation`], also returning the surviving generator
/// indices.
pub fn minimize_with_map<F: Field>(m: &FPModule<F>) -> (FPModule<F>, Vec<usize>) {
    let ring = m.ring().clone();
    let nvars = ring.nvars();
    let mut alive: Vec<usize> = (0..m.ngens()).collect();
    let mut rels: Vec<FreeVector<F>> = m.relations().to_vec();
    loop {
        let pivot = rels.iter().enumerate().find_map(|(ri, rel)| {
            alive.iter().position(|&g| matches!(rel.entry(g).as_constant(), Some(c) if !c.is_zero())).map(|a| (ri, a))
        });
        let Some((ri, a)) = pivot else { break };
        let g = alive[a];
        let rho = rels.remove(ri);
        let c = rho.entry(g).as_constant().unwrap();
        let cinv = Polynomial::constant(nvars, c.inv());
        rels = rels
            .into_iter()
            .map(|sigma| {
                let factor = &sigma.entry(g).clone() * &cinv;
                ring.reduce_vector(&sigma.sub(&rho.scale(&factor)))
            })
            .filter(|v| !v.is_zero())
            .collect();
        alive.remove(a);
    }
    let project = |v: &FreeVector<F>| FreeVector::from_entries(nvars, alive.iter().map(|&g| v.entry(g).clone()).collect());
    let mut rows: Vec<FreeVector<F>> = rels.iter().map(project).collect();
    let degree = |v: &FreeVector<F>| {
        v.entries().iter().zip(&alive).filter_map(|(p, &g)| p.total_degree().map(|d| d as i64 + m.degrees()[g])).max()
    };
    rows.sort_by_key(|v| (degree(v), v.entries().iter().map(|p| p.len()).sum::<usize>()));
    let space = FreeModule::new(nvars, alive.len());
    let mut basis = IncrementalBasis::new(space, ModuleOrder::Pot, ring.ideal_gb());
    rows.retain(|v| basis.insert(v));
    let module = FPModule::new(&ring, alive.len(), rows)
        .with_labels(alive.iter().map(|&g| m.labels()[g].clone()).collect())
        .with_degrees(alive.iter().map(|&g| m.degrees()[g]).collect())
        .mark_minimal();
    (module, alive)
}

impl<F: Field> Presentation<F> {
    pub fn minimized(&self) -> Presentation<F> {
        let (module, alive) = minimize_with_map(&self.module);
        Presentation { module, sections: alive.iter().map(|&i| self.sections[i].clone()).collect(), rmax: self.rmax }
    }
}

/// Starting bound `ceil(2j/k) + deg_u(p) + 1`.
pub fn default_bound(b: &CanonicalBundle) -> u32 {
    let (k, j) = (b.k(), b.j());
    (2 * j).div_ceil(k) + b.p().u_degree().unwrap_or(0) + 1
}

/// Result of the escalation loop.
#[derive(Clone, Debug)]
pub struct Stabilized<F: Field> {
    pub presentation: Presentation<F>,
    pub r_used: u32,
    pub stabilized: bool,
    pub width: usize,
    pub hilbert: Vec<usize>,
}

/// Builds presentations for `R = R0, R0 + 1, ...` until two consecutive
/// bounds give the same Hilbert function (in degrees `0..=R+1`) and the
/// same width. A fixed truncation skips the certificate.
pub fn stabilized_presentation<F: Field>(b: &CanonicalBundle, opts: &ComputeOptions) -> Result<Stabilized<F>, Error> {
    if let Truncation::Fixed(r) = opts.truncation {
        let pres = build_presentation::<F>(b, r)?.minimized();
        let width = reflexive_defect(&pres.module)?;
        let hilbert = pres.module.hilbert_function(r as i64 + 1);
        return Ok(Stabilized { presentation: pres, r_used: r, stabilized: false, width, hilbert });
    }
    let r0 = default_bound(b);
    let last = r0 + opts.increments();
    let mut current = build_presentation::<F>(b, r0)?.minimized();
    let mut current_width = reflexive_defect(&current.module)?;
    for r in r0..last {
        let next = build_presentation::<F>(b, r + 1)?.minimized();
        let h_cur = current.module.hilbert_function(r as i64 + 1);
        let h_next = next.module.hilbert_function(r as i64 + 1);
        let next_width = if next.same_as(&current) { current_width } else { reflexive_defect(&next.module)? };
        if h_cur == h_next && next_width == current_width {
            return Ok(Stabilized { presentation: current, r_used: r, stabilized: true, width: current_width, hilbert: h_cur });
        }
        current = next;
        current_width = next_width;
    }
    Err(Error::Stabilization { from: r0, to: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type Q = Rational;

    fn bundle(k: i64, j: i64, p: &str) -> CanonicalBundle {
        CanonicalBundle::parse(k, j, p).unwrap()
    }

    #[test]
    fn split_constraints_kill_high_a() {
        let b = CanonicalBundle::split(2, 3).unwrap();
        let g = GenericSection::new(2, 3, 2);
        let cs = second_chart_constraints::<Q>(&b, &g).unwrap();
        for c in &cs.constraints {
            assert_eq!(c.coeffs.len(), 1);
            let Symbol::A { r, s } = g.symbols()[c.coeffs[0].0] else { panic!("b symbol constrained") };
            assert!(s + 3 > 2 * r as i64);
            assert_eq!((c.r, c.s), (r, s + 3));
        }
    }

    #[test]
    fn constraint_mixes_a_and_b() {
        // z^2 a_{1,0} u + z u b_{0,1} z both land on u z^2
        let b = bundle(1, 2, "z*u");
        let g = GenericSection::new(1, 2, 2);
        let cs = second_chart_constraints::<Q>(&b, &g).unwrap();
        let c = cs.at(1, 2).unwrap();
        let mut syms: Vec<Symbol> = c.coeffs.iter().map(|(i, _)| g.symbols()[*i]).collect();
        syms.sort();
        assert_eq!(syms, vec![Symbol::A { r: 1, s: 0 }, Symbol::B { r: 0, s: 1 }]);
        let empty = GenericSection::empty(1, 2);
        assert!(second_chart_constraints::<Q>(&b, &empty).unwrap().is_empty());
    }

    #[test]
    fn trivial_bundle_is_free() {
        let b = CanonicalBundle::split(1, 0).unwrap();
        for r in 1..4 {
            let pres = build_presentation::<Q>(&b, r).unwrap();
            assert_eq!(pres.module.ngens(), 2);
            assert!(pres.module.relations().is_empty());
        }
        assert_eq!(build_presentation::<Q>(&b, 0).unwrap_err(), Error::InvalidTruncation(0));
    }

    #[test]
    fn minimal_instanton_has_four_generators() {
        let b = bundle(2, 2, "z*u");
        let pres = build_presentation::<Q>(&b, 3).unwrap().minimized();
        assert!(pres.module.is_minimal());
        assert_eq!(pres.module.ngens(), 4);
        let mut degrees = pres.module.degrees().to_vec();
        degrees.sort();
        assert_eq!(degrees, vec![0, 0, 1, 1]);
    }

    #[test]
    fn minimize_eliminates_explicit_multiple() {
        let s = cone_ring::<Q>(2).unwrap();
        // g1 = x0 g0, and the same relation twice
        let rel = FreeVector::from_entries(3, vec![s.var(0), -&Polynomial::one(3)]);
        let m = FPModule::new(&s, 2, vec![rel.clone(), rel]).with_degrees(vec![0, 1]);
        let min = minimize_presentation(&m);
        assert_eq!(min.ngens(), 1);
        assert!(min.relations().is_empty());
        assert_eq!(min.hilbert_function(4), m.hilbert_function(4));
    }

    #[test]
    fn stabilises_for_minimal_instanton() {
        let b = bundle(2, 2, "z*u");
        let st = stabilized_presentation::<Q>(&b, &ComputeOptions::default()).unwrap();
        assert!(st.stabilized);
        assert_eq!(st.width, 0);
    }
}
