//! Buchberger's algorithm for submodules of free modules.
//!
//! Ideals are the rank-one case. Quotient rings `P/I` are handled by
//! adjoining `I * e_c` for every slot `c`; when the generators of `I` are
//! already a Gröbner basis their mutual S-pairs are skipped.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::vector::{FreeModule, FreeVector, Term};
use crate::error::AlgebraError;

/// Monomial order on a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position over term: a smaller slot index is larger; ties by grevlex.
    Pot,
    /// Term over position with degree shifts: weighted degree
    /// `deg(m) + shifts[pos]` first, then grevlex, then slot.
    Top { shifts: Vec<i64> },
}

impl ModuleOrder {
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        match self {
            ModuleOrder::Pot => b.pos.cmp(&a.pos).then_with(|| a.mon.grevlex_cmp(&b.mon)),
            ModuleOrder::Top { shifts } => {
                let wa = a.mon.degree() as i64 + shifts.get(a.pos).copied().unwrap_or(0);
                let wb = b.mon.degree() as i64 + shifts.get(b.pos).copied().unwrap_or(0);
                wa.cmp(&wb)
                    .then_with(|| a.mon.grevlex_cmp(&b.mon))
                    .then_with(|| b.pos.cmp(&a.pos))
            }
        }
    }

    fn shift(&self, pos: usize) -> i64 {
        match self {
            ModuleOrder::Pot => 0,
            ModuleOrder::Top { shifts } => shifts.get(pos).copied().unwrap_or(0),
        }
    }
}

/// Sparse module element with terms in strictly decreasing order.
#[derive(Clone, Debug)]
pub(crate) struct MVec<F> {
    terms: Vec<(Term, F)>,
}

impl<F: Field> MVec<F> {
    fn empty() -> Self {
        MVec { terms: Vec::new() }
    }

    pub(crate) fn from_vector(v: &FreeVector<F>, order: &ModuleOrder) -> Self {
        let mut terms: Vec<(Term, F)> = Vec::new();
        for (pos, p) in v.entries().iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((Term { pos, mon: m.clone() }, c.clone()));
            }
        }
        terms.sort_by(|a, b| order.cmp_terms(&b.0, &a.0));
        MVec { terms }
    }

    pub(crate) fn to_vector(&self, space: FreeModule) -> FreeVector<F> {
        let mut slots: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); space.rank];
        for (t, c) in &self.terms {
            slots[t.pos].push((t.mon.clone(), c.clone()));
        }
        // Within a slot both orders restrict to grevlex, so each slot is sorted.
        let entries = slots.into_iter().map(|ts| Polynomial::from_sorted(space.nvars, ts)).collect();
        FreeVector::from_entries(space.nvars, entries)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Term, F) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].1.inv();
        if inv.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c = c.mul(&inv);
        }
    }

    /// `self - c * m * other`.
    fn sub_scaled(&self, c: &F, m: &Monomial, other: &MVec<F>, order: &ModuleOrder) -> MVec<F> {
        let neg = c.neg();
        let scaled = other.terms.iter().map(|(t, a)| (Term { pos: t.pos, mon: &t.mon * m }, a.mul(&neg)));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = scaled.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ta, _)), Some((tb, _))) => order.cmp_terms(ta, tb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (t, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca.add(&cb);
                    if !s.is_zero() {
                        out.push((t, s));
                    }
                }
            }
        }
        MVec { terms: out }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    sugar: i64,
}

/// Incremental Buchberger completion.
pub(crate) struct Builder<F> {
    space: FreeModule,
    order: ModuleOrder,
    basis: Vec<MVec<F>>,
    in_block: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    weights: Vec<i64>,
    sugar: Vec<i64>,
}

impl<F: Field> Builder<F> {
    pub(crate) fn new(space: FreeModule, order: ModuleOrder) -> Self {
        let weights = (0..space.rank).map(|p| order.shift(p)).collect();
        Builder {
            space,
            order,
            basis: Vec::new(),
            in_block: Vec::new(),
            by_pos: vec![Vec::new(); space.rank],
            pairs: Vec::new(),
            weights,
            sugar: Vec::new(),
        }
    }

    /// Slot weights used for pair selection by sugar degree.
    pub(crate) fn with_weights(mut self, weights: Vec<i64>) -> Self {
        assert_eq!(weights.len(), self.space.rank);
        self.weights = weights;
        self
    }

    fn weighted_degree(&self, v: &MVec<F>) -> i64 {
        v.terms.iter().map(|(t, _)| t.mon.degree() as i64 + self.weights[t.pos]).max().unwrap_or(0)
    }

    /// Adjoins `g * e_c` for every slot `c` and every `g` in `ideal_gb`,
    /// which must be a grevlex Gröbner basis of an ideal.
    pub(crate) fn add_ideal_block(&mut self, ideal_gb: &[Polynomial<F>]) {
        for pos in 0..self.space.rank {
            for g in ideal_gb {
                let mut e = FreeVector::zero(self.space.nvars, self.space.rank);
                e.set(pos, g.clone());
                let v = MVec::from_vector(&e, &self.order);
                if !v.is_zero() {
                    let sugar = self.weighted_degree(&v);
                    self.push(v, true, sugar);
                }
            }
        }
    }

    fn find_reducer(&self, t: &Term, skip: Option<usize>) -> Option<usize> {
        self.by_pos[t.pos]
            .iter()
            .copied()
            .find(|&i| Some(i) != skip && self.basis[i].lead().0.mon.divides(&t.mon))
    }

    /// Full reduction. When `quotients` is given, records `(index, m, c)`
    /// for every step `v -= c * m * basis[index]`.
    fn reduce(&self, v: MVec<F>, full: bool, quotients: Option<&mut Vec<(usize, Monomial, F)>>) -> MVec<F> {
        self.reduce_skipping(v, full, quotients, None)
    }

    fn reduce_skipping(
        &self,
        mut v: MVec<F>,
        full: bool,
        mut quotients: Option<&mut Vec<(usize, Monomial, F)>>,
        skip: Option<usize>,
    ) -> MVec<F> {
        let mut done: Vec<(Term, F)> = Vec::new();
        while !v.is_zero() {
            let (t, c) = v.lead().clone();
            match self.find_reducer(&t, skip) {
                Some(i) => {
                    let g = &self.basis[i];
                    let m = g.lead().0.mon.quotient_of(&t.mon).expect("divisor");
                    let coef = c.div(&g.lead().1);
                    if let Some(q) = quotients.as_deref_mut() {
                        q.push((i, m.clone(), coef.clone()));
                    }
                    v = v.sub_scaled(&coef, &m, g, &self.order);
                }
                None => {
                    if !full {
                        let mut terms = done;
                        terms.extend(v.terms);
                        return MVec { terms };
                    }
                    done.push(v.terms.remove(0));
                }
            }
        }
        MVec { terms: done }
    }

    fn s_vector(&self, p: &Pair) -> MVec<F> {
        let gi = &self.basis[p.i];
        let gj = &self.basis[p.j];
        let mi = gi.lead().0.mon.quotient_of(&p.lcm.mon).unwrap();
        let mj = gj.lead().0.mon.quotient_of(&p.lcm.mon).unwrap();
        let ci = gi.lead().1.inv();
        let cj = gj.lead().1.inv();
        let left = MVec::empty().sub_scaled(&ci.neg(), &mi, gi, &self.order);
        left.sub_scaled(&cj, &mj, gj, &self.order)
    }

    fn push(&mut self, mut v: MVec<F>, block: bool, sugar: i64) {
        v.make_monic();
        let n = self.basis.len();
        let lt = v.lead().0.clone();
        // Gebauer-Möller update.
        let mut fresh: Vec<Pair> = Vec::new();
        for &i in &self.by_pos[lt.pos] {
            if block && self.in_block[i] {
                continue;
            }
            let lcm = Term { pos: lt.pos, mon: self.basis[i].lead().0.mon.lcm(&lt.mon) };
            let di = lcm.mon.degree() as i64 - self.basis[i].lead().0.mon.degree() as i64;
            let dn = lcm.mon.degree() as i64 - lt.mon.degree() as i64;
            let sugar = (self.sugar[i] + di).max(sugar + dn);
            fresh.push(Pair { i, j: n, lcm, sugar });
        }
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.lcm.pos != lt.pos || !lt.mon.divides(&p.lcm.mon) {
                return true;
            }
            let li = basis[p.i].lead().0.mon.lcm(&lt.mon);
            let lj = basis[p.j].lead().0.mon.lcm(&lt.mon);
            li == p.lcm.mon || lj == p.lcm.mon
        });
        let keep_m: Vec<bool> = fresh
            .iter()
            .map(|p| {
                !fresh.iter().any(|q| q.lcm.mon != p.lcm.mon && q.lcm.mon.divides(&p.lcm.mon))
            })
            .collect();
        let fresh: Vec<Pair> = fresh.into_iter().zip(keep_m).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        let mut seen: Vec<Monomial> = Vec::new();
        let rank_one = self.space.rank == 1;
        for p in &fresh {
            if seen.contains(&p.lcm.mon) {
                continue;
            }
            seen.push(p.lcm.mon.clone());
            let group: Vec<&Pair> = fresh.iter().filter(|q| q.lcm.mon == p.lcm.mon).collect();
            let coprime = rank_one
                && group.iter().any(|q| self.basis[q.i].lead().0.mon.is_coprime(&lt.mon));
            if !coprime {
                self.pairs.push(group[0].clone());
            }
        }
        self.by_pos[lt.pos].push(n);
        self.basis.push(v);
        self.in_block.push(block);
        self.sugar.push(sugar);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| self.order.cmp_terms(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn complete(&mut self) {
        while let Some(p) = self.select() {
            let s = self.s_vector(&p);
            let r = self.reduce(s, true, None);
            if !r.is_zero() {
                let sugar = p.sugar.max(self.weighted_degree(&r));
                self.push(r, false, sugar);
            }
        }
    }

    /// Adds generators and completes. Returns which of them were new,
    /// that is, not already in the span of the current basis.
    pub(crate) fn insert_all(&mut self, gens: Vec<MVec<F>>) -> Vec<bool> {
        let mut fresh = Vec::with_capacity(gens.len());
        for g in gens {
            let r = self.reduce(g, true, None);
            if r.is_zero() {
                fresh.push(false);
            } else {
                let sugar = self.weighted_degree(&r);
                self.push(r, false, sugar);
                self.complete();
                fresh.push(true);
            }
        }
        fresh
    }

    pub(crate) fn finish(self) -> GroebnerBasis<F> {
        let mut gb = self.finish_minimal();
        gb.interreduce();
        gb
    }

    /// Minimal but not interreduced basis.
    pub(crate) fn finish_minimal(mut self) -> GroebnerBasis<F> {
        self.complete();
        let Builder { space, order, basis, in_block, .. } = self;
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let ti = &basis[i].lead().0;
            let redundant = (0..basis.len()).any(|j| {
                if i == j {
                    return false;
                }
                let tj = &basis[j].lead().0;
                tj.divides(ti) && (tj != ti || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<MVec<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
        let blocks: Vec<bool> = keep.iter().map(|&i| in_block[i]).collect();
        GroebnerBasis::from_parts(space, order, minimal, blocks)
    }
}

/// A reduced Gröbner basis of a submodule of a free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    space: FreeModule,
    order: ModuleOrder,
    elems: Vec<MVec<F>>,
    in_block: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_parts(space: FreeModule, order: ModuleOrder, mut elems: Vec<MVec<F>>, blocks: Vec<bool>) -> Self {
        let mut idx: Vec<usize> = (0..elems.len()).collect();
        idx.sort_by(|&a, &b| order.cmp_terms(&elems[b].lead().0, &elems[a].lead().0));
        let mut sorted = Vec::with_capacity(elems.len());
        let mut in_block = Vec::with_capacity(elems.len());
        for &i in &idx {
            sorted.push(std::mem::replace(&mut elems[i], MVec::empty()));
            in_block.push(blocks[i]);
        }
        let mut by_pos = vec![Vec::new(); space.rank];
        for (i, e) in sorted.iter().enumerate() {
            by_pos[e.lead().0.pos].push(i);
        }
        GroebnerBasis { space, order, elems: sorted, in_block, by_pos }
    }

    fn as_builder(&self) -> Builder<F> {
        let mut b = Builder::new(self.space, self.order.clone());
        b.basis = self.elems.clone();
        b.in_block = self.in_block.clone();
        b.by_pos = self.by_pos.clone();
        b.sugar = self.elems.iter().map(|e| b.weighted_degree(e)).collect();
        b
    }

    fn interreduce(&mut self) {
        let builder = self.as_builder();
        let mut out = Vec::with_capacity(self.elems.len());
        for (i, e) in self.elems.iter().enumerate() {
            let head = MVec { terms: vec![e.lead().clone()] };
            let tail = MVec { terms: e.terms[1..].to_vec() };
            let tail = builder.reduce_skipping(tail, true, None, Some(i));
            let mut terms = head.terms;
            terms.extend(tail.terms);
            out.push(MVec { terms });
        }
        self.elems = out;
    }

    pub fn space(&self) -> FreeModule {
        self.space
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Basis elements, in decreasing order of leading term.
    pub fn elements(&self) -> Vec<FreeVector<F>> {
        self.elems.iter().map(|e| e.to_vector(self.space)).collect()
    }

    /// Elements not coming from an adjoined ideal block.
    pub fn proper_elements(&self) -> Vec<FreeVector<F>> {
        self.elems
            .iter()
            .zip(&self.in_block)
            .filter(|(_, b)| !**b)
            .map(|(e, _)| e.to_vector(self.space))
            .collect()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elems.iter().map(|e| e.lead().0.clone()).collect()
    }

    fn check_space(&self, f: &FreeVector<F>) -> Result<(), AlgebraError> {
        if f.rank() != self.space.rank || f.nvars() != self.space.nvars {
            return Err(AlgebraError::RankMismatch {
                expected: self.space.rank,
                found: f.rank(),
            });
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &FreeVector<F>) -> Result<FreeVector<F>, AlgebraError> {
        self.check_space(f)?;
        let r = self.as_builder().reduce(MVec::from_vector(f, &self.order), true, None);
        Ok(r.to_vector(self.space))
    }

    pub fn contains(&self, f: &FreeVector<F>) -> Result<bool, AlgebraError> {
        self.check_space(f)?;
        let r = self.as_builder().reduce(MVec::from_vector(f, &self.order), false, None);
        Ok(r.is_zero())
    }

    /// Division with quotients: returns `(q, r)` with `f = sum q_i g_i + r`.
    pub fn divide(&self, f: &FreeVector<F>) -> Result<(Vec<Polynomial<F>>, FreeVector<F>), AlgebraError> {
        self.check_space(f)?;
        let mut steps = Vec::new();
        let r = self.as_builder().reduce(MVec::from_vector(f, &self.order), true, Some(&mut steps));
        Ok((self.collect_quotients(steps), r.to_vector(self.space)))
    }

    fn collect_quotients(&self, steps: Vec<(usize, Monomial, F)>) -> Vec<Polynomial<F>> {
        let mut per: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); self.elems.len()];
        for (i, m, c) in steps {
            per[i].push((m, c));
        }
        per.into_iter().map(|ts| Polynomial::from_terms(self.space.nvars, ts)).collect()
    }

    /// Every S-vector of a pair with equal leading slot reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let b = self.as_builder();
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (ti, tj) = (&self.elems[i].lead().0, &self.elems[j].lead().0);
                if ti.pos != tj.pos {
                    continue;
                }
                let p = Pair { i, j, lcm: Term { pos: ti.pos, mon: ti.mon.lcm(&tj.mon) }, sugar: 0 };
                if !b.reduce(b.s_vector(&p), false, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Generators of the syzygies among the basis elements, one per pair
    /// with equal leading slot (Schreyer).
    pub fn syzygies(&self) -> Vec<FreeVector<F>> {
        let b = self.as_builder();
        let n = self.elems.len();
        let nvars = self.space.nvars;
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..j {
                let (ti, tj) = (&self.elems[i].lead().0, &self.elems[j].lead().0);
                if ti.pos != tj.pos {
                    continue;
                }
                let lcm = Term { pos: ti.pos, mon: ti.mon.lcm(&tj.mon) };
                let p = Pair { i, j, lcm: lcm.clone(), sugar: 0 };
                let mut steps = Vec::new();
                let r = b.reduce(b.s_vector(&p), true, Some(&mut steps));
                debug_assert!(r.is_zero());
                let mut q = self.collect_quotients(steps);
                let mi = ti.mon.quotient_of(&lcm.mon).unwrap();
                let mj = tj.mon.quotient_of(&lcm.mon).unwrap();
                let ci = self.elems[i].lead().1.inv();
                let cj = self.elems[j].lead().1.inv();
                for e in q.iter_mut() {
                    *e = -&*e;
                }
                q[i] = &q[i] + &Polynomial::term(mi, ci);
                q[j] = &q[j] - &Polynomial::term(mj, cj);
                let v = FreeVector::from_entries(nvars, q);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        out
    }

    fn lead_ideals(&self) -> Vec<Vec<Monomial>> {
        let mut per = vec![Vec::new(); self.space.rank];
        for e in &self.elems {
            let t = &e.lead().0;
            per[t.pos].push(t.mon.clone());
        }
        per
    }

    /// Dimension of the quotient `P^rank / span`, or `None` when infinite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        let nvars = self.space.nvars;
        let mut total = 0;
        for lts in self.lead_ideals() {
            if lts.iter().any(|m| m.is_one()) {
                continue;
            }
            for v in 0..nvars {
                if !lts.iter().any(|m| m.pure_power() == Some(v)) {
                    return None;
                }
            }
            let mut level = vec![Monomial::one(nvars)];
            while !level.is_empty() {
                total += level.len();
                level = next_standard_level(&level, &lts, nvars);
            }
        }
        Some(total)
    }

    /// Number of standard monomials in each weighted degree `0..=max_deg`,
    /// the weight of `m * e_c` being `deg m + shift_c` under the basis order.
    pub fn standard_counts(&self, max_deg: i64) -> Vec<usize> {
        let nvars = self.space.nvars;
        let mut counts = vec![0usize; (max_deg + 1).max(0) as usize];
        for (pos, lts) in self.lead_ideals().into_iter().enumerate() {
            let shift = self.order.shift(pos);
            if lts.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut level = vec![Monomial::one(nvars)];
            let mut deg = 0i64;
            while deg + shift <= max_deg && !level.is_empty() {
                if deg + shift >= 0 {
                    counts[(deg + shift) as usize] += level.len();
                }
                level = next_standard_level(&level, &lts, nvars);
                deg += 1;
            }
        }
        counts
    }
}

fn next_standard_level(level: &[Monomial], lts: &[Monomial], nvars: usize) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut next = Vec::new();
    for m in level {
        for v in 0..nvars {
            let n = m * &Monomial::var(nvars, v);
            if seen.contains(&n) || lts.iter().any(|l| l.divides(&n)) {
                continue;
            }
            seen.insert(n.clone());
            next.push(n);
        }
    }
    next
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner<F: Field>(space: FreeModule, gens: &[FreeVector<F>], order: ModuleOrder) -> GroebnerBasis<F> {
    groebner_modulo(space, gens, order, &[])
}

/// Reduced Gröbner basis of `span(gens) + I * P^rank`, where `ideal_gb` is
/// a grevlex Gröbner basis of `I`.
pub fn groebner_modulo<F: Field>(
    space: FreeModule,
    gens: &[FreeVector<F>],
    order: ModuleOrder,
    ideal_gb: &[Polynomial<F>],
) -> GroebnerBasis<F> {
    let weights = (0..space.rank).map(|p| order.shift(p)).collect();
    groebner_weighted(space, gens, order, ideal_gb, weights, true)
}

/// As [`groebner_modulo`], selecting pairs by sugar degree with the given
/// slot weights.
fn groebner_weighted<F: Field>(
    space: FreeModule,
    gens: &[FreeVector<F>],
    order: ModuleOrder,
    ideal_gb: &[Polynomial<F>],
    weights: Vec<i64>,
    reduced: bool,
) -> GroebnerBasis<F> {
    let mut b = Builder::new(space, order).with_weights(weights);
    b.add_ideal_block(ideal_gb);
    let gens: Vec<MVec<F>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.rank(), space.rank, "rank mismatch");
            MVec::from_vector(g, &b.order)
        })
        .collect();
    b.insert_all(gens);
    if reduced {
        b.finish()
    } else {
        b.finish_minimal()
    }
}

/// Grevlex Gröbner basis of an ideal, returned as polynomials.
pub fn ideal_groebner<F: Field>(nvars: usize, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let space = FreeModule::new(nvars, 1);
    let vs: Vec<FreeVector<F>> = gens.iter().map(|g| FreeVector::scalar(g.clone())).collect();
    groebner(space, &vs, ModuleOrder::Pot)
        .elements()
        .into_iter()
        .map(|v| v.into_entries().pop().unwrap())
        .collect()
}

/// Polynomial normal form against a grevlex ideal basis.
pub fn reduce_mod_ideal<F: Field>(p: &Polynomial<F>, ideal_gb: &[Polynomial<F>]) -> Polynomial<F> {
    if ideal_gb.is_empty() || p.is_zero() {
        return p.clone();
    }
    let nvars = p.nvars();
    let mut b = Builder::new(FreeModule::new(nvars, 1), ModuleOrder::Pot);
    for g in ideal_gb {
        let v = MVec::from_vector(&FreeVector::scalar(g.clone()), &b.order);
        b.by_pos[0].push(b.basis.len());
        b.basis.push(v);
        b.in_block.push(true);
        b.sugar.push(0);
    }
    let r = b.reduce(MVec::from_vector(&FreeVector::scalar(p.clone()), &b.order), true, None);
    r.to_vector(FreeModule::new(nvars, 1)).into_entries().pop().unwrap()
}

/// Entry-wise normal form of a vector modulo an ideal.
pub fn reduce_vector_mod_ideal<F: Field>(v: &FreeVector<F>, ideal_gb: &[Polynomial<F>]) -> FreeVector<F> {
    let entries = v.entries().iter().map(|p| reduce_mod_ideal(p, ideal_gb)).collect();
    FreeVector::from_entries(v.nvars(), entries)
}

/// Generators of `{ s : sum s_i columns[i] in span(extra) + I * P^m }`,
/// reduced modulo `I`. Columns and `extra` live in `P^m`.
pub fn kernel<F: Field>(
    target: FreeModule,
    columns: &[FreeVector<F>],
    extra: &[FreeVector<F>],
    ideal_gb: &[Polynomial<F>],
) -> Vec<FreeVector<F>> {
    let m = target.rank;
    let n = columns.len();
    let nvars = target.nvars;
    let aug = FreeModule::new(nvars, m + n);
    let mut gens = Vec::with_capacity(n + extra.len());
    for (i, c) in columns.iter().enumerate() {
        let mut entries = c.entries().to_vec();
        entries.extend((0..n).map(|l| if l == i { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }));
        gens.push(FreeVector::from_entries(nvars, entries));
    }
    for e in extra {
        let mut entries = e.entries().to_vec();
        entries.extend((0..n).map(|_| Polynomial::zero(nvars)));
        gens.push(FreeVector::from_entries(nvars, entries));
    }
    let mut weights = vec![0i64; m];
    weights.extend(columns.iter().map(|c| c.entries().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0) as i64));
    let gb = groebner_weighted(aug, &gens, ModuleOrder::Pot, ideal_gb, weights, true);
    let mut out = Vec::new();
    for (e, blk) in gb.elems.iter().zip(&gb.in_block) {
        if *blk || e.lead().0.pos < m {
            continue;
        }
        let v = e.to_vector(aug);
        let lower = FreeVector::from_entries(nvars, v.entries()[m..].to_vec());
        let lower = reduce_vector_mod_ideal(&lower, ideal_gb);
        if !lower.is_zero() {
            out.push(lower);
        }
    }
    out
}

/// Expresses each target as a combination of `gens` modulo `I`; `None`
/// when a target is outside the span.
pub fn lift<F: Field>(
    space: FreeModule,
    gens: &[FreeVector<F>],
    targets: &[FreeVector<F>],
    ideal_gb: &[Polynomial<F>],
) -> Vec<Option<Vec<Polynomial<F>>>> {
    let q = space.rank;
    let e = gens.len();
    let nvars = space.nvars;
    let aug = FreeModule::new(nvars, q + e);
    let aug_gens: Vec<FreeVector<F>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut entries = g.entries().to_vec();
            entries.extend((0..e).map(|l| if l == i { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }));
            FreeVector::from_entries(nvars, entries)
        })
        .collect();
    let mut weights = vec![0i64; q];
    weights.extend(gens.iter().map(|g| g.entries().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0) as i64));
    let gb = groebner_weighted(aug, &aug_gens, ModuleOrder::Pot, ideal_gb, weights, false);
    targets
        .iter()
        .map(|w| {
            let mut entries = w.entries().to_vec();
            entries.extend((0..e).map(|_| Polynomial::zero(nvars)));
            let r = gb.normal_form(&FreeVector::from_entries(nvars, entries)).ok()?;
            if r.entries()[..q].iter().any(|p| !p.is_zero()) {
                return None;
            }
            Some(r.entries()[q..].iter().map(|p| reduce_mod_ideal(&-p, ideal_gb)).collect())
        })
        .collect()
}

/// Incremental span membership: reports whether each inserted vector was
/// new. Used to discard redundant relations.
pub struct IncrementalBasis<F> {
    builder: Builder<F>,
}

impl<F: Field> IncrementalBasis<F> {
    pub fn new(space: FreeModule, order: ModuleOrder, ideal_gb: &[Polynomial<F>]) -> Self {
        let mut builder = Builder::new(space, order);
        builder.add_ideal_block(ideal_gb);
        builder.complete();
        IncrementalBasis { builder }
    }

    pub fn insert(&mut self, v: &FreeVector<F>) -> bool {
        let mv = MVec::from_vector(v, &self.builder.order);
        self.builder.insert_all(vec![mv])[0]
    }

    pub fn contains(&self, v: &FreeVector<F>) -> bool {
        let mv = MVec::from_vector(v, &self.builder.order);
        self.builder.reduce(mv, false, None).is_zero()
    }

    pub fn finish(self) -> GroebnerBasis<F> {
        self.builder.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;

    type P = Polynomial<Rational>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    fn minors_k3() -> Vec<P> {
        let v = |i| x(4, i);
        vec![
            &(&v(0) * &v(2)) - &(&v(1) * &v(1)),
            &(&v(0) * &v(3)) - &(&v(1) * &v(2)),
            &(&v(1) * &v(3)) - &(&v(2) * &v(2)),
        ]
    }

    #[test]
    fn zero_input_gives_empty_basis() {
        let space = FreeModule::new(2, 1);
        let gb = groebner::<Rational>(space, &[space.zero()], ModuleOrder::Pot);
        assert!(gb.is_empty());
    }

    #[test]
    fn twisted_cubic_minors() {
        let gens = minors_k3();
        let space = FreeModule::new(4, 1);
        let vs: Vec<_> = gens.iter().map(|g| FreeVector::scalar(g.clone())).collect();
        let gb = groebner(space, &vs, ModuleOrder::Pot);
        assert_eq!(gb.len(), 3);
        assert!(gb.verify_s_pairs());
        for v in &vs {
            assert!(gb.contains(v).unwrap());
        }
    }

    #[test]
    fn single_division_step() {
        let g = &(&x(3, 0) * &x(3, 2)) - &(&x(3, 1) * &x(3, 1));
        let space = FreeModule::new(3, 1);
        let gb = groebner(space, &[FreeVector::scalar(g)], ModuleOrder::Pot);
        let f = FreeVector::scalar(&x(3, 1) * &x(3, 1));
        let (q, r) = gb.divide(&f).unwrap();
        assert_eq!(r.entry(0).to_string(), "x0*x2");
        let back = FreeVector::combination(space, &q, &gb.elements()).add(&r);
        assert_eq!(back, f);
    }

    #[test]
    fn koszul_syzygy() {
        let space = FreeModule::new(2, 1);
        let gens = [FreeVector::scalar(x(2, 0)), FreeVector::scalar(x(2, 1))];
        let gb = groebner(space, &gens, ModuleOrder::Pot);
        let syz = gb.syzygies();
        assert_eq!(syz.len(), 1);
        assert!(FreeVector::combination(space, syz[0].entries(), &gb.elements()).is_zero());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let space = FreeModule::new(2, 2);
        let gb = groebner::<Rational>(space, &[space.basis(0)], ModuleOrder::Pot);
        assert!(gb.normal_form(&FreeVector::scalar(x(2, 0))).is_err());
    }

    #[test]
    fn kernel_of_two_variables() {
        let target = FreeModule::new(2, 1);
        let cols = [FreeVector::scalar(x(2, 0)), FreeVector::scalar(x(2, 1))];
        let ker = kernel(target, &cols, &[], &[]);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].dot(&[x(2, 0), x(2, 1)]), P::zero(2));
    }

    #[test]
    fn quotient_dimension_counts_standard_monomials() {
        // C[x0,x1,x2]/(x0^2, x1, x2) has basis 1, x0.
        let space = FreeModule::new(3, 1);
        let gens = [
            FreeVector::scalar(&x(3, 0) * &x(3, 0)),
            FreeVector::scalar(x(3, 1)),
            FreeVector::scalar(x(3, 2)),
        ];
        let gb = groebner(space, &gens, ModuleOrder::Pot);
        assert_eq!(gb.quotient_dimension(), Some(2));
        let partial = groebner(space, &gens[1..], ModuleOrder::Pot);
        assert_eq!(partial.quotient_dimension(), None);
    }
}
