//! The cone ring `S = C[x0..xk]/I` of `X_k` and finitely presented
//! modules over it.
//!
//! Quotient-ring arithmetic is never done directly: every computation runs
//! in the polynomial ring with `I * e_c` adjoined.

use std::fmt;
use std::sync::Arc;

use crate::algebra::groebner::{reduce_mod_ideal, reduce_vector_mod_ideal};
use crate::algebra::{
    groebner_modulo, ideal_groebner, kernel, lift, Field, FreeModule, FreeVector, GroebnerBasis, IncrementalBasis,
    ModuleOrder, Monomial, Polynomial, ZuPoly,
};
use crate::Error;

struct ConeData<F> {
    k: u32,
    relations: Vec<Polynomial<F>>,
    relation_index: Vec<(usize, usize)>,
    ideal_gb: Vec<Polynomial<F>>,
}

/// `S = C[x0..xk] / (x_i x_{i+t} - x_{i+1} x_{i+t-1})`. Cheap to clone.
#[derive(Clone)]
pub struct ConeRing<F> {
    inner: Arc<ConeData<F>>,
}

/// The cone ring for a given `k >= 1`.
pub fn cone_ring<F: Field>(k: i64) -> Result<ConeRing<F>, Error> {
    if k < 1 || k > u16::MAX as i64 {
        return Err(Error::InvalidK(k));
    }
    Ok(ConeRing::new(k as u32))
}

impl<F: Field> ConeRing<F> {
    fn new(k: u32) -> Self {
        let n = k as usize + 1;
        let x = |i| Polynomial::<F>::var(n, i);
        let mut relations = Vec::new();
        let mut relation_index = Vec::new();
        for t in 2..=k as usize {
            for i in 0..=(k as usize - t) {
                relations.push(&(&x(i) * &x(i + t)) - &(&x(i + 1) * &x(i + t - 1)));
                relation_index.push((i, t));
            }
        }
        let ideal_gb = ideal_groebner(n, &relations);
        ConeRing { inner: Arc::new(ConeData { k, relations, relation_index, ideal_gb }) }
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Number of variables `x0..xk`.
    pub fn nvars(&self) -> usize {
        self.inner.k as usize + 1
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(self.nvars(), i)
    }

    pub fn variable_names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| format!("x{i}")).collect()
    }

    /// Defining relations `x_i x_{i+t} - x_{i+1} x_{i+t-1}`.
    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.inner.relations
    }

    /// Relations in their natural form, e.g. `x0*x2 - x1^2`.
    pub fn relation_strings(&self) -> Vec<String> {
        let pw = |i: usize, j: usize| {
            if i == j {
                format!("x{i}^2")
            } else {
                format!("x{i}*x{j}")
            }
        };
        self.inner
            .relation_index
            .iter()
            .map(|&(i, t)| format!("{} - {}", pw(i, i + t), pw(i + 1, i + t - 1)))
            .collect()
    }

    /// Grevlex Gröbner basis of the defining ideal.
    pub fn ideal_gb(&self) -> &[Polynomial<F>] {
        &self.inner.ideal_gb
    }

    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce_mod_ideal(f, self.ideal_gb())
    }

    pub fn reduce_vector(&self, v: &FreeVector<F>) -> FreeVector<F> {
        reduce_vector_mod_ideal(v, self.ideal_gb())
    }

    pub fn is_zero(&self, f: &Polynomial<F>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Substitution `x_i -> z^i u`.
    pub fn pi_pullback(&self, f: &Polynomial<F>) -> ZuPoly<F> {
        let mut out = ZuPoly::zero();
        for (m, c) in f.terms() {
            let (r, s) = weight(m);
            out.add_term(r, s, c.clone());
        }
        out
    }

    /// A monomial pulling back to `u^r z^s`; requires `0 <= s <= k r`.
    pub fn monomial_for(&self, r: u32, s: i64) -> Monomial {
        let k = self.k() as i64;
        assert!(s >= 0 && s <= k * r as i64, "u^{r} z^{s} is not in the cone");
        let mut exps = vec![0u16; self.nvars()];
        if r == 0 {
            return Monomial::from_exponents(&exps);
        }
        let q = s / k;
        let rem = s % k;
        exps[self.k() as usize] += q as u16;
        if rem == 0 {
            exps[0] += (r as i64 - q) as u16;
        } else {
            exps[rem as usize] += 1;
            exps[0] += (r as i64 - q - 1) as u16;
        }
        Monomial::from_exponents(&exps)
    }
}

/// `(u-degree, z-degree)` of the pullback of a monomial.
pub fn weight(m: &Monomial) -> (u32, i64) {
    let mut r = 0u32;
    let mut s = 0i64;
    for (i, &e) in m.exponents().iter().enumerate() {
        r += e as u32;
        s += i as i64 * e as i64;
    }
    (r, s)
}

impl<F: Field> fmt::Debug for ConeRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConeRing(k={})", self.k())
    }
}

/// `S^n / (relations)` over a cone ring.
#[derive(Clone)]
pub struct FPModule<F> {
    ring: ConeRing<F>,
    ngens: usize,
    relations: Vec<FreeVector<F>>,
    labels: Vec<String>,
    degrees: Vec<i64>,
    minimal: bool,
}

impl<F: Field> FPModule<F> {
    /// Relations are reduced modulo the defining ideal; zero rows dropped.
    pub fn new(ring: &ConeRing<F>, ngens: usize, relations: Vec<FreeVector<F>>) -> Self {
        let relations = relations
            .iter()
            .map(|r| {
                assert_eq!(r.rank(), ngens, "relation has wrong length");
                ring.reduce_vector(r)
            })
            .filter(|r| !r.is_zero())
            .collect();
        FPModule {
            ring: ring.clone(),
            ngens,
            relations,
            labels: (0..ngens).map(|i| format!("g{i}")).collect(),
            degrees: vec![0; ngens],
            minimal: false,
        }
    }

    pub fn free(ring: &ConeRing<F>, n: usize) -> Self {
        Self::new(ring, n, Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.ngens);
        self.labels = labels;
        self
    }

    pub fn with_degrees(mut self, degrees: Vec<i64>) -> Self {
        assert_eq!(degrees.len(), self.ngens);
        self.degrees = degrees;
        self
    }

    pub(crate) fn mark_minimal(mut self) -> Self {
        self.minimal = true;
        self
    }

    pub fn ring(&self) -> &ConeRing<F> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &[FreeVector<F>] {
        &self.relations
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Set only by `minimize_presentation`.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn space(&self) -> FreeModule {
        FreeModule::new(self.ring.nvars(), self.ngens)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        let names = self.ring.variable_names();
        self.relations.iter().map(|r| r.as_linear_form(&names, &self.labels)).collect()
    }

    /// Gröbner basis of the relations plus `I * S^n`.
    pub fn relation_basis(&self, order: ModuleOrder) -> GroebnerBasis<F> {
        groebner_modulo(self.space(), &self.relations, order, self.ring.ideal_gb())
    }

    /// Dimensions of the pieces of the degree filtration in degrees
    /// `0..=max_deg`, generator `i` having degree `degrees[i]`.
    pub fn hilbert_function(&self, max_deg: i64) -> Vec<usize> {
        self.relation_basis(ModuleOrder::Top { shifts: self.degrees.clone() }).standard_counts(max_deg)
    }

    /// Dimension over the base field.
    pub fn finite_length(&self) -> Result<usize, Error> {
        if self.ngens == 0 {
            return Ok(0);
        }
        self.relation_basis(ModuleOrder::Pot).quotient_dimension().ok_or(Error::NotFiniteLength)
    }

    /// Whether `v` (a combination of generators) is zero in the module.
    pub fn is_zero_element(&self, v: &FreeVector<F>) -> bool {
        self.relation_basis(ModuleOrder::Pot).contains(v).expect("rank checked")
    }
}

impl<F: Field> fmt::Debug for FPModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.labels.join(", "))?;
        let rels = self.relation_strings();
        if !rels.is_empty() {
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, ">")
    }
}

/// Hom-set data: the presentation of `Hom_S(M, S)` together with the
/// functionals `h_l in S^n` its generators stand for.
#[derive(Clone, Debug)]
pub struct Dual<F: Field> {
    pub module: FPModule<F>,
    pub functionals: Vec<FreeVector<F>>,
}

/// Drops generators lying in the span of earlier ones, after sorting by
/// degree, so graded inputs come out minimal.
pub fn prune_generators<F: Field>(ring: &ConeRing<F>, space: FreeModule, gens: Vec<FreeVector<F>>) -> Vec<FreeVector<F>> {
    let mut gens: Vec<FreeVector<F>> = gens.into_iter().map(|g| ring.reduce_vector(&g)).filter(|g| !g.is_zero()).collect();
    let degree = |v: &FreeVector<F>| v.entries().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    gens.sort_by_key(|g| (degree(g), g.entries().iter().map(|p| p.len()).sum::<usize>()));
    let mut basis = IncrementalBasis::new(space, ModuleOrder::Pot, ring.ideal_gb());
    gens.into_iter().filter(|g| basis.insert(g)).collect()
}

/// Syzygies over `S` of vectors in `S^m`.
pub fn syzygies<F: Field>(ring: &ConeRing<F>, rank: usize, gens: &[FreeVector<F>]) -> Vec<FreeVector<F>> {
    let target = FreeModule::new(ring.nvars(), rank);
    let ker = kernel(target, gens, &[], ring.ideal_gb());
    prune_generators(ring, FreeModule::new(ring.nvars(), gens.len()), ker)
}

/// `Hom_S(M, S)`: the `phi in S^n` killed by every relation.
pub fn hom_to_ring<F: Field>(m: &FPModule<F>) -> Dual<F> {
    let ring = m.ring();
    let n = m.ngens();
    let space = m.space();
    let functionals: Vec<FreeVector<F>> = if m.relations().is_empty() {
        (0..n).map(|i| space.basis(i)).collect()
    } else {
        let rels = m.relations();
        let target = FreeModule::new(ring.nvars(), rels.len());
        let columns: Vec<FreeVector<F>> = (0..n)
            .map(|i| FreeVector::from_entries(ring.nvars(), rels.iter().map(|r| r.entry(i).clone()).collect()))
            .collect();
        prune_generators(ring, space, kernel(target, &columns, &[], ring.ideal_gb()))
    };
    let relations = if functionals.is_empty() { Vec::new() } else { syzygies(ring, n, &functionals) };
    let q = functionals.len();
    let module = FPModule::new(ring, q, relations).with_labels((0..q).map(|i| format!("h{i}")).collect());
    Dual { module, functionals }
}

/// Homomorphism given by the images of the source generators, written in
/// the target generators.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    pub source: FPModule<F>,
    pub target: FPModule<F>,
    pub matrix: Vec<FreeVector<F>>,
}

impl<F: Field> ModuleMap<F> {
    /// Every source relation maps into the target relations.
    pub fn verify(&self) -> bool {
        let gb = self.target.relation_basis(ModuleOrder::Pot);
        let space = self.target.space();
        self.source.relations().iter().all(|rel| {
            let image = FreeVector::combination(space, rel.entries(), &self.matrix);
            gb.contains(&image).expect("rank checked")
        })
    }

    pub fn cokernel(&self) -> FPModule<F> {
        let mut rels = self.target.relations().to_vec();
        rels.extend(self.matrix.iter().cloned());
        FPModule::new(self.target.ring(), self.target.ngens(), rels)
            .with_labels(self.target.labels().to_vec())
            .with_degrees(self.target.degrees().to_vec())
    }
}

/// `M^vv` with the evaluation map `M -> M^vv`. Fails when the evaluation
/// map has a kernel, which happens exactly when `M` has torsion.
pub fn double_dual_with_ev<F: Field>(m: &FPModule<F>) -> Result<(FPModule<F>, ModuleMap<F>), Error> {
    let ring = m.ring();
    let dual = hom_to_ring(m);
    let q = dual.functionals.len();
    let bidual = hom_to_ring(&dual.module);
    let e = bidual.functionals.len();
    let dd = bidual.module.clone().with_labels((0..e).map(|i| format!("d{i}")).collect());
    // ev(e_i) = (h_1[i], ..., h_q[i])
    let images: Vec<FreeVector<F>> = (0..m.ngens())
        .map(|i| FreeVector::from_entries(ring.nvars(), dual.functionals.iter().map(|h| h.entry(i).clone()).collect()))
        .collect();
    let space_q = FreeModule::new(ring.nvars(), q);
    let lifted = if e == 0 {
        images.iter().map(|_| Some(Vec::new())).collect()
    } else {
        lift(space_q, &bidual.functionals, &images, ring.ideal_gb())
    };
    let mut matrix = Vec::with_capacity(m.ngens());
    for c in lifted {
        let c = c.ok_or_else(|| Error::CrossCheck("evaluation image outside the double dual".into()))?;
        matrix.push(FreeVector::from_entries(ring.nvars(), c));
    }
    if q > 0 {
        let ker = kernel(space_q, &images, &[], ring.ideal_gb());
        let gb = m.relation_basis(ModuleOrder::Pot);
        for v in &ker {
            if !gb.contains(v)? {
                return Err(Error::NotTorsionFree);
            }
        }
    } else if m.finite_length().is_err() || m.finite_length()? > 0 {
        return Err(Error::NotTorsionFree);
    }
    let ev = ModuleMap { source: m.clone(), target: dd.clone(), matrix };
    Ok((dd, ev))
}

/// Length of `M^vv / M`.
pub fn reflexive_defect<F: Field>(m: &FPModule<F>) -> Result<usize, Error> {
    let (_, ev) = double_dual_with_ev(m)?;
    ev.cokernel().finite_length()
}
