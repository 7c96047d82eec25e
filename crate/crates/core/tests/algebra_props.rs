use proptest::prelude::*;

use localchi::algebra::{
    groebner, Field, Fp, FreeModule, FreeVector, ModuleOrder, Monomial, Polynomial, Rational, ZuPoly, PRIME,
};

type Q = Rational;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = Polynomial<Q>> {
    prop::collection::vec(((0u16..3, 0u16..2, 0u16..2), -5i64..=5), 0..4).prop_map(|terms| {
        Polynomial::from_terms(
            NVARS,
            terms.into_iter().map(|((a, b, c), v)| (Monomial::from_exponents(&[a, b, c]), Q::from(v))).collect(),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial<Q>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn fp() -> impl Strategy<Value = Fp> {
    (0..PRIME).prop_map(Fp::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(NVARS), a.clone());
    }

    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), Fp::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv()), Fp::one());
        }
    }

    #[test]
    fn rational_reduction_is_a_homomorphism(n1 in -50i64..50, d1 in 1i64..50, n2 in -50i64..50, d2 in 1i64..50) {
        let (x, y) = (Q::from((n1, d1)), Q::from((n2, d2)));
        let img = |q: &Q| Fp::from_rational(q).unwrap();
        prop_assert_eq!(img(&Field::mul(&x, &y)), img(&x).mul(&img(&y)));
        prop_assert_eq!(img(&Field::add(&x, &y)), img(&x).add(&img(&y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_basis_properties(gens in prop::collection::vec(nonzero_poly(), 1..4), f in poly()) {
        let space = FreeModule::new(NVARS, 1);
        let vecs: Vec<FreeVector<Q>> = gens.iter().cloned().map(FreeVector::scalar).collect();
        let gb = groebner(space, &vecs, ModuleOrder::Pot);
        prop_assert!(gb.verify_s_pairs());
        for g in &vecs {
            prop_assert!(gb.contains(g).unwrap());
        }
        let fv = FreeVector::scalar(f.clone());
        let nf = gb.normal_form(&fv).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        let (q, r) = gb.divide(&fv).unwrap();
        prop_assert_eq!(FreeVector::combination(space, &q, &gb.elements()).add(&r), fv.clone());
        // f - nf(f) lies in the ideal, and multiples of generators reduce to zero
        prop_assert!(gb.contains(&fv.sub(&nf)).unwrap());
        prop_assert!(gb.normal_form(&vecs[0].scale(&f)).unwrap().is_zero());
    }

    #[test]
    fn module_basis_properties(
        gens in prop::collection::vec((poly(), poly()), 1..4),
        f in (poly(), poly()),
        shift in 0i64..3,
    ) {
        let space = FreeModule::new(NVARS, 2);
        let vecs: Vec<FreeVector<Q>> = gens
            .into_iter()
            .map(|(a, b)| FreeVector::from_entries(NVARS, vec![a, b]))
            .filter(|v| !v.is_zero())
            .collect();
        prop_assume!(!vecs.is_empty());
        for order in [ModuleOrder::Pot, ModuleOrder::Top { shifts: vec![0, shift] }] {
            let gb = groebner(space, &vecs, order);
            prop_assert!(gb.verify_s_pairs());
            for g in &vecs {
                prop_assert!(gb.contains(g).unwrap());
            }
            let fv = FreeVector::from_entries(NVARS, vec![f.0.clone(), f.1.clone()]);
            let nf = gb.normal_form(&fv).unwrap();
            prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
            prop_assert!(gb.contains(&fv.sub(&nf)).unwrap());
            for s in gb.syzygies() {
                prop_assert!(FreeVector::combination(space, s.entries(), &gb.elements()).is_zero());
            }
        }
    }
}

proptest! {
    #[test]
    fn zu_canonical_form_round_trips(
        terms in prop::collection::vec(((0u32..4, -5i64..6), -9i64..=9, 1i64..5), 0..6),
    ) {
        let p: ZuPoly<Q> = ZuPoly::from_terms(terms.into_iter().map(|((r, s), n, d)| ((r, s), Q::from((n, d)))));
        let text = p.to_canonical();
        prop_assert_eq!(ZuPoly::parse(&text).unwrap(), p);
    }
}
