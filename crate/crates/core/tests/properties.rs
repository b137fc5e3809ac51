use elliptica::algebra::{bracket, ConstantsSource, LieElement, Sl2};
use elliptica::differential::omega_pairing;
use elliptica::ring::RingMonomial;
use elliptica::{Class, Poly, Rational, Ring, Symbol};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn coeff() -> impl Strategy<Value = Poly> {
    (-3i64..=3, 1i64..=3, 0u32..=1, -2i64..=2).prop_map(|(n, d, deg, bn)| {
        let base = Poly::ratio(n, d);
        &base + &Poly::symbol(Symbol::B).pow(deg).scale_int(bn)
    })
}

fn monomial() -> impl Strategy<Value = RingMonomial> {
    (-3i64..=3, any::<bool>()).prop_map(|(n, u)| if u { RingMonomial::tu(n) } else { RingMonomial::t(n) })
}

fn ring_element() -> impl Strategy<Value = Ring> {
    prop::collection::vec((monomial(), coeff()), 1..=3).prop_map(|terms| {
        let mut r = Ring::zero();
        for (m, c) in terms {
            r.add_term(m, c);
        }
        r
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((coeff(), 0u32..=2, 0u32..=1), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, kc, kl)| {
            let m = &Poly::symbol(Symbol::Chi0).pow(kc) * &Poly::symbol(Symbol::Lambda).pow(kl);
            &acc + &(&c * &m)
        })
    })
}

fn sl2() -> impl Strategy<Value = Sl2> {
    prop_oneof![Just(Sl2::E), Just(Sl2::H), Just(Sl2::F)]
}

fn lie_element() -> impl Strategy<Value = LieElement<Rational>> {
    prop::collection::vec((sl2(), ring_element()), 1..=2).prop_map(|parts| {
        parts
            .into_iter()
            .fold(LieElement::zero(), |acc, (x, r)| &acc + &LieElement::tensor(x, &r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_multiplication_is_commutative(a in ring_element(), b in ring_element()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn ring_multiplication_is_associative(a in ring_element(), b in ring_element(), c in ring_element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ring_multiplication_distributes(a in ring_element(), b in ring_element(), c in ring_element()) {
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
    }

    #[test]
    fn tau_is_an_involutive_ring_map(a in ring_element(), b in ring_element()) {
        prop_assert_eq!(a.tau().tau(), a.clone());
        prop_assert_eq!(a.mul(&b).tau(), a.tau().mul(&b.tau()));
    }

    #[test]
    fn specialize_is_a_ring_map(p in poly(), q in poly(), n in -4i64..=4, d in 1i64..=4) {
        let bind = [(Symbol::Chi0, rat(n, d))];
        prop_assert_eq!(
            (&p * &q).specialize(&bind),
            &p.specialize(&bind) * &q.specialize(&bind)
        );
        prop_assert_eq!(
            (&p + &q).specialize(&bind),
            &p.specialize(&bind) + &q.specialize(&bind)
        );
    }

    #[test]
    fn pairing_is_antisymmetric(f in ring_element(), g in ring_element()) {
        let sum = &omega_pairing(&f, &g) + &omega_pairing(&g, &f);
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn pairing_satisfies_the_cocycle_identity(f in ring_element(), g in ring_element(), h in ring_element()) {
        let total: Class = &(&omega_pairing(&f.mul(&g), &h) + &omega_pairing(&g.mul(&h), &f))
            + &omega_pairing(&h.mul(&f), &g);
        prop_assert!(total.is_zero(), "{}", total);
    }

    #[test]
    fn pairing_negates_under_tau(f in ring_element(), g in ring_element()) {
        let sum = &omega_pairing(&f.tau(), &g.tau()) + &omega_pairing(&f, &g);
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn bracket_is_skew(a in lie_element(), b in lie_element()) {
        let ab = bracket(&a, &b, ConstantsSource::Oracle);
        let ba = bracket(&b, &a, ConstantsSource::Oracle);
        let sum = &ab + &ba;
        prop_assert!(sum.is_zero(), "{}", sum);
    }
}
