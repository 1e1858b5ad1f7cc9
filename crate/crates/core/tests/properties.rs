use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use vh_core::qnum::{bridge_check, t_binomial, t_factorial};
use vh_core::ring::{Assignment, Scalar};
use vh_core::{LaurentPoly, RingHom, VariableSet};

fn vars() -> Arc<VariableSet> {
    VariableSet::colored(2)
}

// q, tt, s1, s2 with small exponents and coefficients
fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, 4), -5i64..=5), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(&vars(), terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap())
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(&vars()), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in poly()) {
        let once = a.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(once, a.clone());
        prop_assert_eq!(LaurentPoly::parse(&vars(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn homomorphisms_respect_sum_and_product(a in poly(), b in poly()) {
        let v = vars();
        for h in [RingHom::bridge(&v), RingHom::unicolor(&v)] {
            prop_assert_eq!(h.apply(&(&a * &b)).unwrap(), &h.apply(&a).unwrap() * &h.apply(&b).unwrap());
            prop_assert_eq!(h.apply(&(&a + &b)).unwrap(), &h.apply(&a).unwrap() + &h.apply(&b).unwrap());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), q in 2i64..5, s in 2i64..5) {
        let assignment: Assignment = vh_core::ring::parse_assignment(&format!("q={q},tt=-{q},s1={s},s2=1/{s}")).unwrap();
        let ea = a.evaluate(&assignment).unwrap();
        let eb = b.evaluate(&assignment).unwrap();
        let prod = (&a * &b).evaluate(&assignment).unwrap();
        match (ea, eb, prod) {
            (Scalar::Rational(x), Scalar::Rational(y), Scalar::Rational(z)) => prop_assert_eq!(x * y, z),
            other => prop_assert!(false, "expected exact values, got {:?}", other),
        }
    }

    #[test]
    fn t_pascal(k in 1i64..10, l in 1i64..10) {
        prop_assume!(l < k);
        let v = vars();
        let tt = LaurentPoly::var_pow(&v, v.tt(), 1);
        // binom(k, l) = tt^l binom(k-1, l) + binom(k-1, l-1)
        let rhs = &(&tt.pow(l as u32) * &t_binomial(&v, k - 1, l).unwrap()) + &t_binomial(&v, k - 1, l - 1).unwrap();
        let lhs = t_binomial(&v, k, l).unwrap();
        let alt = &t_binomial(&v, k - 1, l).unwrap() + &(&tt.pow((k - l) as u32) * &t_binomial(&v, k - 1, l - 1).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, alt);
    }

    #[test]
    fn factorial_splits_through_binomial(k in 0i64..9, l in 0i64..9) {
        let v = vars();
        let lhs = t_factorial(&v, k + l).unwrap();
        let rhs = &(&t_factorial(&v, k).unwrap() * &t_factorial(&v, l).unwrap()) * &t_binomial(&v, k + l, l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bridge_identities(i in 0i64..=8, k in 0i64..=8, l in 0i64..=8) {
        prop_assert!(bridge_check(&vars(), i, k, l));
    }
}
