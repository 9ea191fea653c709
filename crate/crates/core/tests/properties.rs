use std::sync::Arc;

use proptest::prelude::*;

use permod_core::cli::{parse_poly, render_poly};
use permod_core::ff::make_field;
use permod_core::permgrp::{alternating, cyclic, symmetric};
use permod_core::permod::{dim_by_translates, generated_submodule, verify_inequalities, ModVector};
use permod_core::poly::Poly;
use permod_core::uncertainty::gcd_criterion;
use permod_core::Field;

fn field_params() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![
        Just((2, 1)),
        Just((3, 1)),
        Just((5, 1)),
        Just((2, 2)),
        Just((3, 2)),
        Just((2, 3))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn poly_literal_round_trip((p, k) in field_params(), idx in prop::collection::vec(0u128..1000, 0..8)) {
        let f = make_field(p, k, None).unwrap();
        let coeffs = idx.iter().map(|i| f.element_at(i % f.order())).collect();
        let g = Poly::new(f.clone(), coeffs);
        prop_assert_eq!(parse_poly(&render_poly(&g), &f).unwrap(), g);
    }

    #[test]
    fn division_identity((p, k) in field_params(),
                         a in prop::collection::vec(0u128..64, 1..9),
                         b in prop::collection::vec(0u128..64, 1..5)) {
        let f = make_field(p, k, None).unwrap();
        let mk = |v: &[u128]| Poly::new(f.clone(), v.iter().map(|i| f.element_at(i % f.order())).collect());
        let (a, b) = (mk(&a), mk(&b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
    }

    #[test]
    fn support_dimension_bound(which in 0usize..4, q in prop_oneof![Just(2u64), Just(3), Just(5)],
                               raw in prop::collection::vec(0u64..5, 10)) {
        let g = Arc::new(match which {
            0 => cyclic(6).unwrap(),
            1 => symmetric(4).unwrap(),
            2 => alternating(5).unwrap(),
            _ => alternating(5).unwrap().pairs_action().unwrap(),
        });
        let n = g.degree();
        let f = make_field(q, 1, None).unwrap();
        let c: Vec<_> = raw[..n].iter().map(|&x| f.from_int(x as i64)).collect();
        prop_assume!(c.iter().any(|x| !f.is_zero(x)));
        let v = ModVector::new(g, f, c).unwrap();
        let r = verify_inequalities(&v).unwrap();
        prop_assert_eq!(r.d, dim_by_translates(&v).unwrap());
        prop_assert!(r.t * r.d >= n);
        prop_assert!(r.check().is_ok());
    }

    #[test]
    fn translates_stay_in_submodule(q in prop_oneof![Just(2u64), Just(3)], raw in prop::collection::vec(0u64..3, 5)) {
        let g = Arc::new(alternating(5).unwrap());
        let f = make_field(q, 1, None).unwrap();
        let c: Vec<_> = raw.iter().map(|&x| f.from_int(x as i64)).collect();
        prop_assume!(c.iter().any(|x| !f.is_zero(x)));
        let v = ModVector::new(g.clone(), f, c).unwrap();
        let m = generated_submodule(&v).unwrap();
        prop_assert!(m.is_closed());
        for s in g.generators() {
            prop_assert!(m.contains(v.translate(s).coeffs()));
        }
    }

    #[test]
    fn criterion_matches_cyclic_dimension(p in prop_oneof![Just(5u64), Just(7)], q in prop_oneof![Just(2u64), Just(3), Just(4)],
                                          raw in prop::collection::vec(0u128..16, 7)) {
        let f = permod_core::uncertainty::field_of_order(q).unwrap();
        let c: Vec<_> = raw[..p as usize].iter().map(|i| f.element_at(i % f.order())).collect();
        let poly = Poly::new(f.clone(), c.clone());
        prop_assume!(!poly.is_zero());
        let r = gcd_criterion(&poly, p).unwrap();
        let v = ModVector::new(Arc::new(cyclic(p as usize).unwrap()), f, c).unwrap();
        prop_assert_eq!(r.d(), dim_by_translates(&v).unwrap());
        prop_assert_eq!(r.t_plus_d, v.t() + r.d());
    }
}
