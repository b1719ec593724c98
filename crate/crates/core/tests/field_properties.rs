use std::collections::BTreeMap;

use proptest::prelude::*;
use rankmetric::finite_field::{make_tower, Elem, FieldTower, Scalar};
use rankmetric::poly;
use rankmetric::FieldOps;

fn small_towers() -> Vec<(u32, u32, u32)> {
    vec![(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 1, 4), (7, 1, 2)]
}

/// Product by schoolbook multiplication of coordinate polynomials reduced
/// modulo the extension modulus; independent of the log/exp tables.
fn poly_product(t: &FieldTower, a: Elem, b: Elem) -> Elem {
    let mut r = poly::mulmod(&**t.base(), t.coords(a), t.coords(b), t.ext_modulus());
    r.resize(t.m(), Scalar(0));
    t.from_coords(&r).unwrap()
}

#[test]
fn multiplication_matches_polynomial_reduction() {
    for (p, e, m) in small_towers() {
        let t = make_tower(p, e, m).unwrap();
        for a in t.elements() {
            for b in t.elements() {
                assert_eq!(t.mul(a, b), poly_product(&t, a, b), "GF({p}^{e})^{m}: {a:?}·{b:?}");
            }
        }
    }
}

#[test]
fn frobenius_is_a_ring_homomorphism_of_order_m() {
    for (p, e, m) in small_towers() {
        let t = make_tower(p, e, m).unwrap();
        for a in t.elements() {
            assert_eq!(t.frobenius(a, m as i64), a);
            for b in t.elements() {
                let fa = t.frobenius(a, 1);
                let fb = t.frobenius(b, 1);
                assert_eq!(t.frobenius(t.add(a, b), 1), t.add(fa, fb));
                assert_eq!(t.frobenius(t.mul(a, b), 1), t.mul(fa, fb));
            }
        }
    }
}

#[test]
fn frobenius_matrix_has_order_dividing_m() {
    for (p, e, m) in small_towers() {
        let t = make_tower(p, e, m).unwrap();
        for a in t.elements() {
            let mut cur = a;
            for _ in 0..m {
                cur = t.apply_frobenius_matrix(cur);
            }
            assert_eq!(cur, a);
        }
    }
}

#[test]
fn trace_fibres_are_uniform() {
    for (p, e, m) in small_towers() {
        let t = make_tower(p, e, m).unwrap();
        let mut fibres: BTreeMap<Scalar, u32> = BTreeMap::new();
        for a in t.elements() {
            *fibres.entry(t.trace(a)).or_default() += 1;
        }
        assert_eq!(fibres.len() as u32, t.q());
        let expected = t.q().pow(m - 1);
        assert!(fibres.values().all(|&c| c == expected), "GF({p}^{e})^{m}: {fibres:?}");
    }
}

#[test]
fn trace_is_linear_and_frobenius_invariant() {
    let t = make_tower(3, 1, 3).unwrap();
    let base = t.base().clone();
    for a in t.elements() {
        assert_eq!(t.trace(t.frobenius(a, 1)), t.trace(a));
        for c in 0..t.q() {
            let scaled = t.mul(t.embed(Scalar(c)), a);
            assert_eq!(t.trace(scaled), base.mul(Scalar(c), t.trace(a)));
        }
    }
}

#[test]
fn larger_field_has_consistent_tables() {
    // 3^8 = 6561 elements: no tabulated addition, log/exp multiplication.
    let t = make_tower(3, 2, 4).unwrap();
    assert_eq!(t.order(), 6561);
    let a = Elem(5000);
    let b = Elem(777);
    assert_eq!(t.mul(a, b), poly_product(&t, a, b));
    assert_eq!(t.mul(a, t.inv(a).unwrap()), t.one());
    assert_eq!(t.frobenius(a, 4), a);
}

fn gf81() -> FieldTower {
    FieldTower::new(3, 1, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_hold_on_random_triples(a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let t = gf81();
        let (a, b, c) = (Elem(a), Elem(b), Elem(c));
        prop_assert_eq!(t.mul(a, t.mul(b, c)), t.mul(t.mul(a, b), c));
        prop_assert_eq!(t.add(a, t.add(b, c)), t.add(t.add(a, b), c));
        prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        prop_assert_eq!(t.sub(t.add(a, b), b), a);
        if a.0 != 0 {
            prop_assert_eq!(t.mul(a, t.inv(a).unwrap()), t.one());
        }
    }
}
