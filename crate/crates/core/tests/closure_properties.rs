use std::sync::Arc;

use finpoly::bij::{build_exp_set, TruncationConfig};
use finpoly::cart::{pair_poly, unpair_poly};
use finpoly::closure::{curry, support_exp, uncurry};
use finpoly::gen::{Gen, Shape};
use finpoly::poly::{
    enumerate_self_equivalences, is_finitary, search_equivalence, validate_polynomial, Caps, Polynomial, SearchOutcome,
};
use finpoly::Grpd;
use proptest::prelude::*;

const CAP: u64 = 1_000_000;

fn cfg() -> TruncationConfig {
    TruncationConfig::new(4)
}

fn shape() -> Shape {
    Shape { max_arity: 4, ..Shape::default() }
}

fn equivalent(p: &Polynomial, q: &Polynomial) -> bool {
    matches!(search_equivalence(p, q, &Caps::wide()), Ok(SearchOutcome::Found { .. }))
}

fn boundary(g: &mut Gen) -> (Grpd, Grpd, Grpd) {
    (g.small_groupoid(), g.small_groupoid(), g.small_groupoid())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn uncurry_after_curry(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (i, j, k) = boundary(&mut g);
        let p = g.curryable(&i, &j, &k, &shape(), cfg());
        let exp = support_exp(&p, i.object_count(), cfg()).unwrap();
        let c = curry(&p, i.object_count(), &exp).unwrap();
        prop_assert_eq!(validate_polynomial(&c), Ok(()));
        prop_assert!(is_finitary(&c).is_finitary());
        let back = uncurry(&c, &exp, &k).unwrap();
        prop_assert_eq!(validate_polynomial(&back), Ok(()));
        prop_assert!(equivalent(&back, &p));
    }

    #[test]
    fn curry_after_uncurry(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (i, j, k) = boundary(&mut g);
        let (exp, q) = g.exp_supported(&i, &j, &k, &shape(), cfg());
        let u = uncurry(&q, &exp, &k).unwrap();
        prop_assert_eq!(validate_polynomial(&u), Ok(()));
        prop_assert!(is_finitary(&u).is_finitary());
        let back = curry(&u, i.object_count(), &exp).unwrap();
        prop_assert!(equivalent(&back, &q));
    }

    #[test]
    fn currying_preserves_automorphism_counts(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (i, j, k) = boundary(&mut g);
        let p = g.curryable(&i, &j, &k, &shape(), cfg());
        let exp = support_exp(&p, i.object_count(), cfg()).unwrap();
        let c = curry(&p, i.object_count(), &exp).unwrap();
        let count = |q: &Polynomial| enumerate_self_equivalences(q, &Caps::wide()).map(|a| a.len());
        match (count(&p), count(&c)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(e), _) | (_, Err(e)) => prop_assert!(e.is_cap(), "{}", e),
        }
    }

    #[test]
    fn currying_respects_equivalence(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (i, j, k) = boundary(&mut g);
        let p = g.curryable(&i, &j, &k, &shape(), cfg());
        // The left projection of pair(P, P) is equivalent to P but not equal to it.
        let doubled = Arc::new(pair_poly(&p, &p).unwrap());
        let (left, _) = unpair_poly(&doubled, k.object_count(), CAP).unwrap();
        prop_assert!(equivalent(&left.poly, &p));
        let exp = support_exp(&p, i.object_count(), cfg()).unwrap();
        let c = curry(&p, i.object_count(), &exp).unwrap();
        let c2 = curry(&left.poly, i.object_count(), &exp).unwrap();
        match search_equivalence(&c2, &c, &Caps::wide()).unwrap() {
            SearchOutcome::Found { .. } | SearchOutcome::CapExceeded { .. } => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn set_level_exponential_loses_the_swap() {
    let square = finpoly::poly::monomial(2);
    let set = build_exp_set(square.source(), cfg());
    let c = curry(&square, 0, &set).unwrap();
    assert_eq!(enumerate_self_equivalences(&c, &Caps::wide()).unwrap().len(), 1);
    assert_eq!(enumerate_self_equivalences(&square, &Caps::wide()).unwrap().len(), 2);
}
