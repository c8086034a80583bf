use std::sync::Arc;

use finpoly::bij::TruncationConfig;
use finpoly::gen::{Gen, Shape};
use finpoly::json::{family_to_json, groupoid_to_json, input_to_json, parse_input, polynomial_to_json, Input};
use finpoly::poly::{search_equivalence, Caps};
use proptest::prelude::*;

fn reparse(text: &str) -> Input {
    parse_input(text, TruncationConfig::new(4)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groupoids_round_trip(seed in any::<u64>()) {
        let g = Gen::new(seed).small_groupoid();
        let text = groupoid_to_json(&g).to_string();
        let Input::Groupoid(back) = reparse(&text) else { panic!("not a groupoid") };
        prop_assert_eq!(&*back, &*g);
    }

    #[test]
    fn families_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let base = g.small_groupoid();
        let f = g.free_family(&base, 2);
        let text = family_to_json(&f).to_string();
        let Input::Family(back) = reparse(&text) else { panic!("not a family") };
        prop_assert_eq!(&*back, &f);
    }

    #[test]
    fn polynomials_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (a, b) = (g.small_groupoid(), g.small_groupoid());
        let p = Arc::new(g.polynomial(&a, &b, &Shape::default()));
        let text = polynomial_to_json(&p, None).to_string();
        let back = reparse(&text);
        prop_assert_eq!(input_to_json(&back).to_string(), text);
        let Input::Polynomial(q) = back else { panic!("not a polynomial") };
        prop_assert!(search_equivalence(&p, &q, &Caps::wide()).unwrap().is_found());
    }
}
