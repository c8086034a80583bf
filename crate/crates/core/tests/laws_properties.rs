use finpoly::laws::{run_law_suite, LawKind, Verdict};
use finpoly::poly::Caps;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_law_holds(seed in any::<u64>()) {
        let records = run_law_suite(seed, 1, &Caps::wide());
        prop_assert_eq!(records.len(), 5);
        for r in &records {
            prop_assert!(!matches!(r.verdict, Verdict::Fail(_)), "{} failed: {:?}", r.law, r.verdict);
        }
        let decided = |k| records.iter().any(|r| r.law == k && r.verdict == Verdict::Pass);
        prop_assert!(decided(LawKind::UnitL) && decided(LawKind::Assoc));
    }
}

#[test]
fn suite_is_reproducible() {
    assert_eq!(run_law_suite(11, 2, &Caps::default()), run_law_suite(11, 2, &Caps::default()));
}
