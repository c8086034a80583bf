use std::sync::Arc;

use finpoly::gen::Gen;
use finpoly::grpd::{check_groupoid_equivalence, validate_groupoid, DEFAULT_AUT_CAP};
use finpoly::{FiniteGroupoid, Grpd, Rational};
use proptest::prelude::*;

/// Brute force over every morphism map: is there a functor `g → h` that
/// is fully faithful and essentially surjective?
fn equivalent_by_search(g: &FiniteGroupoid, h: &FiniteGroupoid) -> bool {
    let (mg, mh) = (g.morphism_count(), h.morphism_count());
    if mg == 0 || mh == 0 {
        return g.object_count() == 0 && h.object_count() == 0;
    }
    let mut map = vec![0usize; mg];
    loop {
        if is_equivalence(g, h, &map) {
            return true;
        }
        let mut k = 0;
        while k < mg {
            map[k] += 1;
            if map[k] < mh {
                break;
            }
            map[k] = 0;
            k += 1;
        }
        if k == mg {
            return false;
        }
    }
}

fn is_equivalence(g: &FiniteGroupoid, h: &FiniteGroupoid, map: &[usize]) -> bool {
    let obj: Vec<usize> = (0..g.object_count()).map(|x| h.src(map[g.identity(x)])).collect();
    let functor = (0..g.object_count()).all(|x| map[g.identity(x)] == h.identity(obj[x]))
        && (0..g.morphism_count()).all(|f| h.src(map[f]) == obj[g.src(f)] && h.dst(map[f]) == obj[g.dst(f)])
        && g.compose_table().iter().all(|(&(a, b), &c)| h.compose(map[a], map[b]) == map[c]);
    if !functor {
        return false;
    }
    let faithful_full = (0..g.object_count()).all(|x| {
        (0..g.object_count()).all(|y| {
            let mut images: Vec<usize> = g.hom(x, y).iter().map(|&f| map[f]).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == g.hom(x, y).len() && images.len() == h.hom(obj[x], obj[y]).len()
        })
    });
    let surjective = (0..h.object_count()).all(|y| obj.iter().any(|&x| !h.hom(x, y).is_empty()));
    faithful_full && surjective
}

fn pair(seed: u64) -> (Grpd, Grpd) {
    let mut g = Gen::new(seed);
    let pick = |g: &mut Gen| {
        if g.below(3) == 0 {
            g.discrete(1, 3)
        } else {
            g.small_groupoid()
        }
    };
    (pick(&mut g), pick(&mut g))
}

fn brute_cardinality(g: &FiniteGroupoid) -> Rational {
    g.components()
        .representatives
        .iter()
        .fold(Rational::zero(), |acc, &r| acc + Rational::new(1, g.hom(r, r).len() as i128))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn equivalence_agrees_with_functor_search(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        let decided = check_groupoid_equivalence(&g, &h, DEFAULT_AUT_CAP).is_equivalent();
        prop_assert_eq!(decided, equivalent_by_search(&g, &h));
    }

    #[test]
    fn cardinality_is_additive_and_multiplicative(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        prop_assert_eq!(g.coproduct(&h).cardinality(), g.cardinality() + h.cardinality());
        prop_assert_eq!(g.product(&h).cardinality(), g.cardinality() * h.cardinality());
        prop_assert_eq!(g.cardinality(), brute_cardinality(&g));
    }

    #[test]
    fn equivalent_groupoids_have_equal_cardinality(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        let sum = Arc::new(g.coproduct(&h));
        let swapped = Arc::new(h.coproduct(&g));
        prop_assert!(check_groupoid_equivalence(&sum, &swapped, DEFAULT_AUT_CAP).is_equivalent());
        prop_assert_eq!(sum.cardinality(), swapped.cardinality());
        if check_groupoid_equivalence(&g, &h, DEFAULT_AUT_CAP).is_equivalent() {
            prop_assert_eq!(g.cardinality(), h.cardinality());
        }
    }

    #[test]
    fn constructions_validate(seed in any::<u64>()) {
        let (g, h) = pair(seed);
        prop_assert!(validate_groupoid(&g.coproduct(&h)).is_empty());
        prop_assert!(validate_groupoid(&g.product(&h)).is_empty());
        let n = 1 + (seed % 5) as usize;
        prop_assert!(validate_groupoid(&FiniteGroupoid::cyclic(n)).is_empty());
        prop_assert!(validate_groupoid(&FiniteGroupoid::codiscrete(n)).is_empty());
    }
}
