use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{automorphism_generators, extend_homomorphism, FiniteGroupoid, GroupoidFunctor};

/// Default bound on the order of automorphism groups compared by
/// [`check_groupoid_equivalence`].
pub const DEFAULT_AUT_CAP: usize = 64;

/// An isomorphism `Aut_G(source_object) → Aut_H(target_object)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIso {
    pub source_object: usize,
    pub target_object: usize,
    /// `(a, iso(a))` for every automorphism `a`, sorted by `a`.
    pub pairs: Vec<(usize, usize)>,
}

impl GroupIso {
    pub fn apply(&self, a: usize) -> usize {
        match self.pairs.binary_search_by_key(&a, |p| p.0) {
            Ok(i) => self.pairs[i].1,
            Err(_) => panic!("{a} is not an automorphism of object {}", self.source_object),
        }
    }
}

/// Matching of components: `matches[c]` pairs component `c` of `G` with a
/// component of `H` and an isomorphism of their automorphism groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub matches: Vec<(usize, GroupIso)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceOutcome {
    Equivalent(EquivalenceWitness),
    NotEquivalent { invariant: String },
    CapExceeded { order: usize, cap: usize },
}

impl EquivalenceOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceOutcome::Equivalent(_))
    }
}

impl fmt::Display for EquivalenceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceOutcome::Equivalent(_) => write!(f, "equivalent"),
            EquivalenceOutcome::NotEquivalent { invariant } => {
                write!(f, "not equivalent: {invariant}")
            }
            EquivalenceOutcome::CapExceeded { order, cap } => {
                write!(f, "cap exceeded: automorphism group of order {order} (cap {cap})")
            }
        }
    }
}

fn element_order(g: &FiniteGroupoid, a: usize) -> usize {
    let mut k = 1;
    let mut p = a;
    while !g.is_identity(p) {
        p = g.compose(p, a);
        k += 1;
    }
    k
}

/// Decides whether `Aut_G(x) ≅ Aut_H(y)` by brute force over generator images.
pub fn group_isomorphism(g: &FiniteGroupoid, x: usize, h: &FiniteGroupoid, y: usize) -> Option<GroupIso> {
    let source = g.automorphisms(x);
    let target = h.automorphisms(y);
    if source.len() != target.len() {
        return None;
    }
    let gens = automorphism_generators(g, x);
    let orders: Vec<usize> = gens.iter().map(|&a| element_order(g, a)).collect();
    let candidates: Vec<Vec<usize>> =
        orders.iter().map(|&k| target.iter().copied().filter(|&b| element_order(h, b) == k).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_homomorphism(g, x, &gens, &images, h.identity(y), |a, b| h.compose(a, b)) {
            let mut hit = HashMap::with_capacity(map.len());
            if map.values().all(|&v| hit.insert(v, ()).is_none()) {
                let mut pairs: Vec<(usize, usize)> = map.into_iter().collect();
                pairs.sort_unstable();
                return Some(GroupIso { source_object: x, target_object: y, pairs });
            }
        }
        // Odometer over the candidate lists.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Decides `G ≃ H` by matching components whose automorphism groups are
/// isomorphic. Automorphism groups larger than `aut_cap` are refused.
pub fn check_groupoid_equivalence(g: &FiniteGroupoid, h: &FiniteGroupoid, aut_cap: usize) -> EquivalenceOutcome {
    let gc = g.components();
    let hc = h.components();
    for (grp, reps) in [(g, &gc.representatives), (h, &hc.representatives)] {
        if let Some(order) = reps.iter().map(|&r| grp.automorphisms(r).len()).find(|&o| o > aut_cap) {
            return EquivalenceOutcome::CapExceeded { order, cap: aut_cap };
        }
    }
    let mut g_orders: Vec<usize> = gc.representatives.iter().map(|&r| g.automorphisms(r).len()).collect();
    let mut h_orders: Vec<usize> = hc.representatives.iter().map(|&r| h.automorphisms(r).len()).collect();
    g_orders.sort_unstable();
    h_orders.sort_unstable();
    if g_orders != h_orders {
        return EquivalenceOutcome::NotEquivalent {
            invariant: format!("Aut orders {} vs {}", braces(&g_orders), braces(&h_orders)),
        };
    }
    let mut used = vec![false; hc.len()];
    let mut matches = Vec::with_capacity(gc.len());
    for &r in &gc.representatives {
        let found = hc.representatives.iter().enumerate().find_map(|(c, &s)| {
            if used[c] {
                return None;
            }
            group_isomorphism(g, r, h, s).map(|iso| (c, iso))
        });
        match found {
            Some((c, iso)) => {
                used[c] = true;
                matches.push((c, iso));
            }
            None => {
                return EquivalenceOutcome::NotEquivalent {
                    invariant: format!(
                        "automorphism group of object {r} (order {}) is not isomorphic to any unmatched component",
                        g.automorphisms(r).len()
                    ),
                }
            }
        }
    }
    let witness = EquivalenceWitness { matches };
    debug_assert!(witness.verify(g, h).is_ok());
    EquivalenceOutcome::Equivalent(witness)
}

fn braces(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl EquivalenceWitness {
    /// Independent check: the matching is a bijection of components and each
    /// group isomorphism is a bijective homomorphism.
    pub fn verify(&self, g: &FiniteGroupoid, h: &FiniteGroupoid) -> Result<(), String> {
        let gc = g.components();
        let hc = h.components();
        if self.matches.len() != gc.len() || gc.len() != hc.len() {
            return Err("component counts differ".into());
        }
        let mut seen = vec![false; hc.len()];
        for (c, (d, iso)) in self.matches.iter().enumerate() {
            if *d >= hc.len() || std::mem::replace(&mut seen[*d], true) {
                return Err(format!("component {d} of the target is matched twice"));
            }
            let (r, s) = (gc.representatives[c], hc.representatives[*d]);
            if iso.source_object != r || iso.target_object != s {
                return Err(format!("isomorphism for component {c} has the wrong endpoints"));
            }
            let dom: Vec<usize> = iso.pairs.iter().map(|p| p.0).collect();
            let mut img: Vec<usize> = iso.pairs.iter().map(|p| p.1).collect();
            img.sort_unstable();
            if dom != g.automorphisms(r) || img != h.automorphisms(s) {
                return Err(format!("isomorphism for component {c} is not a bijection"));
            }
            for &(a, fa) in &iso.pairs {
                for &(b, fb) in &iso.pairs {
                    if iso.apply(g.compose(a, b)) != h.compose(fa, fb) {
                        return Err(format!("isomorphism for component {c} breaks ({a}, {b})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The equivalence `G → H` sending each object to the matched
    /// representative.
    pub fn to_functor(&self, g: Arc<FiniteGroupoid>, h: Arc<FiniteGroupoid>) -> GroupoidFunctor {
        let gc = g.components().clone();
        let hc = h.components();
        let object_map: Vec<usize> =
            (0..g.object_count()).map(|x| hc.representatives[self.matches[gc.component_of[x]].0]).collect();
        let morphism_map: Vec<usize> = (0..g.morphism_count())
            .map(|f| {
                let (x, y) = (g.src(f), g.dst(f));
                let c = gc.component_of[x];
                // τ_y⁻¹ ∘ f ∘ τ_x is an automorphism of the representative.
                let inner = g.compose(g.inverse(gc.path_from_rep[y]), g.compose(f, gc.path_from_rep[x]));
                self.matches[c].1.apply(inner)
            })
            .collect();
        GroupoidFunctor::new(g, h, object_map, morphism_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let d2 = FiniteGroupoid::discrete(2);
        assert!(check_groupoid_equivalence(&d2, &d2, DEFAULT_AUT_CAP).is_equivalent());

        let z2 = FiniteGroupoid::cyclic(2);
        match check_groupoid_equivalence(&z2, &d2, DEFAULT_AUT_CAP) {
            EquivalenceOutcome::NotEquivalent { invariant } => {
                assert_eq!(invariant, "Aut orders {2} vs {1,1}")
            }
            other => panic!("unexpected {other:?}"),
        }

        let a = z2.coproduct(&FiniteGroupoid::discrete(1));
        let b = FiniteGroupoid::discrete(1).coproduct(&z2);
        let EquivalenceOutcome::Equivalent(w) = check_groupoid_equivalence(&a, &b, DEFAULT_AUT_CAP) else {
            panic!("expected equivalence");
        };
        assert_eq!(w.verify(&a, &b), Ok(()));
        let f = w.to_functor(Arc::new(a), Arc::new(b));
        assert_eq!(f.validate(), Ok(()));
        assert!(f.is_equivalence());
    }

    #[test]
    fn distinguishes_z4_from_klein() {
        let z4 = FiniteGroupoid::cyclic(4);
        let klein = FiniteGroupoid::cyclic(2).product(&FiniteGroupoid::cyclic(2));
        assert!(!check_groupoid_equivalence(&z4, &klein, DEFAULT_AUT_CAP).is_equivalent());
        assert!(group_isomorphism(&z4, 0, &z4, 0).is_some());
    }

    #[test]
    fn cap_is_reported() {
        let z5 = FiniteGroupoid::cyclic(5);
        assert_eq!(check_groupoid_equivalence(&z5, &z5, 4), EquivalenceOutcome::CapExceeded { order: 5, cap: 4 });
    }
}
