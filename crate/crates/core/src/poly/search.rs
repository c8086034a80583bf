use std::ops::ControlFlow;
use std::sync::Arc;

use super::morphism::reindexing;
use super::{Caps, PolyError, Polynomial, PolynomialMorphism};
use crate::fam::FamilyMorphism;
use crate::grpd::lift::{for_each_lift, LiftOptions, LiftOutcome};
use crate::grpd::{
    automorphism_generators, check_groupoid_equivalence, EquivalenceOutcome, GroupoidFunctor, Grpd, DEFAULT_AUT_CAP,
};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The witness goes from the first polynomial to the second.
    Forward,
    /// The witness goes from the second polynomial to the first.
    Backward,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found {
        witness: PolynomialMorphism,
        direction: Direction,
    },
    NotEquivalent {
        obstruction: String,
    },
    /// Exhaustive search in both directions found no strictly natural
    /// witness, and no invariant separates the polynomials.
    NoStrictWitness,
    CapExceeded {
        reason: String,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

#[derive(Debug)]
enum Stop {
    Cap(String),
}

/// Equivalences `from → to` that commute with each pair of actions:
/// `after ∘ η = η ∘ before`.
fn equivariant_equivalences(
    from: &Grpd,
    to: &Grpd,
    actions: &[(&GroupoidFunctor, &GroupoidFunctor)],
    first_only: bool,
    budget: u64,
) -> Result<Vec<GroupoidFunctor>, Stop> {
    let mut out = Vec::new();
    let options = LiftOptions { equivalences_only: true, budget };
    let outcome = for_each_lift(from, to, None, options, |objs, mors| {
        let ok = actions.iter().all(|(before, after)| {
            objs.iter().enumerate().all(|(x, &y)| after.obj(y) == objs[before.obj(x)])
                && mors.iter().enumerate().all(|(m, &n)| after.mor(n) == mors[before.mor(m)])
        });
        if ok {
            out.push(GroupoidFunctor::new(from.clone(), to.clone(), objs.to_vec(), mors.to_vec()));
            if first_only {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    match outcome {
        LiftOutcome::CapExceeded => Err(Stop::Cap(format!("more than {budget} candidate functors"))),
        _ => Ok(out),
    }
}

fn check_caps(g: &Grpd, caps: &Caps, what: &str) -> Result<(), Stop> {
    if caps.admits(g) {
        Ok(())
    } else {
        Err(Stop::Cap(format!(
            "{what} has {} objects and {} morphisms (caps {} and {})",
            g.object_count(),
            g.morphism_count(),
            caps.max_objects,
            caps.max_morphisms
        )))
    }
}

/// Per J-component choices: each admissible `η_r` with its parameter
/// candidates per base component lying over that J-component.
type ParamCandidates = Vec<(usize, Vec<GroupoidFunctor>)>;

struct ComponentChoices {
    options: Vec<(GroupoidFunctor, ParamCandidates)>,
}

/// Extends `η_r` over the J-component of `r` along the spanning tree.
fn extend_ops(
    p: &Polynomial,
    q: &Polynomial,
    eta_r: &GroupoidFunctor,
    members: &[usize],
) -> Vec<(usize, GroupoidFunctor)> {
    let j = p.target();
    let comps = j.components();
    members
        .iter()
        .map(|&x| {
            let tau = comps.path_from_rep[x];
            (x, p.ops().transport(j.inverse(tau)).then(eta_r).then(q.ops().transport(tau)))
        })
        .collect()
}

fn search(p: &Polynomial, q: &Polynomial, caps: &Caps, first_only: bool) -> Result<Vec<PolynomialMorphism>, Stop> {
    let (p_arc, q_arc) = (Arc::new(p.clone()), Arc::new(q.clone()));
    let j = p.target().clone();
    let jc = j.components();
    let base = p.params_base().clone();
    let bc = base.components();
    let mut per_component: Vec<ComponentChoices> = Vec::with_capacity(jc.len());
    for (c, &r) in jc.representatives.iter().enumerate() {
        check_caps(p.ops().fiber(r), caps, "an operation fiber")?;
        check_caps(q.ops().fiber(r), caps, "an operation fiber")?;
        let gens = automorphism_generators(&j, r);
        let actions: Vec<_> = gens.iter().map(|&g| (p.ops().transport(g), q.ops().transport(g))).collect();
        let etas = equivariant_equivalences(p.ops().fiber(r), q.ops().fiber(r), &actions, false, caps.candidates)?;
        let mut options = Vec::new();
        for eta_r in etas {
            // Operation components on this J-component, others as placeholders.
            let mut ops: Vec<GroupoidFunctor> = (0..j.object_count())
                .map(|x| {
                    GroupoidFunctor::new(p.ops().fiber(x).clone(), q.ops().fiber(x).clone(), Vec::new(), Vec::new())
                })
                .collect();
            for (x, f) in extend_ops(p, q, &eta_r, &jc.members[c]) {
                ops[x] = f;
            }
            let h = partial_reindexing(p, q, &ops, c);
            let mut per_base = Vec::new();
            let mut feasible = true;
            for (bcomp, &b) in bc.representatives.iter().enumerate() {
                let (_, o) = p.split_base_object(b);
                if jc.component_of[p.op(o).0] != c {
                    continue;
                }
                let hb = h.0[b];
                let (from, to) = (p.params().fiber(b), q.params().fiber(hb));
                check_caps(from, caps, "a parameter fiber")?;
                check_caps(to, caps, "a parameter fiber")?;
                let gens = automorphism_generators(&base, b);
                let actions: Vec<_> =
                    gens.iter().map(|&g| (p.params().transport(g), q.params().transport(h.1[g]))).collect();
                let zetas = equivariant_equivalences(from, to, &actions, first_only, caps.candidates)?;
                if zetas.is_empty() {
                    feasible = false;
                    break;
                }
                per_base.push((bcomp, zetas));
            }
            if feasible {
                options.push((eta_r, per_base));
                if first_only {
                    break;
                }
            }
        }
        if options.is_empty() {
            return Ok(Vec::new());
        }
        per_component.push(ComponentChoices { options });
    }

    // Enumerate the product of choices, first J-component slowest.
    let mut out = Vec::new();
    let mut choice: Vec<(usize, Vec<usize>)> =
        per_component.iter().map(|cc| (0, vec![0; cc.options[0].1.len()])).collect();
    loop {
        if out.len() as u64 >= caps.candidates {
            return Err(Stop::Cap(format!("more than {} witnesses", caps.candidates)));
        }
        out.push(assemble(&p_arc, &q_arc, &per_component, &choice));
        if first_only || !advance(&per_component, &mut choice) {
            return Ok(out);
        }
    }
}

/// Odometer over (η choice, ζ choices) per J-component; the last digit is fastest.
fn advance(per_component: &[ComponentChoices], choice: &mut [(usize, Vec<usize>)]) -> bool {
    for c in (0..per_component.len()).rev() {
        let opts = &per_component[c].options;
        let (eta, zetas) = &mut choice[c];
        let lists = &opts[*eta].1;
        for k in (0..zetas.len()).rev() {
            zetas[k] += 1;
            if zetas[k] < lists[k].1.len() {
                return true;
            }
            zetas[k] = 0;
        }
        *eta += 1;
        if *eta < opts.len() {
            *zetas = vec![0; opts[*eta].1.len()];
            return true;
        }
        *eta = 0;
        *zetas = vec![0; opts[0].1.len()];
    }
    false
}

/// Object and morphism maps of the reindexing `I × tot(ops_P) → I × tot(ops_Q)`,
/// correct on the part lying over J-component `c`.
fn partial_reindexing(p: &Polynomial, q: &Polynomial, ops: &[GroupoidFunctor], c: usize) -> (Vec<usize>, Vec<usize>) {
    let j = p.target();
    let jc = j.components();
    let (pt, qt) = (p.ops_total(), q.ops_total());
    let base = p.params_base();
    let over_c = |x: usize| jc.component_of[x] == c;
    let objects = (0..base.object_count())
        .map(|b| {
            let (i, o) = p.split_base_object(b);
            let (x, a) = pt.object(o);
            if over_c(x) {
                q.base_object(i, qt.object_index(x, ops[x].obj(a)))
            } else {
                usize::MAX
            }
        })
        .collect();
    let morphisms = (0..base.morphism_count())
        .map(|m| {
            let (u, k) = p.split_base_morphism(m);
            let (f, phi) = pt.morphism(k);
            let y = j.dst(f);
            if over_c(y) {
                q.base_morphism(u, qt.morphism_index(f, ops[y].mor(phi)))
            } else {
                usize::MAX
            }
        })
        .collect();
    (objects, morphisms)
}

fn assemble(
    p: &Arc<Polynomial>,
    q: &Arc<Polynomial>,
    per_component: &[ComponentChoices],
    choice: &[(usize, Vec<usize>)],
) -> PolynomialMorphism {
    let j = p.target();
    let jc = j.components();
    let mut ops: Vec<Option<GroupoidFunctor>> = vec![None; j.object_count()];
    let mut zeta_reps: Vec<Option<GroupoidFunctor>> = vec![None; p.params_base().components().len()];
    for (c, (eta, zetas)) in choice.iter().enumerate() {
        let (eta_r, lists) = &per_component[c].options[*eta];
        for (x, f) in extend_ops(p, q, eta_r, &jc.members[c]) {
            ops[x] = Some(f);
        }
        for ((bcomp, list), &z) in lists.iter().zip(zetas) {
            zeta_reps[*bcomp] = Some(list[z].clone());
        }
    }
    let ops: Vec<GroupoidFunctor> = ops.into_iter().map(|f| f.expect("every object is covered")).collect();
    let h = reindexing(p, q, &ops);
    let reindexed = Arc::new(q.params().restrict(&h));
    let zeta_reps: Vec<GroupoidFunctor> =
        zeta_reps.into_iter().map(|f| f.expect("every component is covered")).collect();
    let params = FamilyMorphism::from_representatives(p.params().clone(), reindexed, &zeta_reps).components;
    PolynomialMorphism::new(p.clone(), q.clone(), ops, params).expect("search output is natural on operations")
}

fn braces(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(Rational::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Cheap invariants: operation fibers must be equivalent and the parameter
/// totals of corresponding operations must have equal cardinalities.
fn obstruction(p: &Polynomial, q: &Polynomial) -> Result<Option<String>, Stop> {
    let j = p.target();
    for &r in &j.components().representatives {
        match check_groupoid_equivalence(p.ops().fiber(r), q.ops().fiber(r), DEFAULT_AUT_CAP) {
            EquivalenceOutcome::Equivalent(_) => {}
            EquivalenceOutcome::NotEquivalent { invariant } => {
                return Ok(Some(format!("operations over {r}: {invariant}")))
            }
            EquivalenceOutcome::CapExceeded { order, cap } => {
                return Err(Stop::Cap(format!("automorphism group of order {order} (cap {cap})")))
            }
        }
        let cards = |x: &Polynomial| {
            let fiber = x.ops().fiber(r);
            let mut v: Vec<Rational> = fiber
                .components()
                .representatives
                .iter()
                .map(|&a| x.param_total(x.ops_total().object_index(r, a)).groupoid.cardinality())
                .collect();
            v.sort();
            v
        };
        let (a, b) = (cards(p), cards(q));
        if a != b {
            return Ok(Some(format!("parameter cardinalities {} vs {}", braces(&a), braces(&b))));
        }
    }
    Ok(None)
}

/// Looks for a strictly natural equivalence `p → q`, then `q → p`.
pub fn search_equivalence(p: &Polynomial, q: &Polynomial, caps: &Caps) -> Result<SearchOutcome, PolyError> {
    if **p.source() != **q.source() || **p.target() != **q.target() {
        return Err(PolyError::Boundary("polynomials have different boundaries".into()));
    }
    let run = || -> Result<SearchOutcome, Stop> {
        if let Some(obstruction) = obstruction(p, q)? {
            return Ok(SearchOutcome::NotEquivalent { obstruction });
        }
        if let Some(witness) = search(p, q, caps, true)?.pop() {
            return Ok(SearchOutcome::Found { witness, direction: Direction::Forward });
        }
        if let Some(witness) = search(q, p, caps, true)?.pop() {
            return Ok(SearchOutcome::Found { witness, direction: Direction::Backward });
        }
        Ok(SearchOutcome::NoStrictWitness)
    };
    Ok(run().unwrap_or_else(|Stop::Cap(reason)| SearchOutcome::CapExceeded { reason }))
}

/// Every strictly natural self-equivalence of `p`, in a deterministic order.
pub fn enumerate_self_equivalences(p: &Polynomial, caps: &Caps) -> Result<Vec<PolynomialMorphism>, PolyError> {
    search(p, p, caps, false).map_err(|Stop::Cap(reason)| PolyError::SearchCap(reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{compose, identity_poly, monomial, validate_poly_morphism};

    #[test]
    fn automorphism_counts_of_monomials() {
        for (n, count) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 24)] {
            let autos = enumerate_self_equivalences(&monomial(n), &Caps::default()).unwrap();
            assert_eq!(autos.len(), count, "X^{n}");
            assert!(autos[0].same_data(&PolynomialMorphism::identity(Arc::new(monomial(n)))));
            for a in &autos {
                assert!(validate_poly_morphism(a).unwrap().is_equivalence);
            }
        }
    }

    #[test]
    fn self_equivalences_form_a_group() {
        let autos = enumerate_self_equivalences(&monomial(3), &Caps::default()).unwrap();
        for a in &autos {
            for b in &autos {
                let ab = a.then(b).unwrap();
                assert!(autos.iter().any(|c| c.same_data(&ab)));
            }
        }
    }

    #[test]
    fn square_against_cube_is_refused() {
        match search_equivalence(&monomial(2), &monomial(3), &Caps::default()).unwrap() {
            SearchOutcome::NotEquivalent { obstruction } => {
                assert_eq!(obstruction, "parameter cardinalities {2} vs {3}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reassociated_composites_are_equivalent() {
        let x = Arc::new(monomial(1));
        let x2 = Arc::new(monomial(2));
        let left = compose(&Arc::new(compose(&x2, &x, 1_000_000).unwrap().poly), &x2, 1_000_000).unwrap();
        let right = compose(&x2, &Arc::new(compose(&x, &x2, 1_000_000).unwrap().poly), 1_000_000).unwrap();
        let outcome = search_equivalence(&left.poly, &right.poly, &Caps::default()).unwrap();
        let SearchOutcome::Found { witness, .. } = outcome else { panic!("{outcome:?}") };
        assert!(validate_poly_morphism(&witness).unwrap().is_equivalence);
        let found = search_equivalence(&left.poly, &monomial(4), &Caps::default()).unwrap();
        assert!(found.is_found());
    }

    #[test]
    fn identity_polynomial_over_a_group_has_one_self_equivalence_per_center_element() {
        // Natural automorphisms of the identity polynomial on deloop(Z/2).
        let z2 = Arc::new(crate::grpd::FiniteGroupoid::cyclic(2));
        let autos = enumerate_self_equivalences(&identity_poly(&z2), &Caps::default()).unwrap();
        assert!(!autos.is_empty());
        for a in &autos {
            assert!(validate_poly_morphism(a).unwrap().is_equivalence);
        }
    }
}
