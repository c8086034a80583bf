//! Enumeration of functors `E → T`, optionally over a common base `B`
//! (strictly commuting with given projections `p: E → B`, `q: T → B`).
//!
//! A functor out of a connected groupoid is determined by the image of the
//! representative, a homomorphism on its automorphism group, and the images
//! of the spanning-tree morphisms `τ_e: r → e`. Every such choice extends to
//! exactly one functor, so the enumeration never backtracks on functor laws.
//! Lifts are produced one source component at a time and combined as a
//! product, in a deterministic order.

use std::ops::ControlFlow;

use super::{automorphism_generators, extend_homomorphism, FiniteGroupoid, GroupoidFunctor};

/// Limits and pruning for [`for_each_lift`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftOptions {
    /// Only produce functors that are equivalences of groupoids.
    pub equivalences_only: bool,
    /// Maximum number of candidates (component lifts plus assembled
    /// functors) examined before giving up.
    pub budget: u64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { equivalences_only: false, budget: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// Every lift was visited.
    Completed,
    /// The visitor asked to stop.
    Stopped,
    CapExceeded,
}

/// Projections to a common base; `None` means "no constraint".
#[derive(Clone, Copy)]
pub struct Over<'a> {
    pub source: &'a GroupoidFunctor,
    pub target: &'a GroupoidFunctor,
}

/// All lifts of one source component.
pub(crate) struct ComponentLifts {
    pub(crate) objects: Vec<usize>,
    pub(crate) morphisms: Vec<usize>,
    /// Per lift: object images (aligned with `objects`), morphism images
    /// (aligned with `morphisms`) and the target component hit.
    pub(crate) lifts: Vec<(Vec<usize>, Vec<usize>, usize)>,
}

struct Budget {
    left: u64,
}

impl Budget {
    fn spend(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// Calls `visit(object_map, morphism_map)` for every functor `E → T`
/// (over the base, if given).
pub fn for_each_lift(
    source: &FiniteGroupoid,
    target: &FiniteGroupoid,
    over: Option<Over<'_>>,
    options: LiftOptions,
    mut visit: impl FnMut(&[usize], &[usize]) -> ControlFlow<()>,
) -> LiftOutcome {
    let mut budget = Budget { left: options.budget };
    let sc = source.components();
    if options.equivalences_only && sc.len() != target.components().len() {
        return LiftOutcome::Completed;
    }
    let mut per_component = Vec::with_capacity(sc.len());
    for c in 0..sc.len() {
        match component_lifts(source, target, over, options, c, &mut budget) {
            Some(l) => {
                if l.lifts.is_empty() {
                    return LiftOutcome::Completed;
                }
                per_component.push(l)
            }
            None => return LiftOutcome::CapExceeded,
        }
    }
    let mut object_map = vec![usize::MAX; source.object_count()];
    let mut morphism_map = vec![usize::MAX; source.morphism_count()];
    let mut used = vec![false; target.components().len()];
    let mut state = Assembly {
        per_component: &per_component,
        equivalences_only: options.equivalences_only,
        object_map: &mut object_map,
        morphism_map: &mut morphism_map,
        used: &mut used,
        budget: &mut budget,
    };
    match state.run(0, &mut visit) {
        Ok(ControlFlow::Continue(())) => LiftOutcome::Completed,
        Ok(ControlFlow::Break(())) => LiftOutcome::Stopped,
        Err(()) => LiftOutcome::CapExceeded,
    }
}

/// Lifts of each source component separately; the functors `E → T` are
/// exactly the tuples of component lifts.
pub(crate) fn component_lift_lists(
    source: &FiniteGroupoid,
    target: &FiniteGroupoid,
    over: Option<Over<'_>>,
    options: LiftOptions,
) -> Option<Vec<ComponentLifts>> {
    let mut budget = Budget { left: options.budget };
    (0..source.components().len()).map(|c| component_lifts(source, target, over, options, c, &mut budget)).collect()
}

/// Collects every lift as a functor. `None` when the budget runs out.
pub fn all_lifts(
    source: &std::sync::Arc<FiniteGroupoid>,
    target: &std::sync::Arc<FiniteGroupoid>,
    over: Option<Over<'_>>,
    options: LiftOptions,
) -> Option<Vec<GroupoidFunctor>> {
    let mut out = Vec::new();
    let outcome = for_each_lift(source, target, over, options, |o, m| {
        out.push(GroupoidFunctor::new(source.clone(), target.clone(), o.to_vec(), m.to_vec()));
        ControlFlow::Continue(())
    });
    (outcome != LiftOutcome::CapExceeded).then_some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded;

/// First lift satisfying `accept`, if any.
pub fn find_lift(
    source: &std::sync::Arc<FiniteGroupoid>,
    target: &std::sync::Arc<FiniteGroupoid>,
    over: Option<Over<'_>>,
    options: LiftOptions,
    mut accept: impl FnMut(&[usize], &[usize]) -> bool,
) -> Result<Option<GroupoidFunctor>, BudgetExceeded> {
    let mut found = None;
    let outcome = for_each_lift(source, target, over, options, |o, m| {
        if accept(o, m) {
            found = Some(GroupoidFunctor::new(source.clone(), target.clone(), o.to_vec(), m.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match outcome {
        LiftOutcome::CapExceeded => Err(BudgetExceeded),
        _ => Ok(found),
    }
}

struct Assembly<'s> {
    per_component: &'s [ComponentLifts],
    equivalences_only: bool,
    object_map: &'s mut [usize],
    morphism_map: &'s mut [usize],
    used: &'s mut [bool],
    budget: &'s mut Budget,
}

impl Assembly<'_> {
    fn run(
        &mut self,
        c: usize,
        visit: &mut impl FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, ()> {
        if c == self.per_component.len() {
            if !self.budget.spend() {
                return Err(());
            }
            return Ok(visit(self.object_map, self.morphism_map));
        }
        let comp = &self.per_component[c];
        for (objs, mors, tc) in &comp.lifts {
            if self.equivalences_only {
                if self.used[*tc] {
                    continue;
                }
                self.used[*tc] = true;
            }
            for (&x, &y) in comp.objects.iter().zip(objs) {
                self.object_map[x] = y;
            }
            for (&f, &g) in comp.morphisms.iter().zip(mors) {
                self.morphism_map[f] = g;
            }
            let flow = self.run(c + 1, visit);
            if self.equivalences_only {
                self.used[*tc] = false;
            }
            match flow? {
                ControlFlow::Continue(()) => {}
                ControlFlow::Break(()) => return Ok(ControlFlow::Break(())),
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn component_lifts(
    s: &FiniteGroupoid,
    t: &FiniteGroupoid,
    over: Option<Over<'_>>,
    options: LiftOptions,
    c: usize,
    budget: &mut Budget,
) -> Option<ComponentLifts> {
    let sc = s.components();
    let tcomp = t.components();
    let r = sc.representatives[c];
    let objects = sc.members[c].clone();
    let morphisms: Vec<usize> = objects.iter().flat_map(|&x| s.outgoing(x).iter().copied()).collect();
    let base_obj = |x: usize| over.map(|o| o.source.obj(x));
    let base_mor = |f: usize| over.map(|o| o.source.mor(f));
    let t_obj = |y: usize| over.map(|o| o.target.obj(y));
    let t_mor = |g: usize| over.map(|o| o.target.mor(g));

    let aut_order = s.automorphisms(r).len();
    let gens = automorphism_generators(s, r);
    let others: Vec<usize> = objects.iter().copied().filter(|&x| x != r).collect();
    let position: std::collections::HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut lifts = Vec::new();

    for y in 0..t.object_count() {
        if t_obj(y) != base_obj(r) {
            continue;
        }
        if options.equivalences_only && t.automorphisms(y).len() != aut_order {
            continue;
        }
        let gen_candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| t.automorphisms(y).iter().copied().filter(|&a| t_mor(a) == base_mor(g)).collect())
            .collect();
        if gen_candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let tree_candidates: Vec<Vec<usize>> = others
            .iter()
            .map(|&e| {
                let tau = sc.path_from_rep[e];
                t.outgoing(y).iter().copied().filter(|&m| t_mor(m) == base_mor(tau)).collect()
            })
            .collect();
        if tree_candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let mut gen_choice = vec![0; gens.len()];
        loop {
            if !budget.spend() {
                return None;
            }
            let images: Vec<usize> = gen_choice.iter().zip(&gen_candidates).map(|(&i, c)| c[i]).collect();
            let hom = extend_homomorphism(s, r, &gens, &images, t.identity(y), |a, b| t.compose(a, b));
            let hom = hom.filter(|h| {
                if !options.equivalences_only {
                    return true;
                }
                let mut vals: Vec<usize> = h.values().copied().collect();
                vals.sort_unstable();
                vals.dedup();
                vals.len() == aut_order
            });
            if let Some(hom) = hom {
                let mut tree_choice = vec![0; others.len()];
                loop {
                    if !budget.spend() {
                        return None;
                    }
                    // Images of the tree morphisms, indexed like `objects`.
                    let mut tau_img = vec![t.identity(y); objects.len()];
                    for (k, &e) in others.iter().enumerate() {
                        tau_img[position[&e]] = tree_candidates[k][tree_choice[k]];
                    }
                    let objs: Vec<usize> = tau_img.iter().map(|&m| t.dst(m)).collect();
                    let mors: Vec<usize> = morphisms
                        .iter()
                        .map(|&f| {
                            let (a, b) = (s.src(f), s.dst(f));
                            let gamma = s.compose(s.inverse(sc.path_from_rep[b]), s.compose(f, sc.path_from_rep[a]));
                            let ta = tau_img[position[&a]];
                            let tb = tau_img[position[&b]];
                            t.compose(tb, t.compose(hom[&gamma], t.inverse(ta)))
                        })
                        .collect();
                    lifts.push((objs, mors, tcomp.component_of[y]));
                    if !odometer(&mut tree_choice, &tree_candidates) {
                        break;
                    }
                }
            }
            if !odometer(&mut gen_choice, &gen_candidates) {
                break;
            }
        }
    }
    Some(ComponentLifts { objects, morphisms, lifts })
}

/// Advances a lexicographic counter; returns `false` after the last value.
fn odometer(choice: &mut [usize], candidates: &[Vec<usize>]) -> bool {
    for k in (0..choice.len()).rev() {
        choice[k] += 1;
        if choice[k] < candidates[k].len() {
            return true;
        }
        choice[k] = 0;
    }
    false
}
