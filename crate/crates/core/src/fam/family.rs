use std::fmt;
use std::sync::Arc;

use crate::grpd::{FiniteGroupoid, FunctorViolation, GroupoidFunctor, Grpd};

/// A strict functor from `base` to finite groupoids: a fiber per object and
/// a transport functor per morphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    base: Grpd,
    fibers: Vec<Grpd>,
    transports: Vec<GroupoidFunctor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    FiberCount { len: usize, expected: usize },
    TransportCount { len: usize, expected: usize },
    TransportEndpoints { morphism: usize },
    Transport { morphism: usize, violation: FunctorViolation },
    Identity { object: usize },
    Functoriality { g: usize, f: usize },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::FiberCount { len, expected } => {
                write!(out, "{len} fibers given, expected {expected}")
            }
            FamilyViolation::TransportCount { len, expected } => {
                write!(out, "{len} transports given, expected {expected}")
            }
            FamilyViolation::TransportEndpoints { morphism } => {
                write!(out, "transport along {morphism} does not connect the right fibers")
            }
            FamilyViolation::Transport { morphism, violation } => {
                write!(out, "transport along {morphism} is not a functor: {violation}")
            }
            FamilyViolation::Identity { object } => {
                write!(out, "transport along the identity of {object} is not the identity")
            }
            FamilyViolation::Functoriality { g, f } => {
                write!(out, "functoriality failure at {g}∘{f}")
            }
        }
    }
}

impl Family {
    /// Assembles a family without checking it; see [`validate_family`].
    pub fn new(base: Grpd, fibers: Vec<Grpd>, transports: Vec<GroupoidFunctor>) -> Self {
        Family { base, fibers, transports }
    }

    /// The same fiber everywhere, with identity transports.
    pub fn constant(base: Grpd, fiber: Grpd) -> Self {
        let id = GroupoidFunctor::identity(fiber.clone());
        Family { fibers: vec![fiber; base.object_count()], transports: vec![id; base.morphism_count()], base }
    }

    /// The family with a fiber given at each component representative and
    /// an action `act(component, a)` of its automorphisms `a`, extended to
    /// the whole component along the spanning tree. The result is strictly
    /// functorial exactly when each action is a homomorphism.
    pub fn from_component_actions(
        base: Grpd,
        fibers_at_reps: Vec<Grpd>,
        mut act: impl FnMut(usize, usize) -> GroupoidFunctor,
    ) -> Self {
        let comps = base.components().clone();
        let fibers: Vec<Grpd> =
            (0..base.object_count()).map(|x| fibers_at_reps[comps.component_of[x]].clone()).collect();
        let mut actions: Vec<std::collections::HashMap<usize, GroupoidFunctor>> = vec![Default::default(); comps.len()];
        let transports = (0..base.morphism_count())
            .map(|f| {
                let (x, y) = (base.src(f), base.dst(f));
                let c = comps.component_of[x];
                let inner = base.compose(base.inverse(comps.path_from_rep[y]), base.compose(f, comps.path_from_rep[x]));
                actions[c].entry(inner).or_insert_with(|| act(c, inner)).clone()
            })
            .collect();
        Family { base, fibers, transports }
    }

    /// The family with empty fibers.
    pub fn empty(base: Grpd) -> Self {
        Family::constant(base, Arc::new(FiniteGroupoid::discrete(0)))
    }

    pub fn base(&self) -> &Grpd {
        &self.base
    }

    pub fn fiber(&self, x: usize) -> &Grpd {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[Grpd] {
        &self.fibers
    }

    pub fn transport(&self, f: usize) -> &GroupoidFunctor {
        &self.transports[f]
    }

    pub fn transports(&self) -> &[GroupoidFunctor] {
        &self.transports
    }

    /// Pullback along `along: B' → base`.
    pub fn restrict(&self, along: &GroupoidFunctor) -> Family {
        Family {
            base: along.source.clone(),
            fibers: along.object_map.iter().map(|&x| self.fibers[x].clone()).collect(),
            transports: along.morphism_map.iter().map(|&f| self.transports[f].clone()).collect(),
        }
    }

    /// Total number of fiber objects.
    pub fn total_objects(&self) -> usize {
        self.fibers.iter().map(|f| f.object_count()).sum()
    }
}

/// Checks strict functoriality exhaustively; the first entry is the first
/// failure found.
pub fn validate_family(family: &Family) -> Vec<FamilyViolation> {
    let b = &family.base;
    let mut out = Vec::new();
    if family.fibers.len() != b.object_count() {
        out.push(FamilyViolation::FiberCount { len: family.fibers.len(), expected: b.object_count() });
    }
    if family.transports.len() != b.morphism_count() {
        out.push(FamilyViolation::TransportCount { len: family.transports.len(), expected: b.morphism_count() });
    }
    if !out.is_empty() {
        return out;
    }
    for (f, t) in family.transports.iter().enumerate() {
        let same = |a: &Grpd, b: &Grpd| Arc::ptr_eq(a, b) || a == b;
        if !same(&t.source, &family.fibers[b.src(f)]) || !same(&t.target, &family.fibers[b.dst(f)]) {
            out.push(FamilyViolation::TransportEndpoints { morphism: f });
        } else if let Err(violation) = t.validate() {
            out.push(FamilyViolation::Transport { morphism: f, violation });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for x in 0..b.object_count() {
        if !family.transports[b.identity(x)].is_identity() {
            out.push(FamilyViolation::Identity { object: x });
        }
    }
    let mut pairs: Vec<_> = b.compose_table().iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
    pairs.sort_unstable();
    for (g, f, gf) in pairs {
        let composite = family.transports[f].then(&family.transports[g]);
        let direct = &family.transports[gf];
        if composite.object_map != direct.object_map || composite.morphism_map != direct.morphism_map {
            out.push(FamilyViolation::Functoriality { g, f });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap(d2: &Grpd) -> GroupoidFunctor {
        GroupoidFunctor::new(d2.clone(), d2.clone(), vec![1, 0], vec![1, 0])
    }

    #[test]
    fn worked_examples() {
        let base = Arc::new(FiniteGroupoid::cyclic(2));
        let d2 = Arc::new(FiniteGroupoid::discrete(2));
        let constant = Family::constant(base.clone(), d2.clone());
        assert!(validate_family(&constant).is_empty());

        let swapped =
            Family::new(base.clone(), vec![d2.clone()], vec![GroupoidFunctor::identity(d2.clone()), swap(&d2)]);
        assert!(validate_family(&swapped).is_empty());

        // Both points sent to 0: not an involution.
        let collapse = GroupoidFunctor::new(d2.clone(), d2.clone(), vec![0, 0], vec![0, 0]);
        let broken = Family::new(base, vec![d2.clone()], vec![GroupoidFunctor::identity(d2), collapse]);
        let report = validate_family(&broken);
        assert_eq!(report, vec![FamilyViolation::Functoriality { g: 1, f: 1 }]);
        assert_eq!(report[0].to_string(), "functoriality failure at 1∘1");
    }

    #[test]
    fn component_actions_extend_along_trees() {
        let base = Arc::new(FiniteGroupoid::codiscrete(2).product(&FiniteGroupoid::cyclic(2)));
        let d2 = Arc::new(FiniteGroupoid::discrete(2));
        let fam = Family::from_component_actions(base.clone(), vec![d2.clone()], |_, a| {
            if base.is_identity(a) {
                GroupoidFunctor::identity(d2.clone())
            } else {
                swap(&d2)
            }
        });
        assert!(validate_family(&fam).is_empty());
    }
}
