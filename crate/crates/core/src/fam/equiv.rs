use std::fmt;
use std::sync::Arc;

use super::Family;
use crate::grpd::lift::{find_lift, BudgetExceeded, LiftOptions, Over};
use crate::grpd::{automorphism_generators, check_groupoid_equivalence, GroupoidFunctor, DEFAULT_AUT_CAP};

/// A strictly natural transformation between families over the same base.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMorphism {
    pub source: Arc<Family>,
    pub target: Arc<Family>,
    pub components: Vec<GroupoidFunctor>,
}

impl FamilyMorphism {
    pub fn identity(family: Arc<Family>) -> Self {
        let components = family.fibers().iter().map(|f| GroupoidFunctor::identity(f.clone())).collect();
        FamilyMorphism { source: family.clone(), target: family, components }
    }

    /// Extends components given at component representatives along the
    /// spanning trees: `η_e = G(τ_e) ∘ η_r ∘ F(τ_e)⁻¹`. The result is natural
    /// exactly when each `η_r` commutes with the action of `Aut(r)`.
    pub fn from_representatives(source: Arc<Family>, target: Arc<Family>, at_reps: &[GroupoidFunctor]) -> Self {
        let base = source.base().clone();
        let comps = base.components();
        let components = (0..base.object_count())
            .map(|x| {
                let c = comps.component_of[x];
                let tau = comps.path_from_rep[x];
                source.transport(base.inverse(tau)).then(&at_reps[c]).then(target.transport(tau))
            })
            .collect();
        FamilyMorphism { source, target, components }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FamilyMorphism) -> FamilyMorphism {
        FamilyMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            components: self.components.iter().zip(&next.components).map(|(a, b)| a.then(b)).collect(),
        }
    }

    /// Whether every component is an equivalence of groupoids.
    pub fn is_equivalence(&self) -> bool {
        self.components.iter().all(GroupoidFunctor::is_equivalence)
    }

    /// Whether `G(f) ∘ η_x = η_y ∘ F(f)` for every base morphism `f`.
    pub fn first_unnatural(&self) -> Option<usize> {
        let base = self.source.base();
        (0..base.morphism_count()).find(|&f| {
            let left = self.components[base.src(f)].then(self.target.transport(f));
            let right = self.source.transport(f).then(&self.components[base.dst(f)]);
            left.object_map != right.object_map || left.morphism_map != right.morphism_map
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMorphismViolation {
    BaseMismatch,
    ComponentCount { len: usize, expected: usize },
    ComponentEndpoints { object: usize },
    Component { object: usize, reason: String },
    Naturality { morphism: usize },
}

impl fmt::Display for FamilyMorphismViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMorphismViolation::BaseMismatch => write!(out, "families have different bases"),
            FamilyMorphismViolation::ComponentCount { len, expected } => {
                write!(out, "{len} components given, expected {expected}")
            }
            FamilyMorphismViolation::ComponentEndpoints { object } => {
                write!(out, "component at {object} does not connect the fibers")
            }
            FamilyMorphismViolation::Component { object, reason } => {
                write!(out, "component at {object} is not a functor: {reason}")
            }
            FamilyMorphismViolation::Naturality { morphism } => {
                write!(out, "naturality fails along {morphism}")
            }
        }
    }
}

/// Checks the component functors and strict naturality.
pub fn validate_family_morphism(m: &FamilyMorphism) -> Result<(), FamilyMorphismViolation> {
    let base = m.source.base();
    if !(Arc::ptr_eq(base, m.target.base()) || **base == **m.target.base()) {
        return Err(FamilyMorphismViolation::BaseMismatch);
    }
    if m.components.len() != base.object_count() {
        return Err(FamilyMorphismViolation::ComponentCount { len: m.components.len(), expected: base.object_count() });
    }
    for (x, eta) in m.components.iter().enumerate() {
        let same = |a: &crate::grpd::Grpd, b: &crate::grpd::Grpd| Arc::ptr_eq(a, b) || a == b;
        if !same(&eta.source, m.source.fiber(x)) || !same(&eta.target, m.target.fiber(x)) {
            return Err(FamilyMorphismViolation::ComponentEndpoints { object: x });
        }
        eta.validate().map_err(|v| FamilyMorphismViolation::Component { object: x, reason: v.to_string() })?;
    }
    match m.first_unnatural() {
        Some(morphism) => Err(FamilyMorphismViolation::Naturality { morphism }),
        None => Ok(()),
    }
}

/// Outcome of [`check_family_equivalence`].
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyEquivalence {
    /// A strictly natural morphism whose components are equivalences.
    Strict(FamilyMorphism),
    /// No strictly natural witness exists; this equivalence
    /// `tot F → tot G` commutes strictly with the projections. Its
    /// restriction to fibers gives the components, and its value on
    /// horizontal morphisms gives the naturality isomorphisms.
    OverBase(GroupoidFunctor),
    NotEquivalent {
        obstruction: String,
    },
    CapExceeded,
}

impl FamilyEquivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, FamilyEquivalence::Strict(_) | FamilyEquivalence::OverBase(_))
    }
}

/// Decides whether two families over the same base are equivalent.
pub fn check_family_equivalence(f: &Arc<Family>, g: &Arc<Family>, cap: u64) -> FamilyEquivalence {
    let base = f.base().clone();
    if **g.base() != *base {
        return FamilyEquivalence::NotEquivalent { obstruction: "families have different bases".into() };
    }
    let comps = base.components();
    for &r in &comps.representatives {
        let outcome = check_groupoid_equivalence(f.fiber(r), g.fiber(r), DEFAULT_AUT_CAP);
        if !outcome.is_equivalent() {
            return FamilyEquivalence::NotEquivalent { obstruction: format!("fibers at {r}: {outcome}") };
        }
    }
    let (tf, tg) = (f.tot(), g.tot());
    let outcome = check_groupoid_equivalence(&tf.groupoid, &tg.groupoid, DEFAULT_AUT_CAP);
    if !outcome.is_equivalent() {
        return FamilyEquivalence::NotEquivalent { obstruction: format!("total groupoids: {outcome}") };
    }
    let options = LiftOptions { equivalences_only: true, budget: cap };
    let mut at_reps = Vec::with_capacity(comps.len());
    for &r in &comps.representatives {
        let gens = automorphism_generators(&base, r);
        let found = find_lift(f.fiber(r), g.fiber(r), None, options, |objs, mors| {
            gens.iter().all(|&a| {
                let (fa, ga) = (f.transport(a), g.transport(a));
                objs.iter().enumerate().all(|(x, &y)| ga.obj(y) == objs[fa.obj(x)])
                    && mors.iter().enumerate().all(|(m, &n)| ga.mor(n) == mors[fa.mor(m)])
            })
        });
        match found {
            Err(BudgetExceeded) => return FamilyEquivalence::CapExceeded,
            Ok(Some(eta)) => at_reps.push(eta),
            Ok(None) => break,
        }
    }
    if at_reps.len() == comps.len() {
        return FamilyEquivalence::Strict(FamilyMorphism::from_representatives(f.clone(), g.clone(), &at_reps));
    }
    let over = Over { source: &tf.projection, target: &tg.projection };
    match find_lift(&tf.groupoid, &tg.groupoid, Some(over), options, |_, _| true) {
        Err(BudgetExceeded) => FamilyEquivalence::CapExceeded,
        Ok(Some(phi)) => FamilyEquivalence::OverBase(phi),
        Ok(None) => {
            FamilyEquivalence::NotEquivalent { obstruction: "no equivalence of total groupoids over the base".into() }
        }
    }
}
