use std::sync::Arc;

use super::{PolyError, Polynomial};
use crate::fam::{tot_map, validate_family_morphism, FamilyMorphism};
use crate::grpd::GroupoidFunctor;

/// A 2-cell `P ⇒ Q` between polynomials with the same boundaries: a map of
/// operation families and a fiberwise equivalence of parameters, strictly
/// natural in both layers.
#[derive(Clone, Debug)]
pub struct PolynomialMorphism {
    pub source: Arc<Polynomial>,
    pub target: Arc<Polynomial>,
    /// `source.ops → target.ops`.
    pub ops: FamilyMorphism,
    /// `source.params →` target parameters reindexed along [`Self::reindexing`].
    pub params: FamilyMorphism,
}

/// Result of [`validate_poly_morphism`] on a valid morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub is_equivalence: bool,
    pub is_isomorphism: bool,
}

/// `I × tot(ops_P) → I × tot(ops_Q)` induced by the operation components.
pub(crate) fn reindexing(source: &Polynomial, target: &Polynomial, ops: &[GroupoidFunctor]) -> GroupoidFunctor {
    let t = tot_map(source.ops_total(), target.ops_total(), &GroupoidFunctor::identity(source.target().clone()), ops);
    let sb = source.params_base();
    let object_map = (0..sb.object_count())
        .map(|b| {
            let (x, o) = source.split_base_object(b);
            target.base_object(x, t.obj(o))
        })
        .collect();
    let morphism_map = (0..sb.morphism_count())
        .map(|m| {
            let (u, k) = source.split_base_morphism(m);
            target.base_morphism(u, t.mor(k))
        })
        .collect();
    GroupoidFunctor::new(sb.clone(), target.params_base().clone(), object_map, morphism_map)
}

fn same_boundaries(p: &Polynomial, q: &Polynomial) -> Result<(), PolyError> {
    if **p.source() != **q.source() || **p.target() != **q.target() {
        return Err(PolyError::Boundary("polynomials have different boundaries".into()));
    }
    Ok(())
}

impl PolynomialMorphism {
    /// Assembles a morphism from components. The operation layer is
    /// validated here because the reindexing depends on it; the parameter
    /// layer is checked by [`validate_poly_morphism`].
    pub fn new(
        source: Arc<Polynomial>,
        target: Arc<Polynomial>,
        ops: Vec<GroupoidFunctor>,
        params: Vec<GroupoidFunctor>,
    ) -> Result<Self, PolyError> {
        same_boundaries(&source, &target)?;
        let ops = FamilyMorphism { source: source.ops().clone(), target: target.ops().clone(), components: ops };
        validate_family_morphism(&ops).map_err(|v| PolyError::Boundary(format!("operation layer: {v}")))?;
        let h = reindexing(&source, &target, &ops.components);
        let reindexed = Arc::new(target.params().restrict(&h));
        let params = FamilyMorphism { source: source.params().clone(), target: reindexed, components: params };
        Ok(PolynomialMorphism { source, target, ops, params })
    }

    pub fn identity(p: Arc<Polynomial>) -> Self {
        let ops = FamilyMorphism::identity(p.ops().clone()).components;
        let params = FamilyMorphism::identity(p.params().clone()).components;
        PolynomialMorphism::new(p.clone(), p, ops, params).expect("identity is natural")
    }

    pub fn reindexing(&self) -> GroupoidFunctor {
        reindexing(&self.source, &self.target, &self.ops.components)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PolynomialMorphism) -> Result<PolynomialMorphism, PolyError> {
        if !(Arc::ptr_eq(&self.target, &next.source) || *self.target == *next.source) {
            return Err(PolyError::Boundary("2-cells are not composable".into()));
        }
        let h = self.reindexing();
        let ops = self.ops.components.iter().zip(&next.ops.components).map(|(a, b)| a.then(b)).collect();
        let params =
            self.params.components.iter().enumerate().map(|(b, a)| a.then(&next.params.components[h.obj(b)])).collect();
        PolynomialMorphism::new(self.source.clone(), next.target.clone(), ops, params)
    }

    /// Equality of the witness data (all component maps).
    pub fn same_data(&self, other: &PolynomialMorphism) -> bool {
        let maps = |m: &FamilyMorphism| -> Vec<(Vec<usize>, Vec<usize>)> {
            m.components.iter().map(|f| (f.object_map.clone(), f.morphism_map.clone())).collect()
        };
        maps(&self.ops) == maps(&other.ops) && maps(&self.params) == maps(&other.params)
    }

    /// The inverse 2-cell, when every component is an isomorphism.
    pub fn inverse(&self) -> Option<PolynomialMorphism> {
        let ops: Vec<GroupoidFunctor> =
            self.ops.components.iter().map(GroupoidFunctor::inverse).collect::<Option<_>>()?;
        let back = PolynomialMorphism::new(self.target.clone(), self.source.clone(), ops, Vec::new()).ok()?;
        let h = self.reindexing();
        let g = back.reindexing();
        // h and g are mutually inverse, so component b of the inverse is the
        // inverse of component g(b) of self.
        let params = (0..self.target.params_base().object_count())
            .map(|b| self.params.components[g.obj(b)].inverse())
            .collect::<Option<Vec<_>>>()?;
        debug_assert!((0..h.source.object_count()).all(|b| g.obj(h.obj(b)) == b));
        PolynomialMorphism::new(self.target.clone(), self.source.clone(), back.ops.components, params).ok()
    }
}

/// Checks both naturality layers, that the parameter target is the
/// reindexed target family, and that every parameter component is an
/// equivalence.
pub fn validate_poly_morphism(m: &PolynomialMorphism) -> Result<MorphismReport, String> {
    same_boundaries(&m.source, &m.target).map_err(|e| e.to_string())?;
    let fresh = PolynomialMorphism::new(
        m.source.clone(),
        m.target.clone(),
        m.ops.components.clone(),
        m.params.components.clone(),
    )
    .map_err(|e| e.to_string())?;
    if *fresh.params.target != *m.params.target || *m.params.source != **m.source.params() {
        return Err("parameter layer is not between the reindexed parameter families".into());
    }
    validate_family_morphism(&fresh.params).map_err(|v| format!("parameter layer: {v}"))?;
    if let Some(b) = fresh.params.components.iter().position(|f| !f.is_equivalence()) {
        return Err(format!("parameter component at {b} is not an equivalence"));
    }
    Ok(MorphismReport {
        is_equivalence: fresh.ops.is_equivalence(),
        is_isomorphism: fresh
            .ops
            .components
            .iter()
            .chain(&fresh.params.components)
            .all(GroupoidFunctor::is_isomorphism),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpd::FiniteGroupoid;
    use crate::poly::{discrete_poly, monomial, DiscreteOp};

    fn swap2() -> GroupoidFunctor {
        let d2 = Arc::new(FiniteGroupoid::discrete(2));
        GroupoidFunctor::new(d2.clone(), d2, vec![1, 0], vec![1, 0])
    }

    #[test]
    fn identity_and_swap_on_square() {
        let x2 = Arc::new(monomial(2));
        let id = PolynomialMorphism::identity(x2.clone());
        assert_eq!(validate_poly_morphism(&id), Ok(MorphismReport { is_equivalence: true, is_isomorphism: true }));
        let ops = id.ops.components.clone();
        let swap = PolynomialMorphism::new(x2.clone(), x2.clone(), ops, vec![swap2()]).unwrap();
        assert!(validate_poly_morphism(&swap).unwrap().is_equivalence);
        let twice = swap.then(&swap).unwrap();
        assert!(twice.same_data(&id));
        assert!(swap.inverse().unwrap().same_data(&swap));
    }

    #[test]
    fn collapsing_operations_is_not_an_equivalence() {
        let two = Arc::new(discrete_poly(
            1,
            1,
            &[DiscreteOp { color: 0, param_colors: vec![0] }, DiscreteOp { color: 0, param_colors: vec![0] }],
        ));
        let one = Arc::new(monomial(1));
        let collapse = GroupoidFunctor::to_point(two.ops().fiber(0).clone());
        let params = (0..2).map(|b| GroupoidFunctor::identity(two.params().fiber(b).clone())).collect();
        let m = PolynomialMorphism::new(two, one, vec![collapse], params).unwrap();
        assert_eq!(validate_poly_morphism(&m), Ok(MorphismReport { is_equivalence: false, is_isomorphism: false }));
    }

    #[test]
    fn rejects_non_equivalence_on_parameters() {
        let x2 = Arc::new(monomial(2));
        let id = PolynomialMorphism::identity(x2.clone());
        let d2 = Arc::new(FiniteGroupoid::discrete(2));
        let fold = GroupoidFunctor::new(d2.clone(), d2, vec![0, 0], vec![0, 0]);
        let m = PolynomialMorphism::new(x2.clone(), x2, id.ops.components, vec![fold]).unwrap();
        assert!(validate_poly_morphism(&m).is_err());
    }
}
