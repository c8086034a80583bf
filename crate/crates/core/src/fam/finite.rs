use std::sync::Arc;

use super::Family;
use crate::grpd::{FiniteGroupoid, GroupoidFunctor, Grpd};

/// Outcome of a finiteness check.
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteVerdict {
    /// Equivalent to `discrete(cardinality)`; `witness` sends each object to
    /// the index of its component.
    Finite { cardinality: usize, witness: GroupoidFunctor },
    /// `object` has `automorphisms` automorphisms.
    NotFinite { object: usize, automorphisms: usize },
}

impl FiniteVerdict {
    /// Finiteness of a groupoid: every component has a trivial
    /// automorphism group.
    pub fn of_groupoid(g: &Grpd) -> FiniteVerdict {
        let comps = g.components();
        for &r in &comps.representatives {
            let order = g.automorphisms(r).len();
            if order > 1 {
                return FiniteVerdict::NotFinite { object: r, automorphisms: order };
            }
        }
        let n = comps.len();
        let point = Arc::new(FiniteGroupoid::discrete(n));
        let witness = GroupoidFunctor::new(
            g.clone(),
            point,
            comps.component_of.clone(),
            (0..g.morphism_count()).map(|f| comps.component_of[g.src(f)]).collect(),
        );
        FiniteVerdict::Finite { cardinality: n, witness }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FiniteVerdict::Finite { .. })
    }

    pub fn cardinality(&self) -> Option<usize> {
        match self {
            FiniteVerdict::Finite { cardinality, .. } => Some(*cardinality),
            FiniteVerdict::NotFinite { .. } => None,
        }
    }
}

/// Finiteness of the total groupoid of `family`. Object indices in the
/// verdict refer to the total groupoid.
pub fn is_finite_family(family: &Family) -> FiniteVerdict {
    FiniteVerdict::of_groupoid(&family.tot().groupoid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::fiber_family;

    #[test]
    fn worked_examples() {
        let z2 = Arc::new(FiniteGroupoid::cyclic(2));
        let f = Family::constant(z2.clone(), Arc::new(FiniteGroupoid::discrete(1)));
        assert_eq!(is_finite_family(&f), FiniteVerdict::NotFinite { object: 0, automorphisms: 2 });

        // The homotopy fiber of the identity is contractible, while the total
        // groupoid of the fiber family recovers Z/2 itself.
        let f = fiber_family(&GroupoidFunctor::identity(z2));
        assert_eq!(FiniteVerdict::of_groupoid(f.fiber(0)).cardinality(), Some(1));
        assert_eq!(is_finite_family(&f), FiniteVerdict::NotFinite { object: 0, automorphisms: 2 });

        let f = Family::constant(Arc::new(FiniteGroupoid::discrete(3)), Arc::new(FiniteGroupoid::discrete(2)));
        let verdict = is_finite_family(&f);
        assert_eq!(verdict.cardinality(), Some(6));
        let FiniteVerdict::Finite { witness, .. } = verdict else { unreachable!() };
        assert_eq!(witness.validate(), Ok(()));
        assert!(witness.is_equivalence());
    }
}
