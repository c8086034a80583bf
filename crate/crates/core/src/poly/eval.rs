use super::{PolyError, Polynomial};
use crate::fam::{sigma_family, Family, FunctorGroupoid, SigmaFamily, Total};
use crate::grpd::lift::Over;
use crate::grpd::GroupoidFunctor;

/// `eval(P, X)` with the data needed to decode its fibers.
///
/// The fiber at `j` has objects `(c, s)`: an operation `c` over `j` and a
/// functor `s` from its parameter total to `tot X`, over the source.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub family: Family,
    pub argument_total: Total,
    /// Functor groupoids, one per operation (object of `tot(ops)`).
    pub sections: Vec<FunctorGroupoid>,
    /// The family of those functor groupoids over `tot(ops)`.
    pub section_family: Family,
    pub sigma: SigmaFamily,
}

impl Evaluated {
    /// `(c, s)` for an object of the fiber at `j`.
    pub fn decode(&self, j: usize, x: usize) -> (usize, usize) {
        self.sigma.totals[j].object(x)
    }

    /// `(φ, ψ)` for a morphism of the fiber at `j`.
    pub fn decode_morphism(&self, j: usize, m: usize) -> (usize, usize) {
        self.sigma.totals[j].morphism(m)
    }
}

/// Evaluates `P` at a family `X` over its source. Enumeration of the
/// functor groupoids stops after `cap` candidates.
pub fn eval(p: &Polynomial, x: &Family, cap: u64) -> Result<Evaluated, PolyError> {
    if **x.base() != **p.source() {
        return Err(PolyError::Boundary("argument family is not over the source".into()));
    }
    let argument_total = x.tot();
    let t = &p.ops_total().groupoid;
    let sections: Vec<FunctorGroupoid> = (0..t.object_count())
        .map(|o| {
            let pt = p.param_total(o);
            let over = Over { source: &pt.projection, target: &argument_total.projection };
            FunctorGroupoid::new(&pt.groupoid, &argument_total.groupoid, Some(over), cap)
        })
        .collect::<Result<_, _>>()?;
    let transports = (0..t.morphism_count()).map(|k| section_transport(p, &sections, k)).collect();
    let section_family = Family::new(t.clone(), sections.iter().map(|s| s.groupoid.clone()).collect(), transports);
    let sigma = sigma_family(p.ops(), p.ops_total(), &section_family);
    Ok(Evaluated { family: sigma.family.clone(), argument_total, sections, section_family, sigma })
}

/// Reindexing along `PT(κ)⁻¹`: `s ↦ s ∘ PT(κ⁻¹)`.
pub(crate) fn section_transport(p: &Polynomial, sections: &[FunctorGroupoid], k: usize) -> GroupoidFunctor {
    let t = &p.ops_total().groupoid;
    let (o, o2) = (t.src(k), t.dst(k));
    let back = p.pt_map(t.inverse(k));
    let (from, to) = (&sections[o], &sections[o2]);
    let g = &from.groupoid;
    let object_map: Vec<usize> = (0..g.object_count())
        .map(|s| {
            let (_, mors) = from.maps(s);
            let moved: Vec<usize> = back.morphism_map.iter().map(|&m| mors[m]).collect();
            to.index_of(&moved).expect("reindexed section is a section")
        })
        .collect();
    let morphism_map = (0..g.morphism_count())
        .map(|m| {
            let h = from.components_of(m);
            let moved: Vec<usize> = back.object_map.iter().map(|&x| h[x]).collect();
            to.transformation_index(object_map[g.src(m)], object_map[g.dst(m)], &moved)
                .expect("reindexed transformation is natural")
        })
        .collect();
    GroupoidFunctor::new(g.clone(), to.groupoid.clone(), object_map, morphism_map)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fam::validate_family;
    use crate::grpd::FiniteGroupoid;
    use crate::poly::{discrete_poly, identity_poly, monomial, DiscreteOp};

    fn set(n: usize) -> Family {
        Family::constant(Arc::new(FiniteGroupoid::discrete(1)), Arc::new(FiniteGroupoid::discrete(n)))
    }

    #[test]
    fn monomials_count_tuples() {
        for (n, x, expected) in [(0, 3, 1), (2, 3, 9), (3, 2, 8), (2, 0, 0)] {
            let e = eval(&monomial(n), &set(x), 1_000_000).unwrap();
            assert!(validate_family(&e.family).is_empty());
            assert_eq!(e.family.fiber(0).object_count(), expected);
            assert!(e.family.fiber(0).is_discrete());
        }
    }

    #[test]
    fn sum_of_monomials() {
        // X² + X + 1
        let p = discrete_poly(
            1,
            1,
            &[
                DiscreteOp { color: 0, param_colors: vec![0, 0] },
                DiscreteOp { color: 0, param_colors: vec![0] },
                DiscreteOp { color: 0, param_colors: vec![] },
            ],
        );
        let e = eval(&p, &set(2), 1_000_000).unwrap();
        assert_eq!(e.family.fiber(0).object_count(), 4 + 2 + 1);
    }

    #[test]
    fn identity_evaluates_to_an_equivalent_family() {
        let z2 = Arc::new(FiniteGroupoid::cyclic(2));
        let swap = GroupoidFunctor::new(
            Arc::new(FiniteGroupoid::discrete(2)),
            Arc::new(FiniteGroupoid::discrete(2)),
            vec![1, 0],
            vec![1, 0],
        );
        let x = Family::new(
            z2.clone(),
            vec![swap.source.clone()],
            vec![GroupoidFunctor::identity(swap.source.clone()), swap],
        );
        let e = eval(&identity_poly(&z2), &x, 1_000_000).unwrap();
        assert!(validate_family(&e.family).is_empty());
        let outcome = crate::fam::check_family_equivalence(&Arc::new(e.family), &Arc::new(x), 1_000_000);
        assert!(outcome.is_equivalent(), "{outcome:?}");
    }
}
