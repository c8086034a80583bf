//! Cartesian structure: coproducts of groupoids are products of 0-cells.

use std::sync::Arc;

use crate::fam::Family;
use crate::grpd::{FiniteGroupoid, GroupoidFunctor, Grpd};
use crate::poly::{compose, representable, Composite, PolyError, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Inclusion of one summand into `coproduct(I, J)`.
pub fn injection(side: Side, i: &Grpd, j: &Grpd, sum: &Grpd) -> GroupoidFunctor {
    let (g, (o0, m0)) = match side {
        Side::Left => (i, (0, 0)),
        Side::Right => (j, (i.object_count(), i.morphism_count())),
    };
    GroupoidFunctor::new(
        g.clone(),
        sum.clone(),
        (0..g.object_count()).map(|x| x + o0).collect(),
        (0..g.morphism_count()).map(|f| f + m0).collect(),
    )
}

/// Projection `coproduct(I, J) ↝ I` (or `J`): parameters at `inl i` over `i'`
/// are the morphisms `i → i'`; parameters at the other summand are empty.
pub fn proj_poly(side: Side, i: &Grpd, j: &Grpd) -> Polynomial {
    let sum: Grpd = Arc::new(i.coproduct(j));
    representable(&sum, &injection(side, i, j, &sum))
}

/// `I ↝ coproduct(J, K)` from `P: I ↝ J` and `Q: I ↝ K`, by block sums.
pub fn pair_poly(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    if **p.source() != **q.source() {
        return Err(PolyError::Boundary("pairing needs a common source".into()));
    }
    let target: Grpd = Arc::new(p.target().coproduct(q.target()));
    let mut fibers = p.ops().fibers().to_vec();
    fibers.extend(q.ops().fibers().iter().cloned());
    let mut transports = p.ops().transports().to_vec();
    transports.extend(q.ops().transports().iter().cloned());
    let ops = Family::new(target, fibers, transports);
    let (np, mp) = (p.op_count(), p.ops_total().groupoid.morphism_count());
    let pair = Polynomial::new(p.source().clone(), ops, |base, total| {
        let (n, m) = (total.groupoid.object_count(), total.groupoid.morphism_count());
        let fibers = (0..base.object_count())
            .map(|b| {
                let (i, o) = (b / n, b % n);
                if o < np {
                    p.params().fiber(p.base_object(i, o)).clone()
                } else {
                    q.params().fiber(q.base_object(i, o - np)).clone()
                }
            })
            .collect();
        let transports = (0..base.morphism_count())
            .map(|bm| {
                let (u, k) = (bm / m, bm % m);
                if k < mp {
                    p.params().transport(p.base_morphism(u, k)).clone()
                } else {
                    q.params().transport(q.base_morphism(u, k - mp)).clone()
                }
            })
            .collect();
        Family::new(base.clone(), fibers, transports)
    });
    debug_assert_eq!(*pair.ops_total().groupoid, p.ops_total().groupoid.coproduct(&q.ops_total().groupoid));
    Ok(pair)
}

/// Both components of `R: I ↝ coproduct(J, K)`, where `J` has
/// `left_objects` objects: `R ⊗ projl` and `R ⊗ projr`.
pub fn unpair_poly(r: &Arc<Polynomial>, left_objects: usize, cap: u64) -> Result<(Composite, Composite), PolyError> {
    let (j, k) = r
        .target()
        .split_coproduct(left_objects)
        .ok_or_else(|| PolyError::Boundary(format!("target is not a coproduct after {left_objects} objects")))?;
    let (j, k): (Grpd, Grpd) = (Arc::new(j), Arc::new(k));
    let left = compose(r, &Arc::new(proj_poly(Side::Left, &j, &k)), cap)?;
    let right = compose(r, &Arc::new(proj_poly(Side::Right, &j, &k)), cap)?;
    Ok((left, right))
}

/// The unique polynomial `I ↝ discrete(0)`.
pub fn bang_poly(i: &Grpd) -> Polynomial {
    let empty: Grpd = Arc::new(FiniteGroupoid::discrete(0));
    Polynomial::new(i.clone(), Family::empty(empty), |base, _| Family::empty(base.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::check_family_equivalence;
    use crate::poly::{eval, identity_poly, is_finitary, monomial, search_equivalence, validate_polynomial, Caps};

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    fn point() -> Grpd {
        arc(FiniteGroupoid::discrete(1))
    }

    #[test]
    fn projections() {
        let p = proj_poly(Side::Left, &point(), &point());
        assert_eq!(validate_polynomial(&p), Ok(()));
        // Parameters at the right summand are empty.
        assert_eq!(p.params().fiber(p.base_object(1, 0)).object_count(), 0);
        assert_eq!(p.params().fiber(p.base_object(0, 0)).object_count(), 1);

        let z2 = arc(FiniteGroupoid::cyclic(2));
        let p = proj_poly(Side::Right, &point(), &z2);
        assert_eq!(validate_polynomial(&p), Ok(()));
        assert!(is_finitary(&p).arities().iter().all(|&a| a == Some(1)));
        assert_eq!(*identity_poly(&z2).params().fiber(0), *p.params().fiber(p.base_object(1, 0)));
    }

    #[test]
    fn projection_evaluates_to_a_summand() {
        let (i, j) = (point(), arc(FiniteGroupoid::cyclic(2)));
        let sum: Grpd = arc(i.coproduct(&j));
        let three = arc(FiniteGroupoid::discrete(3));
        let x = Family::new(
            sum.clone(),
            vec![three.clone(), arc(FiniteGroupoid::discrete(2))],
            vec![
                GroupoidFunctor::identity(three),
                GroupoidFunctor::identity(arc(FiniteGroupoid::discrete(2))),
                GroupoidFunctor::identity(arc(FiniteGroupoid::discrete(2))),
            ],
        );
        let left = eval(&proj_poly(Side::Left, &i, &j), &x, 1_000_000).unwrap();
        assert_eq!(left.family.fiber(0).object_count(), 3);
        let right = eval(&proj_poly(Side::Right, &i, &j), &x, 1_000_000).unwrap();
        let expected = Family::constant(j.clone(), arc(FiniteGroupoid::discrete(2)));
        assert!(check_family_equivalence(&arc(right.family), &arc(expected), 1_000_000).is_equivalent());
    }

    #[test]
    fn pair_and_unpair_round_trip() {
        let (x, x2) = (arc(monomial(1)), arc(monomial(2)));
        let pair = arc(pair_poly(&x, &x2).unwrap());
        assert_eq!(validate_polynomial(&pair), Ok(()));
        assert_eq!(pair.ops().fiber(0).object_count(), 1);
        assert_eq!(pair.ops().fiber(1).object_count(), 1);
        let (l, r) = unpair_poly(&pair, 1, 1_000_000).unwrap();
        assert!(search_equivalence(&l.poly, &x, &Caps::default()).unwrap().is_found());
        assert!(search_equivalence(&r.poly, &x2, &Caps::default()).unwrap().is_found());
        let again = pair_poly(&l.poly, &r.poly).unwrap();
        assert!(search_equivalence(&again, &pair, &Caps::default()).unwrap().is_found());
    }

    #[test]
    fn unpair_rejects_non_coproducts() {
        let c2 = arc(FiniteGroupoid::codiscrete(2));
        let p = arc(identity_poly(&c2));
        assert!(unpair_poly(&p, 1, 1_000_000).is_err());
    }

    #[test]
    fn terminal() {
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let b = bang_poly(&z2);
        assert_eq!(validate_polynomial(&b), Ok(()));
        assert_eq!(b, bang_poly(&z2));
        let e = eval(&b, &Family::constant(z2.clone(), point()), 1_000_000).unwrap();
        assert_eq!(e.family.base().object_count(), 0);
        let c = compose(&arc(identity_poly(&z2)), &arc(b.clone()), 1_000_000).unwrap();
        assert_eq!(c.poly, b);
    }
}
