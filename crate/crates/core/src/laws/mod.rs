//! Bicategory structure on polynomials: canonical associator and unitors,
//! composition of 2-cells, and coherence checks.

mod suite;
mod witness;

use std::sync::Arc;

use crate::fam::tot_map;
use crate::grpd::GroupoidFunctor;
use crate::poly::{
    compose, identity_poly, search_equivalence, validate_poly_morphism, Caps, Composite, Direction, PolyError,
    Polynomial, PolynomialMorphism, SearchOutcome,
};
pub use suite::{coherence_instance, law_instance, run_law_suite, LawKind, LawRecord, Verdict};
use witness::functor;
pub use witness::{assoc, unit_l, unit_r};

#[derive(Clone, Debug)]
pub enum Law {
    Assoc(Arc<Polynomial>, Arc<Polynomial>, Arc<Polynomial>),
    UnitL(Arc<Polynomial>),
    UnitR(Arc<Polynomial>),
}

/// The canonical witness of a law. When the canonical right unitor is not
/// strictly natural (operation fibers with nontrivial morphisms over a
/// non-discrete target), a searched witness `P ⊗ Id → P` is returned instead.
pub fn law_witness(law: &Law, caps: &Caps) -> Result<PolynomialMorphism, PolyError> {
    match law {
        Law::Assoc(p, q, r) => assoc(p, q, r, caps.candidates),
        Law::UnitL(p) => unit_l(p, caps.candidates),
        Law::UnitR(p) => {
            let w = unit_r(p, caps.candidates)?;
            if validate_poly_morphism(&w).is_ok() {
                return Ok(w);
            }
            match search_equivalence(&w.source, p, caps)? {
                SearchOutcome::Found { witness, direction: Direction::Forward } => PolynomialMorphism::new(
                    w.source.clone(),
                    p.clone(),
                    witness.ops.components,
                    witness.params.components,
                ),
                SearchOutcome::CapExceeded { reason } => Err(PolyError::SearchCap(reason)),
                other => Err(PolyError::Unsupported(format!("no strict right unitor: {}", describe(&other)))),
            }
        }
    }
}

fn describe(o: &SearchOutcome) -> String {
    match o {
        SearchOutcome::Found { .. } => "only a witness in the other direction".into(),
        SearchOutcome::NotEquivalent { obstruction } => obstruction.clone(),
        SearchOutcome::NoStrictWitness => "no strictly natural witness".into(),
        SearchOutcome::CapExceeded { reason } => format!("cap exceeded: {reason}"),
    }
}

#[derive(Clone, Debug)]
pub enum TwoCellOp {
    /// `ψ ∘ φ`.
    Vertical(PolynomialMorphism, PolynomialMorphism),
    /// `P ⊗ φ`.
    WhiskerLeft(Arc<Polynomial>, PolynomialMorphism),
    /// `φ ⊗ Q`.
    WhiskerRight(PolynomialMorphism, Arc<Polynomial>),
}

pub fn compose_2cells(op: &TwoCellOp, cap: u64) -> Result<PolynomialMorphism, PolyError> {
    match op {
        TwoCellOp::Vertical(phi, psi) => phi.then(psi),
        TwoCellOp::WhiskerLeft(p, phi) => whisker_left(p, phi, cap),
        TwoCellOp::WhiskerRight(phi, q) => whisker_right(phi, q, cap),
    }
}

/// `tot(ops_Q) → tot(ops_Q')` of a 2-cell.
fn ops_total_map(phi: &PolynomialMorphism) -> GroupoidFunctor {
    tot_map(
        phi.source.ops_total(),
        phi.target.ops_total(),
        &GroupoidFunctor::identity(phi.source.target().clone()),
        &phi.ops.components,
    )
}

/// Image of a composite operation's section under a map on either side.
fn op_image(target: &Composite, k: usize, outer: usize, section_mor: &[usize]) -> usize {
    let section = target.inner.sections[outer].index_of(section_mor).expect("image is a section");
    target.poly.ops_total().object(target.op_index(crate::poly::CompositeOp { k, outer, section })).1
}

/// `P ⊗ Q' → P ⊗ Q` for `φ: Q' → Q`. Needs every parameter component of
/// `φ` to be an isomorphism, so that sections can be moved along it.
pub fn whisker_left(p: &Arc<Polynomial>, phi: &PolynomialMorphism, cap: u64) -> Result<PolynomialMorphism, PolyError> {
    let (q1, q2) = (&phi.source, &phi.target);
    let c1 = compose(p, q1, cap)?;
    let c2 = compose(p, q2, cap)?;
    let top = ops_total_map(phi);
    let jg = q1.source();
    // Θ_d: PT_{Q'}(d) → PT_Q(φ d) and its inverse.
    let theta = |d: usize| -> Result<(GroupoidFunctor, GroupoidFunctor), PolyError> {
        let eta: Vec<GroupoidFunctor> =
            (0..jg.object_count()).map(|j| phi.params.components[q1.base_object(j, d)].clone()).collect();
        let th = tot_map(q1.param_total(d), q2.param_total(top.obj(d)), &GroupoidFunctor::identity(jg.clone()), &eta);
        let inv = th
            .inverse()
            .ok_or_else(|| PolyError::Unsupported("whiskering on the left needs invertible parameter maps".into()))?;
        Ok((th, inv))
    };
    let thetas: Vec<(GroupoidFunctor, GroupoidFunctor)> = (0..q1.op_count()).map(theta).collect::<Result<_, _>>()?;
    let (a, b) = (Arc::new(c1.poly.clone()), Arc::new(c2.poly.clone()));
    let kg = q1.target();
    let section_image = |t: usize| -> (usize, Vec<usize>) {
        let op = c1.op(t);
        let (_, mors) = c1.inner.sections[op.outer].maps(op.section);
        (top.obj(op.outer), thetas[op.outer].1.morphism_map.iter().map(|&m| mors[m]).collect())
    };
    let ops = (0..kg.object_count())
        .map(|k| {
            let tot1 = a.ops_total();
            functor(
                a.ops().fiber(k),
                b.ops().fiber(k),
                |x| {
                    let (d, s) = section_image(tot1.object_index(k, x));
                    op_image(&c2, k, d, &s)
                },
                |m| {
                    let fib = a.ops().fiber(k);
                    let (x1, x2) = (fib.src(m), fib.dst(m));
                    let (phi_q, psi) = c1.inner.decode_morphism(k, m);
                    let d2 = c1.op(tot1.object_index(k, x2)).outer;
                    let nu = c1.inner.sections[d2].components_of(psi);
                    let inv = &thetas[d2].1;
                    let comps: Vec<usize> = inv.object_map.iter().map(|&rho| nu[rho]).collect();
                    let phi_img = phi.ops.components[k].mor(phi_q);
                    let (e1, s1) = section_image(tot1.object_index(k, x1));
                    let (e2, s2) = section_image(tot1.object_index(k, x2));
                    let i1 = c2.inner.sections[e1].index_of(&s1).expect("section");
                    let i2 = c2.inner.sections[e2].index_of(&s2).expect("section");
                    let kappa = q2.ops_total().morphism_index(kg.identity(k), phi_img);
                    let src = c2.inner.section_family.transport(kappa).obj(i1);
                    let h = c2.inner.sections[e2].transformation_index(src, i2, &comps).expect("natural");
                    c2.inner.sigma.totals[k].morphism_index(phi_img, h)
                },
            )
        })
        .collect::<Vec<_>>();
    let objects: Vec<usize> = (0..a.op_count())
        .map(|t| {
            let (k, _) = a.ops_total().object(t);
            let (d, s) = section_image(t);
            b.ops_total().object_index(k, op_image(&c2, k, d, &s))
        })
        .collect();
    let params = (0..a.params_base().object_count())
        .map(|bi| {
            let (i, t) = a.split_base_object(bi);
            let op = c1.op(t);
            let (objs, _) = c1.inner.sections[op.outer].maps(op.section);
            let src = &c1.fiber_totals[bi];
            let dst = &c2.fiber_totals[b.base_object(i, objects[t])];
            let eta: Vec<GroupoidFunctor> = objs
                .iter()
                .map(|&o| GroupoidFunctor::identity(p.params().fiber(p.base_object(i, o)).clone()))
                .collect();
            tot_map(src, dst, &thetas[op.outer].0, &eta)
        })
        .collect();
    PolynomialMorphism::new(a, b, ops, params)
}

/// `P ⊗ Q → P' ⊗ Q` for `φ: P → P'`.
pub fn whisker_right(phi: &PolynomialMorphism, q: &Arc<Polynomial>, cap: u64) -> Result<PolynomialMorphism, PolyError> {
    let (p1, p2) = (&phi.source, &phi.target);
    let c1 = compose(p1, q, cap)?;
    let c2 = compose(p2, q, cap)?;
    let top = ops_total_map(phi);
    let (a, b) = (Arc::new(c1.poly.clone()), Arc::new(c2.poly.clone()));
    let kg = q.target();
    let section_image = |t: usize| -> (usize, Vec<usize>) {
        let op = c1.op(t);
        let (_, mors) = c1.inner.sections[op.outer].maps(op.section);
        (op.outer, mors.iter().map(|&m| top.mor(m)).collect())
    };
    let ops = (0..kg.object_count())
        .map(|k| {
            let tot1 = a.ops_total();
            functor(
                a.ops().fiber(k),
                b.ops().fiber(k),
                |x| {
                    let (d, s) = section_image(tot1.object_index(k, x));
                    op_image(&c2, k, d, &s)
                },
                |m| {
                    let fib = a.ops().fiber(k);
                    let (x1, x2) = (fib.src(m), fib.dst(m));
                    let (phi_q, psi) = c1.inner.decode_morphism(k, m);
                    let d2 = c1.op(tot1.object_index(k, x2)).outer;
                    let comps: Vec<usize> =
                        c1.inner.sections[d2].components_of(psi).iter().map(|&n| top.mor(n)).collect();
                    let (e1, s1) = section_image(tot1.object_index(k, x1));
                    let (e2, s2) = section_image(tot1.object_index(k, x2));
                    let i1 = c2.inner.sections[e1].index_of(&s1).expect("section");
                    let i2 = c2.inner.sections[e2].index_of(&s2).expect("section");
                    let kappa = q.ops_total().morphism_index(kg.identity(k), phi_q);
                    let src = c2.inner.section_family.transport(kappa).obj(i1);
                    let h = c2.inner.sections[e2].transformation_index(src, i2, &comps).expect("natural");
                    c2.inner.sigma.totals[k].morphism_index(phi_q, h)
                },
            )
        })
        .collect::<Vec<_>>();
    let params = (0..a.params_base().object_count())
        .map(|bi| {
            let (i, t) = a.split_base_object(bi);
            let (k, _) = a.ops_total().object(t);
            let (d, s) = section_image(t);
            let t2 = b.ops_total().object_index(k, op_image(&c2, k, d, &s));
            let src = &c1.fiber_totals[bi];
            let dst = &c2.fiber_totals[b.base_object(i, t2)];
            let op = c1.op(t);
            let (objs, _) = c1.inner.sections[op.outer].maps(op.section);
            let pt = q.param_total(op.outer);
            let eta: Vec<GroupoidFunctor> = (0..pt.groupoid.object_count())
                .map(|rho| phi.params.components[p1.base_object(i, objs[rho])].clone())
                .collect();
            tot_map(src, dst, &GroupoidFunctor::identity(pt.groupoid.clone()), &eta)
        })
        .collect();
    PolynomialMorphism::new(a, b, ops, params)
}

#[derive(Clone, Debug)]
pub enum Coherence {
    Pentagon(Arc<Polynomial>, Arc<Polynomial>, Arc<Polynomial>, Arc<Polynomial>),
    Triangle(Arc<Polynomial>, Arc<Polynomial>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoherenceVerdict {
    Equal,
    /// The two composite 2-cells differ; names the first differing layer.
    Different {
        layer: String,
    },
}

fn compare(lhs: &PolynomialMorphism, rhs: &PolynomialMorphism) -> CoherenceVerdict {
    let differs = |a: &[GroupoidFunctor], b: &[GroupoidFunctor]| {
        a.iter().zip(b).position(|(f, g)| f.object_map != g.object_map || f.morphism_map != g.morphism_map)
    };
    if let Some(k) = differs(&lhs.ops.components, &rhs.ops.components) {
        return CoherenceVerdict::Different { layer: format!("operations over {k}") };
    }
    if let Some(b) = differs(&lhs.params.components, &rhs.params.components) {
        return CoherenceVerdict::Different { layer: format!("parameters at {b}") };
    }
    CoherenceVerdict::Equal
}

/// Builds both sides of a coherence law and compares them as witness data.
pub fn check_coherence(kind: &Coherence, caps: &Caps) -> Result<CoherenceVerdict, PolyError> {
    let cap = caps.candidates;
    let (lhs, rhs) = match kind {
        Coherence::Triangle(p, q) => {
            let id = Arc::new(identity_poly(p.target()));
            let lhs = assoc(p, &id, q, cap)?.then(&whisker_left(p, &unit_l(q, cap)?, cap)?)?;
            let rhs = whisker_right(&law_witness(&Law::UnitR(p.clone()), caps)?, q, cap)?;
            (lhs, rhs)
        }
        Coherence::Pentagon(p, q, r, s) => {
            let pq = Arc::new(compose(p, q, cap)?.poly);
            let qr = Arc::new(compose(q, r, cap)?.poly);
            let rs = Arc::new(compose(r, s, cap)?.poly);
            let lhs = assoc(&pq, r, s, cap)?.then(&assoc(p, q, &rs, cap)?)?;
            let rhs = whisker_right(&assoc(p, q, r, cap)?, s, cap)?
                .then(&assoc(p, &qr, s, cap)?)?
                .then(&whisker_left(p, &assoc(q, r, s, cap)?, cap)?)?;
            (lhs, rhs)
        }
    };
    Ok(compare(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::Family;
    use crate::grpd::FiniteGroupoid;
    use crate::poly::{discrete_poly, monomial, DiscreteOp, MorphismReport};

    const CAP: u64 = 1_000_000;

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    fn assert_equivalence(w: &PolynomialMorphism) {
        match validate_poly_morphism(w) {
            Ok(MorphismReport { is_equivalence: true, .. }) => {}
            other => panic!("not a valid equivalence: {other:?}"),
        }
    }

    /// One unary operation over a two-object target whose parameter lies
    /// over either source object, with a symmetric source.
    fn mixed() -> Arc<Polynomial> {
        let i = arc(FiniteGroupoid::cyclic(2));
        let j = arc(FiniteGroupoid::codiscrete(2));
        let ops = Family::constant(j, arc(FiniteGroupoid::discrete(1)));
        arc(Polynomial::new(i, ops, |base, _| Family::constant(base.clone(), arc(FiniteGroupoid::discrete(2)))))
    }

    #[test]
    fn unitors_on_monomials() {
        for n in 0..4 {
            let p = arc(monomial(n));
            assert_equivalence(&unit_l(&p, CAP).unwrap());
            assert_equivalence(&unit_r(&p, CAP).unwrap());
        }
    }

    #[test]
    fn unitors_over_groupoids() {
        let p = mixed();
        let l = unit_l(&p, CAP).unwrap();
        assert_equivalence(&l);
        let r = law_witness(&Law::UnitR(p.clone()), &Caps::default()).unwrap();
        assert_equivalence(&r);
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let id = arc(identity_poly(&z2));
        assert_equivalence(&unit_l(&id, CAP).unwrap());
        assert_equivalence(&unit_r(&id, CAP).unwrap());
    }

    #[test]
    fn associator_on_monomials() {
        let (x, x2) = (arc(monomial(1)), arc(monomial(2)));
        let w = assoc(&x2, &x2, &x, CAP).unwrap();
        assert_equivalence(&w);
        assert!(validate_poly_morphism(&w).unwrap().is_isomorphism);
        assert_eq!(w.source.params().fiber(0).object_count(), 4);
        assert_equivalence(&assoc(&x, &x, &x, CAP).unwrap());
    }

    #[test]
    fn associator_over_groupoids() {
        let p = mixed();
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let c2 = arc(FiniteGroupoid::codiscrete(2));
        let (idz, idc) = (arc(identity_poly(&z2)), arc(identity_poly(&c2)));
        let w = assoc(&idz, &p, &idc, CAP).unwrap();
        assert_equivalence(&w);
        assert!(validate_poly_morphism(&w).unwrap().is_isomorphism);
    }

    #[test]
    fn whiskers_and_vertical() {
        let x2 = arc(monomial(2));
        let autos = crate::poly::enumerate_self_equivalences(&x2, &Caps::default()).unwrap();
        let swap = &autos[1];
        let id = PolynomialMorphism::identity(x2.clone());
        assert!(compose_2cells(&TwoCellOp::Vertical(swap.clone(), swap.clone()), CAP).unwrap().same_data(&id));
        let inv = swap.inverse().unwrap();
        assert!(swap.then(&inv).unwrap().same_data(&id));
        let x = arc(monomial(1));
        assert_equivalence(&whisker_left(&x, swap, CAP).unwrap());
        assert_equivalence(&whisker_right(swap, &x2, CAP).unwrap());
    }

    #[test]
    fn coherence_examples() {
        let (x, x2) = (arc(monomial(1)), arc(monomial(2)));
        let caps = Caps::default();
        assert_eq!(check_coherence(&Coherence::Triangle(x.clone(), x.clone()), &caps), Ok(CoherenceVerdict::Equal));
        assert_eq!(
            check_coherence(&Coherence::Pentagon(x.clone(), x.clone(), x.clone(), x.clone()), &caps),
            Ok(CoherenceVerdict::Equal)
        );
        assert_eq!(
            check_coherence(&Coherence::Pentagon(x2.clone(), x.clone(), x.clone(), x.clone()), &caps),
            Ok(CoherenceVerdict::Equal)
        );
    }

    #[test]
    fn coherence_on_two_colors() {
        let p = arc(discrete_poly(
            2,
            2,
            &[
                DiscreteOp { color: 0, param_colors: vec![0, 1] },
                DiscreteOp { color: 1, param_colors: vec![1] },
                DiscreteOp { color: 1, param_colors: vec![] },
            ],
        ));
        let caps = Caps::default();
        assert_eq!(check_coherence(&Coherence::Triangle(p.clone(), p.clone()), &caps), Ok(CoherenceVerdict::Equal));
        assert_eq!(
            check_coherence(&Coherence::Pentagon(p.clone(), p.clone(), p.clone(), p.clone()), &caps),
            Ok(CoherenceVerdict::Equal)
        );
    }

    #[test]
    fn pentagon_over_groupoids() {
        let p = mixed();
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let c2 = arc(FiniteGroupoid::codiscrete(2));
        let (idz, idc) = (arc(identity_poly(&z2)), arc(identity_poly(&c2)));
        assert_eq!(
            check_coherence(&Coherence::Pentagon(idz.clone(), p, idc.clone(), idc), &Caps::default()),
            Ok(CoherenceVerdict::Equal)
        );
    }
}
