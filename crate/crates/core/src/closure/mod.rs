//! Cartesian closure: polynomials `I ⊔ J ↝ K` correspond to polynomials
//! `I ↝ Exp(J) × K`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::bij::{
    build_exp, build_exp_on, exp_compose, exp_fiber_elements, exp_hom, exp_inverse, fam_to_exp, skeletal_point,
    ExpGroupoid, ExpMorphism, ExpPoint, FamToExpError, TruncationConfig,
};
use crate::cart::{injection, Side};
use crate::fam::{is_finite_family, sigma_first, tot_map, Family, FiniteVerdict, Total};
use crate::grpd::{Builder, FiniteGroupoid, GroupoidFunctor, Grpd, Labeled};
use crate::poly::{PolyError, Polynomial};

/// Largest operation total, in composable pairs, that currying will build.
pub const TOTAL_PAIR_CAP: u64 = 20_000_000;

/// `Exp(J) × K`, with object `(p, k)` at `p * |K| + k`.
pub fn exp_hom_object(j: &Grpd, k: &Grpd, cfg: TruncationConfig) -> FiniteGroupoid {
    build_exp(j, cfg).groupoid.product(k)
}

/// The classifying points of the `J`-parameters of each operation of `P`,
/// and the induced morphisms of `Exp(J)` along operation morphisms.
struct Canonical {
    points: Vec<ExpPoint>,
    morphisms: Vec<ExpMorphism>,
}

fn split_source(p: &Polynomial, left_objects: usize) -> Result<(Grpd, Grpd), PolyError> {
    let (i, j) = p
        .source()
        .split_coproduct(left_objects)
        .ok_or_else(|| PolyError::Boundary(format!("source is not a coproduct after {left_objects} objects")))?;
    Ok((Arc::new(i), Arc::new(j)))
}

fn canonical(p: &Polynomial, i: &Grpd, j: &Grpd, cfg: TruncationConfig) -> Result<Canonical, PolyError> {
    let t = &p.ops_total().groupoid;
    let (ni, mi) = (i.object_count(), i.morphism_count());
    let mut points = Vec::with_capacity(t.object_count());
    let mut totals: Vec<Total> = Vec::with_capacity(t.object_count());
    for o in 0..t.object_count() {
        let along = GroupoidFunctor::new(
            j.clone(),
            p.params_base().clone(),
            (0..j.object_count()).map(|y| p.base_object(ni + y, o)).collect(),
            (0..j.morphism_count()).map(|w| p.base_morphism(mi + w, t.identity(o))).collect(),
        );
        let family = p.params().restrict(&along);
        let (k, c) = p.op(o);
        let (point, _) = fam_to_exp(&family, cfg).map_err(|e| match e {
            FamToExpError::NotFinite { .. } => {
                PolyError::Unsupported(format!("operation ({k}, {c}): J-parameters are not finite: {e}"))
            }
            FamToExpError::TooLarge { size, max } => PolyError::Unsupported(format!(
                "operation ({k}, {c}) has {size} J-parameters, above the truncation bound {max}"
            )),
        })?;
        points.push(point);
        totals.push(family.tot());
    }
    let id_j = GroupoidFunctor::identity(j.clone());
    let morphisms = (0..t.morphism_count())
        .map(|kappa| {
            let (o, o2) = (t.src(kappa), t.dst(kappa));
            let eta: Vec<GroupoidFunctor> = (0..j.object_count())
                .map(|y| p.params().transport(p.base_morphism(mi + j.identity(y), kappa)).clone())
                .collect();
            let map = tot_map(&totals[o], &totals[o2], &id_j, &eta);
            let (from, to) = (totals[o].groupoid.components(), totals[o2].groupoid.components());
            let mut sigma = Vec::with_capacity(from.len());
            let mut alphas = Vec::with_capacity(from.len());
            for &r in &from.representatives {
                let x = map.obj(r);
                let target = to.component_of[x];
                let h = totals[o2].groupoid.hom(x, to.representatives[target])[0];
                sigma.push(target);
                alphas.push(totals[o2].morphism(h).0);
            }
            let sigma = crate::bij::Permutation::new(sigma).expect("components correspond");
            ExpMorphism { sigma, alphas }
        })
        .collect();
    Ok(Canonical { points, morphisms })
}

/// A fiber of the curried operations: pairs `(c, ι)` of an operation and
/// an isomorphism from its classifying point.
struct CurryFiber {
    objects: Vec<(usize, ExpMorphism)>,
    index: HashMap<(usize, ExpMorphism), usize>,
    labeled: Labeled<usize>,
}

fn missing(what: &str) -> PolyError {
    PolyError::Unsupported(format!("the exponential has no morphism for {what}; it is not closed under permutations"))
}

/// Curries `P: I ⊔ J ↝ K`, where `I` has `left_objects` objects, into a
/// polynomial `I ↝ Exp(J) × K` over the given exponential of `J`.
///
/// The operations over `(p, k)` are pairs of an operation `c` over `k`
/// and an isomorphism from the point classifying the `J`-parameters of
/// `c` to `p`; parameters are the `I`-parameters of `c`.
pub fn curry(p: &Polynomial, left_objects: usize, exp: &ExpGroupoid) -> Result<Polynomial, PolyError> {
    let (i, j) = split_source(p, left_objects)?;
    if *exp.colors != *j {
        return Err(PolyError::Boundary("the exponential is not built over the right summand".into()));
    }
    let can = canonical(p, &i, &j, exp.cfg)?;
    let (kg, pops, t) = (p.target(), p.ops(), p.ops_total());
    let (nk, mk) = (kg.object_count(), kg.morphism_count());
    let target: Grpd = Arc::new(exp.groupoid.product(kg));

    let mut fibers = Vec::with_capacity(target.object_count());
    for x in 0..target.object_count() {
        let (pe, k) = (x / nk, x % nk);
        let fiber = pops.fiber(k);
        let mut objects = Vec::new();
        for c in 0..fiber.object_count() {
            let o = t.object_index(k, c);
            for iota in exp_hom(&j, &can.points[o], exp.point(pe), exp.permutes()) {
                objects.push((c, iota));
            }
        }
        let index: HashMap<(usize, ExpMorphism), usize> =
            objects.iter().cloned().enumerate().map(|(a, key)| (key, a)).collect();
        let mut builder = Builder::new(objects.len());
        for (a, (c, iota)) in objects.iter().enumerate() {
            for &psi in fiber.outgoing(*c) {
                let c2 = fiber.dst(psi);
                let back = exp_inverse(&j, &can.morphisms[t.morphism_index(kg.identity(k), psi)]);
                let iota2 = exp_compose(&j, iota, &back);
                let b = *index.get(&(c2, iota2)).ok_or_else(|| missing("an operation morphism"))?;
                builder.add(a, b, psi);
            }
        }
        let labeled =
            builder.finish(|a| fiber.identity(objects[a].0), |&g, &f| fiber.compose(g, f), |&f| fiber.inverse(f));
        fibers.push(CurryFiber { objects, index, labeled });
    }

    let grpds: Vec<Grpd> = fibers.iter().map(|f| Arc::new(f.labeled.groupoid.clone())).collect();
    let mut transports = Vec::with_capacity(target.morphism_count());
    for m in 0..target.morphism_count() {
        let (rho, v) = (exp.morphism(m / mk), m % mk);
        let (x, x2) = (target.src(m), target.dst(m));
        let (from, to) = (&fibers[x], &fibers[x2]);
        let tv = pops.transport(v);
        let k2 = kg.dst(v);
        let object_map = from
            .objects
            .iter()
            .map(|(c, iota)| {
                let c2 = tv.obj(*c);
                let lambda = t.morphism_index(v, pops.fiber(k2).identity(c2));
                let back = exp_inverse(&j, &can.morphisms[lambda]);
                let iota2 = exp_compose(&j, rho, &exp_compose(&j, iota, &back));
                to.index.get(&(c2, iota2)).copied().ok_or_else(|| missing("a transport"))
            })
            .collect::<Result<Vec<usize>, PolyError>>()?;
        let fg = &from.labeled.groupoid;
        let morphism_map = (0..fg.morphism_count())
            .map(|f| {
                let label = tv.mor(from.labeled.labels[f]);
                to.labeled.index_of(object_map[fg.src(f)], object_map[fg.dst(f)], &label)
            })
            .collect();
        transports.push(GroupoidFunctor::new(grpds[x].clone(), grpds[x2].clone(), object_map, morphism_map));
    }
    let ops = Family::new(target.clone(), grpds, transports);
    if ops.total_composable_pairs() > TOTAL_PAIR_CAP {
        return Err(PolyError::CapExceeded { cap: TOTAL_PAIR_CAP });
    }

    Ok(Polynomial::new(i.clone(), ops, |base, total| {
        let (n, m) = (total.groupoid.object_count(), total.groupoid.morphism_count());
        let underlying_op = |op: usize| {
            let (x, a) = total.object(op);
            let k = x % nk;
            t.object_index(k, fibers[x].objects[a].0)
        };
        let params_fibers = (0..base.object_count())
            .map(|b| p.params().fiber(p.base_object(b / n, underlying_op(b % n))).clone())
            .collect();
        let params_transports = (0..base.morphism_count())
            .map(|bm| {
                let (u, mu) = (bm / m, bm % m);
                let (f, psi) = total.morphism(mu);
                let label = fibers[target.dst(f)].labeled.labels[psi];
                let kappa = t.morphism_index(f % mk, label);
                p.params().transport(p.base_morphism(u, kappa)).clone()
            })
            .collect();
        Family::new(base.clone(), params_fibers, params_transports)
    }))
}

/// [`curry`] over the full exponential truncated at `cfg`.
pub fn curry_full(p: &Polynomial, left_objects: usize, cfg: TruncationConfig) -> Result<Polynomial, PolyError> {
    let (_, j) = split_source(p, left_objects)?;
    curry(p, left_objects, &build_exp(&j, cfg))
}

/// The full subgroupoid of `Exp(J)` on one point for each isomorphism
/// class that classifies the `J`-parameters of some operation of `P`.
/// Currying over it is equivalent to currying over the whole exponential
/// with the empty components dropped.
pub fn support_exp(p: &Polynomial, left_objects: usize, cfg: TruncationConfig) -> Result<ExpGroupoid, PolyError> {
    let (i, j) = split_source(p, left_objects)?;
    let can = canonical(p, &i, &j, cfg)?;
    let points: BTreeSet<ExpPoint> = can.points.iter().map(|q| skeletal_point(&j, q)).collect();
    Ok(build_exp_on(&j, cfg, points.into_iter().collect()))
}

/// Uncurries `Q: I ↝ Exp(J) × K` into `I ⊔ J ↝ K`. Operations over `k`
/// are pairs of a point `p` and an operation of `Q` over `(p, k)`;
/// parameters at `I` are those of `Q` and parameters at `j` are the
/// elements of `p` over `j`.
pub fn uncurry(q: &Polynomial, exp: &ExpGroupoid, k: &Grpd) -> Result<Polynomial, PolyError> {
    if **q.target() != exp.groupoid.product(k) {
        return Err(PolyError::Boundary("target is not the exponential times K".into()));
    }
    let (i, j) = (q.source().clone(), exp.colors.clone());
    let (ni, mi) = (i.object_count(), i.morphism_count());
    let (nk, mk) = (k.object_count(), k.morphism_count());
    let source: Grpd = Arc::new(i.coproduct(&j));
    let sigma = sigma_first(q.ops(), &exp.groupoid, k);
    let qt = q.ops_total();
    Ok(Polynomial::new(source.clone(), sigma.family, |base, total| {
        let (n, m) = (total.groupoid.object_count(), total.groupoid.morphism_count());
        // Operation t of the result as (point, operation of Q).
        let decode = |t: usize| {
            let (kk, a) = total.object(t);
            let (pe, c) = sigma.totals[kk].object(a);
            (pe, qt.object_index(pe * nk + kk, c))
        };
        let decode_morphism = |mu: usize| {
            let (v, a) = total.morphism(mu);
            let (rho, phi) = sigma.totals[k.dst(v)].morphism(a);
            (rho, qt.morphism_index(rho * mk + v, phi))
        };
        let elements = |s: usize, t: usize| exp_fiber_elements(&j, exp.point(decode(t).0), s - ni);
        let fibers: Vec<Grpd> = (0..base.object_count())
            .map(|b| {
                let (s, t) = (b / n, b % n);
                if s < ni {
                    q.params().fiber(q.base_object(s, decode(t).1)).clone()
                } else {
                    Arc::new(FiniteGroupoid::discrete(elements(s, t).len()))
                }
            })
            .collect();
        let transports = (0..base.morphism_count())
            .map(|bm| {
                let (sm, mu) = (bm / m, bm % m);
                let (rho, kappa) = decode_morphism(mu);
                if sm < mi {
                    return q.params().transport(q.base_morphism(sm, kappa)).clone();
                }
                let w = sm - mi;
                let (t, t2) = (total.groupoid.src(mu), total.groupoid.dst(mu));
                let (s, s2) = (source.src(sm), source.dst(sm));
                let label = exp.morphism(rho);
                let targets: HashMap<(usize, usize), usize> =
                    elements(s2, t2).into_iter().enumerate().map(|(e, x)| (x, e)).collect();
                let map: Vec<usize> = elements(s, t)
                    .into_iter()
                    .map(|(idx, beta)| {
                        let moved = j.compose(w, j.compose(beta, j.inverse(label.alphas[idx])));
                        targets[&(label.sigma.apply(idx), moved)]
                    })
                    .collect();
                let (src, dst) = (&fibers[base.src(bm)], &fibers[base.dst(bm)]);
                GroupoidFunctor::new(src.clone(), dst.clone(), map.clone(), map)
            })
            .collect();
        Family::new(base.clone(), fibers, transports)
    }))
}

/// Finiteness of a family over `I ⊔ J` and of its two restrictions.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitFiniteness {
    pub left: FiniteVerdict,
    pub right: FiniteVerdict,
    pub combined: FiniteVerdict,
}

impl SplitFiniteness {
    /// Cardinalities of the left, right and combined totals, where finite.
    pub fn cardinalities(&self) -> (Option<usize>, Option<usize>, Option<usize>) {
        (self.left.cardinality(), self.right.cardinality(), self.combined.cardinality())
    }
}

/// Decides finiteness of `A` over `I ⊔ J` from its restrictions to the
/// summands. `I` has `left_objects` objects.
pub fn split_finiteness(a: &Family, left_objects: usize) -> Result<SplitFiniteness, PolyError> {
    let sum = a.base();
    let (i, j) = sum
        .split_coproduct(left_objects)
        .ok_or_else(|| PolyError::Boundary(format!("base is not a coproduct after {left_objects} objects")))?;
    let (i, j): (Grpd, Grpd) = (Arc::new(i), Arc::new(j));
    let left = is_finite_family(&a.restrict(&injection(Side::Left, &i, &j, sum)));
    let right = is_finite_family(&a.restrict(&injection(Side::Right, &i, &j, sum)));
    Ok(SplitFiniteness { left, right, combined: is_finite_family(a) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bij::{build_exp_set, build_exp_skeletal};
    use crate::poly::{
        enumerate_self_equivalences, is_finitary, monomial, search_equivalence, validate_polynomial, Caps,
        SearchOutcome,
    };
    use crate::rational::Rational;

    fn arc<T>(x: T) -> Arc<T> {
        Arc::new(x)
    }

    fn point() -> Grpd {
        arc(FiniteGroupoid::discrete(1))
    }

    fn cfg(n: usize) -> TruncationConfig {
        TruncationConfig::new(n)
    }

    fn equivalent(p: &Polynomial, q: &Polynomial) -> bool {
        matches!(search_equivalence(p, q, &Caps::wide()), Ok(SearchOutcome::Found { .. }))
    }

    #[test]
    fn internal_hom_objects() {
        let h = exp_hom_object(&point(), &point(), cfg(2));
        assert_eq!(h.object_count(), 3);
        assert_eq!(h.cardinality(), Rational::new(5, 2));
        assert_eq!(exp_hom_object(&point(), &arc(FiniteGroupoid::discrete(2)), cfg(0)), FiniteGroupoid::discrete(2));
        let h = exp_hom_object(&arc(FiniteGroupoid::cyclic(2)), &point(), cfg(1));
        assert_eq!(h.automorphisms(1).len(), 2);
    }

    #[test]
    fn curry_of_the_square() {
        // X² as a polynomial ∅ ⊔ point ↝ point.
        let x2 = monomial(2);
        let c = curry_full(&x2, 0, cfg(4)).unwrap();
        assert_eq!(validate_polynomial(&c), Ok(()));
        assert!(is_finitary(&c).is_finitary());
        let sizes: Vec<usize> = c.ops().fibers().iter().map(|f| f.object_count()).collect();
        assert_eq!(sizes, vec![0, 0, 2, 0, 0]);
        assert_eq!(**c.ops().fiber(2), FiniteGroupoid::discrete(2));
        assert_eq!(enumerate_self_equivalences(&c, &Caps::wide()).unwrap().len(), 2);

        let set = build_exp_set(&point(), cfg(4));
        let c = curry(&x2, 0, &set).unwrap();
        assert_eq!(validate_polynomial(&c), Ok(()));
        assert_eq!(c.ops().fiber(2).object_count(), 1);
        assert_eq!(enumerate_self_equivalences(&c, &Caps::wide()).unwrap().len(), 1);
    }

    #[test]
    fn curry_without_j_parameters() {
        let x0 = monomial(0);
        let c = curry_full(&x0, 0, cfg(4)).unwrap();
        let sizes: Vec<usize> = c.ops().fibers().iter().map(|f| f.object_count()).collect();
        assert_eq!(sizes, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn curry_rejects_large_arity() {
        let err = curry_full(&monomial(3), 0, cfg(2)).unwrap_err();
        assert!(err.to_string().contains("operation (0, 0)"), "{err}");
    }

    #[test]
    fn uncurry_examples() {
        let exp = build_exp(&point(), cfg(4));
        let x2 = monomial(2);
        let back = uncurry(&curry(&x2, 0, &exp).unwrap(), &exp, &point()).unwrap();
        assert_eq!(validate_polynomial(&back), Ok(()));
        assert!(equivalent(&back, &x2));

        // Q supported at the empty point has no J-parameters.
        let k = point();
        let target: Grpd = arc(exp.groupoid.product(&k));
        let fibers: Vec<Grpd> =
            (0..target.object_count()).map(|x| arc(FiniteGroupoid::discrete(usize::from(x == 0)))).collect();
        let ops = Family::from_component_actions(target.clone(), fibers, |c, _| {
            let d = arc(FiniteGroupoid::discrete(usize::from(c == 0)));
            GroupoidFunctor::identity(d)
        });
        let q = Polynomial::new(point(), ops, |base, _| Family::constant(base.clone(), point()));
        assert_eq!(validate_polynomial(&q), Ok(()));
        let u = uncurry(&q, &exp, &k).unwrap();
        assert_eq!(validate_polynomial(&u), Ok(()));
        assert_eq!(u.op_count(), 1);
        assert_eq!(u.params().fiber(u.base_object(1, 0)).object_count(), 0);
        assert_eq!(u.params().fiber(u.base_object(0, 0)).object_count(), 1);
    }

    #[test]
    fn uncurry_over_a_nontrivial_group() {
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let exp = build_exp(&z2, cfg(1));
        let k = point();
        let target: Grpd = arc(exp.groupoid.product(&k));
        let ops = Family::from_component_actions(
            target.clone(),
            (0..target.components().len()).map(|c| arc(FiniteGroupoid::discrete(usize::from(c == 1)))).collect(),
            |c, _| GroupoidFunctor::identity(arc(FiniteGroupoid::discrete(usize::from(c == 1)))),
        );
        let q = Polynomial::new(arc(FiniteGroupoid::discrete(0)), ops, |base, _| Family::empty(base.clone()));
        let u = uncurry(&q, &exp, &k).unwrap();
        assert_eq!(validate_polynomial(&u), Ok(()));
        assert_eq!(u.op_count(), 1);
        assert_eq!(**u.params().fiber(u.base_object(0, 0)), FiniteGroupoid::discrete(2));
        assert!(is_finitary(&u).is_finitary());
        assert!(equivalent(&curry(&u, 0, &exp).unwrap(), &q));
    }

    #[test]
    fn round_trips_with_groupoid_colors() {
        // P: point ⊔ Z/2 ↝ point with one operation: two parameters at the
        // left summand and one at the right, on which Z/2 acts freely.
        let z2 = arc(FiniteGroupoid::cyclic(2));
        let source: Grpd = arc(point().coproduct(&z2));
        let ops = Family::constant(point(), point());
        let p = Polynomial::new(source, ops, |base, _| {
            let d2 = arc(FiniteGroupoid::discrete(2));
            let swap = GroupoidFunctor::new(d2.clone(), d2.clone(), vec![1, 0], vec![1, 0]);
            let fibers = vec![d2.clone(), d2.clone()];
            // Base morphisms: identity of the left object, then id and the generator of Z/2.
            let transports = vec![GroupoidFunctor::identity(d2.clone()), GroupoidFunctor::identity(d2.clone()), swap];
            Family::new(base.clone(), fibers, transports)
        });
        assert_eq!(validate_polynomial(&p), Ok(()));
        for exp in [build_exp(&z2, cfg(2)), build_exp_skeletal(&z2, cfg(2))] {
            let c = curry(&p, 1, &exp).unwrap();
            assert_eq!(validate_polynomial(&c), Ok(()));
            let back = uncurry(&c, &exp, &point()).unwrap();
            assert_eq!(validate_polynomial(&back), Ok(()));
            assert!(equivalent(&back, &p));
            assert!(equivalent(&curry(&back, 1, &exp).unwrap(), &c));
        }
    }

    #[test]
    fn split_finiteness_examples() {
        let sum: Grpd = arc(point().coproduct(&point()));
        let a = Family::new(
            sum.clone(),
            vec![arc(FiniteGroupoid::discrete(2)), arc(FiniteGroupoid::discrete(3))],
            vec![
                GroupoidFunctor::identity(arc(FiniteGroupoid::discrete(2))),
                GroupoidFunctor::identity(arc(FiniteGroupoid::discrete(3))),
            ],
        );
        let s = split_finiteness(&a, 1).unwrap();
        assert_eq!(s.cardinalities(), (Some(2), Some(3), Some(5)));

        let z2 = arc(FiniteGroupoid::cyclic(2));
        let sum: Grpd = arc(z2.coproduct(&point()));
        let a = Family::constant(sum, point());
        let s = split_finiteness(&a, 1).unwrap();
        assert!(matches!(s.left, FiniteVerdict::NotFinite { automorphisms: 2, .. }));
        assert!(s.right.is_finite());
        assert!(!s.combined.is_finite());

        let empty: Grpd = arc(FiniteGroupoid::discrete(0));
        let s = split_finiteness(&Family::empty(empty), 0).unwrap();
        assert_eq!(s.cardinalities(), (Some(0), Some(0), Some(0)));
    }
}
