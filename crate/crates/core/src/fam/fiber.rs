use std::collections::HashMap;
use std::sync::Arc;

use super::Family;
use crate::grpd::{Builder, GroupoidFunctor, Labeled};

/// Homotopy fibers of `p: E → B` as a family over `B`.
///
/// The fiber at `b` has objects `(e, β: p(e) → b)`, numbered by `e` then by
/// `β`, and morphisms `h: e → e'` with `β' ∘ p(h) = β`. Transport along
/// `g: b → b'` post-composes `β` with `g`.
pub fn fiber_family(p: &GroupoidFunctor) -> Family {
    let e = &p.source;
    let b = &p.target;
    let mut decode: Vec<Vec<(usize, usize)>> = Vec::with_capacity(b.object_count());
    let mut fibers: Vec<Labeled<usize>> = Vec::with_capacity(b.object_count());
    for y in 0..b.object_count() {
        let objects: Vec<(usize, usize)> =
            (0..e.object_count()).flat_map(|x| b.hom(p.obj(x), y).iter().map(move |&beta| (x, beta))).collect();
        let index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let mut builder = Builder::new(objects.len());
        for (k, &(x, beta)) in objects.iter().enumerate() {
            for &h in e.outgoing(x) {
                let target = (e.dst(h), b.compose(beta, b.inverse(p.mor(h))));
                builder.add(k, index[&target], h);
            }
        }
        let labeled = builder.finish(|k| e.identity(objects[k].0), |&g, &f| e.compose(g, f), |&h| e.inverse(h));
        decode.push(objects);
        fibers.push(labeled);
    }
    let index: Vec<HashMap<(usize, usize), usize>> =
        decode.iter().map(|objs| objs.iter().enumerate().map(|(k, &o)| (o, k)).collect()).collect();
    let grpds: Vec<_> = fibers.iter().map(|l| Arc::new(l.groupoid.clone())).collect();
    let transports = (0..b.morphism_count())
        .map(|g| {
            let (y, y2) = (b.src(g), b.dst(g));
            let src = &fibers[y];
            let moved = |k: usize| {
                let (x, beta) = decode[y][k];
                index[y2][&(x, b.compose(g, beta))]
            };
            let object_map = (0..decode[y].len()).map(moved).collect();
            let morphism_map = src
                .groupoid
                .arrows()
                .iter()
                .zip(&src.labels)
                .map(|(a, h)| fibers[y2].index_of(moved(a.src), moved(a.dst), h))
                .collect();
            GroupoidFunctor::new(grpds[y].clone(), grpds[y2].clone(), object_map, morphism_map)
        })
        .collect();
    Family::new(b.clone(), grpds, transports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::validate_family;
    use crate::grpd::FiniteGroupoid;

    #[test]
    fn worked_examples() {
        let z2 = Arc::new(FiniteGroupoid::cyclic(2));
        let fam = fiber_family(&GroupoidFunctor::identity(z2));
        assert!(validate_family(&fam).is_empty());
        let fiber = fam.fiber(0);
        assert_eq!(fiber.object_count(), 2);
        assert_eq!(fiber.components().len(), 1);
        assert!(fiber.has_trivial_automorphisms());

        let d3 = Arc::new(FiniteGroupoid::discrete(3));
        let fam = fiber_family(&GroupoidFunctor::to_point(d3));
        assert_eq!(**fam.fiber(0), FiniteGroupoid::discrete(3));

        let g = Arc::new(FiniteGroupoid::codiscrete(2));
        let empty = Arc::new(FiniteGroupoid::discrete(0));
        let inclusion = GroupoidFunctor::new(empty, g, vec![], vec![]);
        let fam = fiber_family(&inclusion);
        assert!(fam.fibers().iter().all(|f| f.object_count() == 0));
        assert!(validate_family(&fam).is_empty());
    }
}
