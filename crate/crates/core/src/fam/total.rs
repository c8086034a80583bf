use std::collections::HashMap;
use std::sync::Arc;

use super::Family;
use crate::grpd::{Arrow, FiniteGroupoid, GroupoidFunctor, Grpd};

/// The total groupoid of a family together with its projection to the base.
///
/// Objects are pairs `(x, a)` with `a` in the fiber at `x`, numbered fiber
/// by fiber. Morphisms `(x, a) → (y, b)` are pairs `(f, φ)` with `f: x → y`
/// and `φ: T_f(a) → b`; `(g, ψ) ∘ (f, φ) = (g ∘ f, ψ ∘ T_g(φ))`.
#[derive(Clone, Debug)]
pub struct Total {
    pub groupoid: Grpd,
    pub projection: GroupoidFunctor,
    offsets: Vec<usize>,
    objects: Vec<(usize, usize)>,
    morphisms: Vec<(usize, usize)>,
    morphism_index: HashMap<(usize, usize), usize>,
}

impl Family {
    /// The number of composable pairs of morphisms in the total groupoid,
    /// computed without building it.
    pub fn total_composable_pairs(&self) -> u64 {
        let base = self.base();
        let out_degree: Vec<Vec<u64>> = (0..base.object_count())
            .map(|y| {
                (0..self.fiber(y).object_count())
                    .map(|b| {
                        base.outgoing(y)
                            .iter()
                            .map(|&g| {
                                let z = self.fiber(base.dst(g));
                                z.outgoing(self.transport(g).obj(b)).len() as u64
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let mut pairs = 0u64;
        for f in 0..base.morphism_count() {
            let (x, y) = (base.src(f), base.dst(f));
            let (t, target) = (self.transport(f), self.fiber(y));
            for a in 0..self.fiber(x).object_count() {
                for &phi in target.outgoing(t.obj(a)) {
                    pairs = pairs.saturating_add(out_degree[y][target.dst(phi)]);
                }
            }
        }
        pairs
    }

    pub fn tot(&self) -> Total {
        let base = self.base();
        let mut offsets = Vec::with_capacity(base.object_count());
        let mut objects = Vec::new();
        for x in 0..base.object_count() {
            offsets.push(objects.len());
            objects.extend((0..self.fiber(x).object_count()).map(|a| (x, a)));
        }
        let mut morphisms = Vec::new();
        let mut arrows = Vec::new();
        let mut morphism_index = HashMap::new();
        let mut outgoing = vec![Vec::new(); objects.len()];
        for f in 0..base.morphism_count() {
            let (x, y) = (base.src(f), base.dst(f));
            let t = self.transport(f);
            let target_fiber = self.fiber(y);
            for a in 0..self.fiber(x).object_count() {
                for &phi in target_fiber.outgoing(t.obj(a)) {
                    let m = morphisms.len();
                    let (src, dst) = (offsets[x] + a, offsets[y] + target_fiber.dst(phi));
                    morphisms.push((f, phi));
                    arrows.push(Arrow { src, dst });
                    morphism_index.insert((f, phi), m);
                    outgoing[src].push(m);
                }
            }
        }
        let identity_of: Vec<usize> =
            objects.iter().map(|&(x, a)| morphism_index[&(base.identity(x), self.fiber(x).identity(a))]).collect();
        let inverse_of: Vec<usize> = morphisms
            .iter()
            .map(|&(f, phi)| {
                let fi = base.inverse(f);
                let back = self.transport(fi).mor(self.fiber(base.dst(f)).inverse(phi));
                morphism_index[&(fi, back)]
            })
            .collect();
        let mut compose = HashMap::new();
        for (m1, &(f, phi)) in morphisms.iter().enumerate() {
            for &m2 in &outgoing[arrows[m1].dst] {
                let (g, psi) = morphisms[m2];
                let fiber = self.fiber(base.dst(g));
                let composite = (base.compose(g, f), fiber.compose(psi, self.transport(g).mor(phi)));
                compose.insert((m2, m1), morphism_index[&composite]);
            }
        }
        let groupoid = Arc::new(FiniteGroupoid::from_tables(objects.len(), arrows, identity_of, compose, inverse_of));
        let projection = GroupoidFunctor::new(
            groupoid.clone(),
            base.clone(),
            objects.iter().map(|o| o.0).collect(),
            morphisms.iter().map(|m| m.0).collect(),
        );
        Total { groupoid, projection, offsets, objects, morphisms, morphism_index }
    }
}

impl Total {
    /// `(x, a)` for a total object.
    pub fn object(&self, k: usize) -> (usize, usize) {
        self.objects[k]
    }

    pub fn object_index(&self, x: usize, a: usize) -> usize {
        self.offsets[x] + a
    }

    /// `(f, φ)` for a total morphism.
    pub fn morphism(&self, m: usize) -> (usize, usize) {
        self.morphisms[m]
    }

    pub fn morphism_index(&self, f: usize, phi: usize) -> usize {
        self.morphism_index[&(f, phi)]
    }

    pub fn try_morphism_index(&self, f: usize, phi: usize) -> Option<usize> {
        self.morphism_index.get(&(f, phi)).copied()
    }

    /// Objects lying over `x`, as a range of total indices.
    pub fn objects_over(&self, x: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(x + 1).copied().unwrap_or(self.objects.len());
        self.offsets[x]..end
    }

    /// The inclusion of the fiber at `x`: `a ↦ (x, a)`, `φ ↦ (id_x, φ)`.
    pub fn inclusion(&self, family: &Family, x: usize) -> GroupoidFunctor {
        let fiber = family.fiber(x);
        let id = family.base().identity(x);
        GroupoidFunctor::new(
            fiber.clone(),
            self.groupoid.clone(),
            (0..fiber.object_count()).map(|a| self.object_index(x, a)).collect(),
            (0..fiber.morphism_count()).map(|phi| self.morphism_index(id, phi)).collect(),
        )
    }
}

/// The functor `tot F → tot G` induced by a base functor `h` and fiber
/// functors `eta[x]: F(x) → G(h x)` that are natural:
/// `G(h f) ∘ eta[x] = eta[y] ∘ F(f)`.
pub fn tot_map(source: &Total, target: &Total, h: &GroupoidFunctor, eta: &[GroupoidFunctor]) -> GroupoidFunctor {
    let object_map = source.objects.iter().map(|&(x, a)| target.object_index(h.obj(x), eta[x].obj(a))).collect();
    let morphism_map = source
        .morphisms
        .iter()
        .map(|&(f, phi)| {
            let y = h.source.dst(f);
            target.morphism_index(h.mor(f), eta[y].mor(phi))
        })
        .collect();
    GroupoidFunctor::new(source.groupoid.clone(), target.groupoid.clone(), object_map, morphism_map)
}

/// A family whose fibers are total groupoids, kept with their decodings.
#[derive(Clone, Debug)]
pub struct SigmaFamily {
    pub family: Family,
    pub totals: Vec<Total>,
}

/// `Σ_F G` as a family over the base of `F`: the fiber at `x` is the total
/// groupoid of `G` restricted to the fiber `F(x)`. `g` must be a family over
/// `f_total.groupoid`.
pub fn sigma_family(f: &Family, f_total: &Total, g: &Family) -> SigmaFamily {
    let base = f.base();
    let restricted: Vec<Family> = (0..base.object_count()).map(|x| g.restrict(&f_total.inclusion(f, x))).collect();
    let totals: Vec<Total> = restricted.iter().map(Family::tot).collect();
    let transports = (0..base.morphism_count())
        .map(|v| {
            let (x, y) = (base.src(v), base.dst(v));
            let tv = f.transport(v);
            let (src, dst) = (&totals[x], &totals[y]);
            // The total morphism (v, id) : (x, a) → (y, T_v a).
            let lift = |a: usize| {
                let ta = tv.obj(a);
                f_total.morphism_index(v, f.fiber(y).identity(ta))
            };
            let object_map =
                src.objects.iter().map(|&(a, c)| dst.object_index(tv.obj(a), g.transport(lift(a)).obj(c))).collect();
            let morphism_map = src
                .morphisms
                .iter()
                .map(|&(phi, psi)| {
                    let a2 = f.fiber(x).dst(phi);
                    dst.morphism_index(tv.mor(phi), g.transport(lift(a2)).mor(psi))
                })
                .collect();
            GroupoidFunctor::new(src.groupoid.clone(), dst.groupoid.clone(), object_map, morphism_map)
        })
        .collect();
    let fibers = totals.iter().map(|t| t.groupoid.clone()).collect();
    SigmaFamily { family: Family::new(base.clone(), fibers, transports), totals }
}

/// For a family over `A × K` (numbered as in [`FiniteGroupoid::product`]),
/// the family over `K` whose fiber at `k` is the total groupoid over `A` of
/// the fibers at `(a, k)`.
pub fn sigma_first(f: &Family, a: &Grpd, k: &Grpd) -> SigmaFamily {
    let (nk, mk) = (k.object_count(), k.morphism_count());
    let at = |kk: usize| {
        GroupoidFunctor::new(
            a.clone(),
            f.base().clone(),
            (0..a.object_count()).map(|x| x * nk + kk).collect(),
            (0..a.morphism_count()).map(|r| r * mk + k.identity(kk)).collect(),
        )
    };
    let restricted: Vec<Family> = (0..nk).map(|kk| f.restrict(&at(kk))).collect();
    let totals: Vec<Total> = restricted.iter().map(Family::tot).collect();
    let transports = (0..mk)
        .map(|v| {
            let (src, dst) = (&totals[k.src(v)], &totals[k.dst(v)]);
            let along = |x: usize| f.transport(a.identity(x) * mk + v);
            let object_map = src.objects.iter().map(|&(x, c)| dst.object_index(x, along(x).obj(c))).collect();
            let morphism_map =
                src.morphisms.iter().map(|&(rho, phi)| dst.morphism_index(rho, along(a.dst(rho)).mor(phi))).collect();
            GroupoidFunctor::new(src.groupoid.clone(), dst.groupoid.clone(), object_map, morphism_map)
        })
        .collect();
    let fibers = totals.iter().map(|t| t.groupoid.clone()).collect();
    SigmaFamily { family: Family::new(k.clone(), fibers, transports), totals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fam::validate_family;
    use crate::grpd::{check_groupoid_equivalence, validate_groupoid, DEFAULT_AUT_CAP};

    fn swap_family() -> Family {
        let base = Arc::new(FiniteGroupoid::cyclic(2));
        let d2 = Arc::new(FiniteGroupoid::discrete(2));
        let swap = GroupoidFunctor::new(d2.clone(), d2.clone(), vec![1, 0], vec![1, 0]);
        Family::new(base, vec![d2.clone()], vec![GroupoidFunctor::identity(d2), swap])
    }

    #[test]
    fn composable_pairs_match_the_total() {
        let big = Family::constant(Arc::new(FiniteGroupoid::codiscrete(3)), Arc::new(FiniteGroupoid::cyclic(2)));
        for f in [swap_family(), big] {
            assert_eq!(f.total_composable_pairs(), f.tot().groupoid.compose_table().len() as u64);
        }
    }

    #[test]
    fn worked_examples() {
        let z2 = Arc::new(FiniteGroupoid::cyclic(2));
        let t = Family::constant(z2.clone(), Arc::new(FiniteGroupoid::discrete(1))).tot();
        assert!(validate_groupoid(&t.groupoid).is_empty());
        assert!(check_groupoid_equivalence(&t.groupoid, &z2, DEFAULT_AUT_CAP).is_equivalent());
        assert_eq!((t.groupoid.object_count(), t.groupoid.morphism_count()), (1, 2));

        let t = Family::constant(Arc::new(FiniteGroupoid::discrete(3)), Arc::new(FiniteGroupoid::discrete(2))).tot();
        assert_eq!(*t.groupoid, FiniteGroupoid::discrete(6));

        let t = swap_family().tot();
        assert!(validate_groupoid(&t.groupoid).is_empty());
        assert_eq!((t.groupoid.object_count(), t.groupoid.morphism_count()), (2, 4));
        assert_eq!(t.groupoid.components().len(), 1);
        assert!(t.groupoid.has_trivial_automorphisms());
        assert_eq!(t.projection.validate(), Ok(()));
    }

    #[test]
    fn sigma_of_constant_families() {
        let base = Arc::new(FiniteGroupoid::cyclic(2));
        let f = swap_family();
        let ft = f.tot();
        let g = Family::constant(ft.groupoid.clone(), Arc::new(FiniteGroupoid::discrete(3)));
        let s = sigma_family(&f, &ft, &g);
        assert!(validate_family(&s.family).is_empty());
        assert_eq!(s.family.fiber(0).object_count(), 6);

        let k = Arc::new(FiniteGroupoid::codiscrete(2));
        let prod = Arc::new(base.product(&k));
        let h = Family::constant(prod, Arc::new(FiniteGroupoid::discrete(2)));
        let s = sigma_first(&h, &base, &k);
        assert!(validate_family(&s.family).is_empty());
        assert_eq!(s.family.fiber(1).morphism_count(), 4);
    }
}
