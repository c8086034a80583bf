use std::collections::HashMap;
use std::sync::Arc;

use super::Family;
use crate::grpd::lift::{component_lift_lists, LiftOptions, Over};
use crate::grpd::{automorphism_generators, Builder, FiniteGroupoid, GroupoidFunctor, Grpd, Labeled};

/// Default bound on the number of candidate sections examined.
pub const DEFAULT_SECTION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SectionError {
    #[error("enumeration cap of {cap} candidate sections exceeded")]
    CapExceeded { cap: u64 },
}

/// The groupoid of functors `E → T` (over a common base, if given) and
/// vertical natural isomorphisms between them.
///
/// It is the product over the components of `E` of the groupoids of
/// functors out of each component; objects and morphisms are numbered as
/// in iterated [`FiniteGroupoid::product`], first component slowest.
#[derive(Clone, Debug)]
pub struct FunctorGroupoid {
    pub groupoid: Grpd,
    pub source: Grpd,
    pub target: Grpd,
    parts: Vec<Part>,
}

#[derive(Clone, Debug)]
struct Part {
    rep: usize,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
    lifts: Vec<(Vec<usize>, Vec<usize>)>,
    lift_index: HashMap<Vec<usize>, usize>,
    gamma: Labeled<usize>,
}

impl FunctorGroupoid {
    pub fn new(source: &Grpd, target: &Grpd, over: Option<Over<'_>>, cap: u64) -> Result<Self, SectionError> {
        let options = LiftOptions { equivalences_only: false, budget: cap };
        let lists = component_lift_lists(source, target, over, options).ok_or(SectionError::CapExceeded { cap })?;
        let size = lists.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.lifts.len() as u64));
        if size.is_none_or(|n| n > cap) {
            return Err(SectionError::CapExceeded { cap });
        }
        let comps = source.components();
        let mut parts = Vec::with_capacity(lists.len());
        let mut groupoid = FiniteGroupoid::discrete(1);
        let mut work = 0u64;
        for (c, list) in lists.into_iter().enumerate() {
            let rep = comps.representatives[c];
            let gens = automorphism_generators(source, rep);
            let mpos: HashMap<usize, usize> = list.morphisms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let rep_pos = list.objects.iter().position(|&x| x == rep).expect("representative is a member");
            let lifts: Vec<(Vec<usize>, Vec<usize>)> = list.lifts.into_iter().map(|(o, m, _)| (o, m)).collect();
            let mut by_rep_image: HashMap<usize, Vec<usize>> = HashMap::new();
            for (k, (objs, _)) in lifts.iter().enumerate() {
                by_rep_image.entry(objs[rep_pos]).or_default().push(k);
            }
            let base_identity = over.map(|o| o.source.mor(source.identity(rep)));
            let mut builder = Builder::new(lifts.len());
            for (a, (objs, mors)) in lifts.iter().enumerate() {
                for &h in target.outgoing(objs[rep_pos]) {
                    if over.map(|o| o.target.mor(h)) != base_identity {
                        continue;
                    }
                    for &b in by_rep_image.get(&target.dst(h)).map(Vec::as_slice).unwrap_or(&[]) {
                        work += 1;
                        if work > cap {
                            return Err(SectionError::CapExceeded { cap });
                        }
                        let other = &lifts[b].1;
                        let natural = gens.iter().all(|g| {
                            let i = mpos[g];
                            target.compose(other[i], h) == target.compose(h, mors[i])
                        });
                        if natural {
                            builder.add(a, b, h);
                        }
                    }
                }
            }
            let rep_images: Vec<usize> = lifts.iter().map(|l| l.0[rep_pos]).collect();
            let gamma = builder.finish(
                |a| target.identity(rep_images[a]),
                |&g, &f| target.compose(g, f),
                |&h| target.inverse(h),
            );
            groupoid = groupoid.product(&gamma.groupoid);
            let lift_index = lifts.iter().enumerate().map(|(k, l)| (l.1.clone(), k)).collect();
            parts.push(Part { rep, objects: list.objects, morphisms: list.morphisms, lifts, lift_index, gamma });
        }
        Ok(FunctorGroupoid { groupoid: Arc::new(groupoid), source: source.clone(), target: target.clone(), parts })
    }

    fn object_digits(&self, mut k: usize) -> Vec<usize> {
        let mut digits = vec![0; self.parts.len()];
        for (c, part) in self.parts.iter().enumerate().rev() {
            let n = part.gamma.groupoid.object_count();
            digits[c] = k % n;
            k /= n;
        }
        digits
    }

    fn morphism_digits(&self, mut m: usize) -> Vec<usize> {
        let mut digits = vec![0; self.parts.len()];
        for (c, part) in self.parts.iter().enumerate().rev() {
            let n = part.gamma.groupoid.morphism_count();
            digits[c] = m % n;
            m /= n;
        }
        digits
    }

    /// The functor that is object `k`, as `(object_map, morphism_map)`.
    pub fn maps(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        let mut object_map = vec![0; self.source.object_count()];
        let mut morphism_map = vec![0; self.source.morphism_count()];
        for (part, d) in self.parts.iter().zip(self.object_digits(k)) {
            let (objs, mors) = &part.lifts[d];
            for (&x, &y) in part.objects.iter().zip(objs) {
                object_map[x] = y;
            }
            for (&f, &g) in part.morphisms.iter().zip(mors) {
                morphism_map[f] = g;
            }
        }
        (object_map, morphism_map)
    }

    pub fn functor(&self, k: usize) -> GroupoidFunctor {
        let (o, m) = self.maps(k);
        GroupoidFunctor::new(self.source.clone(), self.target.clone(), o, m)
    }

    /// Index of the functor with the given morphism map, if it is an object.
    pub fn index_of(&self, morphism_map: &[usize]) -> Option<usize> {
        let mut k = 0;
        for part in &self.parts {
            let key: Vec<usize> = part.morphisms.iter().map(|&f| morphism_map[f]).collect();
            k = k * part.gamma.groupoid.object_count() + part.lift_index.get(&key)?;
        }
        Some(k)
    }

    /// Components `h_e` (one per source object) of the transformation `m`.
    pub fn components_of(&self, m: usize) -> Vec<usize> {
        let t = &self.target;
        let comps = self.source.components();
        let g = &self.groupoid;
        let (from, to) = (self.maps(g.src(m)), self.maps(g.dst(m)));
        let mut out = vec![0; self.source.object_count()];
        for (part, d) in self.parts.iter().zip(self.morphism_digits(m)) {
            let h = part.gamma.labels[d];
            for &x in &part.objects {
                let tau = comps.path_from_rep[x];
                out[x] = t.compose(to.1[tau], t.compose(h, t.inverse(from.1[tau])));
            }
        }
        out
    }

    /// Index of the transformation `src ⇒ dst` with components `h`, if natural.
    pub fn transformation_index(&self, src: usize, dst: usize, h: &[usize]) -> Option<usize> {
        let (a, b) = (self.object_digits(src), self.object_digits(dst));
        let mut m = 0;
        for (c, part) in self.parts.iter().enumerate() {
            let local = part.gamma.lookup(a[c], b[c], &h[part.rep])?;
            m = m * part.gamma.groupoid.morphism_count() + local;
        }
        Some(m)
    }
}

/// Coherent sections of `family`: strict functors `s: B → tot F` over `B`
/// with vertical natural isomorphisms as morphisms.
pub fn homotopy_pi(family: &Family, cap: u64) -> Result<FunctorGroupoid, SectionError> {
    let total = family.tot();
    let id = GroupoidFunctor::identity(family.base().clone());
    FunctorGroupoid::new(family.base(), &total.groupoid, Some(Over { source: &id, target: &total.projection }), cap)
}
