use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Permutation, TruncationConfig};
use crate::fam::{Family, FiniteVerdict};
use crate::grpd::{Builder, FiniteGroupoid, GroupoidFunctor, Grpd, Labeled};

/// An object of `Exp(J)`: a finite family of objects of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExpPoint {
    pub size: usize,
    pub colors: Vec<usize>,
}

impl ExpPoint {
    pub fn new(colors: Vec<usize>) -> Self {
        ExpPoint { size: colors.len(), colors }
    }
}

/// A morphism `(n, f) → (n, g)` of `Exp(J)`: a permutation `σ` and
/// `alphas[k]: f(k) → g(σ(k))` in `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpMorphism {
    pub sigma: Permutation,
    pub alphas: Vec<usize>,
}

/// `Exp(J)` truncated at size `N`, with decodings of its objects and
/// morphisms.
#[derive(Clone, Debug)]
pub struct ExpGroupoid {
    pub groupoid: Grpd,
    pub colors: Grpd,
    pub cfg: TruncationConfig,
    permutations: bool,
    points: Vec<ExpPoint>,
    point_index: HashMap<Vec<usize>, usize>,
    labeled: Labeled<ExpMorphism>,
}

impl ExpGroupoid {
    pub fn point(&self, k: usize) -> &ExpPoint {
        &self.points[k]
    }

    pub fn points(&self) -> &[ExpPoint] {
        &self.points
    }

    pub fn index_of_point(&self, p: &ExpPoint) -> Option<usize> {
        self.point_index.get(&p.colors).copied()
    }

    /// Whether morphisms may permute indices; false for [`build_exp_set`].
    pub fn permutes(&self) -> bool {
        self.permutations
    }

    pub fn morphism(&self, m: usize) -> &ExpMorphism {
        &self.labeled.labels[m]
    }

    pub fn index_of_morphism(&self, src: usize, dst: usize, m: &ExpMorphism) -> Option<usize> {
        self.labeled.lookup(src, dst, m)
    }
}

fn colorings(objects: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if objects == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0; n];
    loop {
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if current[k] < objects {
                break;
            }
            current[k] = 0;
        }
    }
}

/// The identity of `point`.
pub fn exp_identity(j: &FiniteGroupoid, point: &ExpPoint) -> ExpMorphism {
    ExpMorphism {
        sigma: Permutation::identity(point.size),
        alphas: point.colors.iter().map(|&c| j.identity(c)).collect(),
    }
}

/// `g ∘ f`.
pub fn exp_compose(j: &FiniteGroupoid, g: &ExpMorphism, f: &ExpMorphism) -> ExpMorphism {
    ExpMorphism {
        sigma: g.sigma.after(&f.sigma),
        alphas: f.alphas.iter().enumerate().map(|(k, &a)| j.compose(g.alphas[f.sigma.apply(k)], a)).collect(),
    }
}

pub fn exp_inverse(j: &FiniteGroupoid, f: &ExpMorphism) -> ExpMorphism {
    let inv = f.sigma.inverse();
    ExpMorphism { alphas: (0..f.alphas.len()).map(|k| j.inverse(f.alphas[inv.apply(k)])).collect(), sigma: inv }
}

/// Every morphism `from → to` between points of `Exp(J)`, by permutation
/// and then by the recoloring choices. With `permutations` off only the
/// identity permutation is used.
pub fn exp_hom(j: &FiniteGroupoid, from: &ExpPoint, to: &ExpPoint, permutations: bool) -> Vec<ExpMorphism> {
    if from.size != to.size {
        return Vec::new();
    }
    let n = from.size;
    let sigmas = if permutations { Permutation::all(n) } else { vec![Permutation::identity(n)] };
    let mut out = Vec::new();
    for sigma in sigmas {
        let choices: Vec<&[usize]> = (0..n).map(|k| j.hom(from.colors[k], to.colors[sigma.apply(k)])).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut pick = vec![0; n];
        loop {
            out.push(ExpMorphism {
                sigma: sigma.clone(),
                alphas: pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect(),
            });
            let mut i = n;
            let more = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break true;
                }
                pick[i] = 0;
            };
            if !more {
                break;
            }
        }
    }
    out
}

fn build(j: &Grpd, cfg: TruncationConfig, points: Vec<ExpPoint>, permutations: bool) -> ExpGroupoid {
    let point_index: HashMap<Vec<usize>, usize> =
        points.iter().enumerate().map(|(k, p)| (p.colors.clone(), k)).collect();
    let mut builder = Builder::new(points.len());
    for (a, p) in points.iter().enumerate() {
        for (b, q) in points.iter().enumerate() {
            for m in exp_hom(j, p, q, permutations) {
                builder.add(a, b, m);
            }
        }
    }
    let labeled = builder.finish(|k| exp_identity(j, &points[k]), |g, f| exp_compose(j, g, f), |f| exp_inverse(j, f));
    ExpGroupoid {
        groupoid: Arc::new(labeled.groupoid.clone()),
        colors: j.clone(),
        cfg,
        permutations,
        points,
        point_index,
        labeled,
    }
}

fn all_points(j: &Grpd, cfg: TruncationConfig) -> Vec<ExpPoint> {
    (0..=cfg.max_size).flat_map(|n| colorings(j.object_count(), n)).map(ExpPoint::new).collect()
}

/// `Exp(J)` truncated at `N`: objects are colorings of `{0..n}` by objects
/// of `J` (by size, then lexicographically); morphisms are a permutation
/// together with a recoloring morphism for each index.
pub fn build_exp(j: &Grpd, cfg: TruncationConfig) -> ExpGroupoid {
    build(j, cfg, all_points(j, cfg), true)
}

/// The set-level variant of `Exp(J)`: the same objects, and only the
/// recolorings along the identity permutation.
pub fn build_exp_set(j: &Grpd, cfg: TruncationConfig) -> ExpGroupoid {
    build(j, cfg, all_points(j, cfg), false)
}

/// The full subgroupoid of `Exp(J)` on the given points, which must have
/// distinct colorings of size at most `cfg.max_size`.
pub fn build_exp_on(j: &Grpd, cfg: TruncationConfig, points: Vec<ExpPoint>) -> ExpGroupoid {
    debug_assert!(points.iter().all(|p| p.size <= cfg.max_size));
    build(j, cfg, points, true)
}

/// The point of the skeleton isomorphic to `p`: colors replaced by their
/// component representatives, sorted.
pub fn skeletal_point(j: &FiniteGroupoid, p: &ExpPoint) -> ExpPoint {
    let comps = j.components();
    let mut colors: Vec<usize> = p.colors.iter().map(|&c| comps.representatives[comps.component_of[c]]).collect();
    colors.sort_unstable();
    ExpPoint::new(colors)
}

/// Order of the automorphism group of `p` in `Exp(J)`.
pub fn point_automorphisms(j: &FiniteGroupoid, p: &ExpPoint) -> usize {
    let q = skeletal_point(j, p);
    let mut order = 1usize;
    let mut run = 0;
    for (k, &c) in q.colors.iter().enumerate() {
        run = if k > 0 && q.colors[k - 1] == c { run + 1 } else { 1 };
        order = order.saturating_mul(run).saturating_mul(j.automorphisms(c).len());
    }
    order
}

/// The full subgroupoid of `Exp(J)` on one point per isomorphism class:
/// nondecreasing colorings by component representatives of `J`. Its
/// inclusion into [`build_exp`] is an equivalence.
pub fn build_exp_skeletal(j: &Grpd, cfg: TruncationConfig) -> ExpGroupoid {
    let reps = &j.components().representatives;
    let points = all_points(&Arc::new(FiniteGroupoid::discrete(reps.len())), cfg)
        .into_iter()
        .filter(|p| p.colors.windows(2).all(|w| w[0] <= w[1]))
        .map(|p| ExpPoint::new(p.colors.iter().map(|&c| reps[c]).collect()))
        .collect();
    build(j, cfg, points, true)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamToExpError {
    #[error("family is not finite: total object {object} has {automorphisms} automorphisms")]
    NotFinite { object: usize, automorphisms: usize },
    #[error("family has {size} elements, above the truncation bound {max}")]
    TooLarge { size: usize, max: usize },
}

/// The point of `Exp(J)` classifying a finite family over `J`: its size is
/// the number of components of the total groupoid and the `k`-th color is
/// the base object under the `k`-th component representative.
pub fn fam_to_exp(family: &Family, cfg: TruncationConfig) -> Result<(ExpPoint, GroupoidFunctor), FamToExpError> {
    let total = family.tot();
    match FiniteVerdict::of_groupoid(&total.groupoid) {
        FiniteVerdict::NotFinite { object, automorphisms } => Err(FamToExpError::NotFinite { object, automorphisms }),
        FiniteVerdict::Finite { cardinality, witness } => {
            if cardinality > cfg.max_size {
                return Err(FamToExpError::TooLarge { size: cardinality, max: cfg.max_size });
            }
            let reps = &total.groupoid.components().representatives;
            let colors = reps.iter().map(|&r| total.object(r).0).collect();
            Ok((ExpPoint::new(colors), witness))
        }
    }
}

/// Elements of the fiber of `point` over `j`: pairs `(k, β: colors[k] → j)`,
/// by `k` then by `β`.
pub(crate) fn exp_fiber_elements(j_grpd: &FiniteGroupoid, point: &ExpPoint, j: usize) -> Vec<(usize, usize)> {
    point.colors.iter().enumerate().flat_map(|(k, &c)| j_grpd.hom(c, j).iter().map(move |&b| (k, b))).collect()
}

/// The discrete groupoid of elements of `point` over `j`.
pub fn exp_fiber(j_grpd: &FiniteGroupoid, point: &ExpPoint, j: usize) -> FiniteGroupoid {
    FiniteGroupoid::discrete(exp_fiber_elements(j_grpd, point, j).len())
}

/// [`exp_fiber`] as a family over `J`, transported by post-composition.
pub fn exp_fiber_family(j_grpd: &Grpd, point: &ExpPoint) -> Family {
    let elements: Vec<Vec<(usize, usize)>> =
        (0..j_grpd.object_count()).map(|j| exp_fiber_elements(j_grpd, point, j)).collect();
    let index: Vec<HashMap<(usize, usize), usize>> =
        elements.iter().map(|e| e.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
    let fibers: Vec<Grpd> = elements.iter().map(|e| Arc::new(FiniteGroupoid::discrete(e.len()))).collect();
    let transports = (0..j_grpd.morphism_count())
        .map(|w| {
            let (a, b) = (j_grpd.src(w), j_grpd.dst(w));
            let map: Vec<usize> =
                elements[a].iter().map(|&(k, beta)| index[b][&(k, j_grpd.compose(w, beta))]).collect();
            GroupoidFunctor::new(fibers[a].clone(), fibers[b].clone(), map.clone(), map)
        })
        .collect();
    Family::new(j_grpd.clone(), fibers, transports)
}
