//! Seeded random instances for the property suites and the `laws` runner.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bij::{build_exp_on, point_automorphisms, ExpGroupoid, ExpPoint, Permutation, TruncationConfig};
use crate::closure::support_exp;
use crate::fam::{Family, Total};
use crate::grpd::{automorphism_generators, extend_homomorphism, FiniteGroupoid, GroupoidFunctor, Grpd};
use crate::poly::{DiscreteOp, Polynomial};

/// Bounds for random polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Operations per component of the target.
    pub max_ops: usize,
    /// Parameter-total cardinality per operation, when finitary.
    pub max_arity: usize,
    /// Whether source automorphisms act freely on parameters.
    pub finitary: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_ops: 2, max_arity: 2, finitary: true }
    }
}

/// Largest automorphism group allowed for a point of the exponential in
/// generated closure instances.
pub const MAX_POINT_AUTOMORPHISMS: usize = 24;

/// Bound on the estimated composition-table size of the parameter base of
/// a curried polynomial. Curried operations over a point `q` form
/// components with `|Aut(q)|` objects, so tables grow with a power of
/// `|Aut(q)|`: the cube after currying a generated `P`, the fifth power
/// after currying `uncurry(Q)`, whose operations carry `Aut(q)` itself.
pub const CLOSURE_BUDGET: u64 = 4_000_000;

fn closure_cost(i: &FiniteGroupoid, k: &FiniteGroupoid, point_autos: usize, power: u32) -> u64 {
    let k_autos = (0..k.object_count()).map(|x| k.automorphisms(x).len()).max().unwrap_or(1) as u64;
    let i_compose = i.compose_table().len().max(1) as u64;
    (point_autos as u64).saturating_pow(power).saturating_mul(k_autos * k_autos).saturating_mul(i_compose)
}

pub struct Gen {
    rng: ChaCha8Rng,
}

fn permutation_functor(fiber: &Grpd, p: &Permutation) -> GroupoidFunctor {
    GroupoidFunctor::new(fiber.clone(), fiber.clone(), p.images().to_vec(), p.images().to_vec())
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn upto(&mut self, n: usize) -> usize {
        self.rng.random_range(0..=n)
    }

    /// A groupoid with at most two objects and four morphisms.
    pub fn small_groupoid(&mut self) -> Grpd {
        let z2 = FiniteGroupoid::cyclic(2);
        let klein = FiniteGroupoid::deloop(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]])
            .expect("Klein four-group");
        let catalog = [
            FiniteGroupoid::discrete(1),
            FiniteGroupoid::discrete(2),
            z2.clone(),
            FiniteGroupoid::cyclic(3),
            FiniteGroupoid::cyclic(4),
            klein,
            FiniteGroupoid::codiscrete(2),
            z2.coproduct(&FiniteGroupoid::discrete(1)),
            z2.coproduct(&z2),
        ];
        Arc::new(catalog.choose(&mut self.rng).expect("nonempty").clone())
    }

    /// `discrete(n)` with `lo <= n <= hi`.
    pub fn discrete(&mut self, lo: usize, hi: usize) -> Grpd {
        Arc::new(FiniteGroupoid::discrete(self.rng.random_range(lo..=hi)))
    }

    /// A coproduct of codiscrete blocks, which is equivalent to a finite
    /// discrete groupoid; returns it with the number of blocks.
    pub fn finite_discrete_equivalent(&mut self, max_blocks: usize, max_block: usize) -> (Grpd, usize) {
        let blocks = self.upto(max_blocks);
        let mut g = FiniteGroupoid::discrete(0);
        for _ in 0..blocks {
            let n = self.rng.random_range(1..=max_block);
            g = g.coproduct(&FiniteGroupoid::codiscrete(n));
        }
        (Arc::new(g), blocks)
    }

    /// A random homomorphism `Aut(x) → S_n`, as the image of each
    /// automorphism.
    pub fn action(&mut self, g: &FiniteGroupoid, x: usize, n: usize) -> HashMap<usize, Permutation> {
        let gens = automorphism_generators(g, x);
        let all = Permutation::all(n);
        let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(k, p)| (p.images().to_vec(), k)).collect();
        let identity = index[&Permutation::identity(n).images().to_vec()];
        let extend = |images: &[usize]| {
            extend_homomorphism(g, x, &gens, images, identity, |a, b| index[all[a].after(&all[b]).images()])
        };
        let exhaustive = (all.len() as f64).powi(gens.len() as i32) <= 4096.0;
        let mut found = Vec::new();
        if exhaustive {
            let mut images = vec![0; gens.len()];
            loop {
                if let Some(h) = extend(&images) {
                    found.push(h);
                }
                let mut k = images.len();
                let more = loop {
                    if k == 0 {
                        break false;
                    }
                    k -= 1;
                    images[k] += 1;
                    if images[k] < all.len() {
                        break true;
                    }
                    images[k] = 0;
                };
                if !more {
                    break;
                }
            }
        } else {
            found.push(extend(&vec![identity; gens.len()]).expect("trivial action"));
            for _ in 0..200 {
                let images: Vec<usize> = (0..gens.len()).map(|_| self.below(all.len())).collect();
                if let Some(h) = extend(&images) {
                    found.push(h);
                }
            }
        }
        let pick = self.below(found.len());
        found.swap_remove(pick).into_iter().map(|(a, k)| (a, all[k].clone())).collect()
    }

    /// Discrete fibers of size at most `max_fiber`, transported by random
    /// actions of the automorphism groups.
    pub fn discrete_family(&mut self, base: &Grpd, max_fiber: usize) -> Family {
        let comps = base.components().clone();
        let sizes: Vec<usize> = (0..comps.len()).map(|_| self.upto(max_fiber)).collect();
        self.family_with_sizes(base, &sizes)
    }

    fn family_with_sizes(&mut self, base: &Grpd, sizes: &[usize]) -> Family {
        let comps = base.components().clone();
        let fibers: Vec<Grpd> = sizes.iter().map(|&n| Arc::new(FiniteGroupoid::discrete(n))).collect();
        let actions: Vec<HashMap<usize, Permutation>> =
            comps.representatives.iter().zip(sizes).map(|(&r, &n)| self.action(base, r, n)).collect();
        Family::from_component_actions(base.clone(), fibers.clone(), |c, a| {
            permutation_functor(&fibers[c], &actions[c][&a])
        })
    }

    /// A finite family: at each component the fiber is `Aut(x) × m` with
    /// automorphisms acting freely on the first factor.
    pub fn free_family(&mut self, base: &Grpd, max_per_component: usize) -> Family {
        let comps = base.components().clone();
        let counts: Vec<usize> = (0..comps.len()).map(|_| self.upto(max_per_component)).collect();
        let plans: Vec<FreePlan> =
            comps.representatives.iter().zip(&counts).map(|(&r, &m)| FreePlan::new(base, r, m, None)).collect();
        let fibers: Vec<Grpd> = plans.iter().map(|p| p.fiber.clone()).collect();
        Family::from_component_actions(base.clone(), fibers, |c, a| plans[c].act(base, a, None))
    }

    /// A polynomial `source ↝ target` with discrete operation and parameter
    /// fibers. When `shape.finitary` is set, every parameter total is
    /// finite with at most `shape.max_arity` elements.
    pub fn polynomial(&mut self, source: &Grpd, target: &Grpd, shape: &Shape) -> Polynomial {
        let ops = self.discrete_family(target, shape.max_ops);
        self.polynomial_with_ops(source, ops, shape)
    }

    pub fn polynomial_with_ops(&mut self, source: &Grpd, ops: Family, shape: &Shape) -> Polynomial {
        Polynomial::new(source.clone(), ops, |base, total| self.params(source, base, total, shape))
    }

    fn params(&mut self, source: &Grpd, base: &Grpd, total: &Total, shape: &Shape) -> Family {
        let t = &total.groupoid;
        let (nt, mt) = (t.object_count(), t.morphism_count());
        let (sc, tc) = (source.components(), t.components());
        // Parameter counts per (source component, operation component),
        // within the arity budget of each operation component.
        let counts: Vec<Vec<usize>> = (0..tc.len())
            .map(|_| {
                let mut budget = shape.max_arity;
                (0..sc.len())
                    .map(|_| {
                        let m = self.upto(budget.min(2));
                        budget -= m;
                        m
                    })
                    .collect()
            })
            .collect();
        let comps = base.components().clone();
        let mut plans = Vec::with_capacity(comps.len());
        let mut actions = Vec::with_capacity(comps.len());
        for &b in &comps.representatives {
            let (s, o) = (b / nt, b % nt);
            let m = counts[tc.component_of[o]][sc.component_of[s]];
            if shape.finitary {
                let pi = self.action(t, o, m);
                plans.push(FreePlan::new(source, s, m, Some(pi)));
                actions.push(HashMap::new());
            } else {
                plans.push(FreePlan::trivial(m));
                actions.push(self.action(base, b, m));
            }
        }
        let fibers: Vec<Grpd> = plans.iter().map(|p| p.fiber.clone()).collect();
        Family::from_component_actions(base.clone(), fibers, |c, a| {
            if shape.finitary {
                plans[c].act(source, a / mt, Some(a % mt))
            } else {
                permutation_functor(&plans[c].fiber, &actions[c][&a])
            }
        })
    }

    /// A set-level polynomial with `I`, `J` of at most `max_colors` colors.
    pub fn discrete_ops(
        &mut self,
        max_colors: usize,
        max_ops: usize,
        max_arity: usize,
    ) -> (usize, usize, Vec<DiscreteOp>) {
        let (ni, nj) = (self.rng.random_range(1..=max_colors), self.rng.random_range(1..=max_colors));
        let ops = (0..self.upto(max_ops))
            .map(|_| DiscreteOp {
                color: self.below(nj),
                param_colors: (0..self.upto(max_arity)).map(|_| self.below(ni)).collect(),
            })
            .collect();
        (ni, nj, ops)
    }

    /// A finitary `P: I ⊔ J ↝ K` whose classifying points in `Exp(J)` have
    /// at most `cfg.max_size` elements, at most [`MAX_POINT_AUTOMORPHISMS`]
    /// automorphisms, and fit [`CLOSURE_BUDGET`].
    pub fn curryable(&mut self, i: &Grpd, j: &Grpd, k: &Grpd, shape: &Shape, cfg: TruncationConfig) -> Polynomial {
        let source: Grpd = Arc::new(i.coproduct(j));
        loop {
            let p = self.polynomial(&source, k, shape);
            if p.op_count() == 0 {
                continue;
            }
            let Ok(exp) = support_exp(&p, i.object_count(), cfg) else {
                continue;
            };
            let fits = |q: &ExpPoint| {
                let autos = point_automorphisms(j, q);
                autos <= MAX_POINT_AUTOMORPHISMS && closure_cost(i, k, autos, 3) <= CLOSURE_BUDGET
            };
            if exp.points().iter().all(fits) {
                return p;
            }
        }
    }

    /// A skeletal point of `Exp(J)` with at most `max_autos` automorphisms.
    pub fn exp_point(&mut self, j: &Grpd, cfg: TruncationConfig, max_autos: usize) -> ExpPoint {
        let reps = j.components().representatives.clone();
        loop {
            let n = if reps.is_empty() { 0 } else { self.upto(cfg.max_size) };
            let mut colors: Vec<usize> = (0..n).map(|_| reps[self.below(reps.len())]).collect();
            colors.sort_unstable();
            let p = ExpPoint::new(colors);
            if point_automorphisms(j, &p) <= max_autos {
                return p;
            }
        }
    }

    /// A finitary `Q: I ↝ E × K` over the full subgroupoid `E` of `Exp(J)`
    /// on one or two random points that fit [`CLOSURE_BUDGET`].
    pub fn exp_supported(
        &mut self,
        i: &Grpd,
        j: &Grpd,
        k: &Grpd,
        shape: &Shape,
        cfg: TruncationConfig,
    ) -> (ExpGroupoid, Polynomial) {
        let count = self.rng.random_range(1..=2);
        let max_autos = (1..=MAX_POINT_AUTOMORPHISMS)
            .take_while(|&a| closure_cost(i, k, a, 5) <= CLOSURE_BUDGET)
            .last()
            .unwrap_or(1);
        let points: BTreeSet<ExpPoint> = (0..count).map(|_| self.exp_point(j, cfg, max_autos)).collect();
        let exp = build_exp_on(j, cfg, points.into_iter().collect());
        let target: Grpd = Arc::new(exp.groupoid.product(k));
        loop {
            let q = self.polynomial(i, &target, shape);
            if q.op_count() > 0 {
                return (exp, q);
            }
        }
    }
}

/// A fiber `Aut(x) × m`, numbered `(g, y) ↦ g * m + y`, on which `Aut(x)`
/// acts by left multiplication and another group acts through `pi`.
struct FreePlan {
    fiber: Grpd,
    autos: Vec<usize>,
    m: usize,
    pi: Option<HashMap<usize, Permutation>>,
}

impl FreePlan {
    fn new(g: &FiniteGroupoid, x: usize, m: usize, pi: Option<HashMap<usize, Permutation>>) -> Self {
        let autos = g.automorphisms(x).to_vec();
        FreePlan { fiber: Arc::new(FiniteGroupoid::discrete(autos.len() * m)), autos, m, pi }
    }

    fn trivial(m: usize) -> Self {
        FreePlan { fiber: Arc::new(FiniteGroupoid::discrete(m)), autos: Vec::new(), m, pi: None }
    }

    /// The action of `a ∈ Aut(x)` together with `b` acting through `pi`.
    fn act(&self, g: &FiniteGroupoid, a: usize, b: Option<usize>) -> GroupoidFunctor {
        let position: HashMap<usize, usize> = self.autos.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let map: Vec<usize> = (0..self.fiber.object_count())
            .map(|e| {
                let (h, y) = (e / self.m, e % self.m);
                let h2 = position[&g.compose(a, self.autos[h])];
                let y2 = match (&self.pi, b) {
                    (Some(pi), Some(b)) => pi[&b].apply(y),
                    _ => y,
                };
                h2 * self.m + y2
            })
            .collect();
        GroupoidFunctor::new(self.fiber.clone(), self.fiber.clone(), map.clone(), map)
    }
}
