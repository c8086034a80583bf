//! Permutations, the truncated skeletal groupoid of finite sets and
//! bijections, its eliminator, and the exponential groupoid `Exp(J)`.

mod exp;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fam::FiniteVerdict;
use crate::grpd::{Builder, FiniteGroupoid, GroupoidFunctor, Grpd, Labeled};

pub(crate) use exp::exp_fiber_elements;
pub use exp::{
    build_exp, build_exp_on, build_exp_set, build_exp_skeletal, exp_compose, exp_fiber, exp_fiber_family, exp_hom,
    exp_identity, exp_inverse, fam_to_exp, point_automorphisms, skeletal_point, ExpGroupoid, ExpMorphism, ExpPoint,
    FamToExpError,
};

/// A bijection of `{0, …, n-1}`; `images[k]` is the image of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `None` unless `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation { images: first.images.iter().map(|&k| self.images[k]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i] = k;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0;
        for start in 0..self.images.len() {
            let mut k = start;
            let mut len = 0;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 1
    }

    /// All permutations of size `n`, in lexicographic order of `images`.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation { images: current.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    go(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        go(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Largest family size represented in `𝔹` and `Exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationConfig {
    pub max_size: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig { max_size: 4 }
    }
}

impl TruncationConfig {
    pub fn new(max_size: usize) -> Self {
        TruncationConfig { max_size }
    }
}

/// The skeletal groupoid of finite sets `{0..n}`, `n ≤ N`, and bijections.
#[derive(Clone, Debug)]
pub struct BijGroupoid {
    pub groupoid: Grpd,
    labeled: Labeled<Permutation>,
}

impl BijGroupoid {
    pub fn permutation(&self, m: usize) -> &Permutation {
        &self.labeled.labels[m]
    }

    pub fn index_of(&self, p: &Permutation) -> usize {
        self.labeled.index_of(p.size(), p.size(), p)
    }
}

/// Objects `0..=N`; `Hom(n, n)` is the symmetric group on `n` letters and
/// there are no other morphisms. Morphisms are numbered by size, then
/// lexicographically.
pub fn build_bij(cfg: TruncationConfig) -> BijGroupoid {
    let mut builder = Builder::new(cfg.max_size + 1);
    for n in 0..=cfg.max_size {
        for p in Permutation::all(n) {
            builder.add(n, n, p);
        }
    }
    let labeled = builder.finish(Permutation::identity, |g, f| g.after(f), Permutation::inverse);
    BijGroupoid { groupoid: Arc::new(labeled.groupoid.clone()), labeled }
}

/// `Fin n` as a groupoid.
pub fn realize(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::discrete(n)
}

/// Rejection of a non-finite groupoid: `object` has `automorphisms`
/// automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not finite: object {object} has {automorphisms} automorphisms")]
pub struct NotFinite {
    pub object: usize,
    pub automorphisms: usize,
}

/// The number of components and the equivalence to `discrete(n)` sending
/// each object to its component index.
pub fn skeletize(g: &Grpd) -> Result<(usize, GroupoidFunctor), NotFinite> {
    match FiniteVerdict::of_groupoid(g) {
        FiniteVerdict::Finite { cardinality, witness } => Ok((cardinality, witness)),
        FiniteVerdict::NotFinite { object, automorphisms } => Err(NotFinite { object, automorphisms }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoherenceFailure {
    #[error("object clause for {n} is not an object of the target")]
    Object { n: usize },
    #[error("image of {alpha} is not an endomorphism of the image of {n}")]
    Endpoints { n: usize, alpha: Permutation },
    #[error("id-coh fails at size {n}")]
    IdCoh { n: usize },
    #[error("comp-coh fails at size {n} for ({alpha}, {beta})")]
    CompCoh { n: usize, alpha: Permutation, beta: Permutation },
}

/// The eliminator: checks that `hom_star` respects identities and
/// composition on every permutation of size at most `N` and returns the
/// induced functor out of [`build_bij`].
pub fn bij_rec(
    cfg: TruncationConfig,
    target: &Grpd,
    obj_star: &[usize],
    hom_star: impl Fn(&Permutation) -> usize,
) -> Result<GroupoidFunctor, CoherenceFailure> {
    let bij = build_bij(cfg);
    for n in 0..=cfg.max_size {
        let x = *obj_star.get(n).ok_or(CoherenceFailure::Object { n })?;
        if x >= target.object_count() {
            return Err(CoherenceFailure::Object { n });
        }
        let perms = Permutation::all(n);
        for p in &perms {
            let h = hom_star(p);
            if h >= target.morphism_count() || target.src(h) != x || target.dst(h) != x {
                return Err(CoherenceFailure::Endpoints { n, alpha: p.clone() });
            }
        }
        if hom_star(&Permutation::identity(n)) != target.identity(x) {
            return Err(CoherenceFailure::IdCoh { n });
        }
        for alpha in &perms {
            for beta in &perms {
                if hom_star(&beta.after(alpha)) != target.compose(hom_star(beta), hom_star(alpha)) {
                    return Err(CoherenceFailure::CompCoh { n, alpha: alpha.clone(), beta: beta.clone() });
                }
            }
        }
    }
    let morphism_map = (0..bij.groupoid.morphism_count()).map(|m| hom_star(bij.permutation(m))).collect();
    Ok(GroupoidFunctor::new(bij.groupoid.clone(), target.clone(), obj_star[..=cfg.max_size].to_vec(), morphism_map))
}
