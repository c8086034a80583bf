use std::fmt;
use std::sync::Arc;

use super::FiniteGroupoid;

/// A functor between finite groupoids, given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl PartialEq for GroupoidFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for GroupoidFunctor {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    MapLength { which: &'static str, len: usize, expected: usize },
    OutOfRange { which: &'static str, position: usize },
    Endpoints { morphism: usize },
    Identity { object: usize },
    Composition { g: usize, f: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FunctorViolation::MapLength { which, len, expected } => {
                write!(out, "{which} map has {len} entries, expected {expected}")
            }
            FunctorViolation::OutOfRange { which, position } => {
                write!(out, "{which} map entry {position} is out of range")
            }
            FunctorViolation::Endpoints { morphism } => {
                write!(out, "image of morphism {morphism} has the wrong endpoints")
            }
            FunctorViolation::Identity { object } => {
                write!(out, "identity of object {object} is not preserved")
            }
            FunctorViolation::Composition { g, f } => {
                write!(out, "composition of ({g}, {f}) is not preserved")
            }
        }
    }
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Self {
        GroupoidFunctor { source, target, object_map, morphism_map }
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let object_map = (0..g.object_count()).collect();
        let morphism_map = (0..g.morphism_count()).collect();
        GroupoidFunctor { source: g.clone(), target: g, object_map, morphism_map }
    }

    /// The unique functor into the one-object trivial groupoid `discrete(1)`.
    pub fn to_point(g: Arc<FiniteGroupoid>) -> Self {
        let point = Arc::new(FiniteGroupoid::discrete(1));
        GroupoidFunctor {
            object_map: vec![0; g.object_count()],
            morphism_map: vec![0; g.morphism_count()],
            source: g,
            target: point,
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            object_map: self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| next.morphism_map[f]).collect(),
        }
    }

    /// Whether both maps are the identity.
    pub fn is_identity(&self) -> bool {
        self.object_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.morphism_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Exhaustive check of the functor laws.
    pub fn validate(&self) -> Result<(), FunctorViolation> {
        let s = &self.source;
        let t = &self.target;
        if self.object_map.len() != s.object_count() {
            return Err(FunctorViolation::MapLength {
                which: "object",
                len: self.object_map.len(),
                expected: s.object_count(),
            });
        }
        if self.morphism_map.len() != s.morphism_count() {
            return Err(FunctorViolation::MapLength {
                which: "morphism",
                len: self.morphism_map.len(),
                expected: s.morphism_count(),
            });
        }
        if let Some(position) = self.object_map.iter().position(|&x| x >= t.object_count()) {
            return Err(FunctorViolation::OutOfRange { which: "object", position });
        }
        if let Some(position) = self.morphism_map.iter().position(|&f| f >= t.morphism_count()) {
            return Err(FunctorViolation::OutOfRange { which: "morphism", position });
        }
        for (f, a) in s.arrows().iter().enumerate() {
            let b = t.arrows()[self.morphism_map[f]];
            if b.src != self.object_map[a.src] || b.dst != self.object_map[a.dst] {
                return Err(FunctorViolation::Endpoints { morphism: f });
            }
        }
        for x in 0..s.object_count() {
            if self.morphism_map[s.identity(x)] != t.identity(self.object_map[x]) {
                return Err(FunctorViolation::Identity { object: x });
            }
        }
        let mut pairs: Vec<_> = s.compose_table().iter().collect();
        pairs.sort_unstable();
        for (&(g, f), &gf) in pairs {
            if t.compose(self.morphism_map[g], self.morphism_map[f]) != self.morphism_map[gf] {
                return Err(FunctorViolation::Composition { g, f });
            }
        }
        Ok(())
    }

    /// Whether the functor is an equivalence: fully faithful and essentially
    /// surjective. Assumes the functor laws hold.
    pub fn is_equivalence(&self) -> bool {
        let s = &self.source;
        let t = &self.target;
        let sc = s.components();
        let tc = t.components();
        // Distinct source components must land in distinct target components,
        // and every target component must be hit.
        let mut hit = vec![false; tc.len()];
        for &r in &sc.representatives {
            let c = tc.component_of[self.object_map[r]];
            if hit[c] {
                return false;
            }
            hit[c] = true;
        }
        if hit.iter().any(|h| !h) {
            return false;
        }
        // Fully faithful reduces to bijectivity on automorphism groups of
        // the representatives.
        for &r in &sc.representatives {
            let fr = self.object_map[r];
            if s.automorphisms(r).len() != t.automorphisms(fr).len() {
                return false;
            }
            let mut images: Vec<usize> = s.automorphisms(r).iter().map(|&a| self.morphism_map[a]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != s.automorphisms(r).len() {
                return false;
            }
        }
        true
    }

    /// Whether both maps are bijections.
    pub fn is_isomorphism(&self) -> bool {
        fn bijective(map: &[usize], n: usize) -> bool {
            if map.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        }
        bijective(&self.object_map, self.target.object_count())
            && bijective(&self.morphism_map, self.target.morphism_count())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupoidFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut object_map = vec![0; self.object_map.len()];
        for (x, &y) in self.object_map.iter().enumerate() {
            object_map[y] = x;
        }
        let mut morphism_map = vec![0; self.morphism_map.len()];
        for (f, &g) in self.morphism_map.iter().enumerate() {
            morphism_map[g] = f;
        }
        Some(GroupoidFunctor { source: self.target.clone(), target: self.source.clone(), object_map, morphism_map })
    }
}
