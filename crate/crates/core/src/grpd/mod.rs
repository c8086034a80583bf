//! Finite groupoids given by explicit tables, functors between them,
//! connected components, equivalence checking and groupoid cardinality.

mod build;
mod equiv;
mod functor;
pub mod lift;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use build::{Builder, Labeled};
pub use equiv::{
    check_groupoid_equivalence, group_isomorphism, EquivalenceOutcome, EquivalenceWitness, GroupIso, DEFAULT_AUT_CAP,
};
pub use functor::{FunctorViolation, GroupoidFunctor};
pub use validate::{validate_groupoid, Violation};

use crate::rational::Rational;

/// Source and target of a morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid with objects `0..object_count` and explicit
/// identity, composition and inverse tables.
///
/// `compose[(g, f)]` is `g ∘ f` and is present exactly when
/// `dst(f) == src(g)`. Values built through the constructors in this
/// module are valid by construction; [`FiniteGroupoid::from_tables`]
/// accepts arbitrary data so that [`validate_groupoid`] can report on it.
#[derive(Clone)]
pub struct FiniteGroupoid {
    object_count: usize,
    arrows: Vec<Arrow>,
    identity_of: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    inverse_of: Vec<usize>,
    homs: OnceLock<HomIndex>,
    components: OnceLock<Components>,
}

#[derive(Clone, Debug, Default)]
struct HomIndex {
    hom: HashMap<(usize, usize), Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

/// Connected components in canonical order: each component is represented
/// by its smallest object and components are sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub component_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// For every object `x`, a chosen morphism from the representative of
    /// its component to `x` (the identity when `x` is the representative).
    pub path_from_rep: Vec<usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.object_count == other.object_count
            && self.arrows == other.arrows
            && self.identity_of == other.identity_of
            && self.inverse_of == other.inverse_of
            && self.compose == other.compose
    }
}

impl Eq for FiniteGroupoid {}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.object_count)
            .field("morphisms", &self.arrows.len())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupTableError {
    #[error("group table is empty")]
    Empty,
    #[error("group table row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("closure fails: entry ({a}, {b}) = {value} is out of range")]
    Closure { a: usize, b: usize, value: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    Associativity { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    Identity,
    #[error("element {0} has no inverse")]
    Inverse(usize),
}

impl FiniteGroupoid {
    /// Raw constructor; performs no checks beyond what is needed to store
    /// the data. Use [`validate_groupoid`] before trusting the result.
    pub fn from_tables(
        object_count: usize,
        arrows: Vec<Arrow>,
        identity_of: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
        inverse_of: Vec<usize>,
    ) -> Self {
        FiniteGroupoid {
            object_count,
            arrows,
            identity_of,
            compose,
            inverse_of,
            homs: OnceLock::new(),
            components: OnceLock::new(),
        }
    }

    /// The discrete groupoid on `n` objects (also the realization of `Fin n`).
    pub fn discrete(n: usize) -> Self {
        let arrows = (0..n).map(|x| Arrow { src: x, dst: x }).collect();
        let compose = (0..n).map(|x| ((x, x), x)).collect();
        Self::from_tables(n, arrows, (0..n).collect(), compose, (0..n).collect())
    }

    /// The groupoid with `n` objects and exactly one morphism between any two.
    pub fn codiscrete(n: usize) -> Self {
        let mut arrows = Vec::with_capacity(n * n);
        for src in 0..n {
            for dst in 0..n {
                arrows.push(Arrow { src, dst });
            }
        }
        let idx = |s: usize, d: usize| s * n + d;
        let mut compose = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    compose.insert((idx(y, z), idx(x, y)), idx(x, z));
                }
            }
        }
        let identity_of = (0..n).map(|x| idx(x, x)).collect();
        let inverse_of = arrows.iter().map(|a| idx(a.dst, a.src)).collect();
        Self::from_tables(n, arrows, identity_of, compose, inverse_of)
    }

    /// One object whose automorphisms are the elements of the group given by
    /// its multiplication table (`table[a][b] = a·b`, read as `a ∘ b`).
    pub fn deloop(table: &[Vec<usize>]) -> Result<Self, GroupTableError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupTableError::Empty);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupTableError::Ragged { row, len: entries.len(), expected: n });
            }
            for (b, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupTableError::Closure { a: row, b, value });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupTableError::Associativity { a, b, c });
                    }
                }
            }
        }
        let unit =
            (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or(GroupTableError::Identity)?;
        let mut inverse_of = Vec::with_capacity(n);
        for (a, row) in table.iter().enumerate() {
            let inv = (0..n).find(|&b| row[b] == unit && table[b][a] == unit).ok_or(GroupTableError::Inverse(a))?;
            inverse_of.push(inv);
        }
        let arrows = vec![Arrow { src: 0, dst: 0 }; n];
        let mut compose = HashMap::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            for (b, &ab) in row.iter().enumerate() {
                compose.insert((a, b), ab);
            }
        }
        Ok(Self::from_tables(1, arrows, vec![unit], compose, inverse_of))
    }

    /// The cyclic group of order `n` as a one-object groupoid.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::deloop(&table).expect("cyclic group table is a group")
    }

    /// Disjoint union; objects and morphisms of `self` come first.
    pub fn coproduct(&self, other: &FiniteGroupoid) -> Self {
        let no = self.object_count;
        let nm = self.arrows.len();
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| Arrow { src: a.src + no, dst: a.dst + no }));
        let mut identity_of = self.identity_of.clone();
        identity_of.extend(other.identity_of.iter().map(|m| m + nm));
        let mut inverse_of = self.inverse_of.clone();
        inverse_of.extend(other.inverse_of.iter().map(|m| m + nm));
        let mut compose = self.compose.clone();
        compose.extend(other.compose.iter().map(|(&(g, f), &gf)| ((g + nm, f + nm), gf + nm)));
        Self::from_tables(no + other.object_count, arrows, identity_of, compose, inverse_of)
    }

    /// Cartesian product; object `(x, y)` has index `x * |obj(other)| + y`
    /// and morphism `(f, g)` has index `f * |mor(other)| + g`.
    pub fn product(&self, other: &FiniteGroupoid) -> Self {
        let ko = other.object_count;
        let km = other.arrows.len();
        let mut arrows = Vec::with_capacity(self.arrows.len() * km);
        for a in &self.arrows {
            for b in &other.arrows {
                arrows.push(Arrow { src: a.src * ko + b.src, dst: a.dst * ko + b.dst });
            }
        }
        let mut identity_of = Vec::with_capacity(self.object_count * ko);
        for x in 0..self.object_count {
            for y in 0..ko {
                identity_of.push(self.identity_of[x] * km + other.identity_of[y]);
            }
        }
        let mut inverse_of = Vec::with_capacity(arrows.len());
        for f in 0..self.arrows.len() {
            for g in 0..km {
                inverse_of.push(self.inverse_of[f] * km + other.inverse_of[g]);
            }
        }
        let mut compose = HashMap::with_capacity(self.compose.len() * other.compose.len());
        for (&(g1, f1), &h1) in &self.compose {
            for (&(g2, f2), &h2) in &other.compose {
                compose.insert((g1 * km + g2, f1 * km + f2), h1 * km + h2);
            }
        }
        Self::from_tables(self.object_count * ko, arrows, identity_of, compose, inverse_of)
    }

    /// Splits a groupoid that is literally `coproduct(left, right)` with
    /// `left` having `left_objects` objects. Returns `None` when the tables
    /// are not laid out as such a coproduct.
    pub fn split_coproduct(&self, left_objects: usize) -> Option<(FiniteGroupoid, FiniteGroupoid)> {
        if left_objects > self.object_count {
            return None;
        }
        let left_morphisms = self.arrows.iter().take_while(|a| a.src < left_objects).count();
        let left = self.restrict_block(0, left_objects, 0, left_morphisms)?;
        let right = self.restrict_block(left_objects, self.object_count, left_morphisms, self.arrows.len())?;
        (left.coproduct(&right) == *self).then_some((left, right))
    }

    fn restrict_block(&self, o0: usize, o1: usize, m0: usize, m1: usize) -> Option<FiniteGroupoid> {
        let mut arrows = Vec::with_capacity(m1 - m0);
        for a in &self.arrows[m0..m1] {
            if !(o0..o1).contains(&a.src) || !(o0..o1).contains(&a.dst) {
                return None;
            }
            arrows.push(Arrow { src: a.src - o0, dst: a.dst - o0 });
        }
        let identity_of =
            self.identity_of.get(o0..o1)?.iter().map(|&m| m.checked_sub(m0)).collect::<Option<Vec<_>>>()?;
        let inverse_of = self.inverse_of.get(m0..m1)?.iter().map(|&m| m.checked_sub(m0)).collect::<Option<Vec<_>>>()?;
        let compose = self
            .compose
            .iter()
            .filter(|(&(g, _), _)| (m0..m1).contains(&g))
            .map(|(&(g, f), &gf)| Some(((g - m0, f.checked_sub(m0)?), gf.checked_sub(m0)?)))
            .collect::<Option<HashMap<_, _>>>()?;
        Some(Self::from_tables(o1 - o0, arrows, identity_of, compose, inverse_of))
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.arrows[f].dst
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity_of[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity_of
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse_of[f]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse_of
    }

    pub fn compose_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }

    /// `g ∘ f`, if composable.
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics when `dst(f) != src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        match self.compose.get(&(g, f)) {
            Some(&gf) => gf,
            None => panic!("morphisms {g} and {f} are not composable"),
        }
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let a = self.arrows[f];
        a.src == a.dst && self.identity_of[a.src] == f
    }

    fn hom_index(&self) -> &HomIndex {
        self.homs.get_or_init(|| {
            let mut index = HomIndex { hom: HashMap::new(), outgoing: vec![Vec::new(); self.object_count] };
            for (f, a) in self.arrows.iter().enumerate() {
                index.hom.entry((a.src, a.dst)).or_default().push(f);
                if let Some(out) = index.outgoing.get_mut(a.src) {
                    out.push(f);
                }
            }
            index
        })
    }

    /// Morphisms `x → y`, in index order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.hom_index().hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms out of `x`, in index order.
    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.hom_index().outgoing[x]
    }

    /// Automorphisms of `x`, in index order.
    pub fn automorphisms(&self, x: usize) -> &[usize] {
        self.hom(x, x)
    }

    pub fn components(&self) -> &Components {
        self.components.get_or_init(|| {
            let n = self.object_count;
            let mut component_of = vec![usize::MAX; n];
            let mut path_from_rep = vec![usize::MAX; n];
            let mut representatives = Vec::new();
            let mut members = Vec::new();
            for r in 0..n {
                if component_of[r] != usize::MAX {
                    continue;
                }
                let c = representatives.len();
                representatives.push(r);
                component_of[r] = c;
                path_from_rep[r] = self.identity_of[r];
                let mut list = vec![r];
                // In a groupoid every object of the component is reached by a
                // single morphism out of the representative.
                for &f in self.outgoing(r) {
                    let y = self.arrows[f].dst;
                    if component_of[y] == usize::MAX {
                        component_of[y] = c;
                        path_from_rep[y] = f;
                        list.push(y);
                    }
                }
                list.sort_unstable();
                members.push(list);
            }
            Components { component_of, representatives, members, path_from_rep }
        })
    }

    /// Whether every object has only its identity automorphism.
    pub fn has_trivial_automorphisms(&self) -> bool {
        self.components().representatives.iter().all(|&r| self.automorphisms(r).len() == 1)
    }

    /// Whether the groupoid is discrete (identity morphisms only).
    pub fn is_discrete(&self) -> bool {
        self.arrows.len() == self.object_count
    }

    /// Sum over components of `1 / |Aut(representative)|`.
    pub fn cardinality(&self) -> Rational {
        groupoid_cardinality(self)
    }
}

/// Sum over components of `1 / |Aut(representative)|`, exactly.
pub fn groupoid_cardinality(g: &FiniteGroupoid) -> Rational {
    g.components()
        .representatives
        .iter()
        .map(|&r| Rational::new(1, g.automorphisms(r).len() as i128))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Summary of one connected component: its representative and automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub representative: usize,
    pub members: Vec<usize>,
    pub automorphisms: Vec<usize>,
}

/// Components in canonical order together with the automorphism group of
/// each representative.
pub fn components_and_automorphisms(g: &FiniteGroupoid) -> Vec<ComponentSummary> {
    let comps = g.components();
    comps
        .representatives
        .iter()
        .zip(&comps.members)
        .map(|(&r, members)| ComponentSummary {
            representative: r,
            members: members.clone(),
            automorphisms: g.automorphisms(r).to_vec(),
        })
        .collect()
}

/// Shared handle used wherever groupoids are embedded in larger values.
pub type Grpd = Arc<FiniteGroupoid>;

/// A minimal generating set of `Aut(x)`, chosen greedily in index order.
pub fn automorphism_generators(g: &FiniteGroupoid, x: usize) -> Vec<usize> {
    let mut generated = vec![false; g.morphism_count()];
    generated[g.identity(x)] = true;
    let mut gens = Vec::new();
    for &a in g.automorphisms(x) {
        if generated[a] {
            continue;
        }
        gens.push(a);
        let mut queue = vec![g.identity(x)];
        generated.iter_mut().for_each(|b| *b = false);
        generated[g.identity(x)] = true;
        while let Some(e) = queue.pop() {
            for &s in &gens {
                let p = g.compose(e, s);
                if !generated[p] {
                    generated[p] = true;
                    queue.push(p);
                }
            }
        }
    }
    gens
}

/// Extends an assignment of generator images to a group homomorphism
/// `Aut_src(x) → target`, where `mult` multiplies in the target. Returns the
/// full map (indexed like `elements`) or `None` when the assignment does not
/// extend.
pub(crate) fn extend_homomorphism(
    g: &FiniteGroupoid,
    x: usize,
    gens: &[usize],
    images: &[usize],
    target_identity: usize,
    mut mult: impl FnMut(usize, usize) -> usize,
) -> Option<HashMap<usize, usize>> {
    let mut map = HashMap::with_capacity(g.automorphisms(x).len());
    map.insert(g.identity(x), target_identity);
    let mut queue = vec![g.identity(x)];
    while let Some(e) = queue.pop() {
        let fe = map[&e];
        for (&s, &fs) in gens.iter().zip(images) {
            let p = g.compose(e, s);
            let fp = mult(fe, fs);
            match map.get(&p) {
                Some(&existing) if existing != fp => return None,
                Some(_) => {}
                None => {
                    map.insert(p, fp);
                    queue.push(p);
                }
            }
        }
    }
    Some(map)
}
