use std::collections::HashMap;
use std::hash::Hash;

use super::{Arrow, FiniteGroupoid};

/// Assembles a groupoid from morphisms carrying structural labels.
///
/// Morphisms are numbered in insertion order. The composition, identity and
/// inverse tables are computed from the label algebra supplied to
/// [`Builder::finish`]; a label is looked up together with its endpoints, so
/// labels need only be unique within a hom-set.
pub struct Builder<M> {
    object_count: usize,
    arrows: Vec<Arrow>,
    labels: Vec<M>,
    index: HashMap<(usize, usize, M), usize>,
}

/// A groupoid together with the label of each morphism.
#[derive(Clone, Debug)]
pub struct Labeled<M> {
    pub groupoid: FiniteGroupoid,
    pub labels: Vec<M>,
    index: HashMap<(usize, usize, M), usize>,
}

impl<M: Clone + Eq + Hash> Builder<M> {
    pub fn new(object_count: usize) -> Self {
        Builder { object_count, arrows: Vec::new(), labels: Vec::new(), index: HashMap::new() }
    }

    pub fn add(&mut self, src: usize, dst: usize, label: M) -> usize {
        debug_assert!(src < self.object_count && dst < self.object_count);
        let next = self.arrows.len();
        let idx = *self.index.entry((src, dst, label.clone())).or_insert(next);
        if idx == next {
            self.arrows.push(Arrow { src, dst });
            self.labels.push(label);
        }
        idx
    }

    pub fn finish(
        self,
        identity: impl Fn(usize) -> M,
        compose: impl Fn(&M, &M) -> M,
        inverse: impl Fn(&M) -> M,
    ) -> Labeled<M> {
        let Builder { object_count, arrows, labels, index } = self;
        let find = |src: usize, dst: usize, label: M| -> usize {
            match index.get(&(src, dst, label)) {
                Some(&i) => i,
                None => {
                    panic!("label algebra produced a morphism {src} -> {dst} that was never added")
                }
            }
        };
        let identity_of: Vec<usize> = (0..object_count).map(|x| find(x, x, identity(x))).collect();
        let inverse_of: Vec<usize> = arrows.iter().zip(&labels).map(|(a, l)| find(a.dst, a.src, inverse(l))).collect();
        let mut incoming = vec![Vec::new(); object_count];
        let mut outgoing = vec![Vec::new(); object_count];
        for (f, a) in arrows.iter().enumerate() {
            incoming[a.dst].push(f);
            outgoing[a.src].push(f);
        }
        let mut table = HashMap::new();
        for y in 0..object_count {
            for &f in &incoming[y] {
                for &g in &outgoing[y] {
                    let gf = find(arrows[f].src, arrows[g].dst, compose(&labels[g], &labels[f]));
                    table.insert((g, f), gf);
                }
            }
        }
        let groupoid = FiniteGroupoid::from_tables(object_count, arrows, identity_of, table, inverse_of);
        Labeled { groupoid, labels, index }
    }
}

impl<M: Clone + Eq + Hash> Labeled<M> {
    pub fn lookup(&self, src: usize, dst: usize, label: &M) -> Option<usize> {
        self.index.get(&(src, dst, label.clone())).copied()
    }

    /// Like [`Labeled::lookup`] but panics when the morphism is missing.
    pub fn index_of(&self, src: usize, dst: usize, label: &M) -> usize {
        match self.lookup(src, dst, label) {
            Some(i) => i,
            None => panic!("no morphism {src} -> {dst} with the requested label"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpd::validate_groupoid;

    #[test]
    fn builds_cyclic_group_from_labels() {
        let n = 5;
        let mut b = Builder::new(1);
        for k in 0..n {
            b.add(0, 0, k);
        }
        let l = b.finish(|_| 0, |g, f| (g + f) % n, |f| (n - f) % n);
        assert!(validate_groupoid(&l.groupoid).is_empty());
        assert_eq!(l.groupoid.compose(3, 4), 2);
        assert_eq!(l.lookup(0, 0, &4), Some(4));
    }
}
