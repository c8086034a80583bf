use std::collections::HashMap;
use std::sync::Arc;

use super::eval::{eval, Evaluated};
use super::{PolyError, Polynomial};
use crate::fam::{tot_map, Family, Total};
use crate::grpd::{GroupoidFunctor, Grpd};

/// `P ⊗ Q` ("first `P`, then `Q`") with the decodings of its operations
/// and parameters.
///
/// An operation of the composite over `k` is `(d, s)`: an operation `d` of
/// `Q` over `k` and a functor `s` from the parameter total of `d` to
/// `tot(P.ops)` over the middle groupoid. Its parameters at `i` form the
/// total groupoid, over the parameter total of `d`, of the parameters of
/// `P` at `i` pulled back along `s`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub poly: Polynomial,
    pub first: Arc<Polynomial>,
    pub second: Arc<Polynomial>,
    /// `eval(Q, P.ops)`; its family is the composite's operation family.
    pub inner: Evaluated,
    /// Parameter totals, indexed by objects of `source × tot(ops)`.
    pub fiber_totals: Vec<Total>,
}

/// Decoded operation of a composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositeOp {
    pub k: usize,
    /// Operation of the second polynomial, as an object of its `tot(ops)`.
    pub outer: usize,
    /// Index of the section in the functor groupoid of `outer`.
    pub section: usize,
}

impl Composite {
    pub fn op(&self, t: usize) -> CompositeOp {
        let (k, x) = self.poly.ops_total().object(t);
        let (d, section) = self.inner.decode(k, x);
        CompositeOp { k, outer: self.second.ops_total().object_index(k, d), section }
    }

    /// Operation index of the composite for `(k, d, section)`.
    pub fn op_index(&self, op: CompositeOp) -> usize {
        let (k, d) = self.second.op(op.outer);
        let x = self.inner.sigma.totals[k].object_index(d, op.section);
        self.poly.ops_total().object_index(k, x)
    }

    /// `(π, p)`: an object of the outer parameter total and a parameter of
    /// the first polynomial over the section's value at `π`.
    pub fn param(&self, i: usize, t: usize, z: usize) -> (usize, usize) {
        self.fiber_totals[self.poly.base_object(i, t)].object(z)
    }

    pub fn param_index(&self, i: usize, t: usize, pi: usize, p: usize) -> usize {
        self.fiber_totals[self.poly.base_object(i, t)].object_index(pi, p)
    }

    /// The section of operation `t` as maps out of the outer parameter total.
    pub fn section(&self, t: usize) -> (Vec<usize>, Vec<usize>) {
        let op = self.op(t);
        self.inner.sections[op.outer].maps(op.section)
    }
}

/// Composes `p: I ↝ J` with `q: J ↝ K`.
pub fn compose(p: &Arc<Polynomial>, q: &Arc<Polynomial>, cap: u64) -> Result<Composite, PolyError> {
    if **p.target() != **q.source() {
        return Err(PolyError::Boundary("target of the first is not the source of the second".into()));
    }
    let inner = eval(q, p.ops(), cap)?;
    let ops = inner.family.clone();
    let source: Grpd = p.source().clone();
    let i_count = source.object_count();
    let mut fiber_totals = Vec::new();
    let poly = Polynomial::new(source.clone(), ops, |base, total| {
        let nt = total.groupoid.object_count();
        let mt = total.groupoid.morphism_count();
        let decode = |t: usize| {
            let (k, x) = total.object(t);
            let (d, s) = inner.decode(k, x);
            (q.ops_total().object_index(k, d), s)
        };
        let at_source: Vec<Family> = (0..i_count).map(|i| p.params_at_source(i)).collect();
        let mut section_maps: HashMap<(usize, usize), GroupoidFunctor> = HashMap::new();
        for t in 0..nt {
            let (o, s) = decode(t);
            section_maps.entry((o, s)).or_insert_with(|| inner.sections[o].functor(s));
        }
        let families: Vec<Family> = (0..base.object_count())
            .map(|b| {
                let (i, t) = (b / nt, b % nt);
                at_source[i].restrict(&section_maps[&decode(t)])
            })
            .collect();
        fiber_totals = families.iter().map(Family::tot).collect();

        let mut pt_maps: HashMap<usize, GroupoidFunctor> = HashMap::new();
        let transports = (0..base.morphism_count())
            .map(|bm| {
                let (u, mu) = (bm / mt, bm % mt);
                let (w, y) = total.morphism(mu);
                let k2 = q.target().dst(w);
                let (phi, psi) = inner.decode_morphism(k2, y);
                let lambda = q.ops_total().morphism_index(w, phi);
                let theta = pt_maps.entry(lambda).or_insert_with(|| q.pt_map(lambda));
                let (t, t2) = (total.groupoid.src(mu), total.groupoid.dst(mu));
                let o2 = decode(t2).0;
                let nu = inner.sections[o2].components_of(psi);
                let eta: Vec<GroupoidFunctor> = (0..theta.source.object_count())
                    .map(|pi| p.params().transport(p.base_morphism(u, nu[theta.obj(pi)])).clone())
                    .collect();
                let (b, b2) = (base.src(bm), base.dst(bm));
                debug_assert_eq!((b, b2), (source.src(u) * nt + t, source.dst(u) * nt + t2));
                tot_map(&fiber_totals[b], &fiber_totals[b2], theta, &eta)
            })
            .collect();
        let fibers = fiber_totals.iter().map(|x| x.groupoid.clone()).collect();
        Family::new(base.clone(), fibers, transports)
    });
    Ok(Composite { poly, first: p.clone(), second: q.clone(), inner, fiber_totals })
}
