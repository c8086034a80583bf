//! Polynomials between finite groupoids in indexed-container form: a
//! family of operations over the target and a family of parameters over
//! `source × tot(ops)`.

mod compose;
mod eval;
mod morphism;
mod search;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::fam::{tot_map, validate_family, Family, FiniteVerdict, Total};
use crate::grpd::{FiniteGroupoid, GroupoidFunctor, Grpd};

pub use compose::{compose, Composite, CompositeOp};
pub use eval::{eval, Evaluated};
pub use morphism::{validate_poly_morphism, MorphismReport, PolynomialMorphism};
pub use search::{enumerate_self_equivalences, search_equivalence, Direction, SearchOutcome};

/// Size limits for searches and enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest fiber (objects) a search may involve.
    pub max_objects: usize,
    /// Largest fiber (morphisms) a search may involve.
    pub max_morphisms: usize,
    /// Candidate budget for enumerations of functors and sections.
    pub candidates: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_objects: 6, max_morphisms: 16, candidates: 1_000_000 }
    }
}

impl Caps {
    /// Generous limits for test suites over truncated exponentials.
    pub fn wide() -> Self {
        Caps { max_objects: 512, max_morphisms: 4096, candidates: 5_000_000 }
    }

    pub(crate) fn admits(&self, g: &FiniteGroupoid) -> bool {
        g.object_count() <= self.max_objects && g.morphism_count() <= self.max_morphisms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("parameter family is not indexed by source × tot(ops)")]
    ParamsBase,
    #[error("invalid {which} family: {reason}")]
    Family { which: &'static str, reason: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("enumeration cap of {cap} candidates exceeded")]
    CapExceeded { cap: u64 },
    /// A search stopped at one of its [`Caps`].
    #[error("cap exceeded: {0}")]
    SearchCap(String),
    #[error("{0}")]
    Unsupported(String),
}

impl PolyError {
    pub fn is_cap(&self) -> bool {
        matches!(self, PolyError::CapExceeded { .. } | PolyError::SearchCap(_))
    }
}

impl From<crate::fam::SectionError> for PolyError {
    fn from(e: crate::fam::SectionError) -> Self {
        match e {
            crate::fam::SectionError::CapExceeded { cap } => PolyError::CapExceeded { cap },
        }
    }
}

/// A polynomial `I ↝ J`.
///
/// Operations are a family over `J`. Parameters are a single family over
/// `I × tot(ops)`, so their transport covers morphisms of `I`, of `J` and
/// of operations at once.
#[derive(Clone)]
pub struct Polynomial {
    source: Grpd,
    target: Grpd,
    ops: Arc<Family>,
    ops_total: Arc<Total>,
    params_base: Grpd,
    params: Arc<Family>,
    param_totals: OnceLock<Vec<Total>>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polynomial")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("ops", &self.ops)
            .field("params", &self.params)
            .finish()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.ops == other.ops
            && self.params == other.params
    }
}

impl Polynomial {
    /// Builds a polynomial whose parameter family is produced from the base
    /// `I × tot(ops)` and the total of the operations.
    pub fn new(source: Grpd, ops: Family, params: impl FnOnce(&Grpd, &Total) -> Family) -> Self {
        let target = ops.base().clone();
        let ops_total = ops.tot();
        let params_base = Arc::new(source.product(&ops_total.groupoid));
        let params = params(&params_base, &ops_total);
        Polynomial {
            source,
            target,
            ops: Arc::new(ops),
            ops_total: Arc::new(ops_total),
            params_base,
            params: Arc::new(params),
            param_totals: OnceLock::new(),
        }
    }

    /// Assembles and validates a polynomial from explicit families.
    pub fn from_parts(source: Grpd, ops: Family, params: Family) -> Result<Self, PolyError> {
        if let Some(v) = validate_family(&ops).first() {
            return Err(PolyError::Family { which: "ops", reason: v.to_string() });
        }
        let p = Polynomial::new(source, ops, |_, _| params);
        if **p.params.base() != *p.params_base {
            return Err(PolyError::ParamsBase);
        }
        let params = Family::new(p.params_base.clone(), p.params.fibers().to_vec(), p.params.transports().to_vec());
        if let Some(v) = validate_family(&params).first() {
            return Err(PolyError::Family { which: "params", reason: v.to_string() });
        }
        Ok(Polynomial { params: Arc::new(params), ..p })
    }

    pub fn source(&self) -> &Grpd {
        &self.source
    }

    pub fn target(&self) -> &Grpd {
        &self.target
    }

    pub fn ops(&self) -> &Arc<Family> {
        &self.ops
    }

    pub fn ops_total(&self) -> &Arc<Total> {
        &self.ops_total
    }

    pub fn params(&self) -> &Arc<Family> {
        &self.params
    }

    pub fn params_base(&self) -> &Grpd {
        &self.params_base
    }

    /// Number of operations (objects of `tot(ops)`).
    pub fn op_count(&self) -> usize {
        self.ops_total.groupoid.object_count()
    }

    /// Index in `I × tot(ops)` of `(i, o)`.
    pub fn base_object(&self, i: usize, o: usize) -> usize {
        i * self.op_count() + o
    }

    /// Index in `I × tot(ops)` of `(u, κ)`.
    pub fn base_morphism(&self, u: usize, kappa: usize) -> usize {
        u * self.ops_total.groupoid.morphism_count() + kappa
    }

    /// `(i, o)` for an object of `I × tot(ops)`.
    pub fn split_base_object(&self, b: usize) -> (usize, usize) {
        (b / self.op_count(), b % self.op_count())
    }

    /// `(u, κ)` for a morphism of `I × tot(ops)`.
    pub fn split_base_morphism(&self, m: usize) -> (usize, usize) {
        let n = self.ops_total.groupoid.morphism_count();
        (m / n, m % n)
    }

    /// Parameters of the operation `o` as a family over `I`.
    pub fn param_family(&self, o: usize) -> Family {
        let i = &self.source;
        let along = GroupoidFunctor::new(
            i.clone(),
            self.params_base.clone(),
            (0..i.object_count()).map(|x| self.base_object(x, o)).collect(),
            (0..i.morphism_count()).map(|u| self.base_morphism(u, self.ops_total.groupoid.identity(o))).collect(),
        );
        self.params.restrict(&along)
    }

    /// Parameters of `o` at a fixed source object, as a family over `tot(ops)`.
    pub fn params_at_source(&self, i: usize) -> Family {
        let t = &self.ops_total.groupoid;
        let along = GroupoidFunctor::new(
            t.clone(),
            self.params_base.clone(),
            (0..t.object_count()).map(|o| self.base_object(i, o)).collect(),
            (0..t.morphism_count()).map(|k| self.base_morphism(self.source.identity(i), k)).collect(),
        );
        self.params.restrict(&along)
    }

    /// The parameter total groupoid of every operation, cached.
    pub fn param_totals(&self) -> &[Total] {
        self.param_totals.get_or_init(|| (0..self.op_count()).map(|o| self.param_family(o).tot()).collect())
    }

    pub fn param_total(&self, o: usize) -> &Total {
        &self.param_totals()[o]
    }

    /// The isomorphism of parameter totals induced by an operation morphism.
    pub fn pt_map(&self, kappa: usize) -> GroupoidFunctor {
        let t = &self.ops_total.groupoid;
        let (o, o2) = (t.src(kappa), t.dst(kappa));
        let eta: Vec<GroupoidFunctor> = (0..self.source.object_count())
            .map(|i| self.params.transport(self.base_morphism(self.source.identity(i), kappa)).clone())
            .collect();
        tot_map(self.param_total(o), self.param_total(o2), &GroupoidFunctor::identity(self.source.clone()), &eta)
    }

    /// `(j, c)` for an operation index.
    pub fn op(&self, o: usize) -> (usize, usize) {
        self.ops_total.object(o)
    }
}

/// Validation of both families and of the parameter base.
pub fn validate_polynomial(p: &Polynomial) -> Result<(), PolyError> {
    if let Some(v) = validate_family(&p.ops).first() {
        return Err(PolyError::Family { which: "ops", reason: v.to_string() });
    }
    if **p.params.base() != *p.params_base {
        return Err(PolyError::ParamsBase);
    }
    if let Some(v) = validate_family(&p.params).first() {
        return Err(PolyError::Family { which: "params", reason: v.to_string() });
    }
    Ok(())
}

/// One operation of a set-level polynomial: its target color and the
/// source colors of its parameters.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DiscreteOp {
    pub color: usize,
    pub param_colors: Vec<usize>,
}

/// A polynomial between discrete groupoids with discrete operation and
/// parameter fibers. Operations over each color keep their listed order.
pub fn discrete_poly(sources: usize, targets: usize, ops: &[DiscreteOp]) -> Polynomial {
    let i = Arc::new(FiniteGroupoid::discrete(sources));
    let j = Arc::new(FiniteGroupoid::discrete(targets));
    let by_color: Vec<Vec<&DiscreteOp>> = (0..targets).map(|c| ops.iter().filter(|o| o.color == c).collect()).collect();
    let fibers: Vec<Grpd> = by_color.iter().map(|v| Arc::new(FiniteGroupoid::discrete(v.len()))).collect();
    let transports = (0..targets).map(|c| GroupoidFunctor::identity(fibers[c].clone())).collect();
    let ops_family = Family::new(j, fibers, transports);
    Polynomial::new(i, ops_family, |base, total| {
        let n = total.groupoid.object_count();
        let fibers: Vec<Grpd> = (0..base.object_count())
            .map(|b| {
                let (src, o) = (b / n, b % n);
                let (color, c) = total.object(o);
                let arity = by_color[color][c].param_colors.iter().filter(|&&x| x == src).count();
                Arc::new(FiniteGroupoid::discrete(arity))
            })
            .collect();
        let transports = (0..base.morphism_count()).map(|m| GroupoidFunctor::identity(fibers[m].clone())).collect();
        Family::new(base.clone(), fibers, transports)
    })
}

/// `X^n` over the one-object groupoid.
pub fn monomial(n: usize) -> Polynomial {
    discrete_poly(1, 1, &[DiscreteOp { color: 0, param_colors: vec![0; n] }])
}

/// The identity polynomial: one operation over each object, with
/// parameters at `(i, j)` the morphisms `i → j`, transported by
/// `α ↦ v ∘ α ∘ u⁻¹`.
pub fn identity_poly(i: &Grpd) -> Polynomial {
    representable(i, &GroupoidFunctor::identity(i.clone()))
}

/// `I ↝ J` for an embedding `e: J → I`: one operation over each `j`, with
/// parameters at `(i, j)` the morphisms `i → e(j)`.
pub fn representable(i: &Grpd, e: &GroupoidFunctor) -> Polynomial {
    let j = e.source.clone();
    let ops = Family::constant(j.clone(), Arc::new(FiniteGroupoid::discrete(1)));
    Polynomial::new(i.clone(), ops, |base, total| {
        // tot(ops) is a copy of J: object y is (y, 0) and morphism v is (v, id).
        let n = total.groupoid.object_count();
        let m = total.groupoid.morphism_count();
        let fibers: Vec<Grpd> = (0..base.object_count())
            .map(|b| Arc::new(FiniteGroupoid::discrete(i.hom(b / n, e.obj(b % n)).len())))
            .collect();
        let position = |x: usize, y: usize, a: usize| i.hom(x, y).iter().position(|&h| h == a).expect("in hom");
        let transports = (0..base.morphism_count())
            .map(|bm| {
                let (u, v) = (bm / m, e.mor(bm % m));
                let (x, y) = (i.src(u), i.src(v));
                let (x2, y2) = (i.dst(u), i.dst(v));
                let map: Vec<usize> =
                    i.hom(x, y).iter().map(|&a| position(x2, y2, i.compose(v, i.compose(a, i.inverse(u))))).collect();
                let (s, t) = (base.src(bm), base.dst(bm));
                GroupoidFunctor::new(fibers[s].clone(), fibers[t].clone(), map.clone(), map)
            })
            .collect();
        Family::new(base.clone(), fibers, transports)
    })
}

/// Per-operation finiteness of the parameter totals.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitaryReport {
    /// `(j, c, verdict)` for every operation, in total order.
    pub verdicts: Vec<(usize, usize, FiniteVerdict)>,
    /// Whether verdicts agree along every operation morphism.
    pub invariant: bool,
}

impl FinitaryReport {
    pub fn is_finitary(&self) -> bool {
        self.invariant && self.verdicts.iter().all(|v| v.2.is_finite())
    }

    /// Arities of finitary operations in total order.
    pub fn arities(&self) -> Vec<Option<usize>> {
        self.verdicts.iter().map(|v| v.2.cardinality()).collect()
    }
}

pub fn is_finitary(p: &Polynomial) -> FinitaryReport {
    let verdicts: Vec<(usize, usize, FiniteVerdict)> = (0..p.op_count())
        .map(|o| {
            let (j, c) = p.op(o);
            (j, c, FiniteVerdict::of_groupoid(&p.param_total(o).groupoid))
        })
        .collect();
    let t = &p.ops_total.groupoid;
    let invariant =
        (0..t.morphism_count()).all(|k| verdicts[t.src(k)].2.cardinality() == verdicts[t.dst(k)].2.cardinality());
    FinitaryReport { verdicts, invariant }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_polynomials_are_valid_and_finitary() {
        for i in [FiniteGroupoid::discrete(1), FiniteGroupoid::cyclic(2), FiniteGroupoid::codiscrete(2)] {
            let p = identity_poly(&Arc::new(i));
            assert_eq!(validate_polynomial(&p), Ok(()));
            let report = is_finitary(&p);
            assert!(report.is_finitary());
            assert!(report.arities().iter().all(|&a| a == Some(1)));
        }
    }

    #[test]
    fn finitary_examples() {
        let x2 = monomial(2);
        assert_eq!(validate_polynomial(&x2), Ok(()));
        assert_eq!(is_finitary(&x2).arities(), vec![Some(2)]);

        // One parameter with trivial transport over Z/2: its total is Z/2.
        let z2 = Arc::new(FiniteGroupoid::cyclic(2));
        let ops = Family::constant(Arc::new(FiniteGroupoid::discrete(1)), Arc::new(FiniteGroupoid::discrete(1)));
        let p =
            Polynomial::new(z2, ops, |base, _| Family::constant(base.clone(), Arc::new(FiniteGroupoid::discrete(1))));
        assert_eq!(validate_polynomial(&p), Ok(()));
        let report = is_finitary(&p);
        assert!(!report.is_finitary());
        assert!(matches!(report.verdicts[0].2, FiniteVerdict::NotFinite { automorphisms: 2, .. }));
    }
}
