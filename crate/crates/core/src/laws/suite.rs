use std::fmt;
use std::sync::Arc;

use super::{check_coherence, law_witness, Coherence, CoherenceVerdict, Law};
use crate::gen::{Gen, Shape};
use crate::poly::{validate_poly_morphism, Caps, PolyError, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    UnitL,
    UnitR,
    Assoc,
    Triangle,
    Pentagon,
}

impl fmt::Display for LawKind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            LawKind::UnitL => "unit_l",
            LawKind::UnitR => "unit_r",
            LawKind::Assoc => "assoc",
            LawKind::Triangle => "triangle",
            LawKind::Pentagon => "pentagon",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// A cap stopped the check before it could decide.
    Capped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawRecord {
    pub instance: usize,
    pub law: LawKind,
    pub verdict: Verdict,
}

/// Random instances for the unit and associativity laws: three
/// composable polynomials between small groupoids.
pub fn law_instance(g: &mut Gen) -> [Arc<Polynomial>; 3] {
    let shape = Shape::default();
    let objs: Vec<_> = (0..4).map(|_| g.small_groupoid()).collect();
    [0, 1, 2].map(|k| Arc::new(g.polynomial(&objs[k], &objs[k + 1], &shape)))
}

/// Random instances for the coherence laws. The triangle pair meets in a
/// discrete groupoid, where the left whisker of the unitor is strict; the
/// pentagon alternates small groupoids with discrete ones to keep the
/// iterated composites small.
pub fn coherence_instance(g: &mut Gen) -> ([Arc<Polynomial>; 2], [Arc<Polynomial>; 4]) {
    let shape = Shape::default();
    let (a, b, c) = (g.small_groupoid(), g.discrete(1, 2), g.small_groupoid());
    let triangle = [Arc::new(g.polynomial(&a, &b, &shape)), Arc::new(g.polynomial(&b, &c, &shape))];
    let objs: Vec<_> = (0..5).map(|k| if k % 2 == 0 { g.small_groupoid() } else { g.discrete(1, 2) }).collect();
    let pentagon = [0, 1, 2, 3].map(|k| Arc::new(g.polynomial(&objs[k], &objs[k + 1], &shape)));
    (triangle, pentagon)
}

fn witness_verdict(law: &Law, caps: &Caps) -> Verdict {
    match law_witness(law, caps) {
        Ok(w) => match validate_poly_morphism(&w) {
            Ok(r) if r.is_equivalence => Verdict::Pass,
            Ok(_) => Verdict::Fail("witness is not an equivalence".into()),
            Err(e) => Verdict::Fail(e),
        },
        Err(e) => error_verdict(e),
    }
}

fn coherence_verdict(kind: &Coherence, caps: &Caps) -> Verdict {
    match check_coherence(kind, caps) {
        Ok(CoherenceVerdict::Equal) => Verdict::Pass,
        Ok(CoherenceVerdict::Different { layer }) => Verdict::Fail(format!("sides differ at {layer}")),
        Err(e) => error_verdict(e),
    }
}

fn error_verdict(e: PolyError) -> Verdict {
    if e.is_cap() {
        Verdict::Capped(e.to_string())
    } else {
        Verdict::Fail(e.to_string())
    }
}

/// Checks the unit and associativity laws on `count` random instances,
/// and the triangle and pentagon on every instance as well.
pub fn run_law_suite(seed: u64, count: usize, caps: &Caps) -> Vec<LawRecord> {
    let mut g = Gen::new(seed);
    let mut out = Vec::new();
    for instance in 0..count {
        let [p, q, r] = law_instance(&mut g);
        let ([tp, tq], [a, b, c, d]) = coherence_instance(&mut g);
        let mut record = |law, verdict| out.push(LawRecord { instance, law, verdict });
        record(LawKind::UnitL, witness_verdict(&Law::UnitL(p.clone()), caps));
        record(LawKind::UnitR, witness_verdict(&Law::UnitR(p.clone()), caps));
        record(LawKind::Assoc, witness_verdict(&Law::Assoc(p, q, r), caps));
        record(LawKind::Triangle, coherence_verdict(&Coherence::Triangle(tp, tq), caps));
        record(LawKind::Pentagon, coherence_verdict(&Coherence::Pentagon(a, b, c, d), caps));
    }
    out
}
