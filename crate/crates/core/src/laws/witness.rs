//! Canonical unitors and associator, built from the decodings of composite
//! operations and parameters.

use std::sync::Arc;

use crate::grpd::{GroupoidFunctor, Grpd};
use crate::poly::{compose, identity_poly, Composite, CompositeOp, PolyError, Polynomial, PolynomialMorphism};

pub(crate) fn functor(
    src: &Grpd,
    dst: &Grpd,
    obj: impl Fn(usize) -> usize,
    mor: impl Fn(usize) -> usize,
) -> GroupoidFunctor {
    GroupoidFunctor::new(
        src.clone(),
        dst.clone(),
        (0..src.object_count()).map(obj).collect(),
        (0..src.morphism_count()).map(mor).collect(),
    )
}

/// `Id ⊗ P → P`: a parameter `(p, α: i → i')` goes to `p` transported along `α⁻¹`.
pub fn unit_l(p: &Arc<Polynomial>, cap: u64) -> Result<PolynomialMorphism, PolyError> {
    let id = Arc::new(identity_poly(p.source()));
    let c = compose(&id, p, cap)?;
    let l = Arc::new(c.poly.clone());
    let i = p.source();
    let j = p.target();
    let ops = (0..j.object_count())
        .map(|k| {
            functor(l.ops().fiber(k), p.ops().fiber(k), |x| c.inner.decode(k, x).0, |m| c.inner.decode_morphism(k, m).0)
        })
        .collect();
    let params = (0..l.params_base().object_count())
        .map(|b| {
            let (x, t) = l.split_base_object(b);
            let o = c.op(t).outer;
            let pt = p.param_total(o);
            let total = &c.fiber_totals[b];
            // (π = (x2, q), a) with a indexing Hom(x, x2).
            let back = |z: usize| {
                let (pi, a) = total.object(z);
                let x2 = pt.object(pi).0;
                i.inverse(i.hom(x, x2)[a])
            };
            let target = p.params().fiber(p.base_object(x, o));
            let ident = p.ops_total().groupoid.identity(o);
            functor(
                &total.groupoid,
                target,
                |z| {
                    let q = pt.object(total.object(z).0).1;
                    p.params().transport(p.base_morphism(back(z), ident)).obj(q)
                },
                |m| {
                    let (beta, _) = total.morphism(m);
                    let phi = pt.morphism(beta).1;
                    let z2 = total.groupoid.dst(m);
                    p.params().transport(p.base_morphism(back(z2), ident)).mor(phi)
                },
            )
        })
        .collect();
    PolynomialMorphism::new(l, p.clone(), ops, params)
}

/// `P ⊗ Id → P`: an operation goes to its section's value at the identity
/// path, and a parameter over `(j, α)` is carried to that point. Strictly
/// natural when the operation fibers of `P` are discrete.
pub fn unit_r(p: &Arc<Polynomial>, cap: u64) -> Result<PolynomialMorphism, PolyError> {
    let j = p.target();
    let id = Arc::new(identity_poly(j));
    let c = compose(p, &id, cap)?;
    let r = Arc::new(c.poly.clone());
    // Base point (y, id_y) of the parameter total of the identity's op at y.
    let base_point = |y: usize| {
        let pos = j.hom(y, y).iter().position(|&f| f == j.identity(y)).expect("identity");
        id.param_total(y).object_index(y, pos)
    };
    let ops = (0..j.object_count())
        .map(|y| {
            let bp = base_point(y);
            functor(
                r.ops().fiber(y),
                p.ops().fiber(y),
                |x| {
                    let op = c.op(r.ops_total().object_index(y, x));
                    let (objs, _) = c.inner.sections[op.outer].maps(op.section);
                    p.op(objs[bp]).1
                },
                |m| {
                    let (_, psi) = c.inner.decode_morphism(y, m);
                    let nu = c.inner.sections[y].components_of(psi);
                    p.ops_total().morphism(nu[bp]).1
                },
            )
        })
        .collect();
    let params = (0..r.params_base().object_count())
        .map(|b| {
            let (x, t) = r.split_base_object(b);
            let op = c.op(t);
            let (objs, mors) = c.inner.sections[op.outer].maps(op.section);
            let pt = id.param_total(op.outer);
            let bp = base_point(op.k);
            let to_base = |pi: usize| mors[pt.groupoid.hom(pi, bp)[0]];
            let total = &c.fiber_totals[b];
            let target = p.params().fiber(p.base_object(x, objs[bp]));
            let ident = p.source().identity(x);
            functor(
                &total.groupoid,
                target,
                |z| {
                    let (pi, q) = total.object(z);
                    p.params().transport(p.base_morphism(ident, to_base(pi))).obj(q)
                },
                |m| {
                    let chi = total.morphism(m).1;
                    let pi2 = total.object(total.groupoid.dst(m)).0;
                    p.params().transport(p.base_morphism(ident, to_base(pi2))).mor(chi)
                },
            )
        })
        .collect();
    PolynomialMorphism::new(r, p.clone(), ops, params)
}

/// The four composites around an associator.
pub(crate) struct Bracketings {
    /// `P ⊗ Q`.
    pub pq: Composite,
    /// `(P ⊗ Q) ⊗ R`.
    pub left: Composite,
    /// `Q ⊗ R`.
    pub qr: Composite,
    /// `P ⊗ (Q ⊗ R)`.
    pub right: Composite,
}

impl Bracketings {
    pub fn new(p: &Arc<Polynomial>, q: &Arc<Polynomial>, r: &Arc<Polynomial>, cap: u64) -> Result<Self, PolyError> {
        let pq = compose(p, q, cap)?;
        let left = compose(&Arc::new(pq.poly.clone()), r, cap)?;
        let qr = compose(q, r, cap)?;
        let right = compose(p, &Arc::new(qr.poly.clone()), cap)?;
        Ok(Bracketings { pq, left, qr, right })
    }
}

/// `(P ⊗ Q) ⊗ R → P ⊗ (Q ⊗ R)`, an isomorphism.
pub fn assoc(
    p: &Arc<Polynomial>,
    q: &Arc<Polynomial>,
    r: &Arc<Polynomial>,
    cap: u64,
) -> Result<PolynomialMorphism, PolyError> {
    let br = Bracketings::new(p, q, r, cap)?;
    assoc_from(&br, p, q, r)
}

pub(crate) fn assoc_from(
    br: &Bracketings,
    p: &Arc<Polynomial>,
    q: &Arc<Polynomial>,
    r: &Arc<Polynomial>,
) -> Result<PolynomialMorphism, PolyError> {
    let Bracketings { pq, left, qr, right } = br;
    let (a, b) = (Arc::new(left.poly.clone()), Arc::new(right.poly.clone()));
    let pops = &p.ops_total().groupoid;
    let pq_tot = pq.poly.ops_total();

    // tot(PQ.ops) → tot(Q.ops).
    let pr_obj = |t: usize| pq.op(t).outer;
    let pr_mor = |m: usize| {
        let (w, y) = pq_tot.morphism(m);
        let k2 = q.target().dst(w);
        let phi = pq.inner.decode_morphism(k2, y).0;
        q.ops_total().morphism_index(w, phi)
    };

    // Image of an operation of A: the QR-operation E and the section T.
    let image = |t_a: usize| -> (usize, CompositeOp) {
        let op = left.op(t_a);
        let e = op.outer;
        let (s_obj, s_mor) = left.inner.sections[e].maps(op.section);
        let sigma: Vec<usize> = s_mor.iter().map(|&m| pr_mor(m)).collect();
        let sigma_idx = qr.inner.sections[e].index_of(&sigma).expect("projected section");
        let big_e = qr.op_index(CompositeOp { k: op.k, outer: e, section: sigma_idx });
        let ptqr = qr.poly.param_total(big_e);
        let prt = r.param_total(e);
        let t_mor: Vec<usize> = (0..ptqr.groupoid.morphism_count())
            .map(|om| {
                let (w, zeta) = ptqr.morphism(om);
                let j2 = p.target().dst(w);
                let zt = &qr.fiber_totals[qr.poly.base_object(j2, big_e)];
                let (beta, chi_q) = zt.morphism(zeta);
                let (pi, pi2) = (prt.groupoid.src(beta), prt.groupoid.dst(beta));
                let lambda = sigma[beta];
                let (o_pi, o_pi2) = (pr_obj(s_obj[pi]), pr_obj(s_obj[pi2]));
                debug_assert_eq!(
                    (o_pi, o_pi2),
                    (q.ops_total().groupoid.src(lambda), q.ops_total().groupoid.dst(lambda))
                );
                let pt2 = q.param_total(o_pi2);
                let m2 = pt2.morphism_index(w, chi_q);
                let back = q.pt_map(q.ops_total().groupoid.inverse(lambda)).mor(m2);
                let op_pi = pq.op(s_obj[pi]);
                let (_, s_pi_mor) = pq.inner.sections[op_pi.outer].maps(op_pi.section);
                // S(β) = (w_β, (φ, ψ)); ν = components of ψ.
                let (wb, y) = pq_tot.morphism(s_mor[beta]);
                let (_, psi) = pq.inner.decode_morphism(q.target().dst(wb), y);
                let nu = pq.inner.sections[o_pi2].components_of(psi);
                pops.compose(nu[pt2.groupoid.dst(m2)], s_pi_mor[back])
            })
            .collect();
        let t_idx = right.inner.sections[big_e].index_of(&t_mor).expect("uncurried section");
        (big_e, CompositeOp { k: op.k, outer: big_e, section: t_idx })
    };

    let l_grpd = r.target();
    let a_tot = a.ops_total();
    let images: Vec<(usize, CompositeOp)> = (0..a.op_count()).map(image).collect();
    let ops = (0..l_grpd.object_count())
        .map(|l| {
            functor(
                a.ops().fiber(l),
                b.ops().fiber(l),
                |x| b.ops_total().object(right.op_index(images[a_tot.object_index(l, x)].1)).1,
                |m| {
                    let (src, dst) = (a.ops().fiber(l).src(m), a.ops().fiber(l).dst(m));
                    let (ta, ta2) = (a_tot.object_index(l, src), a_tot.object_index(l, dst));
                    let (e1, e2) = (images[ta].0, images[ta2].0);
                    let (phi_r, psi) = left.inner.decode_morphism(l, m);
                    let e_b = left.op(ta2).outer;
                    let ncomp = left.inner.sections[e_b].components_of(psi);
                    // Operation layer of QR: the projected transformation.
                    let sig: Vec<usize> = ncomp.iter().map(|&n| pr_mor(n)).collect();
                    let lam_r = r.ops_total().morphism_index(l_grpd.identity(l), phi_r);
                    let sig1 = qr.op(e1).section;
                    let sig2 = qr.op(e2).section;
                    let sig_src = qr.inner.section_family.transport(lam_r).obj(sig1);
                    let sig_m = qr.inner.sections[e_b].transformation_index(sig_src, sig2, &sig).expect("natural");
                    let (_, d2) = qr.poly.ops_total().object(e2);
                    let phi_big = qr.inner.sigma.totals[l].morphism_index(phi_r, sig_m);
                    debug_assert_eq!(qr.inner.sigma.totals[l].groupoid.dst(phi_big), d2);
                    // Section layer of B: P-components of the Q-transformations.
                    let ptqr2 = qr.poly.param_total(e2);
                    let comps: Vec<usize> = (0..ptqr2.groupoid.object_count())
                        .map(|omega| {
                            let (j, z) = ptqr2.object(omega);
                            let (pi, qq) = qr.param(j, e2, z);
                            let (w, y) = pq_tot.morphism(ncomp[pi]);
                            let (_, psi_q) = pq.inner.decode_morphism(q.target().dst(w), y);
                            let o2 = pr_obj(pq_tot.groupoid.dst(ncomp[pi]));
                            let nu = pq.inner.sections[o2].components_of(psi_q);
                            nu[q.param_total(o2).object_index(j, qq)]
                        })
                        .collect();
                    let kappa = qr.poly.ops_total().morphism_index(l_grpd.identity(l), phi_big);
                    let t1 = images[ta].1.section;
                    let t2 = images[ta2].1.section;
                    let t_src = right.inner.section_family.transport(kappa).obj(t1);
                    let t_m = right.inner.sections[e2].transformation_index(t_src, t2, &comps).expect("natural");
                    right.inner.sigma.totals[l].morphism_index(phi_big, t_m)
                },
            )
        })
        .collect();

    let params = (0..a.params_base().object_count())
        .map(|bidx| {
            let (i, t_a) = a.split_base_object(bidx);
            let (big_e, op_b) = images[t_a];
            let t_b = right.op_index(op_b);
            let op = left.op(t_a);
            let (s_obj, _) = left.inner.sections[op.outer].maps(op.section);
            let src_total = &left.fiber_totals[bidx];
            let dst_total = &right.fiber_totals[b.base_object(i, t_b)];
            let ptqr = qr.poly.param_total(big_e);
            let omega_of = |pi: usize, rho: usize| {
                let (j, qq) = q.param_total(pr_obj(s_obj[pi])).object(rho);
                let z = qr.param_index(j, big_e, pi, qq);
                ptqr.object_index(j, z)
            };
            functor(
                &src_total.groupoid,
                &dst_total.groupoid,
                |z| {
                    let (pi, x) = src_total.object(z);
                    let (rho, pp) = pq.param(i, s_obj[pi], x);
                    dst_total.object_index(omega_of(pi, rho), pp)
                },
                |m| {
                    let (beta, chi_a) = src_total.morphism(m);
                    let pi2 = r.param_total(op.outer).groupoid.dst(beta);
                    let inner_total = &pq.fiber_totals[pq.poly.base_object(i, s_obj[pi2])];
                    let (gamma, chi_p) = inner_total.morphism(chi_a);
                    let o2 = pr_obj(s_obj[pi2]);
                    let (w, chi_q) = q.param_total(o2).morphism(gamma);
                    let j2 = q.source().dst(w);
                    let zt = &qr.fiber_totals[qr.poly.base_object(j2, big_e)];
                    let zeta = zt.morphism_index(beta, chi_q);
                    let omega_m = ptqr.morphism_index(w, zeta);
                    dst_total.morphism_index(omega_m, chi_p)
                },
            )
        })
        .collect();
    PolynomialMorphism::new(a, b, ops, params)
}
