//! Closed-form operator identities on the model space, each returned as a
//! named residual that must vanish on arbitrary input forms.

use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::killing::Residual;
use crate::svforms::{CurvPart, Frame, ModelCurvature, PairTensor, ROp, SVForm, SymKind};

type GR = GaussianRational;

pub type Named = (&'static str, Residual);

fn one(f: SVForm) -> Residual {
    Residual { parts: vec![f] }
}

fn tensor(t: PairTensor) -> Residual {
    Residual { parts: t.forms().to_vec() }
}

fn r(n: i64, d: i64) -> GR {
    GR::ratio(n, d)
}

/// Algebraic identities of `clf`, `clv`, Clifford multiplication and the
/// form action of `ρ` at the vectors `x`, `y`.
pub fn clifford_identities(frame: &Frame, x: &[GR], y: &[GR], phi: &SVForm) -> Vec<Named> {
    let [c1, c2, c3, c4] = frame.clifford_identities(x, phi);
    vec![
        ("clf-clifford", one(c1)),
        ("clf-hook", one(c2)),
        ("clv-clifford", one(c3)),
        ("clv-wedge", one(c4)),
        ("clfclv", one(frame.clfclv_residual(phi))),
        ("rho-form-displays", one(frame.rho_form(x, y, phi).sub(&frame.rho_form_alt(x, y, phi)))),
    ]
}

/// `(curv^V Φ)^{(p,2)}` in closed form.
pub fn value_pair_closed_form(frame: &Frame, curv: &ModelCurvature, phi: &SVForm) -> Result<PairTensor> {
    let p = phi.degree() as i64;
    if p == 0 {
        return Err(Error::Degree("symmetry projections need degree at least 1".into()));
    }
    let k = curv.kappa();
    let clf = frame.clf_wedge(phi);
    let clf2 = frame.clf_wedge(&clf);
    let s = |v: &[GR]| frame.cliff(v, &clf).add(&phi.wedge(&frame.flat(v)));
    Ok(PairTensor::from_fn(frame, phi.degree(), |i, j| {
        let (x, y) = (frame.unit(i), frame.unit(j));
        let xy = frame.cliff(&x, &frame.cliff(&y, phi)).axpy(&frame.inner(&x, &y), phi);
        let inner = s(&x).hook(&y).sub(&s(&y).hook(&x)).axpy(&r(-1, p + 1), &clf2.hook(&x).hook(&y));
        xy.axpy(&r(-1, p), &inner).scale(&(r(-1, 2) * &k)).with_degree(phi.degree())
    }))
}

/// Identities for the total curvature action on a form of degree `p ≥ 1`:
/// the closed forms of the skew-symmetrized actions, the vanishing of the
/// form-part `(p,2)` component, and the contractions `r₁, r₂, r₃` of the
/// `(p,2)` component.
pub fn curvature_identities(frame: &Frame, curv: &ModelCurvature, phi: &SVForm) -> Result<Vec<Named>> {
    let p = phi.degree();
    if p == 0 {
        return Err(Error::Degree("curvature identities need degree at least 1".into()));
    }
    let (pi, n) = (p as i64, frame.n() as i64);
    let k = curv.kappa();
    let eps = curv.eps_scalar();
    let clf = |f: &SVForm| frame.clf_wedge(f);
    let clv = |f: &SVForm| frame.clv_hook(f);
    let raff = curv.tensor(frame, CurvPart::Aff, phi);
    let rval = curv.tensor(frame, CurvPart::Value, phi);
    let rtot = curv.tensor(frame, CurvPart::Total, phi);
    let pair = rtot.project(SymKind::Pair)?;
    let mut out = Vec::new();

    let mut aff_x = Vec::new();
    let mut val_x = Vec::new();
    for i in 0..frame.n() {
        let x = frame.unit(i);
        let xf = frame.flat(&x);
        aff_x.push(raff.skew_x(&x).axpy(&(&eps * &GR::int(pi)), &phi.wedge(&xf)));
        let rhs = frame.cliff(&x, &clf(phi)).add(&phi.wedge(&xf)).scale(&(r(-1, 2) * &k));
        val_x.push(rval.skew_x(&x).sub(&rhs));
    }
    out.push(("skew-aff-direction", Residual { parts: aff_x }));
    out.push(("skew-aff-total", one(raff.skew_all())));
    out.push(("skew-value-direction", Residual { parts: val_x }));
    out.push(("skew-value-total", one(rval.skew_all().axpy(&(r(1, 4) * &k), &clf(&clf(phi))))));
    out.push(("aff-pair-part", tensor(raff.project(SymKind::Pair)?)));
    out.push(("value-pair-part", tensor(rval.project(SymKind::Pair)?.sub(&value_pair_closed_form(frame, curv, phi)?))));

    let cc = clv(&clv(phi));
    out.push(("r1-curvature", one(pair.op_r(frame, ROp::R1).axpy(&(r(1, 2) * &k), &cc))));

    let r2 = pair.op_r(frame, ROp::R2);
    let r2a = clv(phi)
        .scale(&GR::int(n * pi + n - 2 * pi))
        .add(&clv(&clv(&clf(phi))))
        .scale(&(r(1, 2 * pi) * &k));
    let r2b = clv(phi)
        .scale(&GR::int((n + 2) * (pi - 1)))
        .add(&clf(&cc))
        .scale(&(r(1, 2 * pi) * &k));
    out.push(("r2-curvature-expanded", one(r2.sub(&r2a))));
    out.push(("r2-curvature", one(r2.sub(&r2b))));

    let r3 = pair.op_r(frame, ROp::R3);
    let r3a = phi
        .scale(&GR::int(n * (n * pi - pi - 1)))
        .sub(&clf(&clv(phi)))
        .axpy(&GR::int(2 * n - 3), &clv(&clf(phi)))
        .axpy(&r(1, pi + 1), &clv(&clv(&clf(&clf(phi)))))
        .scale(&(r(1, 2 * pi) * &k));
    let inner = clf(&clv(phi)).scale(&GR::int(2 * (n + 2) * (pi - 1))).add(&clf(&clf(&cc)));
    let r3b = phi
        .scale(&GR::int((n + 1) * (n + 2) * (pi - 1)))
        .axpy(&r(1, pi), &inner)
        .scale(&(r(1, 2 * (pi + 1)) * &k));
    out.push(("r3-curvature-expanded", one(r3.sub(&r3a))));
    out.push(("r3-curvature", one(r3.sub(&r3b))));
    Ok(out)
}

/// `r₃(curv Ψ) = ½(ε − 4a²)n(n−1)Ψ` on spinors (degree 0, no projection).
pub fn spinor_identity(frame: &Frame, curv: &ModelCurvature, psi: &SVForm) -> Named {
    let n = frame.n() as i64;
    let t = curv.tensor(frame, CurvPart::Total, psi).op_r(frame, ROp::R3);
    ("r3-curvature-spinor", one(t.axpy(&(r(-n * (n - 1), 2) * &curv.kappa()), psi)))
}

/// Identities used for Killing spinor-valued 1-forms `Φ′` with companion
/// 2-form `Ξ′`: the `(2,2)` component of the modified curvature, and the
/// contractions of both sides of the second integrability condition.
pub fn degree_one_identities(frame: &Frame, curv: &ModelCurvature, phi: &SVForm, xi: &SVForm) -> Result<Vec<Named>> {
    if phi.degree() != 1 || xi.degree() != 2 {
        return Err(Error::Degree("expects a 1-form and a 2-form".into()));
    }
    let n = frame.n() as i64;
    let k = curv.kappa();
    let ak = &curv.a * &k;
    let clf = |f: &SVForm| frame.clf_wedge(f);
    let clv = |f: &SVForm| frame.clv_hook(f);
    let m = curv.mcurv_tensor(frame, xi).project(SymKind::Pair)?;
    let b = curv.barwedge_tensor(frame, phi);
    let mut out = Vec::new();

    let closed = value_pair_closed_form(frame, curv, xi)?.scale(&GR::int(3));
    out.push(("mcurv-pair-part", tensor(m.sub(&closed))));

    let ccx = clv(&clv(xi));
    out.push(("r1-mcurv", one(m.op_r(frame, ROp::R1).axpy(&(r(3, 2) * &k), &ccx))));
    out.push(("r1-barwedge", one(b.op_r(frame, ROp::R1).axpy(&(GR::int(2 * (n - 1)) * &ak), &clv(phi)))));

    let r2m = clv(xi).scale(&GR::int(n + 2)).add(&clf(&ccx)).scale(&(r(3, 4) * &k));
    out.push(("r2-mcurv", one(m.op_r(frame, ROp::R2).sub(&r2m))));
    let r2b = b.op_r(frame, ROp::R2);
    let r2e = phi
        .scale(&GR::int(n * (n - 2)))
        .sub(&clf(&clv(phi)))
        .axpy(&r(n - 2, 2), &clv(&clf(phi)))
        .scale(&ak);
    let r2c = phi
        .scale(&GR::int((n - 2) * (n + 2)))
        .axpy(&GR::int(n - 4), &clf(&clv(phi)))
        .scale(&(r(1, 2) * &ak));
    out.push(("r2-barwedge-expanded", one(r2b.sub(&r2e))));
    out.push(("r2-barwedge", one(r2b.sub(&r2c))));

    let r3m = xi
        .scale(&GR::int((n + 1) * (n + 2)))
        .axpy(&GR::int(n + 2), &clf(&clv(xi)))
        .axpy(&r(1, 2), &clf(&clf(&ccx)))
        .scale(&(r(1, 2) * &k));
    out.push(("r3-mcurv", one(m.op_r(frame, ROp::R3).sub(&r3m))));
    let r3b = b.op_r(frame, ROp::R3);
    let r3e = clf(phi)
        .scale(&GR::int(5 * n - 4))
        .add(&clf(&clv(&clf(phi))))
        .add(&clv(&clf(&clf(phi))))
        .scale(&(r(-1, 2) * &ak));
    let r3c = clf(phi).scale(&GR::int(n + 2)).add(&clf(&clf(&clv(phi)))).scale(&-ak.clone());
    out.push(("r3-barwedge-expanded", one(r3b.sub(&r3e))));
    out.push(("r3-barwedge", one(r3b.sub(&r3c))));
    Ok(out)
}

/// Contractions of the Levi-Civita curvature `ε(ρ^aff + ρ^spin)` on a
/// spinor-valued 1-form: `r₂ = −½ε(n−1) clv⨼Φ` and
/// `q = ε(−(n−½)Φ − ½ clf∧(clv⨼Φ))`.
pub fn levi_civita_identities(frame: &Frame, eps: i8, phi: &SVForm) -> Result<Vec<Named>> {
    if phi.degree() != 1 {
        return Err(Error::Degree("expects a 1-form".into()));
    }
    let n = frame.n() as i64;
    let e = GR::int(eps.into());
    let curv = ModelCurvature::new(GR::int(0), eps);
    let t = curv.tensor(frame, CurvPart::Total, phi);
    let clv = frame.clv_hook(phi);
    let r2 = t.op_r(frame, ROp::R2).axpy(&(r(n - 1, 2) * &e), &clv);
    let qv = phi
        .scale(&r(-(2 * n - 1), 2))
        .axpy(&r(-1, 2), &frame.clf_wedge(&clv))
        .scale(&e);
    let q = t.op_r(frame, ROp::Q).sub(&qv);
    Ok(vec![("r2-levi-civita", one(r2)), ("casimir-levi-civita", one(q))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{CliffordRep, Signature};
    use crate::exact::q;
    use crate::svforms::random::{random_form, random_vector, skewed_frame};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_all(list: &[Named], ctx: &str) {
        for (name, res) in list {
            assert!(res.is_zero(), "{name} failed ({ctx})");
        }
    }

    #[test]
    fn identities_hold_on_random_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (np, nm, eps) in [(3, 0, 1), (2, 1, -1), (2, 2, 1)] {
            let rep = CliffordRep::build(Signature::new(np, nm, eps).unwrap());
            let f = skewed_frame(&rep, rep.sig.n());
            for a in [q(1, 1), q(2, 1), GR::i()] {
                let curv = ModelCurvature::new(a.clone(), eps);
                for p in 1..=3 {
                    let phi = random_form(&mut rng, f.n(), p, f.spin_dim());
                    assert_all(&curvature_identities(&f, &curv, &phi).unwrap(), &format!("p={p}"));
                }
                let psi = random_form(&mut rng, f.n(), 0, f.spin_dim());
                assert!(spinor_identity(&f, &curv, &psi).1.is_zero());
                let phi = random_form(&mut rng, f.n(), 1, f.spin_dim());
                let xi = random_form(&mut rng, f.n(), 2, f.spin_dim());
                assert_all(&degree_one_identities(&f, &curv, &phi, &xi).unwrap(), "degree one");
            }
            let phi = random_form(&mut rng, f.n(), 1, f.spin_dim());
            assert_all(&levi_civita_identities(&f, eps, &phi).unwrap(), "levi-civita");
            let x = random_vector(&mut rng, f.n());
            let y = random_vector(&mut rng, f.n());
            assert_all(&clifford_identities(&f, &x, &y, &phi), "clifford");
        }
    }

    #[test]
    fn perturbed_closed_forms_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let rep = CliffordRep::build(Signature::new(3, 0, 1).unwrap());
        let f = skewed_frame(&rep, 3);
        let phi = random_form(&mut rng, 3, 2, f.spin_dim());
        // the same identities with the wrong Killing number inside kappa
        let good = ModelCurvature::new(q(1, 1), 1);
        let bad = ModelCurvature::new(q(2, 1), 1);
        let pair = good.tensor(&f, CurvPart::Total, &phi).project(SymKind::Pair).unwrap();
        let closed = value_pair_closed_form(&f, &bad, &phi).unwrap();
        assert_ne!(pair, closed);
        assert!(curvature_identities(&f, &good, &f.zero_form(0)).is_err());
    }
}
