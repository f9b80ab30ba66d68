//! Explicit solution families on the quadric, built from constant forms and
//! spinors on the ambient space, and the lift/restriction maps between
//! sections on the quadric and parallel sections on the cone.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{normalize_involution, CliffordRep, Sign, Signature, Spinor};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};
use crate::modelspace::{ambient_split, dr, PolySection, QuadricPoint};
use crate::svforms::{Frame, SVForm};

type GR = GaussianRational;

/// `√ε` with the chosen sign.
pub fn signed_sqrt_eps(rep: &CliffordRep, sign: Sign) -> GR {
    sign.scalar() * &rep.sqrt_eps
}

/// Killing number `±½√ε` of the families generated with `sign`.
pub fn killing_number(rep: &CliffordRep, sign: Sign) -> GR {
    signed_sqrt_eps(rep, sign) * GR::ratio(1, 2)
}

/// `(1 + s x·)` on spinor values, `s = ±√ε`.
fn one_plus(rep: &CliffordRep, s: &GR, x: &[GR]) -> ExactMatrix {
    let id = ExactMatrix::identity(rep.spinor_dim());
    id.add(&rep.gamma_of(x).expect("ambient point").scale(s)).expect("same shape")
}

/// `F±` applied to every value of a form at `x`.
pub fn f_map_form(rep: &CliffordRep, sign: Sign, x: &[GR], phi: &SVForm) -> SVForm {
    phi.map_values(&one_plus(rep, &-signed_sqrt_eps(rep, sign), x))
}

/// Tangential part of ambient `clf`: `clf̄∧Φ − dr∧(x·Φ)`.
pub fn clf_tangential(rep: &CliffordRep, x: &[GR], phi: &SVForm) -> SVForm {
    let amb = Frame::ambient(rep);
    let xphi = phi.map_values(&rep.gamma_of(x).expect("ambient point"));
    amb.clf_wedge(phi).sub(&xphi.wedge(&dr(&rep.sig, x)))
}

/// `(π^Σ Θ, π^Tw Θ) = (clv⨼Θ, Θ + (1/k) clf∧(clv⨼Θ))` for a 1-form over a
/// frame of `k` vectors.
pub fn primitive_project(frame: &Frame, theta: &SVForm) -> Result<(SVForm, SVForm)> {
    if theta.degree() != 1 {
        return Err(Error::Degree(format!("primitive projection needs a 1-form, got degree {}", theta.degree())));
    }
    let spin = frame.clv_hook(theta);
    let tw = theta.axpy(&GR::ratio(1, frame.n() as i64), &frame.clf_wedge(&spin));
    Ok((spin, tw))
}

/// The same projections on the ambient space, with the factor `1/(n+1)`.
pub fn ambient_primitive_project(rep: &CliffordRep, theta: &SVForm) -> Result<(SVForm, SVForm)> {
    primitive_project(&Frame::ambient(rep), theta)
}

/// Killing-Yano pair `α = x⨼θ̄`, `β = θ̄ − dr∧(x⨼θ̄)` from a constant scalar
/// ambient form (stored with one-dimensional values).
pub fn gen_killing_yano(sig: &Signature, theta: &SVForm) -> Result<(PolySection, PolySection)> {
    if theta.spin_dim() > 1 || theta.dim() != sig.ambient_dim() {
        return Err(Error::Shape("Killing-Yano parameter must be a scalar ambient form".into()));
    }
    let p = theta.degree().checked_sub(1).ok_or_else(|| Error::Degree("parameter degree must be at least 1".into()))?;
    let (t1, t2, s) = (theta.clone(), theta.clone(), *sig);
    let alpha = PolySection::new(p, 1, false, move |x| t1.hook(x).with_degree(p));
    let beta = PolySection::new(p + 1, 2, false, move |x| ambient_split(&s, x, &t2).1);
    Ok((alpha, beta))
}

/// Killing spinor `½(1 ± √ε x)·Ψ̄` with Killing number `±½√ε`.
pub fn gen_killing_spinor(rep: &Arc<CliffordRep>, psi: &Spinor, sign: Sign) -> Result<PolySection> {
    if psi.len() != rep.spinor_dim() {
        return Err(Error::Shape("spinor parameter has the wrong length".into()));
    }
    let (r, ps) = (rep.clone(), psi.clone());
    let s = signed_sqrt_eps(rep, sign);
    let m = rep.ambient_dim();
    let half = GR::ratio(1, 2);
    Ok(PolySection::new(0, 2, true, move |x| {
        SVForm::scalar(m, ps.clone()).map_values(&one_plus(&r, &s, x).scale(&half))
    }))
}

/// Special Killing spinor-valued pair
/// `Φ = ½(1 ± √ε x)·(x⨼Θ̄)`, `Ξ = ½(1 ± √ε x)·(Θ̄ − dr∧(x⨼Θ̄))`.
pub fn gen_sksf(rep: &Arc<CliffordRep>, theta: &SVForm, sign: Sign) -> Result<(PolySection, PolySection)> {
    check_spinor_param(rep, theta)?;
    let p = theta.degree().checked_sub(1).ok_or_else(|| Error::Degree("parameter degree must be at least 1".into()))?;
    let s = signed_sqrt_eps(rep, sign);
    let half = GR::ratio(1, 2);
    let (r1, t1, s1, h1) = (rep.clone(), theta.clone(), s.clone(), half.clone());
    let phi = PolySection::new(p, 2, true, move |x| {
        t1.hook(x).with_degree(p).map_values(&one_plus(&r1, &s1, x).scale(&h1))
    });
    let (r2, t2) = (rep.clone(), theta.clone());
    let xi = PolySection::new(p + 1, 3, true, move |x| {
        ambient_split(&r2.sig, x, &t2).1.map_values(&one_plus(&r2, &s, x).scale(&half))
    });
    Ok((phi, xi))
}

fn check_spinor_param(rep: &CliffordRep, theta: &SVForm) -> Result<()> {
    if theta.dim() != rep.ambient_dim() || (!theta.is_zero() && theta.spin_dim() != rep.spinor_dim()) {
        return Err(Error::Shape("parameter must be an ambient spinor-valued form".into()));
    }
    Ok(())
}

/// Killing spinor-valued 1-form with Killing number `±3/2·√ε` from a
/// primitive ambient spinor-valued 1-form:
/// `Φ′ = ½((1±√εx)·(Θ̄ − dr∧(x⨼Θ̄)) ± √ε clf∧((1±√εx)·(x⨼Θ̄)))`.
pub fn gen_32ksf(rep: &Arc<CliffordRep>, theta: &SVForm, sign: Sign) -> Result<PolySection> {
    check_spinor_param(rep, theta)?;
    if theta.degree() != 1 {
        return Err(Error::Degree("parameter must be a 1-form".into()));
    }
    if !Frame::ambient(rep).clv_hook(theta).is_zero() {
        return Err(Error::Domain("parameter is not primitive".into()));
    }
    let (r, t) = (rep.clone(), theta.clone());
    let s = signed_sqrt_eps(rep, sign);
    Ok(PolySection::new(1, 4, true, move |x| {
        let op = one_plus(&r, &s, x);
        let tan = ambient_split(&r.sig, x, &t).1.map_values(&op);
        let nor = t.hook(x).with_degree(0).map_values(&op);
        tan.axpy(&s, &clf_tangential(&r, x, &nor)).scale(&GR::ratio(1, 2))
    }))
}

/// `a′ = ±3/2·√ε` for [`gen_32ksf`].
pub fn killing_number_32(rep: &CliffordRep, sign: Sign) -> GR {
    signed_sqrt_eps(rep, sign) * GR::ratio(3, 2)
}

/// Section data on the quadric that has a parallel counterpart on the cone.
#[derive(Clone, Debug)]
pub enum ConeData {
    Skf { alpha: PolySection, beta: PolySection },
    Ks { psi: PolySection, sign: Sign },
    Sksf { phi: PolySection, xi: PolySection, sign: Sign },
    Ksf32 { phi: PolySection, sign: Sign },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Skf,
    Ks,
    Sksf,
    #[serde(rename = "32ksf")]
    Ksf32,
}

impl ConeData {
    pub fn kind(&self) -> ConeKind {
        match self {
            ConeData::Skf { .. } => ConeKind::Skf,
            ConeData::Ks { .. } => ConeKind::Ks,
            ConeData::Sksf { .. } => ConeKind::Sksf,
            ConeData::Ksf32 { .. } => ConeKind::Ksf32,
        }
    }
}

/// Result of lifting a section to the cone at sampled cone points.
#[derive(Clone, Debug)]
pub struct ConeLift {
    /// Value of the lift at the first sampled cone point.
    pub theta: SVForm,
    /// Whether the lift takes the same value at every sampled cone point,
    /// i.e. is parallel for the flat ambient connection there.
    pub constant: bool,
    pub samples: usize,
}

/// Value of the lifted cone section at the cone point `y = r·x`.
///
/// Pull-backs along `y ↦ y/r` of tangential forms of degree `k` are
/// `r^{-k}` times their values at `x`, and `dr` at `y` equals `dr` at `x`.
pub fn cone_value(rep: &CliffordRep, data: &ConeData, x: &QuadricPoint, r: &GR) -> Result<SVForm> {
    if r.is_zero() {
        return Err(Error::Domain("cone radius must be nonzero".into()));
    }
    let xc = x.coords();
    let d = dr(&rep.sig, xc);
    let pow = |k: usize| -> Result<GR> { Ok(r.pow(k as u32)) };
    let pull = |f: SVForm| -> Result<SVForm> {
        let k = f.degree();
        Ok(f.scale(&pow(k)?.inv()?))
    };
    Ok(match data {
        ConeData::Skf { alpha, beta } => {
            let p = alpha.form_degree;
            pull(alpha.eval(xc))?
                .wedge(&d)
                .scale(&pow(p)?)
                .add(&pull(beta.eval(xc))?.scale(&pow(p + 1)?))
        }
        ConeData::Ks { psi, sign } => f_map_form(rep, *sign, xc, &psi.eval(xc)),
        ConeData::Sksf { phi, xi, sign } => {
            let p = phi.form_degree;
            let a = pull(f_map_form(rep, *sign, xc, &phi.eval(xc)))?.wedge(&d).scale(&pow(p)?);
            let b = pull(f_map_form(rep, *sign, xc, &xi.eval(xc)))?.scale(&pow(p + 1)?);
            a.add(&b)
        }
        ConeData::Ksf32 { phi, sign } => {
            let lifted = pull(f_map_form(rep, *sign, xc, &phi.eval(xc)))?.scale(r);
            ambient_primitive_project(rep, &lifted)?.1
        }
    })
}

/// Lifts `data` at every `(r, x)` sample and reports whether the lift is
/// constant.
pub fn cone_lift(rep: &CliffordRep, data: &ConeData, points: &[QuadricPoint], radii: &[GR]) -> Result<ConeLift> {
    let mut first: Option<SVForm> = None;
    let mut constant = true;
    let mut samples = 0;
    for x in points {
        for r in radii {
            let v = cone_value(rep, data, x, r)?;
            samples += 1;
            match &first {
                None => first = Some(v),
                Some(f) => constant &= f == &v,
            }
        }
    }
    let theta = first.ok_or_else(|| Error::Usage("cone lift needs at least one sample".into()))?;
    Ok(ConeLift { theta, constant, samples })
}

/// Restriction of a constant cone section back to the quadric at `x`,
/// returning the section values in the same layout as [`ConeData`]:
/// `(first, second)` is `(α, β)`, `(Ψ, –)`, `(Φ, Ξ)` or `(Φ′, –)`.
pub fn cone_restrict(rep: &CliffordRep, kind: ConeKind, sign: Sign, theta: &SVForm, x: &[GR]) -> (SVForm, Option<SVForm>) {
    let (nor, tan) = ambient_split(&rep.sig, x, theta);
    let half = GR::ratio(1, 2);
    let back = |f: &SVForm| f_map_form(rep, sign.flip(), x, f).scale(&half);
    match kind {
        ConeKind::Skf => (nor, Some(tan)),
        ConeKind::Ks => (back(theta), None),
        ConeKind::Sksf => (back(&nor), Some(back(&tan))),
        ConeKind::Ksf32 => {
            let s = signed_sqrt_eps(rep, sign);
            let t = f_map_form(rep, sign.flip(), x, &tan);
            let nn = f_map_form(rep, sign.flip(), x, &nor);
            (t.axpy(&s, &clf_tangential(rep, x, &nn)).scale(&half), None)
        }
    }
}

/// Normalized intrinsic volume element `vol_M(x) ∝ x·ω̄` on the restricted
/// spinor bundle (ambient dimension even).
pub fn intrinsic_volume(rep: &CliffordRep, omega: &ExactMatrix, x: &[GR]) -> Result<ExactMatrix> {
    normalize_involution(&rep.gamma_of(x)?.mat_mul(omega)?)
}

/// One observed pairing between ambient chirality `χ`, Killing-number sign
/// `σ` and the eigenvalue `μ` of `vol_M` on the generated Killing spinors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiralityPairing {
    pub chirality: Sign,
    pub killing_sign: Sign,
    pub volume_eigenvalue: Sign,
    pub dimension: usize,
}

/// Determines, for `n` odd, which half-spinor space of the ambient space
/// produces Killing spinors in which eigenspace of the intrinsic volume
/// element. Fails when the label is not the same at all points.
pub fn chirality_pairing(rep: &Arc<CliffordRep>, points: &[QuadricPoint]) -> Result<Vec<ChiralityPairing>> {
    let ch = rep.chirality()?;
    let mut out = Vec::new();
    for chi in Sign::both() {
        for sigma in Sign::both() {
            let mut mu: Option<Sign> = None;
            for psi in ch.basis(chi) {
                let sec = gen_killing_spinor(rep, psi, sigma)?;
                for x in points {
                    let vol = intrinsic_volume(rep, &ch.omega, x.coords())?;
                    let v = sec.eval(x.coords()).component(0);
                    let w = vol.apply(&v)?;
                    let here = if w == v {
                        Sign::Plus
                    } else if w.iter().zip(&v).all(|(a, b)| a == &-b) {
                        Sign::Minus
                    } else {
                        return Err(Error::NotApplicable("Killing spinor is not a volume eigenvector".into()));
                    };
                    match mu {
                        None => mu = Some(here),
                        Some(m) if m != here => {
                            return Err(Error::NotApplicable("inconsistent chirality labeling across points".into()))
                        }
                        _ => {}
                    }
                }
            }
            let volume_eigenvalue = mu.ok_or_else(|| Error::NotApplicable("empty chirality space".into()))?;
            out.push(ChiralityPairing { chirality: chi, killing_sign: sigma, volume_eigenvalue, dimension: ch.basis(chi).len() });
        }
    }
    Ok(out)
}

/// A basis of constant ambient spinor-valued `k`-forms, optionally with
/// values restricted to one chirality.
pub fn ambient_param_basis(rep: &CliffordRep, degree: usize, chirality: Option<Sign>) -> Result<Vec<SVForm>> {
    let m = rep.ambient_dim();
    let spinors: Vec<Spinor> = match chirality {
        None => (0..rep.spinor_dim())
            .map(|i| {
                let mut v = vec![GR::zero(); rep.spinor_dim()];
                v[i] = GR::int(1);
                v
            })
            .collect(),
        Some(s) => rep.chirality()?.basis(s).to_vec(),
    };
    let mut out = Vec::new();
    for mask in crate::svforms::masks_of_degree(m, degree) {
        for s in &spinors {
            let mut f = SVForm::zero(m, degree, rep.spinor_dim());
            f.insert(mask, s.clone());
            out.push(f);
        }
    }
    Ok(out)
}

/// Basis of scalar ambient `k`-forms.
pub fn scalar_param_basis(sig: &Signature, degree: usize) -> Vec<SVForm> {
    crate::svforms::masks_of_degree(sig.ambient_dim(), degree)
        .into_iter()
        .map(|mask| {
            let mut f = SVForm::zero(sig.ambient_dim(), degree, 1);
            f.insert(mask, vec![GR::int(1)]);
            f
        })
        .collect()
}

/// A spanning set of primitive ambient spinor-valued 1-forms (the images of
/// the coordinate basis under `π̄^Tw`), optionally chirality-restricted.
pub fn primitive_param_basis(rep: &CliffordRep, chirality: Option<Sign>) -> Result<Vec<SVForm>> {
    ambient_param_basis(rep, 1, chirality)?
        .iter()
        .map(|t| ambient_primitive_project(rep, t).map(|(_, tw)| tw))
        .collect()
}
