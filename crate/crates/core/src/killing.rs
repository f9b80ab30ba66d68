//! Equation checkers, the Killing connection, integrability residuals and
//! pointwise kernel computations on the model space.
//!
//! Checkers work on [`Jet`]s: frame components of a value together with
//! its covariant derivatives along the frame vectors. Derivatives are those
//! of the Levi-Civita connection; the Killing number enters each checker
//! explicitly.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::exact::{modp, ExactMatrix, GaussianRational};
use crate::modelspace::{covd, PolySection, QuadricPoint, TangentFrame};
use crate::svforms::{masks_of_degree, CurvPart, Frame, ModelCurvature, PairTensor, SVForm, SymKind};

type GR = GaussianRational;

/// Killing number, Killing constant and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingParams {
    pub a: GR,
    pub c: GR,
    pub p: usize,
}

/// Value and frame covariant derivatives `∇_{eᵢ}S` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub value: SVForm,
    pub derivs: Vec<SVForm>,
}

impl Jet {
    pub fn degree(&self) -> usize {
        self.value.degree()
    }

    /// `∇_X S` by linearity in `X`.
    pub fn along(&self, frame: &Frame, x: &[GR]) -> SVForm {
        let mut out = frame.zero_form(self.degree());
        for (c, d) in x.iter().zip(&self.derivs) {
            if !c.is_zero() {
                out = out.axpy(c, d);
            }
        }
        out.with_degree(self.degree())
    }

    /// `∇^a_X S = ∇_X S − a X·S`. With `a = 0` the values are never
    /// multiplied, so scalar-valued jets are accepted.
    pub fn twisted(&self, frame: &Frame, a: &GR, x: &[GR]) -> SVForm {
        if a.is_zero() {
            return self.along(frame, x);
        }
        self.along(frame, x).axpy(&-a.clone(), &frame.cliff(x, &self.value))
    }
}

/// Frame components of a section and its covariant derivatives at a point.
pub fn jet(rep: &CliffordRep, tf: &TangentFrame, s: &PolySection) -> Result<Jet> {
    let x = tf.at.coords();
    let deg = s.form_degree;
    let value = tf.to_frame(&s.eval(x).with_degree(deg));
    let derivs = tf
        .frame
        .vectors()
        .iter()
        .map(|v| Ok(tf.to_frame(&covd(rep, s, &tf.at, v)?.with_degree(deg))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Jet { value, derivs })
}

/// Frame values of a section at a point.
pub fn frame_value(tf: &TangentFrame, s: &PolySection) -> SVForm {
    tf.to_frame(&s.eval(tf.at.coords()).with_degree(s.form_degree))
}

/// Residual forms, one per frame direction (or frame pair or triple).
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub parts: Vec<SVForm>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(SVForm::is_zero)
    }
}

/// `d^g Φ = Σ eⁱ ∧ ∇_{eᵢ}Φ`.
pub fn exterior_derivative(frame: &Frame, phi: &Jet) -> SVForm {
    let mut out = frame.zero_form(phi.degree() + 1);
    for (i, d) in phi.derivs.iter().enumerate() {
        out = out.add(&d.wedge_basis(i));
    }
    out.with_degree(phi.degree() + 1)
}

/// `Ξ = 1/(p+1) (d^gΦ − a clf∧Φ)`.
pub fn xi_from_phi(frame: &Frame, a: &GR, phi: &Jet) -> SVForm {
    let p = phi.degree();
    exterior_derivative(frame, phi)
        .axpy(&-a.clone(), &frame.clf_wedge(&phi.value))
        .scale(&GR::ratio(1, p as i64 + 1))
        .with_degree(p + 1)
}

fn per_direction(frame: &Frame, mut f: impl FnMut(&[GR]) -> SVForm) -> Residual {
    Residual { parts: (0..frame.n()).map(|i| f(&frame.unit(i))).collect() }
}

/// `∇_XΦ − aX·Φ − X⨼Ξ`.
pub fn check_ksf(frame: &Frame, a: &GR, phi: &Jet, xi: &SVForm) -> Residual {
    per_direction(frame, |x| phi.twisted(frame, a, x).sub(&xi.hook(x)))
}

/// The same equation with `Ξ` eliminated:
/// `∇_XΦ − a(X·Φ − 1/(p+1) X⨼(clf∧Φ)) − 1/(p+1) X⨼d^gΦ`.
pub fn check_ksf_sub(frame: &Frame, a: &GR, phi: &Jet) -> Residual {
    let t = GR::ratio(1, phi.degree() as i64 + 1);
    let clf = frame.clf_wedge(&phi.value);
    let d = exterior_derivative(frame, phi);
    per_direction(frame, |x| {
        let inner = frame.cliff(x, &phi.value).axpy(&-t.clone(), &clf.hook(x));
        phi.along(frame, x).axpy(&-a.clone(), &inner).axpy(&-t.clone(), &d.hook(x))
    })
}

/// `∇_XΞ − aX·Ξ + c X♭∧Φ`.
pub fn check_sksf(frame: &Frame, a: &GR, c: &GR, phi: &SVForm, xi: &Jet) -> Residual {
    per_direction(frame, |x| xi.twisted(frame, a, x).axpy(c, &phi.wedge(&frame.flat(x))))
}

/// Outcome of the star-Killing check: the recovered `Φ` and the residuals
/// `∇^a_XΞ − X♭∧Φ`.
#[derive(Clone, Debug)]
pub struct StarKilling {
    pub phi: SVForm,
    pub residual: Residual,
}

/// Recovers `Φ` from the trace `Σ gⁱʲ eⱼ ⨼ ∇^a_{eᵢ}Ξ = (n − p + 1)Φ` and
/// checks `∇^a_XΞ = X♭∧Φ` in every direction.
pub fn check_star_killing(frame: &Frame, a: &GR, xi: &Jet) -> Result<StarKilling> {
    let p = xi.degree();
    if p == 0 {
        return Err(Error::Degree("star-Killing forms have degree at least 1".into()));
    }
    let n = frame.n();
    let mut tr = frame.zero_form(p - 1);
    for i in 0..n {
        let d = xi.twisted(frame, a, &frame.unit(i));
        let up = frame.sharp(&frame.unit(i));
        tr = tr.add(&d.hook(&up));
    }
    let phi = tr.scale(&GR::ratio(1, (n - p + 1) as i64)).with_degree(p - 1);
    let residual = per_direction(frame, |x| xi.twisted(frame, a, x).sub(&phi.wedge(&frame.flat(x))));
    Ok(StarKilling { phi, residual })
}

/// `∇_XΦ′ − a′(X·Φ′ − ⅔ X⨼(clf∧Φ′))` for a 1-form.
pub fn check_32ksf(frame: &Frame, a_prime: &GR, phi: &Jet) -> Result<Residual> {
    if phi.degree() != 1 {
        return Err(Error::Degree("equation is stated for 1-forms".into()));
    }
    let clf = frame.clf_wedge(&phi.value);
    Ok(per_direction(frame, |x| {
        let rhs = frame.cliff(x, &phi.value).axpy(&GR::ratio(-2, 3), &clf.hook(x));
        phi.along(frame, x).axpy(&-a_prime.clone(), &rhs)
    }))
}

fn curvature_term(r: &PairTensor, p: usize, x: &[GR]) -> SVForm {
    let t = GR::ratio(1, p as i64 + 1);
    r.skew_x(x).axpy(&-t, &r.skew_all().hook(x)).scale(&GR::ratio(1, p as i64))
}

/// Killing connection in every frame direction, as `(top, bottom)` slots:
/// `∇^a_XΦ − X⨼Ξ` and `∇^a_XΞ − (1/p)(R_X∧Φ − 1/(p+1) X⨼(R∧Φ))` with `R`
/// the total curvature of the twisted connection.
pub fn killing_conn_apply(frame: &Frame, curv: &ModelCurvature, phi: &Jet, xi: &Jet) -> Result<Vec<(SVForm, SVForm)>> {
    let p = phi.degree();
    if p == 0 {
        return Err(Error::Degree("the Killing connection needs degree at least 1".into()));
    }
    let r = curv.tensor(frame, CurvPart::Total, &phi.value);
    Ok((0..frame.n())
        .map(|i| {
            let x = frame.unit(i);
            let top = phi.twisted(frame, &curv.a, &x).sub(&xi.value.hook(&x));
            let bottom = xi.twisted(frame, &curv.a, &x).sub(&curvature_term(&r, p, &x));
            (top, bottom.with_degree(p + 1))
        })
        .collect())
}

/// Vector curvature `R(eᵢ,eⱼ)e_k = ε(g_{jk}eᵢ − g_{ik}eⱼ)` on the model space,
/// in frame components.
fn vector_curvature(frame: &Frame, eps: i8, i: usize, j: usize, k: usize) -> Vec<GR> {
    let g = frame.gram();
    let e = GR::int(eps.into());
    let mut v = vec![GR::zero(); frame.n()];
    v[i] += &e * &g[(j, k)];
    v[j] -= &e * &g[(i, k)];
    v
}

/// Ricci tensor `Ric(eⱼ,e_k) = Σᵢ eⁱ(R(eᵢ,eⱼ)e_k)`.
pub fn ricci(frame: &Frame, eps: i8) -> ExactMatrix {
    let n = frame.n();
    let mut out = ExactMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            out[(j, k)] = (0..n).map(|i| vector_curvature(frame, eps, i, j, k)[i].clone()).sum();
        }
    }
    out
}

/// Projective Schouten tensor `Ric/(n−1)`, from the Ricci decomposition
/// with vanishing Weyl part and `β = 0`.
pub fn schouten(frame: &Frame, eps: i8) -> ExactMatrix {
    ricci(frame, eps).scale(&GR::ratio(1, frame.n() as i64 - 1))
}

pub fn scalar_curvature(frame: &Frame, eps: i8) -> GR {
    let ric = ricci(frame, eps);
    let gi = frame.gram_inv();
    let n = frame.n();
    let mut s = GR::zero();
    for j in 0..n {
        for k in 0..n {
            s += &gi[(j, k)] * &ric[(j, k)];
        }
    }
    s
}

/// Difference of the Killing connection and the coupled tractor connection
/// corrected by the value curvature; vanishes identically on the model
/// space. Parts alternate top, bottom per direction.
pub fn tractor_compare(frame: &Frame, curv: &ModelCurvature, phi: &Jet, xi: &Jet) -> Result<Residual> {
    let p = phi.degree();
    let kc = killing_conn_apply(frame, curv, phi, xi)?;
    let rho = schouten(frame, curv.eps);
    let rv = curv.tensor(frame, CurvPart::Value, &phi.value);
    let mut parts = Vec::new();
    for (i, (top, bottom)) in kc.into_iter().enumerate() {
        let x = frame.unit(i);
        let ttop = phi.twisted(frame, &curv.a, &x).sub(&xi.value.hook(&x));
        let xrho = rho.transpose().apply(&x)?;
        let tbottom = xi
            .twisted(frame, &curv.a, &x)
            .add(&phi.value.wedge(&xrho))
            .sub(&curvature_term(&rv, p, &x));
        parts.push(top.sub(&ttop));
        parts.push(bottom.sub(&tbottom));
    }
    Ok(Residual { parts })
}

/// `(curv Φ)^{(p,2)}`.
pub fn int_first(frame: &Frame, curv: &ModelCurvature, phi: &SVForm) -> Result<PairTensor> {
    curv.tensor(frame, CurvPart::Total, phi).project(SymKind::Pair)
}

/// `(mcurv Ξ)^{(p+1,2)} − ((∇curv)⊼Φ)`.
pub fn int_second(frame: &Frame, curv: &ModelCurvature, phi: &SVForm, xi: &SVForm) -> Result<PairTensor> {
    let lhs = curv.mcurv_tensor(frame, &xi.clone().with_degree(phi.degree() + 1)).project(SymKind::Pair)?;
    Ok(lhs.sub(&curv.barwedge_tensor(frame, phi)))
}

/// `(ε − c)(g(Z,X)Y − g(Y,X)Z)`, i.e. `(R^g_{Y,Z} − cρ(Y∧Z))X` on the model space.
fn concircular_vector(frame: &Frame, eps: i8, c: &GR, x: &[GR], y: &[GR], z: &[GR]) -> Vec<GR> {
    let k = GR::int(eps.into()) - c;
    let (zx, yx) = (frame.inner(z, x), frame.inner(y, x));
    y.iter().zip(z).map(|(yi, zi)| &k * &(&zx * yi - &yx * zi)).collect()
}

/// Integrability conditions for special Killing forms, selected by `which`:
///  0: `R_{X,Y}Φ − cρ^aff(X∧Y)Φ`,
///  1: `R_{X,Y}Ξ − cρ^aff(X∧Y)Ξ`,
///  2: `(∇_X R)_{Y,Z}Φ + ((R^g_{Y,Z} − cρ(Y∧Z))X)⨼Ξ`,
///  3: `(∇_X R)_{Y,Z}Ξ − c((R^g_{Y,Z} − cρ(Y∧Z))X)♭∧Φ`.
pub fn int_special(frame: &Frame, curv: &ModelCurvature, c: &GR, phi: &SVForm, xi: &SVForm, which: u8) -> Result<Residual> {
    let n = frame.n();
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let conc = |f: &SVForm, i: usize, j: usize| {
        let (x, y) = (frame.unit(i), frame.unit(j));
        curv.apply(frame, CurvPart::Total, &x, &y, f).axpy(&-c.clone(), &frame.rho_form(&x, &y, f))
    };
    let parts = match which {
        0 => pairs().map(|(i, j)| conc(phi, i, j)).collect(),
        1 => pairs().map(|(i, j)| conc(xi, i, j)).collect(),
        2 | 3 => {
            let mut out = Vec::with_capacity(n * n * n);
            for k in 0..n {
                for (i, j) in pairs() {
                    let (x, y, z) = (frame.unit(k), frame.unit(i), frame.unit(j));
                    let v = concircular_vector(frame, curv.eps, c, &x, &y, &z);
                    out.push(if which == 2 {
                        curv.dcurv(frame, &x, &y, &z, phi).add(&xi.hook(&v))
                    } else {
                        curv.dcurv(frame, &x, &y, &z, xi).axpy(&-c.clone(), &phi.wedge(&frame.flat(&v)))
                    });
                }
            }
            out
        }
        _ => return Err(Error::Usage(format!("unknown special integrability condition {which}"))),
    };
    Ok(Residual { parts })
}

/// Basis of frame forms of one degree with unit spinor values.
pub fn form_basis(frame: &Frame, degree: usize) -> Vec<SVForm> {
    let sd = frame.spin_dim();
    let mut out = Vec::new();
    for mask in masks_of_degree(frame.n(), degree) {
        for s in 0..sd {
            let mut v = vec![GR::zero(); sd];
            v[s] = GR::int(1);
            let mut f = frame.zero_form(degree);
            f.insert(mask, v);
            out.push(f);
        }
    }
    out
}

fn tensor_vector(t: &PairTensor, spin_dim: usize) -> Vec<GR> {
    t.forms().iter().flat_map(|f| f.to_vector_shaped(t.degree(), spin_dim)).collect()
}

/// Nullity of a linear map given by the images of a basis.
pub fn nullity_of_images(images: &[Vec<GR>]) -> usize {
    images.len() - modp::rank(images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelConditions {
    /// `(curvΦ)^{(p,2)} = 0` on `Φ`.
    First,
    /// Both conditions on pairs `(Φ, Ξ)`.
    FirstSecond,
}

/// Dimension of the space of pointwise values satisfying the selected
/// integrability conditions for Killing spinor-valued `p`-forms.
pub fn curvature_kernel(frame: &Frame, curv: &ModelCurvature, p: usize, cond: KernelConditions) -> Result<usize> {
    if p == 0 {
        return Err(Error::Degree("integrability conditions need degree at least 1".into()));
    }
    let sd = frame.spin_dim();
    let phis = form_basis(frame, p);
    let images: Vec<Vec<GR>> = match cond {
        KernelConditions::First => phis
            .iter()
            .map(|f| int_first(frame, curv, f).map(|t| tensor_vector(&t, sd)))
            .collect::<Result<_>>()?,
        KernelConditions::FirstSecond => {
            let xi0 = frame.zero_form(p + 1);
            let phi0 = frame.zero_form(p);
            let mut out = Vec::new();
            for f in &phis {
                let mut v = tensor_vector(&int_first(frame, curv, f)?, sd);
                v.extend(tensor_vector(&int_second(frame, curv, f, &xi0)?, sd));
                out.push(v);
            }
            for g in form_basis(frame, p + 1) {
                let mut v = tensor_vector(&int_first(frame, curv, &phi0)?, sd);
                v.extend(tensor_vector(&int_second(frame, curv, &phi0, &g)?, sd));
                out.push(v);
            }
            out
        }
    };
    Ok(nullity_of_images(&images))
}

/// Nullity of `Φ ↦ (R_{eᵢ,eⱼ}Φ)` for the total curvature of the twisted
/// connection on forms of the given degree. At degree 0 this is the
/// pointwise Killing-spinor condition; at `a = 0` it is the condition for
/// parallel forms.
pub fn curvature_annihilator(frame: &Frame, curv: &ModelCurvature, degree: usize) -> usize {
    let sd = frame.spin_dim();
    let images: Vec<Vec<GR>> = form_basis(frame, degree)
        .iter()
        .map(|f| tensor_vector(&curv.tensor(frame, CurvPart::Total, f), sd))
        .collect();
    nullity_of_images(&images)
}

/// `Φ′ ↦ (Φ, Ξ) = (−1/(2a(n+1)) clv⨼Φ′, Φ′ + 1/(n+1) clf∧(clv⨼Φ′))`.
pub fn cor32_fwd(frame: &Frame, a: &GR, phi_prime: &SVForm) -> Result<(SVForm, SVForm)> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n1 = GR::int(frame.n() as i64 + 1);
    let clv = frame.clv_hook(phi_prime).with_degree(0);
    let phi = clv.scale(&(GR::int(-2) * a * &n1).inv()?);
    let xi = phi_prime.axpy(&n1.inv()?, &frame.clf_wedge(&clv)).with_degree(1);
    Ok((phi, xi))
}

/// `(Φ, Ξ) ↦ Φ′ = Ξ + 2a clf∧Φ`.
pub fn cor32_bwd(frame: &Frame, a: &GR, phi: &SVForm, xi: &SVForm) -> Result<SVForm> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(xi.axpy(&(GR::int(2) * a), &frame.clf_wedge(phi)).with_degree(1))
}

/// `clv⨼Ξ + 2aΦ`, the constraint on the image of [`cor32_fwd`].
pub fn cor32_constraint(frame: &Frame, a: &GR, phi: &SVForm, xi: &SVForm) -> SVForm {
    frame.clv_hook(xi).axpy(&(GR::int(2) * a), phi)
}

/// [`cor32_fwd`] applied to a section on the quadric, using ambient `clv`
/// (which agrees with the intrinsic one on tangential forms) and the
/// tangential part of ambient `clf`.
pub fn cor32_fwd_section(rep: &std::sync::Arc<CliffordRep>, s: &PolySection, a: &GR) -> Result<(PolySection, PolySection)> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n1 = GR::int(rep.sig.n() as i64 + 1);
    let cphi = (GR::int(-2) * a * &n1).inv()?;
    let cxi = n1.inv()?;
    let (r1, r2) = (rep.clone(), rep.clone());
    let phi = s.map(0, 0, move |_, v| Frame::ambient(&r1).clv_hook(&v).with_degree(0).scale(&cphi));
    let xi = s.map(1, 2, move |x, v| {
        let clv = Frame::ambient(&r2).clv_hook(&v).with_degree(0);
        v.axpy(&cxi, &crate::conesol::clf_tangential(&r2, x, &clv)).with_degree(1)
    });
    Ok((phi, xi))
}

/// Rank of `Θ̄ ↦ (S₁(x), S₂(x), …)` over the sampled points for a family
/// linear in its parameter.
pub fn solution_dimension(
    rep: &CliffordRep,
    params: &[SVForm],
    generate: impl Fn(&SVForm) -> Result<Vec<PolySection>>,
    points: &[QuadricPoint],
) -> Result<usize> {
    let sections = params.iter().map(generate).collect::<Result<Vec<_>>>()?;
    Ok(section_rank(rep, &sections, points))
}

/// Rank of the evaluation map on a list of sections (each a tuple of
/// components), adding points one at a time until the rank reaches the
/// number of sections or the points run out.
pub fn section_rank(rep: &CliffordRep, sections: &[Vec<PolySection>], points: &[QuadricPoint]) -> usize {
    let mut rows = vec![Vec::new(); sections.len()];
    for x in points {
        for (row, tuple) in rows.iter_mut().zip(sections) {
            for s in tuple {
                let sd = if s.spinor_valued { rep.spinor_dim() } else { 1 };
                row.extend(s.eval(x.coords()).to_vector_shaped(s.form_degree, sd));
            }
        }
        if modp::rank_lower_bound(&rows) == sections.len() {
            return sections.len();
        }
    }
    modp::rank(&rows)
}
