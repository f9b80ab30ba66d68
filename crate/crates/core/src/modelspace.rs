//! The quadric `ḡ(x,x) = ε` in flat ambient space: rational points, tangent
//! frames, normal/tangent splitting of ambient forms, and the covariant
//! derivative of polynomial sections.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::clifford::{CliffordRep, Signature};
use crate::error::{Error, Result};
use crate::exact::{poly_directional_derivative, ExactMatrix, GaussianRational};
use crate::svforms::{mask_indices, masks_of_degree, Frame, SVForm};

type GR = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPoint {
    x: Vec<GR>,
}

impl QuadricPoint {
    pub fn new(sig: &Signature, x: Vec<GR>) -> Result<Self> {
        if x.len() != sig.ambient_dim() {
            return Err(Error::Shape(format!("point of length {} in ambient dimension {}", x.len(), sig.ambient_dim())));
        }
        if sig.inner(&x, &x) != sig.eps_scalar() {
            return Err(Error::Domain("point is not on the quadric ḡ(x,x) = ε".into()));
        }
        Ok(Self { x })
    }

    /// `(1, 0, …, 0)`, which lies on the quadric since `ḡ₀₀ = ε`.
    pub fn base(sig: &Signature) -> Self {
        let mut x = vec![GR::zero(); sig.ambient_dim()];
        x[0] = GR::int(1);
        Self { x }
    }

    pub fn coords(&self) -> &[GR] {
        &self.x
    }
}

/// Whether the block of `ḡ` with the sign `ε` is one-dimensional, in which
/// case the quadric has two components and points are kept on `x₀ > 0`.
fn two_sheeted(sig: &Signature) -> bool {
    (sig.eps == 1 && sig.n_plus == 0) || (sig.eps == -1 && sig.n_minus == 0)
}

/// Rational point on the quadric: the second intersection of the line
/// through `(1,0,…,0)` in a random integer direction `d`.
pub fn sample_point<R: Rng>(sig: &Signature, rng: &mut R) -> QuadricPoint {
    let m = sig.ambient_dim();
    loop {
        let d: Vec<GR> = (0..m).map(|_| GR::int(rng.gen_range(-3..=3))).collect();
        let gdd = sig.inner(&d, &d);
        if gdd.is_zero() || d[0].is_zero() {
            continue;
        }
        // ḡ(b + t d, b + t d) = ε + t(2ε d₀ + t ḡ(d,d))
        let t = GR::int(-2 * sig.eps as i64) * &d[0] / &gdd;
        let mut x: Vec<GR> = d.iter().map(|di| &t * di).collect();
        x[0] += GR::int(1);
        if two_sheeted(sig) && x[0].re < 0 {
            x.iter_mut().for_each(|c| *c = -c.clone());
        }
        if let Ok(p) = QuadricPoint::new(sig, x) {
            return p;
        }
    }
}

/// A point together with a rational basis of its tangent space.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    pub at: QuadricPoint,
    pub frame: Frame,
}

impl TangentFrame {
    /// Basis of `ker ḡ(x,·)` from the nullspace of the one-row matrix.
    pub fn new(rep: &CliffordRep, at: &QuadricPoint) -> Result<Self> {
        let row = ExactMatrix::from_rows(vec![rep.sig.lower(at.coords())])?;
        let (_, basis) = row.nullspace_rank();
        let frame = Frame::new(rep, basis)?;
        Ok(Self { at: at.clone(), frame })
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// Tangent vector `Σ Xⁱ eᵢ` in ambient coordinates.
    pub fn ambient_vector(&self, x: &[GR]) -> Vec<GR> {
        self.frame.to_ambient(x)
    }

    /// Frame components of a tangential ambient form:
    /// `α(e_{i₁}, …, e_{i_p})` expanded by minors.
    pub fn to_frame(&self, alpha: &SVForm) -> SVForm {
        let n = self.n();
        let p = alpha.degree();
        let mut out = SVForm::zero(n, p, alpha.spin_dim());
        if p > n {
            return out;
        }
        let vecs = self.frame.vectors();
        for fm in masks_of_degree(n, p) {
            let cols = mask_indices(fm);
            let mut acc = vec![GR::zero(); alpha.spin_dim()];
            for (am, v) in alpha.entries() {
                let rows = mask_indices(am);
                let mut sub = ExactMatrix::zeros(p, p);
                for (a, &r) in rows.iter().enumerate() {
                    for (b, &c) in cols.iter().enumerate() {
                        sub[(a, b)] = vecs[c][r].clone();
                    }
                }
                let det = sub.determinant().expect("square");
                if det.is_zero() {
                    continue;
                }
                for (o, vi) in acc.iter_mut().zip(v) {
                    *o += &det * vi;
                }
            }
            out.insert(fm, acc);
        }
        out
    }
}

/// `dr` at `x`, the covector `ε ḡ(x,·)`.
pub fn dr(sig: &Signature, x: &[GR]) -> Vec<GR> {
    let e = sig.eps_scalar();
    sig.lower(x).iter().map(|c| &e * c).collect()
}

/// Normal and tangential parts `(x ⨼ ᾱ, ᾱ − dr ∧ (x ⨼ ᾱ))` of an ambient form.
pub fn ambient_split(sig: &Signature, x: &[GR], alpha: &SVForm) -> (SVForm, SVForm) {
    let normal = alpha.hook(x);
    let tangent = alpha.sub(&normal.wedge(&dr(sig, x)));
    (normal, tangent)
}

pub type Evaluator = dyn Fn(&[GR]) -> SVForm + Send + Sync;

/// Polynomial family of ambient forms in the ambient coordinates.
#[derive(Clone)]
pub struct PolySection {
    eval: Arc<Evaluator>,
    pub degree_bound: usize,
    pub form_degree: usize,
    /// Spinor-valued sections pick up the spin-connection term in `covd`;
    /// scalar-valued ones (with one-dimensional values) do not.
    pub spinor_valued: bool,
}

impl fmt::Debug for PolySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolySection")
            .field("degree_bound", &self.degree_bound)
            .field("form_degree", &self.form_degree)
            .field("spinor_valued", &self.spinor_valued)
            .finish()
    }
}

impl PolySection {
    pub fn new(
        form_degree: usize,
        degree_bound: usize,
        spinor_valued: bool,
        eval: impl Fn(&[GR]) -> SVForm + Send + Sync + 'static,
    ) -> Self {
        Self { eval: Arc::new(eval), degree_bound, form_degree, spinor_valued }
    }

    pub fn eval(&self, x: &[GR]) -> SVForm {
        (self.eval)(x)
    }

    /// Ordinary directional derivative `∂_X S` at `x`.
    pub fn partial(&self, x: &[GR], v: &[GR]) -> SVForm {
        let s0 = self.eval(x);
        let (dim, deg, sd) = (s0.dim(), self.form_degree, s0.spin_dim());
        let d = poly_directional_derivative(|y| self.eval(y).to_vector_shaped(deg, sd), x, v, self.degree_bound);
        SVForm::from_vector(dim, deg, sd, &d).expect("consistent section shape")
    }

    /// `S₁ + c·S₂` as a new section.
    pub fn combine(&self, c: GR, other: &PolySection) -> PolySection {
        let (a, b) = (self.clone(), other.clone());
        PolySection::new(
            self.form_degree,
            self.degree_bound.max(other.degree_bound),
            self.spinor_valued,
            move |x| a.eval(x).axpy(&c, &b.eval(x)),
        )
    }

    /// Applies a pointwise linear map to the section.
    pub fn map(&self, form_degree: usize, extra_degree: usize, f: impl Fn(&[GR], SVForm) -> SVForm + Send + Sync + 'static) -> PolySection {
        let s = self.clone();
        PolySection::new(form_degree, self.degree_bound + extra_degree, self.spinor_valued, move |x| f(x, s.eval(x)))
    }
}

impl SVForm {
    /// [`SVForm::to_vector`] with an explicit shape, so that zero forms of a
    /// nominal degree still produce vectors of the right length.
    pub fn to_vector_shaped(&self, degree: usize, spin_dim: usize) -> Vec<GR> {
        if self.is_zero() {
            return vec![GR::zero(); SVForm::vector_len(self.dim(), degree, spin_dim)];
        }
        self.to_vector()
    }
}

/// `∇_X S` at `x` for tangential `S` and tangent `X`, as an ambient form:
/// `∂_X S + dr∧(X⨼S) − εX♭∧(x⨼S) − ½ε x·X·S`.
pub fn covd(rep: &CliffordRep, s: &PolySection, x: &QuadricPoint, v: &[GR]) -> Result<SVForm> {
    let sig = &rep.sig;
    let xc = x.coords();
    if v.len() != sig.ambient_dim() {
        return Err(Error::Shape("direction has the wrong length".into()));
    }
    if !sig.inner(xc, v).is_zero() {
        return Err(Error::Domain("direction is not tangent to the quadric".into()));
    }
    let val = s.eval(xc);
    let eps = sig.eps_scalar();
    let mut out = s
        .partial(xc, v)
        .add(&val.hook(v).wedge(&dr(sig, xc)))
        .axpy(&-eps.clone(), &val.hook(xc).wedge(&sig.lower(v)));
    if s.spinor_valued {
        let xv = rep.gamma_of(xc)?.mat_mul(&rep.gamma_of(v)?)?;
        out = out.axpy(&(GR::ratio(-1, 2) * eps), &val.map_values(&xv));
    }
    Ok(out)
}
