use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Frame, SVForm};
use crate::error::{Error, Result};
use crate::exact::GaussianRational;

type GR = GaussianRational;

/// Which piece of the curvature of `∇` on spinor-valued forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvPart {
    /// Acting on the form part: `ε ρ(X∧Y)`.
    Aff,
    /// Acting on the values: `−½(ε − 4a²)(X·Y· + g(X,Y))`.
    Value,
    Total,
}

/// Curvature of the Killing-number-twisted connection on the model space of
/// sectional curvature `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCurvature {
    pub a: GR,
    pub eps: i8,
}

impl ModelCurvature {
    pub fn new(a: GR, eps: i8) -> Self {
        Self { a, eps }
    }

    pub fn eps_scalar(&self) -> GR {
        GR::int(self.eps.into())
    }

    /// `ε − 4a²`.
    pub fn kappa(&self) -> GR {
        self.eps_scalar() - GR::int(4) * &self.a * &self.a
    }

    pub fn apply(&self, frame: &Frame, part: CurvPart, x: &[GR], y: &[GR], phi: &SVForm) -> SVForm {
        let aff = || frame.rho_form(x, y, phi).scale(&self.eps_scalar());
        let val = || {
            let k = self.kappa();
            if k.is_zero() {
                frame.zero_form(phi.degree())
            } else {
                frame.rho_spin(x, y, phi).scale(&k)
            }
        };
        match part {
            CurvPart::Aff => aff(),
            CurvPart::Value => val(),
            CurvPart::Total => aff().add(&val()),
        }
    }

    /// `R_{eᵢ,eⱼ}Φ` tabulated over frame pairs.
    pub fn tensor(&self, frame: &Frame, part: CurvPart, phi: &SVForm) -> PairTensor {
        PairTensor::from_fn(frame, phi.degree(), |i, j| {
            self.apply(frame, part, &frame.unit(i), &frame.unit(j), phi)
        })
    }

    /// Modified curvature `(p+1)·aff + (p+2)·value` on a form `Ξ` of degree `p+1`.
    pub fn mcurv(&self, frame: &Frame, x: &[GR], y: &[GR], xi: &SVForm) -> SVForm {
        let d = xi.degree() as i64;
        self.apply(frame, CurvPart::Aff, x, y, xi)
            .scale(&GR::int(d))
            .axpy(&GR::int(d + 1), &self.apply(frame, CurvPart::Value, x, y, xi))
    }

    pub fn mcurv_tensor(&self, frame: &Frame, xi: &SVForm) -> PairTensor {
        PairTensor::from_fn(frame, xi.degree(), |i, j| self.mcurv(frame, &frame.unit(i), &frame.unit(j), xi))
    }

    /// `(∇_X curv)_{Y,Z} Φ = a(ε−4a²)(g(X,Z)Y − g(X,Y)Z)·Φ`; the form part
    /// is parallel on the model space.
    pub fn dcurv(&self, frame: &Frame, x: &[GR], y: &[GR], z: &[GR], phi: &SVForm) -> SVForm {
        let c = &self.a * &self.kappa();
        let v: Vec<GR> = y
            .iter()
            .zip(z)
            .map(|(yi, zi)| &frame.inner(x, z) * yi - &frame.inner(x, y) * zi)
            .collect();
        frame.cliff(&v, phi).scale(&c)
    }

    /// `((∇curv) ⊼ Φ)_{X,Y}` in closed form for the model space.
    pub fn barwedge(&self, frame: &Frame, x: &[GR], y: &[GR], phi: &SVForm) -> SVForm {
        let c = &self.a * &self.kappa();
        let xf = frame.flat(x);
        let yf = frame.flat(y);
        let clf = frame.clf_wedge(phi);
        let t = GR::ratio(1, phi.degree() as i64 + 1);
        frame
            .cliff(y, phi)
            .wedge(&xf)
            .sub(&frame.cliff(x, phi).wedge(&yf))
            .axpy(&t, &clf.wedge(&xf).hook(y).sub(&clf.wedge(&yf).hook(x)))
            .scale(&c)
    }

    pub fn barwedge_tensor(&self, frame: &Frame, phi: &SVForm) -> PairTensor {
        PairTensor::from_fn(frame, phi.degree() + 1, |i, j| {
            self.barwedge(frame, &frame.unit(i), &frame.unit(j), phi)
        })
    }
}

/// Form-valued bilinear map `(X, Y) ↦ T_{X,Y}`, stored by its values on
/// frame pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTensor {
    n: usize,
    degree: usize,
    table: Vec<SVForm>,
}

/// Symmetry components of a curvature-type action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymKind {
    /// `(p+2)`: totally skew.
    Skew,
    /// `(p+1,1)`.
    Hook,
    /// `(p,2)`.
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ROp {
    R1,
    R2,
    R3,
    Q,
}

impl PairTensor {
    pub fn from_fn(frame: &Frame, degree: usize, mut f: impl FnMut(usize, usize) -> SVForm) -> Self {
        let n = frame.n();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(f(i, j).with_degree(degree));
            }
        }
        Self { n, degree, table }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn at(&self, i: usize, j: usize) -> &SVForm {
        &self.table[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(SVForm::is_zero)
    }

    pub fn forms(&self) -> &[SVForm] {
        &self.table
    }

    /// `T_{X,Y}` by bilinearity.
    pub fn eval(&self, frame: &Frame, x: &[GR], y: &[GR]) -> SVForm {
        let mut out = frame.zero_form(self.degree);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out = out.axpy(&(xi * yj), self.at(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &PairTensor) -> PairTensor {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &PairTensor) -> PairTensor {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &GR) -> PairTensor {
        PairTensor {
            n: self.n,
            degree: self.degree,
            table: self.table.iter().map(|f| f.scale(s)).collect(),
        }
    }

    fn zip(&self, other: &PairTensor, f: impl Fn(&SVForm, &SVForm) -> SVForm) -> PairTensor {
        assert_eq!(self.n, other.n);
        PairTensor {
            n: self.n,
            degree: self.degree.max(other.degree),
            table: self.table.iter().zip(&other.table).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `T_X ∧ Φ = Σⱼ eʲ ∧ T_{X,eⱼ}` for `X = eᵢ`.
    pub fn skew_at(&self, i: usize) -> SVForm {
        let mut out = SVForm::zero(self.n, self.degree + 1, self.spin_dim());
        for j in 0..self.n {
            out = out.add(&self.at(i, j).wedge_basis(j));
        }
        out
    }

    pub fn skew_x(&self, x: &[GR]) -> SVForm {
        let mut out = SVForm::zero(self.n, self.degree + 1, self.spin_dim());
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out = out.axpy(c, &self.skew_at(i));
        }
        out
    }

    /// `T ∧ Φ = ½ Σᵢ eⁱ ∧ (T_{eᵢ} ∧ Φ)`.
    pub fn skew_all(&self) -> SVForm {
        let mut out = SVForm::zero(self.n, self.degree + 2, self.spin_dim());
        for i in 0..self.n {
            out = out.add(&self.skew_at(i).wedge_basis(i));
        }
        out.scale(&GR::ratio(1, 2))
    }

    fn spin_dim(&self) -> usize {
        self.table.first().map_or(0, SVForm::spin_dim)
    }

    /// One of the three symmetry components; `p` is the degree of the values.
    pub fn project(&self, kind: SymKind) -> Result<PairTensor> {
        let p = self.degree as i64;
        if p == 0 {
            return Err(Error::Degree("symmetry projections need degree at least 1".into()));
        }
        let w = self.skew_all();
        let s: Vec<SVForm> = (0..self.n).map(|i| self.skew_at(i)).collect();
        let n = self.n;
        let table = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                // Y ⨼ X ⨼ W with X = eᵢ, Y = eⱼ
                let yxw = w.hook_basis(i).hook_basis(j);
                let mixed = s[i].hook_basis(j).sub(&s[j].hook_basis(i));
                match kind {
                    SymKind::Skew => yxw.scale(&GR::ratio(2, (p + 1) * (p + 2))),
                    SymKind::Hook => mixed.axpy(&GR::ratio(-4, p + 2), &yxw).scale(&GR::ratio(1, p)),
                    SymKind::Pair => self
                        .at(i, j)
                        .sub(&mixed.axpy(&GR::ratio(-2, p + 1), &yxw).scale(&GR::ratio(1, p))),
                }
            })
            .map(|f| f.with_degree(self.degree))
            .collect();
        Ok(PairTensor { n, degree: self.degree, table })
    }

    /// The contraction operators `r₁, r₂, r₃` and the curved Casimir `q`, all
    /// summed against `gⁱᵏ gʲˡ`.
    pub fn op_r(&self, frame: &Frame, which: ROp) -> SVForm {
        let n = self.n;
        let ginv = frame.gram_inv();
        let mut out: Option<SVForm> = None;
        for k in 0..n {
            for l in 0..n {
                let t = self.at(k, l);
                if t.is_zero() {
                    continue;
                }
                // lift both slots with the inverse metric: eᵢ with coefficient gⁱᵏ
                let ek: Vec<GR> = (0..n).map(|i| ginv[(i, k)].clone()).collect();
                let el: Vec<GR> = (0..n).map(|j| ginv[(j, l)].clone()).collect();
                let term = match which {
                    ROp::R1 => t.hook(&el).hook(&ek),
                    ROp::R2 => frame.cliff(&ek, &t.hook(&el)),
                    ROp::R3 => frame.cliff(&ek, &frame.cliff(&el, t)),
                    // gⁱᵏ (eᵢ)♭ = eᵏ
                    ROp::Q => t.hook(&el).wedge_basis(k),
                };
                out = Some(match out {
                    None => term,
                    Some(o) => o.add(&term),
                });
            }
        }
        out.unwrap_or_else(|| {
            frame.zero_form(match which {
                ROp::R1 => self.degree.saturating_sub(2),
                ROp::R2 => self.degree.saturating_sub(1),
                ROp::R3 | ROp::Q => self.degree,
            })
        })
    }
}
