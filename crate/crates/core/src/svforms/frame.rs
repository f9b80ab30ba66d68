use num_traits::Zero;

use super::SVForm;
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};

/// A (not necessarily orthonormal) frame `e₁, …, e_k` of ambient vectors,
/// with its Gram matrix, inverse Gram matrix, and the Clifford matrices
/// `Eᵢ = eᵢ·`.
///
/// Vectors and covectors handed to frame methods are given by components
/// with respect to `eᵢ` and the dual coframe `eⁱ`.
#[derive(Clone, Debug)]
pub struct Frame {
    vectors: Vec<Vec<GaussianRational>>,
    gram: ExactMatrix,
    gram_inv: ExactMatrix,
    gammas: Vec<ExactMatrix>,
    spin_dim: usize,
}

fn unit(n: usize, i: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[i] = GaussianRational::int(1);
    v
}

impl Frame {
    pub fn new(rep: &CliffordRep, vectors: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let k = vectors.len();
        let mut gram = ExactMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = rep.sig.inner(&vectors[i], &vectors[j]);
            }
        }
        let gram_inv = gram
            .inverse()
            .map_err(|_| Error::Domain("frame has a degenerate Gram matrix".into()))?;
        let gammas = vectors.iter().map(|v| rep.gamma_of(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self { vectors, gram, gram_inv, gammas, spin_dim: rep.spinor_dim() })
    }

    /// The coordinate frame of the ambient space, with Gram matrix `ḡ`.
    pub fn ambient(rep: &CliffordRep) -> Self {
        let m = rep.ambient_dim();
        Self::new(rep, (0..m).map(|i| unit(m, i)).collect()).expect("ḡ is nondegenerate")
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn spin_dim(&self) -> usize {
        self.spin_dim
    }

    pub fn vectors(&self) -> &[Vec<GaussianRational>] {
        &self.vectors
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &ExactMatrix {
        &self.gram_inv
    }

    pub fn gamma(&self, i: usize) -> &ExactMatrix {
        &self.gammas[i]
    }

    pub fn unit(&self, i: usize) -> Vec<GaussianRational> {
        unit(self.n(), i)
    }

    pub fn zero_form(&self, degree: usize) -> SVForm {
        SVForm::zero(self.n(), degree, self.spin_dim)
    }

    /// `Σ Xⁱ eᵢ` as an ambient vector.
    pub fn to_ambient(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        let m = self.vectors.first().map_or(0, Vec::len);
        let mut out = vec![GaussianRational::zero(); m];
        for (c, v) in x.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, vi) in out.iter_mut().zip(v) {
                *o += c * vi;
            }
        }
        out
    }

    pub fn inner(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let gy = self.gram.apply(y).expect("frame vector length");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `X♭`, components `Σᵢ Xⁱ gᵢⱼ`.
    pub fn flat(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        self.gram.transpose().apply(x).expect("frame vector length")
    }

    /// `ξ♯`, components `Σⱼ gⁱʲ ξⱼ`.
    pub fn sharp(&self, xi: &[GaussianRational]) -> Vec<GaussianRational> {
        self.gram_inv.apply(xi).expect("frame covector length")
    }

    /// Matrix of `X·` on spinors.
    pub fn cliff_matrix(&self, x: &[GaussianRational]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.spin_dim, self.spin_dim);
        for (c, g) in x.iter().zip(&self.gammas) {
            if !c.is_zero() {
                out = out.add(&g.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// `X·Φ`, Clifford multiplication on values.
    pub fn cliff(&self, x: &[GaussianRational], phi: &SVForm) -> SVForm {
        phi.map_values(&self.cliff_matrix(x))
    }

    /// `clf ∧ Φ = Σᵢ eⁱ ∧ (eᵢ·Φ)`.
    pub fn clf_wedge(&self, phi: &SVForm) -> SVForm {
        let mut out = self.zero_form(phi.degree() + 1);
        for i in 0..self.n() {
            out = out.add(&phi.map_values(&self.gammas[i]).wedge_basis(i));
        }
        out
    }

    /// `clv ⨼ Φ = Σᵢⱼ gⁱʲ eᵢ ⨼ (eⱼ·Φ)`.
    pub fn clv_hook(&self, phi: &SVForm) -> SVForm {
        let mut out = self.zero_form(phi.degree().saturating_sub(1));
        for j in 0..self.n() {
            let up = self.sharp(&self.unit(j));
            out = out.add(&phi.map_values(&self.gammas[j]).hook(&up));
        }
        out
    }

    /// The four algebraic identities relating `clf`, `clv`, Clifford
    /// multiplication, wedge and contraction; each entry must vanish.
    pub fn clifford_identities(&self, x: &[GaussianRational], phi: &SVForm) -> [SVForm; 4] {
        let xf = self.flat(x);
        let xphi = self.cliff(x, phi);
        let two = GaussianRational::int(2);
        let r1 = self
            .cliff(x, &self.clf_wedge(phi))
            .add(&self.clf_wedge(&xphi))
            .axpy(&two, &phi.wedge(&xf));
        let r2 = self.clf_wedge(phi).hook(x).add(&self.clf_wedge(&phi.hook(x))).sub(&xphi);
        let r3 = self
            .cliff(x, &self.clv_hook(phi))
            .add(&self.clv_hook(&xphi))
            .axpy(&two, &phi.hook(x));
        let r4 = self.clv_hook(phi).wedge(&xf).add(&self.clv_hook(&phi.wedge(&xf))).sub(&xphi);
        [r1, r2, r3, r4]
    }

    /// `clv⨼(clf∧Φ) − clf∧(clv⨼Φ) − (2p − n)Φ`.
    pub fn clfclv_residual(&self, phi: &SVForm) -> SVForm {
        let c = GaussianRational::int(2 * phi.degree() as i64 - self.n() as i64);
        self.clv_hook(&self.clf_wedge(phi)).sub(&self.clf_wedge(&self.clv_hook(phi))).axpy(&-c, phi)
    }

    /// `ρ(X∧Y)Φ = X⨼(Y♭∧Φ) − Y⨼(X♭∧Φ)` on the form part.
    pub fn rho_form(&self, x: &[GaussianRational], y: &[GaussianRational], phi: &SVForm) -> SVForm {
        phi.wedge(&self.flat(y)).hook(x).sub(&phi.wedge(&self.flat(x)).hook(y))
    }

    /// The other expression of the same action, `X♭∧(Y⨼Φ) − Y♭∧(X⨼Φ)`.
    pub fn rho_form_alt(&self, x: &[GaussianRational], y: &[GaussianRational], phi: &SVForm) -> SVForm {
        phi.hook(y).wedge(&self.flat(x)).sub(&phi.hook(x).wedge(&self.flat(y)))
    }

    /// Spin action `−½(X·Y· + g(X,Y))` on the values.
    pub fn rho_spin(&self, x: &[GaussianRational], y: &[GaussianRational], phi: &SVForm) -> SVForm {
        let xy = self.cliff(x, &self.cliff(y, phi));
        xy.axpy(&self.inner(x, y), phi).scale(&GaussianRational::ratio(-1, 2))
    }
}
