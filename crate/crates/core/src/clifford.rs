//! Gamma matrices for the complex Clifford algebra of the ambient space
//! `ℝ^{n+1}` with metric `ḡ = diag(ε, +1 × n₊, −1 × n₋)`.
//!
//! Sign convention: `X·X·ψ = −ḡ(X,X)ψ`, i.e. `γᵢγⱼ + γⱼγᵢ = −2ḡᵢⱼ`. The
//! literature is split on this sign; every formula in the crate assumes this
//! one.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};

pub type Spinor = Vec<GaussianRational>;

/// Choice of sign, used for `F±`, the Killing-number sign and chirality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn scalar(self) -> GaussianRational {
        GaussianRational::int(self.value())
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Signature `(n₊, n₋)` of the model space together with the sign `ε` of the
/// cone direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub eps: i8,
}

impl Signature {
    pub fn new(n_plus: usize, n_minus: usize, eps: i8) -> Result<Self> {
        if n_plus + n_minus < 2 {
            return Err(Error::Signature(format!(
                "dimension n = {} must be at least 2",
                n_plus + n_minus
            )));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::Signature(format!("eps must be +1 or -1, got {eps}")));
        }
        Ok(Self { n_plus, n_minus, eps })
    }

    pub fn n(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn ambient_dim(&self) -> usize {
        self.n() + 1
    }

    pub fn eps_scalar(&self) -> GaussianRational {
        GaussianRational::int(self.eps.into())
    }

    /// `√ε`: `1` for `ε = 1` and `i` for `ε = −1`.
    pub fn sqrt_eps(&self) -> GaussianRational {
        if self.eps == 1 {
            GaussianRational::one()
        } else {
            GaussianRational::i()
        }
    }

    /// Signature `(n̄₊, n̄₋)` of the cone metric.
    pub fn cone_counts(&self) -> (usize, usize) {
        if self.eps == 1 {
            (self.n_plus + 1, self.n_minus)
        } else {
            (self.n_plus, self.n_minus + 1)
        }
    }

    /// Diagonal entries of `ḡ` in the coordinates `x₀, …, x_n`.
    pub fn ambient_diag(&self) -> Vec<i64> {
        std::iter::once(self.eps as i64)
            .chain(std::iter::repeat_n(1, self.n_plus))
            .chain(std::iter::repeat_n(-1, self.n_minus))
            .collect()
    }

    pub fn ambient_metric(&self) -> ExactMatrix {
        let d = self.ambient_diag();
        let mut g = ExactMatrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            g[(i, i)] = GaussianRational::int(*v);
        }
        g
    }

    pub fn inner(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        self.ambient_diag()
            .iter()
            .zip(x.iter().zip(y))
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(d, (a, b))| GaussianRational::int(*d) * (a * b))
            .sum()
    }

    /// `ḡ(x, ·)` as a covector in ambient coordinates.
    pub fn lower(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        self.ambient_diag().iter().zip(x).map(|(d, a)| GaussianRational::int(*d) * a).collect()
    }

    /// Ambient spinor dimension `2^⌊(n+1)/2⌋`.
    pub fn spinor_dim(&self) -> usize {
        1 << (self.ambient_dim() / 2)
    }
}

/// Gamma-matrix representation of `Cl(n+1, ℂ)` for a given signature.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub sig: Signature,
    pub gammas: Vec<ExactMatrix>,
    pub sqrt_eps: GaussianRational,
}

fn pauli() -> (ExactMatrix, ExactMatrix, ExactMatrix) {
    let z = GaussianRational::zero;
    let x = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let y = ExactMatrix::from_rows(vec![
        vec![z(), -GaussianRational::i()],
        vec![GaussianRational::i(), z()],
    ])
    .expect("2x2");
    let zz = ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]);
    (x, y, zz)
}

fn kron_chain(factors: &[&ExactMatrix]) -> ExactMatrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.kron(f))
}

/// `m` pairwise anticommuting Hermitian matrices squaring to `I`
/// (Jordan–Wigner construction), of size `2^⌊m/2⌋`.
fn euclidean_generators(m: usize) -> Vec<ExactMatrix> {
    let k = m / 2;
    if k == 0 {
        return vec![ExactMatrix::identity(1); m];
    }
    let (x, y, z) = pauli();
    let id = ExactMatrix::identity(2);
    let mut out = Vec::with_capacity(m);
    for j in 0..k {
        for head in [&x, &y] {
            let factors: Vec<&ExactMatrix> = (0..k)
                .map(|t| match t.cmp(&j) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => head,
                    std::cmp::Ordering::Greater => &id,
                })
                .collect();
            out.push(kron_chain(&factors));
        }
    }
    if m % 2 == 1 {
        out.push(kron_chain(&vec![&z; k]));
    }
    out
}

impl CliffordRep {
    /// Builds gammas with `γᵢγⱼ + γⱼγᵢ = −2ḡᵢⱼ I` for the ambient metric.
    ///
    /// Each Hermitian generator is multiplied by `i` (square `−I`), and the
    /// generators in negative directions once more by `i` (square `+I`).
    pub fn build(sig: Signature) -> Self {
        let m = sig.ambient_dim();
        let i = GaussianRational::i();
        let gammas = euclidean_generators(m)
            .into_iter()
            .zip(sig.ambient_diag())
            .map(|(g, d)| {
                let g = g.scale(&i);
                if d < 0 {
                    g.scale(&i)
                } else {
                    g
                }
            })
            .collect();
        Self { sig, gammas, sqrt_eps: sig.sqrt_eps() }
    }

    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gammas.len()
    }

    /// Matrix of Clifford multiplication by the ambient vector `v`.
    pub fn gamma_of(&self, v: &[GaussianRational]) -> Result<ExactMatrix> {
        if v.len() != self.ambient_dim() {
            return Err(Error::Shape(format!(
                "ambient vector of length {} (expected {})",
                v.len(),
                self.ambient_dim()
            )));
        }
        let s = self.spinor_dim();
        let mut out = ExactMatrix::zeros(s, s);
        for (c, g) in v.iter().zip(&self.gammas) {
            if !c.is_zero() {
                out = out.add(&g.scale(c))?;
            }
        }
        Ok(out)
    }

    /// `v·ψ`.
    pub fn clifford_mul(&self, v: &[GaussianRational], psi: &[GaussianRational]) -> Result<Spinor> {
        if psi.len() != self.spinor_dim() {
            return Err(Error::Shape(format!(
                "spinor of length {} (expected {})",
                psi.len(),
                self.spinor_dim()
            )));
        }
        self.gamma_of(v)?.apply(psi)
    }

    /// Spin action `ρ(X∧Y)ψ = −¼[X·, Y·]ψ`.
    pub fn spin_rho(
        &self,
        x: &[GaussianRational],
        y: &[GaussianRational],
        psi: &[GaussianRational],
    ) -> Result<Spinor> {
        let xy = self.clifford_mul(x, &self.clifford_mul(y, psi)?)?;
        let yx = self.clifford_mul(y, &self.clifford_mul(x, psi)?)?;
        let c = GaussianRational::ratio(-1, 4);
        Ok(xy.iter().zip(&yx).map(|(a, b)| &c * (a - b)).collect())
    }

    /// The same action written as `−½(X·Y· + ḡ(X,Y))ψ`.
    pub fn spin_rho_symmetric(
        &self,
        x: &[GaussianRational],
        y: &[GaussianRational],
        psi: &[GaussianRational],
    ) -> Result<Spinor> {
        let xy = self.clifford_mul(x, &self.clifford_mul(y, psi)?)?;
        let g = self.sig.inner(x, y);
        let c = GaussianRational::ratio(-1, 2);
        Ok(xy.iter().zip(psi).map(|(a, p)| &c * (a + &(&g * p))).collect())
    }

    /// Normalized volume element and its ±1 eigenspaces (ambient dimension even).
    pub fn chirality(&self) -> Result<Chirality> {
        let m = self.ambient_dim();
        if m % 2 == 1 {
            return Err(Error::NotApplicable(format!(
                "chirality needs an even ambient dimension, got {m}"
            )));
        }
        let mut vol = ExactMatrix::identity(self.spinor_dim());
        for g in &self.gammas {
            vol = vol.mat_mul(g)?;
        }
        let omega = normalize_involution(&vol)?;
        let s = self.spinor_dim();
        let id = ExactMatrix::identity(s);
        let plus = omega.sub(&id)?.nullspace_rank().1;
        let minus = omega.add(&id)?.nullspace_rank().1;
        Ok(Chirality { omega, plus_basis: plus, minus_basis: minus })
    }

    /// `F±(ψ̄) = (1 ∓ √ε x·)ψ̄` for a point `x` on the quadric `ḡ(x,x) = ε`.
    pub fn f_map(&self, sign: Sign, psi: &[GaussianRational], x: &[GaussianRational]) -> Result<Spinor> {
        if self.sig.inner(x, x) != self.sig.eps_scalar() {
            return Err(Error::Domain("F± needs a point with ḡ(x,x) = ε".into()));
        }
        let xpsi = self.clifford_mul(x, psi)?;
        let c = -(sign.scalar() * &self.sqrt_eps);
        Ok(psi.iter().zip(&xpsi).map(|(p, xp)| p + &(&c * xp)).collect())
    }
}

/// Rescales a matrix whose square is `±I` to an involution, using the factor
/// `1` or `i`.
pub(crate) fn normalize_involution(vol: &ExactMatrix) -> Result<ExactMatrix> {
    let id = ExactMatrix::identity(vol.rows());
    let sq = vol.mat_mul(vol)?;
    if sq == id {
        Ok(vol.clone())
    } else if sq == id.scale(&GaussianRational::int(-1)) {
        Ok(vol.scale(&GaussianRational::i()))
    } else {
        Err(Error::NotApplicable("volume element does not square to ±I".into()))
    }
}

#[derive(Clone, Debug)]
pub struct Chirality {
    pub omega: ExactMatrix,
    pub plus_basis: Vec<Spinor>,
    pub minus_basis: Vec<Spinor>,
}

impl Chirality {
    pub fn basis(&self, sign: Sign) -> &[Spinor] {
        match sign {
            Sign::Plus => &self.plus_basis,
            Sign::Minus => &self.minus_basis,
        }
    }

    /// `½(1 ± ω)`.
    pub fn projector(&self, sign: Sign) -> ExactMatrix {
        let id = ExactMatrix::identity(self.omega.rows());
        let half = GaussianRational::ratio(1, 2);
        let pm = match sign {
            Sign::Plus => id.add(&self.omega),
            Sign::Minus => id.sub(&self.omega),
        }
        .expect("same shape");
        pm.scale(&half)
    }
}
