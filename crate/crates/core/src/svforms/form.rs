use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::Spinor;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};

/// Spinor-valued exterior form of a fixed degree over an index set of size
/// `dim`.
///
/// Components are keyed by the bitmask of the (strictly increasing) index
/// tuple. Zero components are never stored, so structural equality is
/// mathematical equality. Degrees outside `0..=dim` are allowed and always
/// hold the zero form, which lets formulas produce `Λ^{n+1} = 0` terms freely.
#[derive(Clone)]
pub struct SVForm {
    dim: usize,
    degree: usize,
    spin_dim: usize,
    entries: BTreeMap<u32, Spinor>,
}

fn below(mask: u32, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

fn is_zero_spinor(s: &[GaussianRational]) -> bool {
    s.iter().all(Zero::is_zero)
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|j| mask & (1 << j) != 0).collect()
}

/// All bitmasks of `degree`-subsets of `0..dim`, in increasing order.
pub fn masks_of_degree(dim: usize, degree: usize) -> Vec<u32> {
    if degree > dim {
        return Vec::new();
    }
    (0u32..(1u32 << dim)).filter(|m| m.count_ones() as usize == degree).collect()
}

impl SVForm {
    pub fn zero(dim: usize, degree: usize, spin_dim: usize) -> Self {
        assert!(dim < 32, "index sets are limited to 31 slots");
        Self { dim, degree, spin_dim, entries: BTreeMap::new() }
    }

    /// Degree-0 form with the given spinor value.
    pub fn scalar(dim: usize, psi: Spinor) -> Self {
        let spin_dim = psi.len();
        let mut f = Self::zero(dim, 0, spin_dim);
        f.insert(0, psi);
        f
    }

    /// `e^{i₁}∧…∧e^{i_p} ⊗ ψ` for an arbitrary index sequence (sorted with sign).
    pub fn basis(dim: usize, idx: &[usize], psi: Spinor) -> Result<Self> {
        let mut f = Self::scalar(dim, psi);
        for &i in idx.iter().rev() {
            if i >= dim {
                return Err(Error::Shape(format!("form index {i} out of range 0..{dim}")));
            }
            f = f.wedge_basis(i);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn spin_dim(&self) -> usize {
        self.spin_dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Spinor)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, mask: u32) -> Option<&Spinor> {
        self.entries.get(&mask)
    }

    /// Component at `mask` (zero spinor when absent).
    pub fn component(&self, mask: u32) -> Spinor {
        self.entries.get(&mask).cloned().unwrap_or_else(|| vec![GaussianRational::zero(); self.spin_dim])
    }

    /// Adds `psi` to the component at `mask`.
    pub fn insert(&mut self, mask: u32, psi: Spinor) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        debug_assert_eq!(psi.len(), self.spin_dim);
        if is_zero_spinor(&psi) {
            return;
        }
        match self.entries.get_mut(&mask) {
            None => {
                self.entries.insert(mask, psi);
            }
            Some(cur) => {
                for (c, p) in cur.iter_mut().zip(&psi) {
                    *c += p;
                }
                if is_zero_spinor(cur) {
                    self.entries.remove(&mask);
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &SVForm, s: &GaussianRational) {
        if other.is_zero() || s.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
            self.spin_dim = other.spin_dim;
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        assert_eq!(self.spin_dim, other.spin_dim, "adding forms with different spinor sizes");
        for (m, v) in &other.entries {
            self.insert(*m, v.iter().map(|x| s * x).collect());
        }
    }

    /// `self + s·other`. Zero forms of any degree are neutral.
    pub fn axpy(&self, s: &GaussianRational, other: &SVForm) -> SVForm {
        let mut out = self.clone();
        out.add_scaled(other, s);
        out
    }

    pub fn add(&self, other: &SVForm) -> SVForm {
        self.axpy(&GaussianRational::int(1), other)
    }

    pub fn sub(&self, other: &SVForm) -> SVForm {
        self.axpy(&GaussianRational::int(-1), other)
    }

    pub fn scale(&self, s: &GaussianRational) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree, self.spin_dim);
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> SVForm {
        self.scale(&GaussianRational::int(-1))
    }

    /// `e^j ∧ Φ`.
    pub fn wedge_basis(&self, j: usize) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree + 1, self.spin_dim);
        for (m, v) in &self.entries {
            if m & (1 << j) != 0 {
                continue;
            }
            let nm = m | (1 << j);
            if below(*m, j).is_multiple_of(2) {
                out.insert(nm, v.clone());
            } else {
                out.insert(nm, v.iter().map(|x| -x).collect());
            }
        }
        out
    }

    /// `e_j ⨼ Φ` for the basis dual to the one defining the components.
    pub fn hook_basis(&self, j: usize) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree.saturating_sub(1), self.spin_dim);
        if self.degree == 0 {
            return out;
        }
        for (m, v) in &self.entries {
            if m & (1 << j) == 0 {
                continue;
            }
            let nm = m & !(1 << j);
            if below(*m, j).is_multiple_of(2) {
                out.insert(nm, v.clone());
            } else {
                out.insert(nm, v.iter().map(|x| -x).collect());
            }
        }
        out
    }

    /// `ξ ∧ Φ` for a covector given by its components `ξ_j`.
    pub fn wedge(&self, xi: &[GaussianRational]) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree + 1, self.spin_dim);
        for (j, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.wedge_basis(j), c);
            }
        }
        out
    }

    /// `X ⨼ Φ` for a vector given by its components `Xʲ`.
    pub fn hook(&self, x: &[GaussianRational]) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree.saturating_sub(1), self.spin_dim);
        if self.degree == 0 {
            return out;
        }
        for (j, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.hook_basis(j), c);
            }
        }
        out
    }

    /// Exterior product with a scalar-valued form given as `(mask, coefficient)`.
    pub fn wedge_scalar_form(&self, degree: usize, terms: &[(u32, GaussianRational)]) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree + degree, self.spin_dim);
        for (m, c) in terms {
            let mut t = self.clone();
            for j in mask_indices(*m).into_iter().rev() {
                t = t.wedge_basis(j);
            }
            out.add_scaled(&t, c);
        }
        out
    }

    /// Applies a matrix to every spinor value.
    pub fn map_values(&self, m: &ExactMatrix) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree, m.rows());
        for (k, v) in &self.entries {
            out.insert(*k, m.apply(v).expect("spinor size matches matrix"));
        }
        out
    }

    /// Applies an arbitrary linear map to every spinor value.
    pub fn map_spinors(&self, spin_dim: usize, f: impl Fn(&[GaussianRational]) -> Spinor) -> SVForm {
        let mut out = SVForm::zero(self.dim, self.degree, spin_dim);
        for (k, v) in &self.entries {
            out.insert(*k, f(v));
        }
        out
    }

    /// All components as one flat vector, ordered by mask then spinor slot.
    pub fn to_vector(&self) -> Vec<GaussianRational> {
        let mut out = Vec::new();
        for m in masks_of_degree(self.dim, self.degree) {
            out.extend(self.component(m));
        }
        out
    }

    pub fn from_vector(dim: usize, degree: usize, spin_dim: usize, v: &[GaussianRational]) -> Result<SVForm> {
        let masks = masks_of_degree(dim, degree);
        if v.len() != masks.len() * spin_dim {
            return Err(Error::Shape(format!(
                "vector of length {} for {} components of size {spin_dim}",
                v.len(),
                masks.len()
            )));
        }
        let mut out = SVForm::zero(dim, degree, spin_dim);
        for (i, m) in masks.into_iter().enumerate() {
            out.insert(m, v[i * spin_dim..(i + 1) * spin_dim].to_vec());
        }
        Ok(out)
    }

    /// Length of [`SVForm::to_vector`] for the given shape.
    pub fn vector_len(dim: usize, degree: usize, spin_dim: usize) -> usize {
        masks_of_degree(dim, degree).len() * spin_dim
    }

    pub fn with_degree(mut self, degree: usize) -> SVForm {
        assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }
}

/// Zero forms compare equal regardless of their nominal degree.
impl PartialEq for SVForm {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return self.dim == other.dim;
        }
        self.dim == other.dim && self.degree == other.degree && self.entries == other.entries
    }
}

impl Eq for SVForm {}

impl std::fmt::Debug for SVForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SVForm[dim {}, degree {}]", self.dim, self.degree)?;
        let mut m = f.debug_map();
        for (k, v) in &self.entries {
            m.entry(&mask_indices(*k), v);
        }
        m.finish()
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    idx: Vec<usize>,
    spinor: Vec<GaussianRational>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    dim: usize,
    degree: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for SVForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryRepr { idx: mask_indices(*k), spinor: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SVForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = FormRepr::deserialize(d)?;
        let spin_dim = r.entries.first().map(|e| e.spinor.len()).unwrap_or(0);
        let mut out = SVForm::zero(r.dim, r.degree, spin_dim);
        for e in r.entries {
            if e.idx.len() != r.degree || e.idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom("entry indices must be strictly increasing of length degree"));
            }
            if e.idx.iter().any(|&i| i >= r.dim) || e.spinor.len() != spin_dim {
                return Err(D::Error::custom("entry out of range"));
            }
            let mask = e.idx.iter().fold(0u32, |m, i| m | (1 << i));
            out.insert(mask, e.spinor);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn psi(a: i64, b: i64) -> Spinor {
        vec![q(a, 1), q(b, 1)]
    }

    #[test]
    fn wedge_sign() {
        let f = SVForm::basis(3, &[1], psi(1, 2)).unwrap();
        let g = f.wedge_basis(0);
        assert_eq!(g, SVForm::basis(3, &[0, 1], psi(1, 2)).unwrap());
        let h = SVForm::basis(3, &[0], psi(1, 2)).unwrap().wedge_basis(1);
        assert_eq!(h, g.neg());
        assert!(g.wedge_basis(0).is_zero());
    }

    #[test]
    fn top_degree_wedge_is_zero() {
        let f = SVForm::basis(2, &[0, 1], psi(1, 1)).unwrap();
        let g = f.wedge(&[q(1, 1), q(3, 1)]);
        assert!(g.is_zero());
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn hook_on_degree_zero() {
        let f = SVForm::scalar(3, psi(1, 0));
        assert!(f.hook_basis(1).is_zero());
    }

    #[test]
    fn graded_leibniz_exhaustive() {
        for dim in 1..=4 {
            for deg in 0..=dim {
                for m in masks_of_degree(dim, deg) {
                    let f = SVForm::basis(dim, &mask_indices(m), psi(1, -2)).unwrap();
                    for j in 0..dim {
                        for k in 0..dim {
                            let lhs = f.wedge_basis(j).hook_basis(k).add(&f.hook_basis(k).wedge_basis(j));
                            let rhs = if j == k { f.clone() } else { SVForm::zero(dim, deg, 2) };
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = SVForm::basis(4, &[3, 1], vec![q(1, 2), GaussianRational::i()]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"dim":4,"degree":2,"entries":[{"idx":[1,3],"spinor":["-1/2","0-1*i"]}]}"#);
        let g: SVForm = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<SVForm>(r#"{"dim":4,"degree":2,"entries":[{"idx":[3,1],"spinor":["1"]}]}"#).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let f = SVForm::basis(3, &[0, 2], psi(4, 5)).unwrap();
        let v = f.to_vector();
        assert_eq!(v.len(), SVForm::vector_len(3, 2, 2));
        assert_eq!(SVForm::from_vector(3, 2, 2, &v).unwrap(), f);
    }
}
