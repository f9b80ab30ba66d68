use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer-entry convenience constructor, mostly for tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| GaussianRational::int(v)).collect()).collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mat_mul(&self, b: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != b.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let mut out = Self::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = &self[(i, k)];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let bkj = &b[(k, j)];
                    if !bkj.is_zero() {
                        out[(i, j)] += aik * bkj;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn kron(&self, b: &ExactMatrix) -> ExactMatrix {
        let (p, q) = (b.rows, b.cols);
        let mut out = Self::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = &self[(i, j)];
                if aij.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = aij * &b[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, b: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(b, |x, y| x + y)
    }

    pub fn sub(&self, b: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(b, |x, y| x - y)
    }

    fn zip_with(
        &self,
        b: &ExactMatrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<ExactMatrix> {
        if (self.rows, self.cols) != (b.rows, b.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
        })
    }

    pub fn scale(&self, s: &GaussianRational) -> ExactMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Exact rank and a nullspace basis by reduction to row echelon form.
    pub fn nullspace_rank(&self) -> (usize, Vec<Vec<GaussianRational>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let rank = pivots.len();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let basis = (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[free] = GaussianRational::one();
                for (c, slot) in is_pivot.iter().enumerate() {
                    if let Some(r) = slot {
                        v[c] = -&m[(*r, free)];
                    }
                }
                v
            })
            .collect();
        (rank, basis)
    }

    /// Exact inverse of a square matrix.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GaussianRational::one();
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Err(Error::DivisionByZero);
        }
        let mut out = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    /// Exact determinant of a square matrix by elimination.
    pub fn determinant(&self) -> Result<GaussianRational> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let mut acc = RankAccumulator::new(self.cols);
        for i in 0..self.rows {
            if acc.is_full() {
                break;
            }
            acc.push_row(self.row(i).to_vec());
        }
        acc.rank()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental row echelon basis.
///
/// Rows are streamed in one at a time and reduced against the pivots seen
/// so far, so a tall linear system never has to be materialized, and the
/// caller can stop as soon as the rank reaches the column count.
#[derive(Clone, Debug)]
pub struct RankAccumulator {
    cols: usize,
    // (pivot column, row normalized so the pivot entry is 1)
    basis: Vec<(usize, Vec<GaussianRational>)>,
}

impl RankAccumulator {
    pub fn new(cols: usize) -> Self {
        Self { cols, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.cols
    }

    /// Reduces `row` and keeps it if independent. Returns whether the rank grew.
    pub fn push_row(&mut self, mut row: Vec<GaussianRational>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        for (pc, prow) in &self.basis {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for (x, y) in row.iter_mut().zip(prow).skip(*pc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pc].inv().expect("nonzero");
        for x in row.iter_mut().skip(pc) {
            *x = &*x * &inv;
        }
        self.basis.push((pc, row));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn identity_product() {
        let m = ExactMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(ExactMatrix::identity(2).mat_mul(&m).unwrap(), m);
    }

    #[test]
    fn rotation_squares_to_minus_identity() {
        let j = ExactMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        assert_eq!(j.mat_mul(&j).unwrap(), ExactMatrix::identity(2).scale(&q(-1, 1)));
    }

    #[test]
    fn imaginary_unit_product() {
        let i = ExactMatrix::from_rows(vec![vec![gi(0, 1)]]).unwrap();
        assert_eq!(i.mat_mul(&i).unwrap().entries(), &[gi(-1, 0)]);
    }

    #[test]
    fn determinants() {
        assert_eq!(ExactMatrix::from_ints(&[&[0, 1], &[-1, 0]]).determinant().unwrap(), q(1, 1));
        assert_eq!(ExactMatrix::from_ints(&[&[0, 1, 2], &[1, 0, 0], &[0, 0, 3]]).determinant().unwrap(), q(-3, 1));
        assert_eq!(ExactMatrix::zeros(0, 0).determinant().unwrap(), q(1, 1));
    }

    #[test]
    fn inverse_of_rotation() {
        let r = ExactMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let inv = r.inverse().unwrap();
        assert_eq!(r.mat_mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert!(ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn shape_error() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(a.mat_mul(&a), Err(Error::Shape(_))));
        assert!(a.apply(&[gi(1, 0)]).is_err());
        assert!(ExactMatrix::from_vec(2, 2, vec![gi(1, 0)]).is_err());
    }

    #[test]
    fn kron_examples() {
        let m = ExactMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let k = ExactMatrix::identity(2).kron(&m);
        let expected = ExactMatrix::from_ints(&[
            &[1, 2, 0, 0],
            &[3, 4, 0, 0],
            &[0, 0, 1, 2],
            &[0, 0, 3, 4],
        ]);
        assert_eq!(k, expected);
        let x = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let two = ExactMatrix::from_ints(&[&[2]]);
        assert_eq!(x.kron(&two), ExactMatrix::from_ints(&[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        let (r, b) = ExactMatrix::zeros(3, 3).nullspace_rank();
        assert_eq!((r, b.len()), (0, 3));
        let (r, b) = ExactMatrix::identity(4).nullspace_rank();
        assert_eq!((r, b.len()), (4, 0));
        // second row is i times the first
        let m = ExactMatrix::from_rows(vec![vec![gi(1, 0), gi(0, 1)], vec![gi(0, 1), gi(-1, 0)]])
            .unwrap();
        let (r, b) = m.nullspace_rank();
        assert_eq!((r, b.len()), (1, 1));
        assert!(m.apply(&b[0]).unwrap().iter().all(Zero::is_zero));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn accumulator_stops_growing() {
        let mut acc = RankAccumulator::new(2);
        assert!(acc.push_row(vec![gi(1, 0), gi(2, 0)]));
        assert!(!acc.push_row(vec![gi(2, 0), gi(4, 0)]));
        assert!(acc.push_row(vec![gi(0, 0), gi(0, 1)]));
        assert!(acc.is_full());
        assert_eq!(acc.nullity(), 0);
    }
}
