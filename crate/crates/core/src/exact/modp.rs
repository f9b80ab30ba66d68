//! Rank certificates through reduction modulo a prime.
//!
//! For a prime `P ≡ 1 (mod 4)` the map `ℤ[i][1/d] → 𝔽_P` sending `i` to a
//! square root of −1 is a ring homomorphism whenever `P ∤ d`, so the rank of
//! a reduced matrix never exceeds the rank of the original. A reduced matrix
//! of full rank therefore certifies the exact rank; anything else falls back
//! to exact elimination.

use malachite_nz::natural::Natural;
use num_traits::Zero;

use super::{GaussianRational, RankAccumulator, Rational};

const P: u64 = 4_611_686_018_427_387_817;
/// `I_P² ≡ −1 (mod P)`.
const I_P: u64 = 120_863_620_846_201_794;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    add(a, P - b)
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn nat_mod(v: &Natural) -> u64 {
    u64::try_from(&(v % Natural::from(P))).expect("reduced below P")
}

fn rational_mod(r: &Rational) -> Option<u64> {
    let d = nat_mod(r.denominator_ref());
    let n = nat_mod(r.numerator_ref());
    let n = if *r < 0i32 { (P - n) % P } else { n };
    (d != 0).then(|| mul(n, inv(d)))
}

/// Image in `𝔽_P`, or `None` when a denominator vanishes there.
pub fn reduce(z: &GaussianRational) -> Option<u64> {
    Some(add(rational_mod(&z.re)?, mul(I_P, rational_mod(&z.im)?)))
}

/// Rank of a matrix over `𝔽_P`.
fn rank_mod(rows: &[Vec<u64>], cols: usize) -> usize {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for r in rows {
        let mut row = r.clone();
        for (pc, prow) in &basis {
            let f = row[*pc];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(prow).skip(*pc) {
                *x = sub(*x, mul(f, *y));
            }
        }
        if let Some(pc) = row.iter().position(|x| *x != 0) {
            let s = inv(row[pc]);
            for x in row.iter_mut().skip(pc) {
                *x = mul(*x, s);
            }
            basis.push((pc, row));
            if basis.len() == cols {
                break;
            }
        }
    }
    basis.len()
}

/// A lower bound for the rank: the rank modulo `P`, or 0 when some entry
/// has no image.
pub fn rank_lower_bound(rows: &[Vec<GaussianRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let reduced: Option<Vec<Vec<u64>>> = rows.iter().map(|r| r.iter().map(reduce).collect()).collect();
    reduced.map_or(0, |m| rank_mod(&m, cols))
}

/// Exact rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<GaussianRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let full = rows.len().min(cols);
    if rank_lower_bound(rows) == full {
        return full;
    }
    let mut acc = RankAccumulator::new(cols);
    for r in rows {
        if r.iter().any(|x| !x.is_zero()) {
            acc.push_row(r.clone());
            if acc.is_full() {
                break;
            }
        }
    }
    acc.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, ExactMatrix};
    use proptest::prelude::*;

    #[test]
    fn constants() {
        assert_eq!(mul(I_P, I_P), P - 1);
        assert_eq!(reduce(&GaussianRational::i()), Some(I_P));
        assert_eq!(reduce(&q(1, 2)).map(|h| mul(h, 2)), Some(1));
    }

    #[test]
    fn rank_deficient_falls_back() {
        let rows = vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]];
        assert_eq!(rank(&rows), 1);
        assert_eq!(rank(&[]), 0);
    }

    fn small() -> impl Strategy<Value = GaussianRational> {
        (-5i64..=5, 1i64..=4, -2i64..=2).prop_map(|(a, b, c)| q(a, b) + GaussianRational::i() * q(c, 1))
    }

    proptest! {
        #[test]
        fn agrees_with_exact_rank(m in proptest::collection::vec(proptest::collection::vec(small(), 4), 0..6)) {
            let exact = if m.is_empty() { 0 } else { ExactMatrix::from_rows(m.clone()).unwrap().rank() };
            prop_assert_eq!(rank(&m), exact);
        }

        #[test]
        fn reduction_is_a_homomorphism(a in small(), b in small()) {
            let (ra, rb) = (reduce(&a).unwrap(), reduce(&b).unwrap());
            prop_assert_eq!(reduce(&(&a * &b)).unwrap(), mul(ra, rb));
            prop_assert_eq!(reduce(&(&a + &b)).unwrap(), add(ra, rb));
        }
    }
}
