//! Seeded sampling of exact test data.

use rand::Rng;

use super::{masks_of_degree, Frame, SVForm};
use crate::clifford::CliffordRep;
use crate::exact::GaussianRational;

/// Small Gaussian rational with numerators in `-4..=4` and denominators in `1..=3`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = GaussianRational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    if rng.gen_bool(0.3) {
        re + GaussianRational::i() * GaussianRational::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
    } else {
        re
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<GaussianRational> {
    (0..len).map(|_| random_scalar(rng)).collect()
}

/// Dense random form: every component is drawn.
pub fn random_form<R: Rng>(rng: &mut R, dim: usize, degree: usize, spin_dim: usize) -> SVForm {
    let mut f = SVForm::zero(dim, degree, spin_dim);
    for m in masks_of_degree(dim, degree) {
        f.insert(m, random_vector(rng, spin_dim));
    }
    f
}

/// A fixed non-orthonormal frame of `k` ambient vectors `eᵢ + ½eᵢ₊₁`.
pub fn skewed_frame(rep: &CliffordRep, k: usize) -> Frame {
    try_skewed_frame(rep, k).expect("skewed frame is nondegenerate")
}

/// [`skewed_frame`], or a domain error when its Gram matrix is degenerate.
pub fn try_skewed_frame(rep: &CliffordRep, k: usize) -> crate::Result<Frame> {
    let m = rep.ambient_dim();
    let vectors = (0..k)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == i {
                        GaussianRational::int(1)
                    } else if j == i + 1 {
                        GaussianRational::ratio(1, 2)
                    } else {
                        GaussianRational::int(0)
                    }
                })
                .collect()
        })
        .collect();
    Frame::new(rep, vectors)
}
