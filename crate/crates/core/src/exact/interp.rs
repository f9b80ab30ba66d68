use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::GaussianRational;

/// Weights `w_k` with `p'(0) = Σ_k w_k p(k)` for every polynomial `p` of
/// degree at most `degree_bound`, sampled at the nodes `t = 0, 1, …, D`.
///
/// These are the derivatives at zero of the Lagrange basis polynomials.
/// They are computed once per bound and shared.
pub fn derivative_weights(degree_bound: usize) -> Arc<Vec<GaussianRational>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<GaussianRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().expect("weight cache").get(&degree_bound) {
        return w.clone();
    }
    let w = Arc::new(lagrange_derivative_at_zero(degree_bound));
    cache.lock().expect("weight cache").insert(degree_bound, w.clone());
    w
}

fn lagrange_derivative_at_zero(d: usize) -> Vec<GaussianRational> {
    let d = d as i64;
    (0..=d)
        .map(|k| {
            if k == 0 {
                // L_0'(0) = Σ_{j≠0} 1/(0 - j)
                (1..=d).map(|j| GaussianRational::ratio(-1, j)).sum()
            } else {
                // t is a factor of L_k, so L_k'(0) is the rest evaluated at 0
                let mut num = 1i64;
                let mut den = 1i64;
                for j in (0..=d).filter(|&j| j != k) {
                    if j != 0 {
                        num *= -j;
                    }
                    den *= k - j;
                }
                GaussianRational::ratio(num, den)
            }
        })
        .collect()
}

/// `d/dt f(x + t v)` at `t = 0`, exact provided every component of `f` is a
/// polynomial of degree at most `degree_bound` along the line.
pub fn poly_directional_derivative<F>(
    f: F,
    x: &[GaussianRational],
    v: &[GaussianRational],
    degree_bound: usize,
) -> Vec<GaussianRational>
where
    F: Fn(&[GaussianRational]) -> Vec<GaussianRational>,
{
    let weights = derivative_weights(degree_bound);
    let mut out: Vec<GaussianRational> = Vec::new();
    for (k, w) in weights.iter().enumerate() {
        let t = GaussianRational::int(k as i64);
        let pt: Vec<_> = x.iter().zip(v).map(|(xi, vi)| xi + &(&t * vi)).collect();
        let val = f(&pt);
        if out.is_empty() {
            out = vec![GaussianRational::zero(); val.len()];
        }
        for (o, y) in out.iter_mut().zip(&val) {
            *o += w * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn constant_has_zero_derivative() {
        let f = |_: &[GaussianRational]| vec![q(7, 3), q(-1, 1)];
        for bound in 0..5 {
            let d = poly_directional_derivative(f, &[q(1, 2)], &[q(3, 1)], bound);
            assert!(d.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn square_along_axis() {
        let f = |x: &[GaussianRational]| vec![&x[0] * &x[0]];
        let d = poly_directional_derivative(f, &[q(1, 1), q(0, 1)], &[q(1, 1), q(0, 1)], 2);
        assert_eq!(d, vec![q(2, 1)]);
    }

    #[test]
    fn product_rule_on_circle() {
        let f = |x: &[GaussianRational]| vec![&x[0] * &x[1]];
        let d = poly_directional_derivative(f, &[q(3, 5), q(4, 5)], &[q(-4, 5), q(3, 5)], 2);
        assert_eq!(d, vec![q(-7, 25)]);
    }

    #[test]
    fn weights_annihilate_constants() {
        for d in 1..8 {
            let s: GaussianRational = derivative_weights(d).iter().sum();
            assert!(s.is_zero());
        }
    }
}
