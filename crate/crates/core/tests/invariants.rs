//! Property tests over seeded random data.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ksforms::clifford::{CliffordRep, Sign, Signature};
use ksforms::exact::GaussianRational as GR;
use ksforms::identities;
use ksforms::modelspace::{sample_point, QuadricPoint};
use ksforms::suite::{self, SuiteConfig, SuiteName};
use ksforms::svforms::random::{random_form, random_scalar, random_vector, skewed_frame};
use ksforms::svforms::ModelCurvature;

fn scalar() -> impl Strategy<Value = GR> {
    (-9i64..=9, 1i64..=7, -9i64..=9, 1i64..=7).prop_map(|(a, b, c, d)| GR::ratio(a, b) + GR::i() * GR::ratio(c, d))
}

/// Signatures with `2 ≤ n ≤ 4`.
fn signature() -> impl Strategy<Value = Signature> {
    (2usize..=4, 0usize..=4, prop_oneof![Just(1i8), Just(-1i8)]).prop_map(|(n, nm, eps)| Signature::new(n - nm.min(n), nm.min(n), eps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.to_string().parse::<GR>().unwrap(), a);
    }

    #[test]
    fn sampled_points_lie_on_the_quadric(sig in signature(), seed in any::<u64>()) {
        let x = sample_point(&sig, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(QuadricPoint::new(&sig, x.coords().to_vec()).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cone_spinor_maps_invert(sig in signature(), seed in any::<u64>()) {
        let rep = CliffordRep::build(sig);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_point(&sig, &mut rng);
        let psi = random_vector(&mut rng, rep.spinor_dim());
        for s in Sign::both() {
            let there = rep.f_map(s.flip(), &psi, x.coords()).unwrap();
            let back = rep.f_map(s, &there, x.coords()).unwrap();
            let twice: Vec<GR> = psi.iter().map(|p| p * &GR::int(2)).collect();
            prop_assert_eq!(back, twice);
        }
    }

    #[test]
    fn clifford_relation(sig in signature(), seed in any::<u64>()) {
        let rep = CliffordRep::build(sig);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sig.ambient_dim();
        let (v, w) = (random_vector(&mut rng, m), random_vector(&mut rng, m));
        let gv = rep.gamma_of(&v).unwrap();
        let gw = rep.gamma_of(&w).unwrap();
        let anti = gv.mat_mul(&gw).unwrap().add(&gw.mat_mul(&gv).unwrap()).unwrap();
        let id = ksforms::exact::ExactMatrix::identity(rep.spinor_dim());
        prop_assert_eq!(anti, id.scale(&(GR::int(-2) * sig.inner(&v, &w))));
    }

    #[test]
    fn form_identities_vanish(n in 2usize..=4, p in 0usize..=4, seed in any::<u64>()) {
        let p = p.min(n);
        let rep = CliffordRep::build(Signature::new(n, 0, 1).unwrap());
        let f = skewed_frame(&rep, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_form(&mut rng, n, p, f.spin_dim());
        let (x, y) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
        for (key, res) in identities::clifford_identities(&f, &x, &y, &phi) {
            prop_assert!(res.is_zero(), "{} at n={} p={}", key, n, p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The operator identities hold for any Killing number, not only the
    /// critical ones.
    #[test]
    fn curvature_identities_for_any_killing_number(p in 1usize..=3, eps in prop_oneof![Just(1i8), Just(-1i8)], seed in any::<u64>()) {
        let rep = CliffordRep::build(Signature::new(3, 0, eps).unwrap());
        let f = skewed_frame(&rep, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let curv = ModelCurvature::new(random_scalar(&mut rng), eps);
        let phi = random_form(&mut rng, 3, p, f.spin_dim());
        for (key, res) in identities::curvature_identities(&f, &curv, &phi).unwrap() {
            prop_assert!(res.is_zero(), "{} at p={}", key, p);
        }
    }

    #[test]
    fn reports_are_reproducible(seed in any::<u64>()) {
        let cfg = SuiteConfig { n_plus: 2, seed, suites: vec![SuiteName::Clifford, SuiteName::Tractor], degrees: vec![1], ..SuiteConfig::default() };
        let a = suite::run(&cfg).unwrap();
        prop_assert!(a.all_pass());
        prop_assert_eq!(a.to_json(), suite::run(&cfg).unwrap().to_json());
    }
}
