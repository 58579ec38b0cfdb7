use num_complex::Complex64;
use proptest::prelude::*;

use clifspin::groups::{is_spin_e, Rotor, SpinorialFrame};
use clifspin::json::{from_json, to_json};
use clifspin::spinor::{bilinear_covariants, canonical_decompose, DHSRep};
use clifspin::text::{format_multivector, parse_multivector, Style};
use clifspin::{Multivector, Signature};

fn sig_strategy() -> impl Strategy<Value = Signature> {
    (1usize..=5).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn mv(sig: Signature) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-2.0f64..2.0, sig.dim()).prop_map(move |c| {
        let c: Vec<Complex64> = c.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        Multivector::from_dense(sig, &c, true).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    sig_strategy().prop_flat_map(|s| (mv(s), mv(s), mv(s)))
}

fn sta_vec(range: f64, len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-range..range, len)
}

fn bivector(c: &[f64]) -> Multivector {
    let sig = Signature::spacetime();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    pairs
        .iter()
        .zip(c)
        .fold(Multivector::zero(sig), |acc, (&(i, j), &x)| {
            &acc + &Multivector::from_generators(sig, &[i, j]).scale(x)
        })
}

fn even(c: &[f64]) -> Multivector {
    let sig = Signature::spacetime();
    let ps = Multivector::pseudoscalar(sig);
    &(&Multivector::scalar(sig, c[0]) + &bivector(&c[1..7])) + &ps.scale(c[7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn involutions_respect_products((x, y, _) in triple()) {
        let xy = &x * &y;
        prop_assert!(xy.reversion().approx_eq(&(&y.reversion() * &x.reversion()), 1e-10));
        prop_assert!(xy.grade_involution().approx_eq(&(&x.grade_involution() * &y.grade_involution()), 1e-10));
        prop_assert!(xy.conjugation().approx_eq(&(&y.conjugation() * &x.conjugation()), 1e-10));
        prop_assert_eq!(x.reversion().reversion(), x.clone());
    }

    #[test]
    fn distributive_and_associative((x, y, z) in triple()) {
        let l = &x * &(&y + &z);
        let r = &(&x * &y) + &(&x * &z);
        prop_assert!(l.approx_eq(&r, 1e-10));
        let l = &(&x * &y) * &z;
        let r = &x * &(&y * &z);
        prop_assert!(l.approx_eq(&r, 1e-9));
        let l = x.wedge(&y).unwrap().wedge(&z).unwrap();
        let r = x.wedge(&y.wedge(&z).unwrap()).unwrap();
        prop_assert!(l.approx_eq(&r, 1e-9));
    }

    #[test]
    fn grade_parts_sum_to_whole((x, _, _) in triple()) {
        let n = x.signature().n();
        let sum = (0..=n).fold(Multivector::zero(x.signature()), |acc, k| &acc + &x.grade_part(k).unwrap());
        prop_assert!(sum.approx_eq(&x, 1e-14));
    }

    #[test]
    fn scalar_product_is_symmetric((x, y, _) in triple()) {
        prop_assert!((x.dot(&y) - y.dot(&x)).abs() < 1e-10);
        prop_assert!((x.dot(&y) - (&x.reversion() * &y).scalar_part()).abs() < 1e-10);
    }

    #[test]
    fn rotors_preserve_the_metric(b in sta_vec(1.5, 6), v in sta_vec(3.0, 4), w in sta_vec(3.0, 4)) {
        let sig = Signature::spacetime();
        let r = Rotor::exp(&bivector(&b)).unwrap();
        prop_assert!(is_spin_e(r.as_mv()));
        let v = Multivector::vector(sig, &v).unwrap();
        let w = Multivector::vector(sig, &w).unwrap();
        let (rv, rw) = (r.apply(&v), r.apply(&w));
        prop_assert!(rv.is_nearly_homogeneous(1, 1e-9));
        let scale = 1.0 + v.norm() * w.norm() * r.as_mv().norm().powi(4);
        prop_assert!((rv.dot(&rw) - v.dot(&w)).abs() < 1e-10 * scale);
        prop_assert!(r.inverse().compose(&r).as_mv().approx_eq(&Multivector::one(sig), 1e-9));
    }

    #[test]
    fn inverse_of_invertible_elements(c in sta_vec(2.0, 8)) {
        let x = even(&c);
        let n = (&x * &x.reversion()).norm();
        prop_assume!(n > 1e-3);
        let inv = x.inverse().unwrap();
        prop_assert!((&x * &inv).approx_eq(&Multivector::one(x.signature()), 1e-8));
    }

    #[test]
    fn covariants_are_frame_invariant(c in sta_vec(2.0, 8), a in sta_vec(1.0, 6), b in sta_vec(1.0, 6)) {
        let psi = even(&c);
        let fa = SpinorialFrame::new(Rotor::exp(&bivector(&a)).unwrap());
        let fb = SpinorialFrame::new(Rotor::exp(&bivector(&b)).unwrap());
        let d = DHSRep::new(fa.clone(), psi).unwrap();
        let moved = d.change_frame(&fb).unwrap();
        let c0 = bilinear_covariants(&d);
        let scale = 1.0 + c0.j.norm() + c0.s.norm();
        prop_assert!(c0.max_difference(&bilinear_covariants(&moved)) < 1e-9 * scale);
        let back = moved.change_frame(&fa).unwrap();
        prop_assert!(back.psi().approx_eq(d.psi(), 1e-9 * (1.0 + d.psi().norm())));
    }

    #[test]
    fn canonical_factors_reconstruct(c in sta_vec(2.0, 8)) {
        let d = DHSRep::fiducial(even(&c)).unwrap();
        let cov = bilinear_covariants(&d);
        prop_assume!(cov.density_squared() > 1e-6);
        let f = canonical_decompose(&d).unwrap();
        prop_assert!(f.beta > -std::f64::consts::PI && f.beta <= std::f64::consts::PI);
        prop_assert!(f.reconstruct().approx_eq(d.psi(), 1e-8 * (1.0 + d.psi().norm())));
    }

    #[test]
    fn text_and_json_round_trip((x, _, _) in triple(), ascii in any::<bool>()) {
        let style = Style { ascii, gamma_names: false };
        let back = parse_multivector(&format_multivector(&x, style), x.signature()).unwrap();
        prop_assert!(back.approx_eq(&x, 0.0));
        prop_assert_eq!(from_json(&to_json(&x)).unwrap(), x);
    }
}
