//! Seeded sampling of multivectors, rotors and spinors for tests and experiments.

use rand::Rng;

use crate::blade::{blade_product, Blade};
use crate::groups::Rotor;
use crate::multivector::Multivector;
use crate::signature::Signature;

/// Dense real multivector with coefficients uniform in `[-1, 1]`.
pub fn multivector<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Multivector {
    let terms: Vec<(Blade, f64)> = (0..sig.dim() as u32)
        .map(|b| (Blade(b), rng.random_range(-1.0..=1.0)))
        .collect();
    Multivector::from_real_terms(sig, terms).expect("finite coefficients")
}

/// Random element restricted to one grade.
pub fn homogeneous<R: Rng + ?Sized>(rng: &mut R, sig: Signature, k: usize) -> Multivector {
    multivector(rng, sig).filter_blades(|b| b.grade() == k)
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Multivector {
    homogeneous(rng, sig, 1)
}

pub fn even<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Multivector {
    multivector(rng, sig).even_part()
}

/// Bivector with components uniform in `[-1, 1]`; components whose blade
/// squares to `+1` (boost generators) are halved.
pub fn bivector<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Multivector {
    homogeneous(rng, sig, 2).map_coeffs(|b, c| {
        if blade_product(sig, b, b).0 > 0.0 {
            c * 0.5
        } else {
            c
        }
    })
}

/// `exp(F)` of a random bivector.
pub fn rotor<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Rotor {
    Rotor::exp(&bivector(rng, sig)).expect("exponential of a bivector is a rotor")
}

/// Regular spinor `rho^(1/2) exp(beta gamma5 / 2) R` with `rho` in `[0.1, 10]`
/// and `beta` in `(-pi, pi]`. Returns the spinor and its factors.
pub fn regular_spinor<R: Rng + ?Sized>(rng: &mut R) -> (Multivector, f64, f64, Rotor) {
    let sig = Signature::spacetime();
    let rho = 10f64.powf(rng.random_range(-1.0..=1.0));
    let beta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let r = rotor(rng, sig);
    let g5 = Multivector::pseudoscalar(sig);
    let phase = &Multivector::scalar(sig, (beta / 2.0).cos()) + &g5.scale((beta / 2.0).sin());
    let psi = (&phase * r.as_mv()).scale(rho.sqrt());
    (psi, rho, beta, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::is_spin_e;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_sampling_is_deterministic() {
        let sig = Signature::spacetime();
        let a = multivector(&mut ChaCha8Rng::seed_from_u64(3), sig);
        let b = multivector(&mut ChaCha8Rng::seed_from_u64(3), sig);
        assert_eq!(a, b);
    }

    #[test]
    fn rotors_are_spin_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(is_spin_e(rotor(&mut rng, Signature::spacetime()).as_mv()));
        }
    }
}
