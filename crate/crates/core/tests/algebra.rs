//! Products checked against a word-reduction model of the tensor algebra
//! modulo `e_i e_j + e_j e_i = 2 η_ij`, plus the contraction identities.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clifspin::{random, Blade, Multivector, Signature};

/// Reduces a word of generator indices to a sorted word and a sign, using
/// only adjacent swaps and `e_i e_i = η_i`.
fn reduce(sig: Signature, mut w: Vec<usize>) -> (f64, Vec<usize>) {
    let mut sign = 1.0;
    let mut i = 0;
    while i + 1 < w.len() {
        if w[i] == w[i + 1] {
            sign *= if w[i] < sig.p() { 1.0 } else { -1.0 };
            w.drain(i..i + 2);
            i = i.saturating_sub(1);
        } else if w[i] > w[i + 1] {
            w.swap(i, i + 1);
            sign = -sign;
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    (sign, w)
}

fn word_of(b: Blade) -> Vec<usize> {
    b.indices().collect()
}

fn oracle_product(x: &Multivector, y: &Multivector) -> BTreeMap<Vec<usize>, f64> {
    let sig = x.signature();
    let mut out = BTreeMap::new();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let mut w = word_of(a);
            w.extend(word_of(b));
            let (s, w) = reduce(sig, w);
            *out.entry(w).or_insert(0.0) += s * ca.re * cb.re;
        }
    }
    out
}

fn as_words(x: &Multivector) -> BTreeMap<Vec<usize>, f64> {
    x.terms().map(|(b, c)| (word_of(b), c.re)).collect()
}

fn close(a: &BTreeMap<Vec<usize>, f64>, b: &BTreeMap<Vec<usize>, f64>, tol: f64) -> bool {
    a.keys()
        .chain(b.keys())
        .all(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs() <= tol)
}

fn signatures(max_n: usize) -> Vec<Signature> {
    (1..=max_n)
        .flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap()))
        .collect()
}

#[test]
fn bivector_square_from_word_reduction() {
    for (p, q, want) in [(2, 0, -1.0), (1, 1, 1.0), (0, 2, -1.0), (1, 3, 1.0)] {
        let sig = Signature::new(p, q).unwrap();
        assert_eq!(reduce(sig, vec![0, 1, 0, 1]), (want, vec![]));
        let e12 = Multivector::from_generators(sig, &[0, 1]);
        assert_eq!(&e12 * &e12, Multivector::scalar(sig, want), "Cl({p},{q})");
    }
}

#[test]
fn blade_products_match_word_reduction() {
    for sig in signatures(5) {
        for a in 0..sig.dim() as u32 {
            for b in 0..sig.dim() as u32 {
                let x = Multivector::blade(sig, Blade(a), 1.0);
                let y = Multivector::blade(sig, Blade(b), 1.0);
                assert_eq!(
                    as_words(&(&x * &y)),
                    oracle_product(&x, &y),
                    "{sig} {a:b} {b:b}"
                );
            }
        }
    }
}

#[test]
fn random_products_match_word_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for sig in signatures(6) {
        for _ in 0..5 {
            let x = random::multivector(&mut rng, sig);
            let y = random::multivector(&mut rng, sig);
            assert!(
                close(&as_words(&(&x * &y)), &oracle_product(&x, &y), 1e-12),
                "{sig}"
            );
        }
    }
}

#[test]
fn blade_associativity_is_exact() {
    for sig in signatures(4) {
        let blades: Vec<_> = (0..sig.dim() as u32)
            .map(|m| Multivector::blade(sig, Blade(m), 1.0))
            .collect();
        for a in &blades {
            for b in &blades {
                let ab = a * b;
                for c in &blades {
                    assert_eq!(&ab * c, a * &(b * c), "{sig}");
                }
            }
        }
    }
}

#[test]
fn random_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let sigs = signatures(6);
    for _ in 0..1000 {
        let sig = sigs[rng.random_range(0..sigs.len())];
        let [a, b, c] = [(); 3].map(|_| random::multivector(&mut rng, sig));
        let l = &(&a * &b) * &c;
        let r = &a * &(&b * &c);
        assert!(l.distance(&r) <= 1e-12 * (1.0 + l.norm()), "{sig}");
    }
}

fn homogeneous_parts(x: &Multivector) -> Vec<(usize, Multivector)> {
    (0..=x.signature().n())
        .map(|k| (k, x.grade_part(k).unwrap()))
        .filter(|(_, y)| !y.is_zero())
        .collect()
}

#[test]
fn contraction_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for sig in signatures(5) {
        for _ in 0..4 {
            let [x, y, z] = [(); 3].map(|_| random::multivector(&mut rng, sig));
            let u = random::vector(&mut rng, sig);
            let v = random::vector(&mut rng, sig);
            let tol = 1e-11;

            // vectors: both contractions reduce to the scalar product
            let uv = Multivector::scalar(sig, u.dot(&v));
            assert!(u.left_contraction(&v).unwrap().approx_eq(&uv, tol));
            assert!(u.right_contraction(&v).unwrap().approx_eq(&uv, tol));

            // vX = v⌟X + v∧X and Xv = X⌞v + X∧v
            let lhs = &v * &x;
            let rhs = &v.left_contraction(&x).unwrap() + &v.wedge(&x).unwrap();
            assert!(lhs.approx_eq(&rhs, tol));
            let lhs = &x * &v;
            let rhs = &x.right_contraction(&v).unwrap() + &x.wedge(&v).unwrap();
            assert!(lhs.approx_eq(&rhs, tol));

            // v⌟(X∧Y) = (v⌟X)∧Y + X̂∧(v⌟Y)
            let lhs = v.left_contraction(&x.wedge(&y).unwrap()).unwrap();
            let rhs = &v.left_contraction(&x).unwrap().wedge(&y).unwrap()
                + &x.grade_involution()
                    .wedge(&v.left_contraction(&y).unwrap())
                    .unwrap();
            assert!(lhs.approx_eq(&rhs, tol));

            // X⌟(Y⌟Z) = (X∧Y)⌟Z and (X⌞Y)⌞Z = X⌞(Y∧Z)
            let lhs = x
                .left_contraction(&y.left_contraction(&z).unwrap())
                .unwrap();
            let rhs = x.wedge(&y).unwrap().left_contraction(&z).unwrap();
            assert!(lhs.approx_eq(&rhs, tol));
            let lhs = x
                .right_contraction(&y)
                .unwrap()
                .right_contraction(&z)
                .unwrap();
            let rhs = x.right_contraction(&y.wedge(&z).unwrap()).unwrap();
            assert!(lhs.approx_eq(&rhs, tol));

            // duality with the scalar product
            let lhs = x.left_contraction(&y).unwrap().dot(&z);
            let rhs = y.dot(&x.reversion().wedge(&z).unwrap());
            assert!((lhs - rhs).abs() <= tol);
            let lhs = x.right_contraction(&y).unwrap().dot(&z);
            let rhs = x.dot(&z.wedge(&y.reversion()).unwrap());
            assert!((lhs - rhs).abs() <= tol);

            // reversion swaps the two contractions
            let lhs = x.left_contraction(&y).unwrap().reversion();
            let rhs = y.reversion().right_contraction(&x.reversion()).unwrap();
            assert!(lhs.approx_eq(&rhs, tol));
        }
    }
}

#[test]
fn homogeneous_contraction_grades_and_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for sig in signatures(5) {
        let x = random::multivector(&mut rng, sig);
        let y = random::multivector(&mut rng, sig);
        for (j, xj) in homogeneous_parts(&x) {
            for (k, yk) in homogeneous_parts(&y) {
                let l = xj.left_contraction(&yk).unwrap();
                let r = yk.right_contraction(&xj).unwrap();
                if j > k {
                    assert!(l.is_zero());
                    continue;
                }
                assert!(l.is_homogeneous(k - j) || l.is_zero());
                let s = if (j * (k - j)) % 2 == 0 { 1.0 } else { -1.0 };
                assert!(l.approx_eq(&r.scale(s), 1e-12), "{sig} j={j} k={k}");
                let geo = (&xj * &yk).grade_part(k - j).unwrap();
                assert!(l.approx_eq(&geo, 1e-12));
            }
        }
    }
}
