//! Matrix-algebra classification of `Cl(p,q)`, Radon–Hurwitz numbers,
//! primitive idempotents and their minimal left ideals.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blade::{blade_product, Blade};
use crate::error::{CliffordError, Result};
use crate::linalg;
use crate::multivector::Multivector;
use crate::signature::Signature;

/// Division rings appearing in the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisionRing {
    R,
    C,
    H,
}

impl DivisionRing {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionRing::R => 1,
            DivisionRing::C => 2,
            DivisionRing::H => 4,
        }
    }
}

impl fmt::Display for DivisionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DivisionRing::R => "R",
            DivisionRing::C => "C",
            DivisionRing::H => "H",
        };
        f.write_str(s)
    }
}

/// `K(m)` or `K(m) ⊕ K(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixAlgebraDescriptor {
    pub ring: DivisionRing,
    pub m: usize,
    /// True for the semi-simple case `K(m) ⊕ K(m)`.
    pub split: bool,
}

impl MatrixAlgebraDescriptor {
    /// Real dimension `dim_R(K) m^2`, doubled for a direct sum.
    pub fn real_dim(&self) -> usize {
        let one = self.ring.real_dim() * self.m * self.m;
        if self.split {
            2 * one
        } else {
            one
        }
    }

    /// ASCII rendering, with `+` for the direct sum.
    pub fn to_ascii(&self) -> String {
        if self.split {
            format!("{}({}) + {}({})", self.ring, self.m, self.ring, self.m)
        } else {
            format!("{}({})", self.ring, self.m)
        }
    }
}

impl fmt::Display for MatrixAlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.split {
            write!(f, "{}({}) ⊕ {}({})", self.ring, self.m, self.ring, self.m)
        } else {
            write!(f, "{}({})", self.ring, self.m)
        }
    }
}

const RADON_HURWITZ_BASE: [i64; 8] = [0, 1, 2, 2, 3, 3, 3, 3];

/// Radon–Hurwitz number `r_i`, extended to all integers by `r_{i+8} = r_i + 4`.
pub fn radon_hurwitz(i: i64) -> i64 {
    let period = i.div_euclid(8);
    RADON_HURWITZ_BASE[i.rem_euclid(8) as usize] + 4 * period
}

/// Number `k = q - r_{q-p}` of commuting factors `(1 + e_A)/2` in a primitive idempotent.
pub fn idempotent_factor_count(p: usize, q: usize) -> i64 {
    q as i64 - radon_hurwitz(q as i64 - p as i64)
}

pub fn is_simple(p: usize, q: usize) -> bool {
    (p as i64 - q as i64).rem_euclid(4) != 1
}

/// Real dimension of the centre: 1 for even `n`, 2 for odd `n`.
pub fn center_dim(p: usize, q: usize) -> usize {
    if (p + q).is_multiple_of(2) {
        1
    } else {
        2
    }
}

/// Identifies `Cl(p,q)` as a matrix algebra from `(p - q) mod 8`; `m` follows
/// from the total dimension `2^(p+q)`.
pub fn classify(p: usize, q: usize) -> Result<MatrixAlgebraDescriptor> {
    let sig = Signature::new(p, q)?;
    let (ring, split) = match (p as i64 - q as i64).rem_euclid(8) {
        0 | 2 => (DivisionRing::R, false),
        1 => (DivisionRing::R, true),
        3 | 7 => (DivisionRing::C, false),
        4 | 6 => (DivisionRing::H, false),
        5 => (DivisionRing::H, true),
        _ => unreachable!(),
    };
    let mut per_block = sig.dim() / ring.real_dim();
    if split {
        per_block /= 2;
    }
    let m = (per_block as f64).sqrt().round() as usize;
    debug_assert_eq!(m * m, per_block);
    Ok(MatrixAlgebraDescriptor { ring, m, split })
}

/// A primitive idempotent together with its minimal left ideal.
#[derive(Debug, Clone)]
pub struct IdealDescriptor {
    pub idempotent: Multivector,
    /// Commuting blades `e_A` with `e_A^2 = 1`; the idempotent is the product of `(1 + e_A)/2`.
    pub factors: Vec<Blade>,
    /// Real basis of `Cl(p,q) e`.
    pub ideal_basis: Vec<Multivector>,
    pub k_factors: usize,
    pub division_ring: DivisionRing,
    /// Set when the algebra is a direct sum and the idempotent lives in one summand.
    pub split: bool,
}

/// `(1 + e_A)/2` for each factor, multiplied in order.
pub fn idempotent_from_factors(sig: Signature, factors: &[Blade]) -> Multivector {
    let one = Multivector::one(sig);
    factors.iter().fold(one.clone(), |acc, &b| {
        let f = (&one + &Multivector::blade(sig, b, 1.0)).scale(0.5);
        &acc * &f
    })
}

/// Idempotents obtained from every sign choice in `prod (1 ± e_A)/2`.
pub fn spectral_decomposition(sig: Signature, factors: &[Blade]) -> Vec<Multivector> {
    let one = Multivector::one(sig);
    let k = factors.len();
    (0..1usize << k)
        .map(|signs| {
            factors
                .iter()
                .enumerate()
                .fold(one.clone(), |acc, (i, &b)| {
                    let s = if signs & (1 << i) != 0 { -1.0 } else { 1.0 };
                    let f = (&one + &Multivector::blade(sig, b, s)).scale(0.5);
                    &acc * &f
                })
        })
        .collect()
}

fn check_idempotent(e: &Multivector) -> Result<()> {
    let resid = (e * e).distance(e);
    if resid > 1e-12 * (1.0 + e.max_abs()) {
        return Err(CliffordError::NotIdempotent(resid));
    }
    Ok(())
}

fn real_rows(elems: &[Multivector]) -> Vec<Vec<f64>> {
    elems
        .iter()
        .map(|x| x.to_dense().iter().map(|c| c.re).collect())
        .collect()
}

/// Rows `[Re, Im]` for each element, and for `i` times each element.
fn complex_as_real_rows(elems: &[Multivector]) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(2 * elems.len());
    for x in elems {
        let d = x.to_dense();
        rows.push(
            d.iter()
                .map(|c| c.re)
                .chain(d.iter().map(|c| c.im))
                .collect(),
        );
        rows.push(
            d.iter()
                .map(|c| -c.im)
                .chain(d.iter().map(|c| c.re))
                .collect(),
        );
    }
    rows
}

/// Rank of real rows, exactly when every entry is a dyadic rational.
fn rank_of(rows: &[Vec<f64>]) -> usize {
    for shift in 0..=24 {
        let ints: Option<Vec<Vec<i64>>> = rows
            .iter()
            .map(|r| linalg::dyadic_to_int(r, shift))
            .collect();
        if let Some(ints) = ints {
            return linalg::rank_exact(&ints);
        }
    }
    linalg::rank_f64(rows)
}

fn left_images(e: &Multivector) -> Vec<Multivector> {
    let sig = e.signature();
    (0..sig.dim())
        .map(|a| &Multivector::blade(sig, Blade(a as u32), 1.0) * e)
        .collect()
}

/// Real basis of the left ideal `Cl(p,q) e`, chosen among the images `e_A e`.
pub fn ideal_basis(e: &Multivector) -> Result<Vec<Multivector>> {
    check_idempotent(e)?;
    let images = left_images(e);
    if e.is_real() {
        let picked = linalg::independent_rows(&real_rows(&images));
        Ok(picked.into_iter().map(|i| images[i].clone()).collect())
    } else {
        let rows = complex_as_real_rows(&images);
        let picked = linalg::independent_rows(&rows);
        let i = Multivector::imaginary_unit(e.signature());
        Ok(picked
            .into_iter()
            .map(|r| {
                let x = &images[r / 2];
                if r % 2 == 0 {
                    x.clone()
                } else {
                    &i * x
                }
            })
            .collect())
    }
}

/// Real dimension of `Cl(p,q) e` (of `C ⊗ Cl(p,q) e` for complex `e`).
pub fn ideal_real_dim(e: &Multivector) -> Result<usize> {
    check_idempotent(e)?;
    let images = left_images(e);
    if e.is_real() {
        Ok(rank_of(&real_rows(&images)))
    } else {
        Ok(rank_of(&complex_as_real_rows(&images)))
    }
}

/// Complex dimension of the left ideal generated by `e` in the complexified algebra.
pub fn ideal_complex_dim(e: &Multivector) -> Result<usize> {
    let e = e.clone().into_complex();
    Ok(ideal_real_dim(&e)? / 2)
}

/// Dimension of `Cl(p,q) e` over the division ring of the algebra's matrix form.
pub fn ideal_dim_over_k(e: &Multivector) -> Result<usize> {
    let sig = e.signature();
    let desc = classify(sig.p(), sig.q())?;
    Ok(ideal_real_dim(e)? / desc.ring.real_dim())
}

/// Primitivity: the ideal has `K`-dimension `m` from the classification.
pub fn is_primitive(e: &Multivector) -> Result<bool> {
    let sig = e.signature();
    let desc = classify(sig.p(), sig.q())?;
    Ok(!e.is_zero() && ideal_dim_over_k(e)? == desc.m)
}

/// Identifies the real algebra `e Cl(p,q) e` by counting mutually
/// anticommuting units that square to `-e`.
pub fn division_ring_of(e: &Multivector) -> Result<DivisionRing> {
    check_idempotent(e)?;
    if e.is_zero() {
        return Err(CliffordError::NotPrimitive("zero idempotent".into()));
    }
    let sig = e.signature();
    let sandwiches: Vec<Multivector> = (0..sig.dim())
        .map(|a| &(e * &Multivector::blade(sig, Blade(a as u32), 1.0)) * e)
        .collect();
    let picked = linalg::independent_rows(&real_rows(&sandwiches));
    let basis: Vec<Multivector> = picked.iter().map(|&i| sandwiches[i].clone()).collect();
    let e_scalar = e.scalar_part();
    // trace-like functional: <x>_0 / <e>_0 is the coefficient of e in x
    let pure: Vec<Multivector> = basis
        .iter()
        .map(|x| x - &e.scale(x.scalar_part() / e_scalar))
        .collect();
    let rows = real_rows(&pure);
    let pure: Vec<Multivector> = linalg::independent_rows(&rows)
        .into_iter()
        .map(|i| pure[i].clone())
        .collect();
    // Gram-Schmidt under <x, y> = -<xy + yx>_0 / (2 <e>_0)
    let form =
        |x: &Multivector, y: &Multivector| -((x * y) + (y * x)).scalar_part() / (2.0 * e_scalar);
    let mut units: Vec<Multivector> = Vec::new();
    for x in pure {
        let mut v = x;
        for u in &units {
            v = &v - &u.scale(form(&v, u));
        }
        let nsq = form(&v, &v);
        if nsq <= 1e-12 {
            return Err(CliffordError::NotPrimitive(
                "e Cl e contains an element squaring to +e; not a division ring".into(),
            ));
        }
        units.push(v.scale(1.0 / nsq.sqrt()));
    }
    let neg_e = -e;
    for (i, u) in units.iter().enumerate() {
        if (u * u).distance(&neg_e) > 1e-9 {
            return Err(CliffordError::NotPrimitive(
                "unit does not square to -e".into(),
            ));
        }
        for w in &units[i + 1..] {
            if ((u * w) + (w * u)).max_abs() > 1e-9 {
                return Err(CliffordError::NotPrimitive(
                    "units fail to anticommute".into(),
                ));
            }
        }
    }
    match units.len() {
        0 => Ok(DivisionRing::R),
        1 => Ok(DivisionRing::C),
        3 => Ok(DivisionRing::H),
        d => Err(CliffordError::NotPrimitive(format!(
            "e Cl e has real dimension {}",
            d + 1
        ))),
    }
}

/// Blades `e_A != 1` with `e_A^2 = +1`, ordered by grade then mask; a nonzero
/// seed shuffles the order deterministically.
fn candidate_blades(sig: Signature, seed: u64) -> Vec<Blade> {
    let mut cands: Vec<Blade> = (1..sig.dim() as u32)
        .map(Blade)
        .filter(|&b| blade_product(sig, b, b).0 > 0.0)
        .collect();
    cands.sort_by_key(|b| (b.grade(), b.mask()));
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        cands.shuffle(&mut rng);
    }
    cands
}

fn blades_commute(sig: Signature, a: Blade, b: Blade) -> bool {
    blade_product(sig, a, b).0 == blade_product(sig, b, a).0
}

/// Searches for a primitive idempotent `prod (1 + e_A)/2` by adding commuting
/// canonical blades that square to one until the left ideal has dimension `m`
/// over `K`. Each accepted factor must halve the ideal; dead ends backtrack.
pub fn find_primitive_idempotent(p: usize, q: usize, seed: u64) -> Result<IdealDescriptor> {
    let sig = Signature::new(p, q)?;
    let desc = classify(p, q)?;
    let target = desc.m * desc.ring.real_dim();
    let cands = candidate_blades(sig, seed);

    struct Search<'a> {
        sig: Signature,
        cands: &'a [Blade],
        target: usize,
    }

    impl Search<'_> {
        fn go(
            &self,
            start: usize,
            chosen: &mut Vec<Blade>,
            e: &Multivector,
            dim: usize,
        ) -> Option<Multivector> {
            if dim == self.target {
                return Some(e.clone());
            }
            for (idx, &b) in self.cands.iter().enumerate().skip(start) {
                if !chosen.iter().all(|&c| blades_commute(self.sig, b, c)) {
                    continue;
                }
                let one = Multivector::one(self.sig);
                let factor = (&one + &Multivector::blade(self.sig, b, 1.0)).scale(0.5);
                let next = e * &factor;
                if next.is_zero() {
                    continue;
                }
                let next_dim = ideal_real_dim(&next).ok()?;
                if 2 * next_dim != dim {
                    continue;
                }
                chosen.push(b);
                if let Some(found) = self.go(idx + 1, chosen, &next, next_dim) {
                    return Some(found);
                }
                chosen.pop();
            }
            None
        }
    }

    let search = Search {
        sig,
        cands: &cands,
        target,
    };
    let mut chosen = Vec::new();
    let e = search
        .go(0, &mut chosen, &Multivector::one(sig), sig.dim())
        .ok_or(CliffordError::SearchExhausted { p, q })?;
    let ideal_basis = ideal_basis(&e)?;
    let division_ring = division_ring_of(&e)?;
    Ok(IdealDescriptor {
        k_factors: chosen.len(),
        factors: chosen,
        idempotent: e,
        ideal_basis,
        division_ring,
        split: desc.split,
    })
}
