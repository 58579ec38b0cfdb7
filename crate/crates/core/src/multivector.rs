//! Sparse multivectors over `Cl(p,q)` with real or complex coefficients.
//!
//! A [`Multivector`] is a map from canonical [`Blade`]s to coefficients. Zero
//! coefficients are never stored. The realness flag marks elements of the real
//! algebra; their imaginary parts are identically zero, and every operation on
//! two real operands stays real. Complex multivectors model the
//! complexification `C ⊗ Cl(p,q)`.
//!
//! The scalar product follows the Gram-determinant convention
//! `(e_A · e_B) = det[e_ai · e_bj]`, so that `X · Y = <~X Y>_0`. This differs
//! by a sign on some grades from the `<X Y>_0` convention found elsewhere.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::blade::{blade_product, Blade};
use crate::error::{CliffordError, Result};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Complex64>,
    real: bool,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
            real: true,
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        Self::blade(sig, Blade::SCALAR, value)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    pub fn complex_scalar(sig: Signature, value: Complex64) -> Self {
        let mut mv = Self::zero(sig);
        mv.real = false;
        mv.insert(Blade::SCALAR, value);
        mv
    }

    /// Imaginary unit of the complexification.
    pub fn imaginary_unit(sig: Signature) -> Self {
        Self::complex_scalar(sig, Complex64::i())
    }

    /// Generator `e_{i+1}` (0-based index `i`).
    pub fn generator(sig: Signature, i: usize) -> Self {
        assert!(i < sig.n(), "generator index {i} out of range for {sig}");
        Self::blade(sig, Blade::generator(i), 1.0)
    }

    /// Product of the given 0-based generators in the given order.
    pub fn from_generators(sig: Signature, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::one(sig), |acc, &i| &acc * &Self::generator(sig, i))
    }

    /// Unit pseudoscalar `e1 e2 ... en`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Self::blade(sig, Blade(sig.full_mask()), 1.0)
    }

    pub fn blade(sig: Signature, blade: Blade, coeff: f64) -> Self {
        assert!(blade.is_valid_for(sig), "blade {blade} invalid for {sig}");
        let mut mv = Self::zero(sig);
        mv.insert(blade, Complex64::new(coeff, 0.0));
        mv
    }

    /// Vector `sum_i c_i e_{i+1}`.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() != sig.n() {
            return Err(CliffordError::InvalidArgument(format!(
                "expected {} vector components, got {}",
                sig.n(),
                components.len()
            )));
        }
        Self::from_real_terms(
            sig,
            components
                .iter()
                .enumerate()
                .map(|(i, &c)| (Blade::generator(i), c)),
        )
    }

    /// Real multivector from `(blade, coefficient)` pairs; repeated blades accumulate.
    pub fn from_real_terms<I>(sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, f64)>,
    {
        let mut mv = Self::zero(sig);
        for (blade, c) in terms {
            if !blade.is_valid_for(sig) {
                return Err(CliffordError::BladeOutOfRange {
                    mask: blade.mask(),
                    n: sig.n(),
                });
            }
            if !c.is_finite() {
                return Err(CliffordError::NonFinite);
            }
            mv.accumulate(blade, Complex64::new(c, 0.0));
        }
        Ok(mv)
    }

    /// Multivector from complex terms. With `real = true`, any nonzero
    /// imaginary part is rejected.
    pub fn from_terms<I>(sig: Signature, terms: I, real: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, Complex64)>,
    {
        let mut mv = Self::zero(sig);
        mv.real = real;
        for (blade, c) in terms {
            if !blade.is_valid_for(sig) {
                return Err(CliffordError::BladeOutOfRange {
                    mask: blade.mask(),
                    n: sig.n(),
                });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(CliffordError::NonFinite);
            }
            if real && c.im != 0.0 {
                return Err(CliffordError::ImaginaryInRealAlgebra);
            }
            mv.accumulate(blade, c);
        }
        Ok(mv)
    }

    /// Dense coefficient vector indexed by blade mask.
    pub fn from_dense(sig: Signature, coeffs: &[Complex64], real: bool) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(CliffordError::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                sig.dim(),
                coeffs.len()
            )));
        }
        Self::from_terms(
            sig,
            coeffs
                .iter()
                .enumerate()
                .map(|(mask, &c)| (Blade(mask as u32), c)),
            real,
        )
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.sig.dim()];
        for (b, c) in &self.terms {
            out[b.mask() as usize] = *c;
        }
        out
    }

    fn insert(&mut self, blade: Blade, c: Complex64) {
        if c != ZERO {
            self.terms.insert(blade, c);
        } else {
            self.terms.remove(&blade);
        }
    }

    fn accumulate(&mut self, blade: Blade, c: Complex64) {
        if c == ZERO {
            return;
        }
        let entry = self.terms.entry(blade).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.remove(&blade);
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, Complex64)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> Complex64 {
        self.terms.get(&blade).copied().unwrap_or(ZERO)
    }

    /// Real part of the coefficient of `blade`.
    pub fn get(&self, blade: Blade) -> f64 {
        self.coeff(blade).re
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(Blade::SCALAR)
    }

    pub fn complex_scalar_part(&self) -> Complex64 {
        self.coeff(Blade::SCALAR)
    }

    /// Real part as a real multivector.
    pub fn re(&self) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.insert(*b, Complex64::new(c.re, 0.0));
        }
        out
    }

    /// Imaginary part as a real multivector.
    pub fn im(&self) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.insert(*b, Complex64::new(c.im, 0.0));
        }
        out
    }

    /// Marks the value as complex without changing coefficients.
    pub fn into_complex(mut self) -> Self {
        self.real = false;
        self
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude of `self - other`.
    pub fn distance(&self, other: &Multivector) -> f64 {
        (self - other).max_abs()
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.sig == other.sig && self.distance(other) <= tol
    }

    /// Drops coefficients with magnitude at most `tol`.
    pub fn pruned(&self, tol: f64) -> Multivector {
        let mut out = Self::zero(self.sig);
        out.real = self.real;
        for (b, c) in &self.terms {
            if c.norm() > tol {
                out.insert(*b, *c);
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(Blade, Complex64) -> Complex64) -> Multivector {
        let mut out = Self::zero(self.sig);
        out.real = self.real;
        for (b, c) in &self.terms {
            out.insert(*b, f(*b, *c));
        }
        out
    }

    pub fn scale(&self, s: f64) -> Multivector {
        self.map_coeffs(|_, c| c * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Multivector {
        let mut out = self.map_coeffs(|_, c| c * s);
        out.real = self.real && s.im == 0.0;
        out
    }

    fn check_sig(&self, other: &Multivector) -> Result<()> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &Multivector,
        rule: impl Fn(Blade, Blade) -> Option<(f64, Blade)>,
    ) -> Multivector {
        let mut out = Self::zero(self.sig);
        out.real = self.real && other.real;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, blade)) = rule(*a, *b) {
                    out.accumulate(blade, ca * cb * sign);
                }
            }
        }
        out
    }

    // ---- grades -------------------------------------------------------

    pub fn grade_part(&self, k: usize) -> Result<Multivector> {
        if k > self.sig.n() {
            return Err(CliffordError::GradeOutOfRange { k, n: self.sig.n() });
        }
        Ok(self.filter_blades(|b| b.grade() == k))
    }

    pub fn filter_blades(&self, keep: impl Fn(Blade) -> bool) -> Multivector {
        let mut out = Self::zero(self.sig);
        out.real = self.real;
        for (b, c) in &self.terms {
            if keep(*b) {
                out.insert(*b, *c);
            }
        }
        out
    }

    pub fn even_part(&self) -> Multivector {
        self.filter_blades(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Multivector {
        self.filter_blades(|b| b.grade() % 2 == 1)
    }

    /// Sorted list of grades with a nonzero component.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.grade() % 2 == 0)
    }

    /// True when every component outside grade `k` is at most `tol`.
    pub fn is_nearly_homogeneous(&self, k: usize, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(b, c)| b.grade() == k || c.norm() <= tol)
    }

    // ---- products -----------------------------------------------------

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        let sig = self.sig;
        Ok(self.combine(other, |a, b| Some(blade_product(sig, a, b))))
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        let sig = self.sig;
        Ok(self.combine(other, |a, b| {
            (a.mask() & b.mask() == 0).then(|| blade_product(sig, a, b))
        }))
    }

    /// Left contraction: on blades, `<A B>_{k-j}` when grade A = j <= k = grade B.
    pub fn left_contraction(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        let sig = self.sig;
        Ok(self.combine(other, |a, b| {
            (a.mask() & !b.mask() == 0).then(|| blade_product(sig, a, b))
        }))
    }

    /// Right contraction: on blades, `<A B>_{j-k}` when grade A = j >= k = grade B.
    pub fn right_contraction(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        let sig = self.sig;
        Ok(self.combine(other, |a, b| {
            (b.mask() & !a.mask() == 0).then(|| blade_product(sig, a, b))
        }))
    }

    /// Grade-wise Gram-determinant pairing; equals `<~X Y>_0`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<Complex64> {
        self.check_sig(other)?;
        let mut acc = ZERO;
        for (b, ca) in &self.terms {
            if let Some(cb) = other.terms.get(b) {
                acc += ca * cb * b.metric_square(self.sig);
            }
        }
        Ok(acc)
    }

    /// Real part of [`Self::scalar_product`].
    pub fn dot(&self, other: &Multivector) -> f64 {
        self.scalar_product(other).expect("signature mismatch").re
    }

    /// Commutator product `(XY - YX) / 2`.
    pub fn commutator(&self, other: &Multivector) -> Multivector {
        (&(self * other) - &(other * self)).scale(0.5)
    }

    // ---- involutions --------------------------------------------------

    pub fn grade_involution(&self) -> Multivector {
        self.map_coeffs(|b, c| c * b.involution_sign())
    }

    pub fn reversion(&self) -> Multivector {
        self.map_coeffs(|b, c| c * b.reversion_sign())
    }

    /// Clifford conjugation: reversion composed with grade involution.
    pub fn conjugation(&self) -> Multivector {
        self.map_coeffs(|b, c| c * b.reversion_sign() * b.involution_sign())
    }

    /// Complex conjugation of the coefficients.
    pub fn complex_conjugate(&self) -> Multivector {
        self.map_coeffs(|_, c| c.conj())
    }

    /// Hodge dual in `Cl(1,3)`: `*C = ~C gamma5` with `gamma5 = e1 e2 e3 e4`.
    pub fn hodge_dual(&self) -> Result<Multivector> {
        if self.sig != Signature::spacetime() {
            return Err(CliffordError::WrongSignature {
                expected: Signature::spacetime(),
                found: self.sig,
            });
        }
        self.reversion()
            .geometric_product(&Self::pseudoscalar(self.sig))
    }

    /// `N(x) = <conj(x) x>_0`.
    pub fn norm_n(&self) -> Complex64 {
        (&self.conjugation() * self).complex_scalar_part()
    }

    // ---- exponential and inverse -------------------------------------

    /// Exponential of a pure bivector.
    pub fn exp_bivector(&self) -> Result<Multivector> {
        if !self.is_homogeneous(2) {
            return Err(CliffordError::NotBivector);
        }
        Ok(self.exp_series())
    }

    /// Power-series exponential by scaling and squaring. The series is cut
    /// when a term falls below `1e-16` times the partial sum.
    pub fn exp_series(&self) -> Multivector {
        let sig = self.sig;
        let size: f64 = self.terms.values().map(|c| c.norm()).sum();
        let mut squarings = 0u32;
        let mut scaled_size = size;
        while scaled_size > 0.5 {
            scaled_size *= 0.5;
            squarings += 1;
        }
        let x = self.scale(0.5f64.powi(squarings as i32));
        let mut sum = Self::one(sig);
        sum.real = self.real;
        let mut term = sum.clone();
        for k in 1..200 {
            term = (&term * &x).scale(1.0 / k as f64);
            sum = &sum + &term;
            if term.max_abs() < 1e-16 * sum.max_abs().max(1.0) {
                break;
            }
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Multiplicative inverse. Uses `~a / (a ~a)` when `a ~a` is a nonzero
    /// scalar and otherwise solves the left-multiplication linear system.
    pub fn inverse(&self) -> Result<Multivector> {
        if self.is_zero() {
            return Err(CliffordError::NotInvertible);
        }
        let rev = self.reversion();
        let prod = self * &rev;
        let s = prod.complex_scalar_part();
        let scale = self.norm() * rev.norm();
        let rest = prod.filter_blades(|b| b != Blade::SCALAR).max_abs();
        if s.norm() > 1e-14 * scale && rest <= 1e-14 * scale {
            let inv = rev.scale_complex(s.inv());
            let mut inv = inv;
            inv.real = self.real;
            return Ok(inv);
        }
        self.inverse_general()
    }

    /// Inverse by solving `L(a) x = 1` with the `2^n x 2^n` left-multiplication matrix.
    pub fn inverse_general(&self) -> Result<Multivector> {
        let sig = self.sig;
        let dim = sig.dim();
        let mut lmat = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for col in 0..dim {
            let basis = Self::blade(sig, Blade(col as u32), 1.0);
            for (b, c) in (self * &basis).terms() {
                lmat[(b.mask() as usize, col)] = c;
            }
        }
        let mut rhs = nalgebra::DVector::<Complex64>::zeros(dim);
        rhs[0] = Complex64::new(1.0, 0.0);
        let lu = lmat.lu();
        let sol = lu.solve(&rhs).ok_or(CliffordError::NotInvertible)?;
        if sol.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(CliffordError::NotInvertible);
        }
        let coeffs: Vec<Complex64> = sol.iter().copied().collect();
        let mut inv = Self::from_dense(sig, &coeffs, false)?.pruned(0.0);
        if self.real {
            inv = inv.re();
        }
        let check = self * &inv;
        let err = check.distance(&Self::one(sig));
        if err > 1e-10 * (1.0 + inv.max_abs() * self.max_abs()) {
            return Err(CliffordError::NotInvertible);
        }
        Ok(inv)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut k: u32) -> Multivector {
        let mut base = self.clone();
        let mut acc = Self::one(self.sig);
        acc.real = self.real;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

// ---- operator impls ------------------------------------------------------
//
// Operators panic on signature mismatch; use the named methods for checked
// arithmetic.

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        self.check_sig(rhs).expect("signature mismatch in +");
        let mut out = self.clone();
        out.real = self.real && rhs.real;
        for (b, c) in &rhs.terms {
            out.accumulate(*b, *c);
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self.check_sig(rhs).expect("signature mismatch in -");
        let mut out = self.clone();
        out.real = self.real && rhs.real;
        for (b, c) in &rhs.terms {
            out.accumulate(*b, -*c);
        }
        out
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
            .expect("signature mismatch in *")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        *self = &*self + rhs;
    }
}
