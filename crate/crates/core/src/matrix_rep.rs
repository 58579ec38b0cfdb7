//! Complex 4×4 representation of the spacetime algebra through `Cl(4,1)`,
//! standard gamma matrices, column spinors and covariant Dirac spinors.
//!
//! `Cl(4,1)` is realised with `F1..F4 = e1..e4` and `F0 = e5`, so that
//! `-F0² = F1² = … = F4² = 1`. The central pseudoscalar `i = F0F1F2F3F4`
//! acts as the complex unit of the spin basis and becomes the machine `i`
//! only when matrix entries are read off.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::classify::ideal_basis;
use crate::error::{CliffordError, Result};
use crate::groups::{membership, Rotor, SpinorialFrame};
use crate::linalg::{least_squares, rank_f64};
use crate::multivector::Multivector;
use crate::signature::Signature;
use crate::spinor::DHSRep;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Per-entry tolerance for [`cds_equivalent`].
pub const CDS_TOL: f64 = 1e-10;

// ---- complex matrices ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub Matrix4<Complex64>);

impl ComplexMatrix4 {
    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| if i == j { d[i] } else { ZERO }))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn column(&self, j: usize) -> [Complex64; 4] {
        std::array::from_fn(|i| self.0[(i, j)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0 * s)
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        std::array::from_fn(|i| (0..4).map(|k| self.0[(i, k)] * v[k]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn rows(&self) -> [[Complex64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }

    /// Rounds entries within `1e-12` of an integer or half-integer.
    fn snapped(&self) -> Self {
        let snap = |x: f64| {
            let r = (2.0 * x).round() / 2.0;
            if (x - r).abs() < 1e-12 {
                r + 0.0
            } else {
                x
            }
        };
        Self(self.0.map(|z| Complex64::new(snap(z.re), snap(z.im))))
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

pub fn format_complex(z: Complex64) -> String {
    use crate::text::format_real;
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.re == 0.0 {
        format!("{}i", format_real(z.im))
    } else if z.im < 0.0 {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

impl fmt::Display for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|z| format_complex(*z)).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        for (k, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
            if k < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for ComplexMatrix4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix4 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: [[[f64; 2]; 4]; 4] = Deserialize::deserialize(d)?;
        let m = Self::from_rows(rows.map(|r| r.map(|[re, im]| Complex64::new(re, im))));
        if !m.is_finite() {
            return Err(serde::de::Error::custom("non-finite matrix entry"));
        }
        Ok(m)
    }
}

// ---- standard gammas -------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaRep {
    pub gammas: [ComplexMatrix4; 4],
    pub f_matrix: ComplexMatrix4,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `γ0 = diag(1, 1, -1, -1)`, `γk = [[0, -σk], [σk, 0]]`, and
/// `f = ½(1 + γ0) ½(1 + i γ1 γ2)`.
pub fn standard_gammas() -> GammaRep {
    let pauli = [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ];
    let g0 = ComplexMatrix4::diag([ONE, ONE, -ONE, -ONE]);
    let gk = |k: usize| {
        let s = pauli[k];
        let mut rows = [[ZERO; 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                rows[a][b + 2] = -s[a][b];
                rows[a + 2][b] = s[a][b];
            }
        }
        ComplexMatrix4::from_rows(rows)
    };
    let gammas = [g0, gk(0), gk(1), gk(2)];
    let id = ComplexMatrix4::identity();
    let half = c(0.5);
    let f = (id + g0).scale(half) * (id + (gammas[1] * gammas[2]).scale(I)).scale(half);
    GammaRep {
        gammas,
        f_matrix: f,
    }
}

pub fn minkowski(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

/// Largest deviation of `γμγν + γνγμ` from `2ημν·1`; zero means exact.
pub fn anticommutator_defect(rep: &GammaRep) -> f64 {
    let id = ComplexMatrix4::identity();
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let (a, b) = (rep.gammas[mu], rep.gammas[nu]);
            let ac = a * b + b * a;
            worst = worst.max(ac.max_abs_diff(&id.scale(c(2.0 * minkowski(mu, nu)))));
        }
    }
    worst
}

// ---- Cl(4,1) ---------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct R41 {
    pub sig: Signature,
    /// `F0..F4`.
    pub f: [Multivector; 5],
    /// `F0F1F2F3F4`.
    pub i: Multivector,
    /// `𝓔μ = Fμ F4`.
    pub cal_e: [Multivector; 4],
}

pub fn build_r41() -> R41 {
    let sig = Signature::new(4, 1).expect("Cl(4,1) fits");
    let f: [Multivector; 5] = std::array::from_fn(|a| {
        let idx = if a == 0 { 4 } else { a - 1 };
        Multivector::generator(sig, idx)
    });
    let i = f.iter().skip(1).fold(f[0].clone(), |acc, x| &acc * x);
    let cal_e = std::array::from_fn(|mu| &f[mu] * &f[4]);
    R41 { sig, f, i, cal_e }
}

fn r41() -> &'static R41 {
    static CELL: OnceLock<R41> = OnceLock::new();
    CELL.get_or_init(build_r41)
}

fn sta() -> Signature {
    Signature::spacetime()
}

fn blade_images() -> &'static Vec<Multivector> {
    static CELL: OnceLock<Vec<Multivector>> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = r41();
        (0..16u32)
            .map(|mask| {
                Blade(mask)
                    .indices()
                    .fold(Multivector::one(r.sig), |acc, mu| &acc * &r.cal_e[mu])
            })
            .collect()
    })
}

/// The homomorphism `Cl(1,3) → Cl⁰(4,1)` generated by `Eμ ↦ 𝓔μ`.
pub fn embed_j(x: &Multivector) -> Result<Multivector> {
    if x.signature() != sta() {
        return Err(CliffordError::WrongSignature {
            expected: sta(),
            found: x.signature(),
        });
    }
    let images = blade_images();
    let mut out = Multivector::zero(r41().sig);
    if !x.is_real() {
        out = out.into_complex();
    }
    for (b, coeff) in x.terms() {
        out += &images[b.0 as usize].scale_complex(coeff);
    }
    Ok(out)
}

// ---- spin basis and the left-regular matrices --------------------------------

fn dense_real(x: &Multivector) -> Vec<f64> {
    let d = x.to_dense();
    d.iter()
        .map(|z| z.re)
        .chain(d.iter().map(|z| z.im))
        .collect()
}

/// Spin basis `f1 = f, f2 = -𝓔1𝓔3 f, f3 = 𝓔3𝓔0 f, f4 = 𝓔1𝓔0 f` with
/// `f = ½(1 + 𝓔0) ½(1 + i 𝓔1𝓔2)`.
pub fn spin_basis_r41() -> [Multivector; 4] {
    let r = r41();
    let one = Multivector::one(r.sig);
    let e = &r.cal_e;
    let f = &(&one + &e[0]).scale(0.5) * &(&one + &(&r.i * &(&e[1] * &e[2]))).scale(0.5);
    [
        f.clone(),
        -&(&(&e[1] * &e[3]) * &f),
        &(&e[3] * &e[0]) * &f,
        &(&e[1] * &e[0]) * &f,
    ]
}

/// `f_c = ½(1 + γ0) ½(1 + ı γ1γ2)` in the complexified spacetime algebra.
pub fn complex_idempotent() -> Multivector {
    let g = |mu| Multivector::generator(sta(), mu);
    let one = Multivector::one(sta());
    let ii = Multivector::imaginary_unit(sta());
    &(&one + &g(0)).scale(0.5) * &(&one + &(&ii * &(&g(1) * &g(2)))).scale(0.5)
}

/// The same spin basis built in `C ⊗ Cl(1,3)` with the machine `ı`.
pub fn spin_basis_complexified() -> [Multivector; 4] {
    let g = |mu| Multivector::generator(sta(), mu);
    let f = complex_idempotent();
    [
        f.clone(),
        -&(&(&g(1) * &g(3)) * &f),
        &(&g(3) * &g(0)) * &f,
        &(&g(1) * &g(0)) * &f,
    ]
}

/// Matrix of left multiplication by `x` on `basis`, where `times_i` is the
/// action of the complex unit on a basis element. Returns the residual of
/// the expansion as well.
fn left_regular(
    x: &Multivector,
    basis: &[Multivector; 4],
    times_i: impl Fn(&Multivector) -> Multivector,
) -> (ComplexMatrix4, f64) {
    let mut columns = Vec::with_capacity(8);
    for b in basis {
        columns.push(dense_real(b));
        columns.push(dense_real(&times_i(b)));
    }
    let mut m = ComplexMatrix4::zero();
    let mut worst = 0.0f64;
    for (j, b) in basis.iter().enumerate() {
        let (coef, res) = least_squares(&columns, &dense_real(&(x * b)));
        worst = worst.max(res);
        for i in 0..4 {
            m.0[(i, j)] = Complex64::new(coef[2 * i], coef[2 * i + 1]);
        }
    }
    (m, worst)
}

fn blade_matrices() -> &'static [ComplexMatrix4; 16] {
    static CELL: OnceLock<[ComplexMatrix4; 16]> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = r41();
        let basis = spin_basis_r41();
        let images = blade_images();
        std::array::from_fn(|mask| {
            let (m, res) = left_regular(&images[mask], &basis, |b| &r.i * b);
            assert!(res < 1e-10, "spin basis expansion failed ({res:e})");
            m.snapped()
        })
    })
}

/// `γ(x)`: the left-regular action of `j(x)` on the spin basis of
/// `Cl(4,1) f`. Complex coefficients of `x` act through the machine `i`.
pub fn matrix_of(x: &Multivector) -> Result<ComplexMatrix4> {
    if x.signature() != sta() {
        return Err(CliffordError::WrongSignature {
            expected: sta(),
            found: x.signature(),
        });
    }
    let mats = blade_matrices();
    Ok(x.terms().fold(ComplexMatrix4::zero(), |acc, (b, z)| {
        acc + mats[b.0 as usize].scale(z)
    }))
}

/// Independent route to [`matrix_of`]: left multiplication in `C ⊗ Cl(1,3)`
/// on the spin basis built from [`complex_idempotent`].
pub fn matrix_of_complexified(x: &Multivector) -> Result<(ComplexMatrix4, f64)> {
    if x.signature() != sta() {
        return Err(CliffordError::WrongSignature {
            expected: sta(),
            found: x.signature(),
        });
    }
    let ii = Multivector::imaginary_unit(sta());
    Ok(left_regular(
        &x.clone().into_complex(),
        &spin_basis_complexified(),
        |b| &ii * b,
    ))
}

/// First column of `matrix_of(Ψ)` for `Ψ` in the ideal of [`complex_idempotent`].
pub fn column_of(psi: &Multivector) -> Result<[Complex64; 4]> {
    let f = complex_idempotent();
    let res = (psi * &f).distance(psi);
    if res > 1e-10 * psi.max_abs().max(1.0) {
        return Err(CliffordError::NotInIdeal(res));
    }
    Ok(matrix_of(psi)?.column(0))
}

/// Matrix of an even `ψ`; its first column is the column spinor of `ψ f`.
pub fn dhs_matrix(psi: &Multivector) -> Result<ComplexMatrix4> {
    if psi.odd_part().max_abs() > 1e-12 * psi.max_abs().max(1.0) {
        return Err(CliffordError::NotEven);
    }
    matrix_of(psi)
}

/// The structured matrix built from its first column `(ψ1, ψ2, ψ3, ψ4)`:
/// columns `(ψ1, ψ2, ψ3, ψ4)`, `(-ψ2*, ψ1*, ψ4*, -ψ3*)`, `(ψ3, ψ4, ψ1, ψ2)`,
/// `(ψ4*, -ψ3*, -ψ2*, ψ1*)`.
pub fn structured_even_matrix(col: &[Complex64; 4]) -> ComplexMatrix4 {
    let [p1, p2, p3, p4] = *col;
    let cj = |z: Complex64| z.conj();
    ComplexMatrix4::from_rows([
        [p1, -cj(p2), p3, cj(p4)],
        [p2, cj(p1), p4, -cj(p3)],
        [p3, cj(p4), p1, -cj(p2)],
        [p4, -cj(p3), p2, cj(p1)],
    ])
}

/// Deviation of an even element's matrix from [`structured_even_matrix`].
pub fn even_structure_defect(m: &ComplexMatrix4) -> f64 {
    m.max_abs_diff(&structured_even_matrix(&m.column(0)))
}

// ---- covariant Dirac spinors -----------------------------------------------

/// `S(u) = γ(u)` for `u` in `Spin^e(1,3)`.
pub fn s_of_rotor(u: &Rotor) -> Result<ComplexMatrix4> {
    let m = membership(u.as_mv());
    if !m.spin_e {
        return Err(CliffordError::NotSpinE(m.diagnostic.unwrap_or_default()));
    }
    matrix_of(u.as_mv())
}

/// Column spinor of a Dirac–Hestenes representative: the first column of
/// `γ(u ψ u^-1)`, i.e. of `u ψ f_u u^-1` with `f_u = u^-1 f u`.
pub fn column_in_frame(d: &DHSRep) -> Result<[Complex64; 4]> {
    let u = d.frame().rotor();
    Ok(matrix_of(&u.apply(d.psi()))?.column(0))
}

/// `(Ξu, Ψ) ~ (Ξu', Ψ')` iff both frames are consistent Spin^e frames and
/// `Ψ' = S(u' u^-1) Ψ` to [`CDS_TOL`] per entry.
pub fn cds_equivalent(
    a: (&SpinorialFrame, &[Complex64; 4]),
    b: (&SpinorialFrame, &[Complex64; 4]),
) -> Result<bool> {
    let (fa, ca) = a;
    let (fb, cb) = b;
    if fa.signature() != sta() || fb.signature() != sta() {
        return Err(CliffordError::WrongSignature {
            expected: sta(),
            found: if fa.signature() != sta() {
                fa.signature()
            } else {
                fb.signature()
            },
        });
    }
    if !fa.is_consistent(1e-10) || !fb.is_consistent(1e-10) {
        return Ok(false);
    }
    let s = s_of_rotor(&fb.rotor().compose(&fa.rotor().inverse()))?;
    let mapped = s.apply(ca);
    Ok(mapped
        .iter()
        .zip(cb)
        .all(|(x, y)| (x - y).norm() <= CDS_TOL))
}

// ---- complexification ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexificationReport {
    pub signature: Signature,
    pub algebra_complex_dim: usize,
    pub ideal_complex_dim: usize,
    /// Complex rank of the left action on the ideal; 16 means onto `C(4)`.
    pub operator_rank: usize,
}

/// Checks that `C ⊗ Cl(p,q)` with `p + q = 4` acts on a 4-dimensional
/// ideal through all of `C(4)`, using `f = ½(1 + e1) ½(1 + ı e2 e3)`.
pub fn complexification_check(sig: Signature) -> Result<ComplexificationReport> {
    if sig.n() != 4 {
        return Err(CliffordError::InvalidArgument(format!(
            "{sig} is not four-dimensional"
        )));
    }
    let g = |i| Multivector::generator(sig, i);
    let one = Multivector::one(sig);
    let ii = Multivector::imaginary_unit(sig);
    let f = &(&one + &g(0)).scale(0.5) * &(&one + &(&ii * &(&g(1) * &g(2)))).scale(0.5);
    let real_basis = ideal_basis(&f)?;
    // complex basis: keep the elements that are not ı times an earlier one
    let mut basis: Vec<Multivector> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for b in real_basis {
        let mut trial = rows.clone();
        trial.push(dense_real(&b));
        trial.push(dense_real(&(&ii * &b)));
        if rank_f64(&trial) == trial.len() {
            rows = trial;
            basis.push(b);
        }
    }
    let ideal_dim = basis.len();
    let mut op_rows = Vec::new();
    if ideal_dim == 4 {
        let basis4: [Multivector; 4] = std::array::from_fn(|k| basis[k].clone());
        for mask in 0..sig.dim() as u32 {
            let x = Multivector::blade(sig, Blade(mask), 1.0).into_complex();
            let (m, res) = left_regular(&x, &basis4, |b| &ii * b);
            if res > 1e-9 {
                return Err(CliffordError::NotInIdeal(res));
            }
            let flat: Vec<Complex64> = m.0.iter().copied().collect();
            op_rows.push(
                flat.iter()
                    .map(|z| z.re)
                    .chain(flat.iter().map(|z| z.im))
                    .collect::<Vec<_>>(),
            );
            op_rows.push(
                flat.iter()
                    .map(|z| -z.im)
                    .chain(flat.iter().map(|z| z.re))
                    .collect(),
            );
        }
    }
    Ok(ComplexificationReport {
        signature: sig,
        algebra_complex_dim: sig.dim(),
        ideal_complex_dim: ideal_dim,
        operator_rank: rank_f64(&op_rows) / 2,
    })
}
