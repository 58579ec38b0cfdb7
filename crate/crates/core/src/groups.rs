//! Clifford, Pin and Spin groups, rotors, vector frames and spinorial frames.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{CliffordError, Result};
use crate::multivector::Multivector;
use crate::signature::Signature;

/// Tolerance on `u ~u - 1` and on grade-1 preservation.
pub const GROUP_TOL: f64 = 1e-10;

fn rel_tol(x: &Multivector) -> f64 {
    GROUP_TOL * x.max_abs().max(1.0).powi(2)
}

/// `u x u^-1`.
pub fn adjoint(u: &Multivector, x: &Multivector) -> Result<Multivector> {
    let inv = u.inverse()?;
    Ok(&(u * x) * &inv)
}

/// `g x (g^)^-1`.
pub fn twisted_adjoint(g: &Multivector, x: &Multivector) -> Result<Multivector> {
    let inv = g.grade_involution().inverse()?;
    Ok(&(g * x) * &inv)
}

/// Outcome of the group-membership tests, with a reason when a test fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub clifford: bool,
    pub pin: bool,
    pub spin: bool,
    pub spin_e: bool,
    pub diagnostic: Option<String>,
}

impl Membership {
    fn none(reason: impl Into<String>) -> Self {
        Self {
            clifford: false,
            pin: false,
            spin: false,
            spin_e: false,
            diagnostic: Some(reason.into()),
        }
    }
}

/// Runs the Clifford-group, Pin, Spin and Spin^e tests in sequence.
pub fn membership(g: &Multivector) -> Membership {
    if !g.is_real() {
        return Membership::none("complex element");
    }
    let sig = g.signature();
    let g_hat_inv = match g.grade_involution().inverse() {
        Ok(x) => x,
        Err(_) => return Membership::none("not invertible"),
    };
    let tol = rel_tol(g);
    for i in 0..sig.n() {
        let image = &(g * &Multivector::generator(sig, i)) * &g_hat_inv;
        if !image.is_nearly_homogeneous(1, tol) {
            return Membership::none(format!("twisted adjoint maps e{} outside grade 1", i + 1));
        }
    }
    let mut m = Membership {
        clifford: true,
        pin: false,
        spin: false,
        spin_e: false,
        diagnostic: None,
    };
    let n = g.norm_n().re;
    if (n.abs() - 1.0).abs() > tol {
        m.diagnostic = Some(format!("N(g) = {n}"));
        return m;
    }
    m.pin = true;
    if g.odd_part().max_abs() > tol {
        m.diagnostic = Some("odd part present".into());
        return m;
    }
    m.spin = true;
    if (n - 1.0).abs() > tol {
        m.diagnostic = Some(format!("N(g) = {n}"));
        return m;
    }
    if sig.n() <= 5 {
        let err = (g * &g.reversion()).distance(&Multivector::one(sig));
        if err > tol {
            m.diagnostic = Some(format!("|g ~g - 1| = {err:e}"));
            return m;
        }
    }
    m.spin_e = true;
    m
}

pub fn is_clifford_group(g: &Multivector) -> bool {
    membership(g).clifford
}

pub fn is_pin(g: &Multivector) -> bool {
    membership(g).pin
}

pub fn is_spin(g: &Multivector) -> bool {
    membership(g).spin
}

pub fn is_spin_e(g: &Multivector) -> bool {
    membership(g).spin_e
}

/// Even element with `u ~u = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotor(Multivector);

impl Rotor {
    pub fn new(u: Multivector) -> Result<Self> {
        if !u.is_real() || u.odd_part().max_abs() > rel_tol(&u) {
            return Err(CliffordError::NotSpinE(
                "rotor must be real and even".into(),
            ));
        }
        let err = (&u * &u.reversion()).distance(&Multivector::one(u.signature()));
        if err > rel_tol(&u) {
            return Err(CliffordError::NotSpinE(format!("|u ~u - 1| = {err:e}")));
        }
        Ok(Self(u.even_part()))
    }

    pub fn identity(sig: Signature) -> Self {
        Self(Multivector::one(sig))
    }

    /// `exp(F)` for a bivector `F`.
    pub fn exp(bivector: &Multivector) -> Result<Self> {
        Self::new(bivector.exp_bivector()?)
    }

    pub fn as_mv(&self) -> &Multivector {
        &self.0
    }

    pub fn into_mv(self) -> Multivector {
        self.0
    }

    pub fn signature(&self) -> Signature {
        self.0.signature()
    }

    /// `u^-1 = ~u`.
    pub fn inverse(&self) -> Self {
        Self(self.0.reversion())
    }

    pub fn compose(&self, other: &Rotor) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn neg(&self) -> Self {
        Self(-&self.0)
    }

    /// `u x ~u`.
    pub fn apply(&self, x: &Multivector) -> Multivector {
        &(&self.0 * x) * &self.0.reversion()
    }
}

impl fmt::Display for Rotor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Ordered orthonormal list of `n` vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFrame {
    vectors: Vec<Multivector>,
}

impl VectorFrame {
    pub fn new(vectors: Vec<Multivector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(CliffordError::InvalidArgument("empty frame".into()));
        };
        let sig = first.signature();
        if vectors.len() != sig.n() {
            return Err(CliffordError::InvalidArgument(format!(
                "frame for {sig} needs {} vectors, got {}",
                sig.n(),
                vectors.len()
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.signature() != sig {
                return Err(CliffordError::SignatureMismatch {
                    left: sig,
                    right: v.signature(),
                });
            }
            if !v.is_nearly_homogeneous(1, GROUP_TOL) {
                return Err(CliffordError::NotVector);
            }
            for (j, w) in vectors.iter().enumerate().skip(i) {
                let want = if i == j { sig.square(i) } else { 0.0 };
                let got = v.dot(w);
                if (got - want).abs() > GROUP_TOL * v.max_abs().max(1.0) * w.max_abs().max(1.0) {
                    return Err(CliffordError::InvalidArgument(format!(
                        "frame vectors {i},{j} have product {got}, expected {want}"
                    )));
                }
            }
        }
        Ok(Self {
            vectors: vectors
                .into_iter()
                .map(|v| v.filter_blades(|b| b.grade() == 1))
                .collect(),
        })
    }

    /// The generators `e1..en`.
    pub fn fiducial(sig: Signature) -> Self {
        Self {
            vectors: (0..sig.n())
                .map(|i| Multivector::generator(sig, i))
                .collect(),
        }
    }

    pub fn vectors(&self) -> &[Multivector] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &Multivector {
        &self.vectors[i]
    }

    /// Reciprocal vector `e^i = e_i / e_i^2`.
    pub fn reciprocal(&self, i: usize) -> Multivector {
        let v = &self.vectors[i];
        v.scale(1.0 / v.signature().square(i))
    }

    pub fn signature(&self) -> Signature {
        self.vectors[0].signature()
    }

    /// Applies `x -> u x u^-1` to every vector.
    pub fn transformed(&self, u: &Rotor) -> Self {
        Self {
            vectors: self.vectors.iter().map(|v| u.apply(v)).collect(),
        }
    }

    pub fn approx_eq(&self, other: &VectorFrame, tol: f64) -> bool {
        self.vectors.len() == other.vectors.len()
            && self
                .vectors
                .iter()
                .zip(&other.vectors)
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}

/// A rotor together with the vector frame it carries to the fiducial frame.
///
/// `(u, b)` and `(-u, b)` are distinct values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorialFrame {
    u: Rotor,
    frame: VectorFrame,
}

impl SpinorialFrame {
    /// Frame with vectors `u^-1 E_i u`.
    pub fn new(u: Rotor) -> Self {
        let frame = VectorFrame::fiducial(u.signature()).transformed(&u.inverse());
        Self { u, frame }
    }

    pub fn fiducial(sig: Signature) -> Self {
        Self::new(Rotor::identity(sig))
    }

    pub fn rotor(&self) -> &Rotor {
        &self.u
    }

    pub fn frame(&self) -> &VectorFrame {
        &self.frame
    }

    pub fn signature(&self) -> Signature {
        self.u.signature()
    }

    /// Checks `u b u^-1` against the fiducial frame.
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.frame
            .transformed(&self.u)
            .approx_eq(&VectorFrame::fiducial(self.signature()), tol)
    }
}

/// `(u, b) -> (u a, a^-1 b a)`.
pub fn frame_right_action(a: &Rotor, f: &SpinorialFrame) -> Result<SpinorialFrame> {
    if a.signature() != f.signature() {
        return Err(CliffordError::SignatureMismatch {
            left: a.signature(),
            right: f.signature(),
        });
    }
    Ok(SpinorialFrame {
        u: f.u.compose(a),
        frame: f.frame.transformed(&a.inverse()),
    })
}

pub fn vector_frame_of(f: &SpinorialFrame) -> VectorFrame {
    f.frame.clone()
}

/// Matrix `L` with `u E_i u^-1 = L[j][i] E_j`.
pub fn lorentz_matrix_of(u: &Rotor) -> Result<DMatrix<f64>> {
    let m = membership(u.as_mv());
    if !m.spin_e {
        return Err(CliffordError::NotSpinE(m.diagnostic.unwrap_or_default()));
    }
    let sig = u.signature();
    let n = sig.n();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        let image = u.apply(&Multivector::generator(sig, i));
        for j in 0..n {
            l[(j, i)] = image.get(crate::blade::Blade::generator(j));
        }
    }
    Ok(l)
}

/// Metric `diag(+1.., -1..)` as a matrix.
pub fn metric_matrix(sig: Signature) -> DMatrix<f64> {
    DMatrix::from_fn(
        sig.n(),
        sig.n(),
        |i, j| if i == j { sig.square(i) } else { 0.0 },
    )
}

/// Rotor `R` with `R w ~R = v` for unit vectors of equal square `s`:
/// `R = (1 + s v w) / sqrt(2 (1 + s v.w))`.
pub fn rotor_between(v: &Multivector, w: &Multivector) -> Result<Rotor> {
    if !v.is_nearly_homogeneous(1, GROUP_TOL) || !w.is_nearly_homogeneous(1, GROUP_TOL) {
        return Err(CliffordError::NotVector);
    }
    let sv = v.dot(v);
    let sw = w.dot(w);
    if (sv.abs() - 1.0).abs() > 1e-9 || (sw - sv).abs() > 1e-9 {
        return Err(CliffordError::InvalidArgument(format!(
            "rotor_between needs unit vectors of equal square, got {sv} and {sw}"
        )));
    }
    let s = sv.signum();
    let denom = 2.0 * (1.0 + s * v.dot(w));
    if denom <= 1e-12 {
        return Err(CliffordError::NullRotorPath);
    }
    let one = Multivector::one(v.signature());
    let r = (&one + &(v * w).scale(s)).scale(1.0 / denom.sqrt());
    Rotor::new(r)
}
