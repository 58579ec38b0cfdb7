//! Algebraic and Dirac–Hestenes spinors in `Cl(1,3)`, bilinear covariants,
//! Fierz identities and the canonical decomposition.
//!
//! The generators `e1..e4` of `Cl(1,3)` are the coframe vectors `γ^0..γ^3`,
//! so `γ5 = γ^0γ^1γ^2γ^3` is the pseudoscalar `e1^e2^e3^e4`. Lower-index
//! vectors are the reciprocals, `γ_0 = γ^0` and `γ_i = -γ^i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CliffordError, Result};
use crate::groups::{rotor_between, Rotor, SpinorialFrame};
use crate::linalg::least_squares;
use crate::multivector::Multivector;
use crate::signature::Signature;

/// Threshold on `sigma^2 + omega^2` below which a spinor counts as singular.
pub const REGULARITY_TOL: f64 = 1e-20;

const IDEAL_TOL: f64 = 1e-10;

fn sta() -> Signature {
    Signature::spacetime()
}

fn require_sta(sig: Signature) -> Result<()> {
    if sig == sta() {
        Ok(())
    } else {
        Err(CliffordError::WrongSignature {
            expected: sta(),
            found: sig,
        })
    }
}

/// `γ^μ` of the fiducial coframe.
pub fn gamma(mu: usize) -> Multivector {
    Multivector::generator(sta(), mu)
}

pub fn gamma5() -> Multivector {
    Multivector::pseudoscalar(sta())
}

/// `½(1 + e0)` for the frame's own timelike vector.
pub fn frame_idempotent(frame: &SpinorialFrame) -> Multivector {
    let one = Multivector::one(frame.signature());
    (&one + frame.frame().get(0)).scale(0.5)
}

fn check_frames(a: &SpinorialFrame, b: &SpinorialFrame) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(CliffordError::SignatureMismatch {
            left: a.signature(),
            right: b.signature(),
        });
    }
    require_sta(a.signature())
}

/// `u^-1 u'`, the right factor taking representatives in frame `u` to frame `u'`.
fn transition(from: &SpinorialFrame, to: &SpinorialFrame) -> Multivector {
    from.rotor().inverse().as_mv() * to.rotor().as_mv()
}

// ---- representatives -------------------------------------------------------

/// Dirac–Hestenes representative: an even `psi` relative to a spinorial frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DHSRep {
    frame: SpinorialFrame,
    psi: Multivector,
}

impl DHSRep {
    pub fn new(frame: SpinorialFrame, psi: Multivector) -> Result<Self> {
        require_sta(frame.signature())?;
        require_sta(psi.signature())?;
        if !psi.is_real() {
            return Err(CliffordError::ImaginaryInRealAlgebra);
        }
        if psi.odd_part().max_abs() > IDEAL_TOL * psi.max_abs().max(1.0) {
            return Err(CliffordError::NotEven);
        }
        Ok(Self {
            frame,
            psi: psi.even_part(),
        })
    }

    /// Representative in the fiducial frame.
    pub fn fiducial(psi: Multivector) -> Result<Self> {
        Self::new(SpinorialFrame::fiducial(sta()), psi)
    }

    pub fn frame(&self) -> &SpinorialFrame {
        &self.frame
    }

    pub fn psi(&self) -> &Multivector {
        &self.psi
    }

    /// `psi' = psi u^-1 u'`.
    pub fn change_frame(&self, target: &SpinorialFrame) -> Result<Self> {
        check_frames(&self.frame, target)?;
        Ok(Self {
            frame: target.clone(),
            psi: &self.psi * &transition(&self.frame, target),
        })
    }

    /// Sum of two representatives in the same frame.
    pub fn add(&self, other: &DHSRep) -> Result<Self> {
        if self.frame != other.frame {
            return Err(CliffordError::InvalidArgument(
                "representatives must share a frame to be added".into(),
            ));
        }
        Ok(Self {
            frame: self.frame.clone(),
            psi: &self.psi + &other.psi,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            frame: self.frame.clone(),
            psi: self.psi.scale(s),
        }
    }
}

/// Algebraic spinor: an element of the minimal left ideal of the frame's idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct ASRep {
    frame: SpinorialFrame,
    element: Multivector,
}

impl ASRep {
    pub fn new(frame: SpinorialFrame, element: Multivector) -> Result<Self> {
        require_sta(frame.signature())?;
        require_sta(element.signature())?;
        let e = frame_idempotent(&frame);
        let res = (&element * &e).distance(&element);
        if res > IDEAL_TOL * element.max_abs().max(1.0) {
            return Err(CliffordError::NotInIdeal(res));
        }
        Ok(Self { frame, element })
    }

    pub fn frame(&self) -> &SpinorialFrame {
        &self.frame
    }

    pub fn element(&self) -> &Multivector {
        &self.element
    }

    /// `Psi' = Psi u^-1 u'`.
    pub fn change_frame(&self, target: &SpinorialFrame) -> Result<Self> {
        check_frames(&self.frame, target)?;
        Ok(Self {
            frame: target.clone(),
            element: &self.element * &transition(&self.frame, target),
        })
    }
}

/// `Psi = psi ½(1 + e0)`.
pub fn as_from_dhs(d: &DHSRep) -> ASRep {
    ASRep {
        frame: d.frame.clone(),
        element: &d.psi * &frame_idempotent(&d.frame),
    }
}

/// `psi = 2 <Psi>_even`; the odd half equals the even half times `e0`.
pub fn dhs_from_as(a: &ASRep) -> Result<DHSRep> {
    let e = frame_idempotent(&a.frame);
    let res = (&a.element * &e).distance(&a.element);
    if res > IDEAL_TOL * a.element.max_abs().max(1.0) {
        return Err(CliffordError::NotInIdeal(res));
    }
    DHSRep::new(a.frame.clone(), a.element.even_part().scale(2.0))
}

// ---- bilinear covariants ---------------------------------------------------

/// `psi ~psi = sigma + ⋆omega`, `J = psi γ^0 ~psi`, `S = psi γ^1 γ^2 ~psi`,
/// `K = psi γ^3 ~psi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilinearCovariants {
    pub sigma: f64,
    pub omega: f64,
    #[serde(rename = "J")]
    pub j: Multivector,
    #[serde(rename = "S")]
    pub s: Multivector,
    #[serde(rename = "K")]
    pub k: Multivector,
}

impl BilinearCovariants {
    /// `sigma^2 + omega^2`.
    pub fn density_squared(&self) -> f64 {
        self.sigma * self.sigma + self.omega * self.omega
    }

    pub fn is_singular(&self) -> bool {
        self.density_squared() <= REGULARITY_TOL
    }

    pub fn approx_eq(&self, other: &BilinearCovariants, tol: f64) -> bool {
        self.max_difference(other) <= tol
    }

    pub fn max_difference(&self, other: &BilinearCovariants) -> f64 {
        [
            (self.sigma - other.sigma).abs(),
            (self.omega - other.omega).abs(),
            self.j.distance(&other.j),
            self.s.distance(&other.s),
            self.k.distance(&other.k),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn bilinear_covariants(d: &DHSRep) -> BilinearCovariants {
    let frame = d.frame.frame();
    let psi = &d.psi;
    let rev = psi.reversion();
    let sandwich = |x: &Multivector| &(psi * x) * &rev;
    let pp = sandwich(&Multivector::one(sta()));
    let e = |i| frame.get(i).clone();
    BilinearCovariants {
        sigma: pp.scalar_part(),
        omega: pp.get(crate::blade::Blade(0b1111)),
        j: sandwich(&e(0)).grade_part(1).expect("grade 1"),
        s: sandwich(&(&e(1) * &e(2))).grade_part(2).expect("grade 2"),
        k: sandwich(&e(3)).grade_part(1).expect("grade 1"),
    }
}

/// Hodge dual `⋆C = ~C γ5`.
pub fn star(x: &Multivector) -> Multivector {
    x.hodge_dual().expect("spacetime multivector")
}

// ---- Fierz identities ------------------------------------------------------

/// One Fierz identity with its printed right-hand side first, followed by
/// sign and ordering variants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FierzEntry {
    pub family: String,
    pub name: String,
    /// `(form, relative residual)`; the first entry is the printed form.
    pub variants: Vec<(String, f64)>,
}

impl FierzEntry {
    pub fn printed_residual(&self) -> f64 {
        self.variants[0].1
    }

    /// Smallest residual among the variants and its form.
    pub fn best(&self) -> (&str, f64) {
        let (f, r) = self
            .variants
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one variant");
        (f, *r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FierzResiduals {
    pub entries: Vec<FierzEntry>,
    /// Set when `J.J = 0` and the `S^-1` identity could not be evaluated.
    pub s_inverse_skipped: bool,
}

impl FierzResiduals {
    /// Printed-form residual of each identity by name.
    pub fn printed(&self) -> BTreeMap<String, f64> {
        self.entries
            .iter()
            .map(|e| (e.name.clone(), e.printed_residual()))
            .collect()
    }

    pub fn entry(&self, name: &str) -> Option<&FierzEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Family labels.
pub const FAMILY_CURRENT: &str = "current";
pub const FAMILY_CONTRACTION: &str = "contraction";
pub const FAMILY_PRODUCT: &str = "product";

struct Builder {
    scale: f64,
    entries: Vec<FierzEntry>,
}

impl Builder {
    /// Adds an identity `lhs = rhs_i`; `degree` is the homogeneity in the
    /// covariants, used to make the residual relative.
    fn push(
        &mut self,
        family: &str,
        name: &str,
        degree: i32,
        lhs: Multivector,
        rhs: Vec<(String, Multivector)>,
    ) {
        let scale = self.scale.powi(degree);
        let variants = rhs
            .into_iter()
            .map(|(form, r)| {
                let s = if degree < 0 {
                    lhs.max_abs().max(r.max_abs()).max(f64::MIN_POSITIVE)
                } else {
                    scale.max(f64::MIN_POSITIVE)
                };
                (form, lhs.distance(&r) / s)
            })
            .collect();
        self.entries.push(FierzEntry {
            family: family.into(),
            name: name.into(),
            variants,
        });
    }
}

fn signed(forms: &[(&str, Multivector)]) -> Vec<(String, Multivector)> {
    let mut out = Vec::new();
    for (form, x) in forms {
        out.push((format!("+{form}"), x.clone()));
    }
    for (form, x) in forms {
        out.push((format!("-{form}"), -x));
    }
    out
}

/// Residuals of every Fierz identity, each in its printed form and in the
/// sign/term variants used to resolve misprints. Residuals are divided by
/// the covariant magnitude raised to the identity's degree.
pub fn fierz_residuals(c: &BilinearCovariants) -> FierzResiduals {
    let sig = sta();
    let scalar = |x: f64| Multivector::scalar(sig, x);
    let g5 = gamma5();
    let (sigma, omega) = (c.sigma, c.omega);
    let (j, s, k) = (&c.j, &c.s, &c.k);
    let star_s = star(s);
    let scale = [
        c.density_squared().sqrt(),
        j.max_abs(),
        k.max_abs(),
        s.max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let mut b = Builder {
        scale,
        entries: Vec::new(),
    };
    let jj = j.dot(j);
    let rho2 = c.density_squared();

    // current family
    b.push(
        FAMILY_CURRENT,
        "J.J = sigma^2 + omega^2",
        2,
        scalar(jj),
        vec![("sigma^2 + omega^2".into(), scalar(rho2))],
    );
    b.push(
        FAMILY_CURRENT,
        "J.K = 0",
        2,
        scalar(j.dot(k)),
        vec![("0".into(), scalar(0.0))],
    );
    b.push(
        FAMILY_CURRENT,
        "J.J = -K.K",
        2,
        scalar(jj),
        vec![("-K.K".into(), scalar(-k.dot(k)))],
    );
    let jk = j.wedge(k).expect("same algebra");
    let printed = -&(&(&scalar(omega) + &star(k)) * s);
    let factors = [
        ("(omega + *sigma)S", &scalar(omega) + &g5.scale(sigma)),
        ("(omega - *sigma)S", &scalar(omega) - &g5.scale(sigma)),
        ("(sigma + *omega)S", &scalar(sigma) + &g5.scale(omega)),
        ("(sigma - *omega)S", &scalar(sigma) - &g5.scale(omega)),
    ];
    let mut rhs = vec![("-(omega + *K)S".to_string(), printed)];
    rhs.extend(signed(&factors.map(|(f, x)| (f, &x * s))));
    b.push(FAMILY_CURRENT, "J^K = -(omega + *K)S", 2, jk, rhs);

    // contraction family
    let rc = |x: &Multivector, y: &Multivector| x.right_contraction(y).expect("same algebra");
    let with_negation =
        |form: &str, x: Multivector| vec![(form.to_string(), x.clone()), (negate_form(form), -&x)];
    b.push(
        FAMILY_CONTRACTION,
        "S|_J = -omega K",
        2,
        rc(s, j),
        with_negation("-omega K", k.scale(-omega)),
    );
    b.push(
        FAMILY_CONTRACTION,
        "S|_K = -omega J",
        2,
        rc(s, k),
        with_negation("-omega J", j.scale(-omega)),
    );
    b.push(
        FAMILY_CONTRACTION,
        "(*S)|_J = -sigma K",
        2,
        rc(&star_s, j),
        with_negation("-sigma K", k.scale(-sigma)),
    );
    b.push(
        FAMILY_CONTRACTION,
        "(*S)|_K = -sigma J",
        2,
        rc(&star_s, k),
        with_negation("-sigma J", j.scale(-sigma)),
    );
    b.push(
        FAMILY_CONTRACTION,
        "S.S = sigma^2 - omega^2",
        2,
        scalar(s.dot(s)),
        with_negation("sigma^2 - omega^2", scalar(sigma * sigma - omega * omega)),
    );
    b.push(
        FAMILY_CONTRACTION,
        "(*S).S = -2 sigma omega",
        2,
        scalar(star_s.dot(s)),
        with_negation("-2 sigma omega", scalar(-2.0 * sigma * omega)),
    );

    // product family
    let plus = &scalar(omega) + &g5.scale(sigma);
    let minus = &scalar(omega) - &g5.scale(sigma);
    let product_variants = |printed_sign: f64,
                            printed_factor: &Multivector,
                            v: &Multivector,
                            vn: &str,
                            printed: &str| {
        let mut rhs = vec![(
            printed.to_string(),
            (printed_factor * v).scale(printed_sign),
        )];
        let forms = [
            (format!("(omega + *sigma){vn}"), &plus * v),
            (format!("(omega - *sigma){vn}"), &minus * v),
            (format!("{vn}(omega + *sigma)"), v * &plus),
            (format!("{vn}(omega - *sigma)"), v * &minus),
        ];
        let forms: Vec<(&str, Multivector)> =
            forms.iter().map(|(f, x)| (f.as_str(), x.clone())).collect();
        rhs.extend(signed(&forms));
        rhs
    };
    b.push(
        FAMILY_PRODUCT,
        "JS = (omega + *sigma)K",
        2,
        j * s,
        product_variants(1.0, &plus, k, "K", "(omega + *sigma)K"),
    );
    b.push(
        FAMILY_PRODUCT,
        "SJ = -(omega - *sigma)K",
        2,
        s * j,
        product_variants(-1.0, &minus, k, "K", "-(omega - *sigma)K"),
    );
    b.push(
        FAMILY_PRODUCT,
        "KS = (omega + *sigma)J",
        2,
        k * s,
        product_variants(1.0, &plus, j, "J", "(omega + *sigma)J"),
    );
    b.push(
        FAMILY_PRODUCT,
        "SK = -(omega + *sigma)J",
        2,
        s * k,
        product_variants(-1.0, &plus, j, "J", "-(omega + *sigma)J"),
    );
    let w2s2 = scalar(omega * omega - sigma * sigma);
    let cross = g5.scale(2.0 * sigma * omega);
    b.push(
        FAMILY_PRODUCT,
        "S^2 = omega^2 - sigma^2 + 2 sigma *omega",
        2,
        s * s,
        vec![
            ("omega^2 - sigma^2 + 2 sigma *omega".into(), &w2s2 + &cross),
            ("omega^2 - sigma^2 - 2 sigma *omega".into(), &w2s2 - &cross),
            (
                "sigma^2 - omega^2 + 2 sigma *omega".into(),
                &(-&w2s2) + &cross,
            ),
            (
                "sigma^2 - omega^2 - 2 sigma *omega".into(),
                &(-&w2s2) - &cross,
            ),
        ],
    );
    let mut s_inverse_skipped = true;
    if jj.abs() > REGULARITY_TOL.sqrt() * scale * scale {
        if let Ok(s_inv) = s.inverse() {
            s_inverse_skipped = false;
            let ksk = (&(k * s) * k).scale(1.0 / (jj * jj));
            b.push(
                FAMILY_PRODUCT,
                "S^-1 = KSK/J^4",
                -1,
                s_inv,
                vec![("KSK/J^4".into(), ksk.clone()), ("-KSK/J^4".into(), -&ksk)],
            );
        }
    }
    FierzResiduals {
        entries: b.entries,
        s_inverse_skipped,
    }
}

fn negate_form(form: &str) -> String {
    match form.strip_prefix('-') {
        Some(rest) => format!("+{rest}"),
        None => format!("-({form})"),
    }
}

/// Resolution of one identity over a batch of spinors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FierzResolution {
    pub family: String,
    pub name: String,
    pub printed_max: f64,
    /// Variants whose maximum residual stays within tolerance.
    pub holding: Vec<String>,
    /// Maximum residual of each variant.
    pub variant_max: Vec<(String, f64)>,
}

impl FierzResolution {
    pub fn printed_holds(&self) -> bool {
        self.holding
            .first()
            .is_some_and(|h| Some(h) == self.variant_max.first().map(|v| &v.0))
    }

    pub fn best_max(&self) -> f64 {
        self.variant_max
            .iter()
            .map(|v| v.1)
            .fold(f64::INFINITY, f64::min)
    }

    /// Printed form if it holds, else the first variant that does.
    pub fn resolved_form(&self) -> Option<&str> {
        self.holding.first().map(String::as_str)
    }
}

impl fmt::Display for FierzResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.printed_holds(), self.resolved_form()) {
            (true, _) => write!(
                f,
                "{}: printed form holds (max {:.2e})",
                self.name, self.printed_max
            ),
            (false, Some(form)) => write!(
                f,
                "{}: printed form fails (max {:.2e}); holds as {} (max {:.2e})",
                self.name,
                self.printed_max,
                form,
                self.best_max()
            ),
            (false, None) => write!(
                f,
                "{}: no variant holds (printed max {:.2e}, best {:.2e})",
                self.name,
                self.printed_max,
                self.best_max()
            ),
        }
    }
}

/// Maximum residual per identity variant over a batch; variants within `tol`
/// are listed as holding, printed form first.
pub fn resolve_fierz(batch: &[FierzResiduals], tol: f64) -> Vec<FierzResolution> {
    let Some(first) = batch.first() else {
        return Vec::new();
    };
    first
        .entries
        .iter()
        .map(|template| {
            let mut variant_max: Vec<(String, f64)> = template
                .variants
                .iter()
                .map(|(f, _)| (f.clone(), 0.0))
                .collect();
            for r in batch {
                if let Some(e) = r.entry(&template.name) {
                    for (slot, (_, v)) in variant_max.iter_mut().zip(&e.variants) {
                        slot.1 = slot.1.max(*v);
                    }
                }
            }
            let holding = variant_max
                .iter()
                .filter(|v| v.1 <= tol)
                .map(|v| v.0.clone())
                .collect();
            FierzResolution {
                family: template.family.clone(),
                name: template.name.clone(),
                printed_max: variant_max[0].1,
                holding,
                variant_max,
            }
        })
        .collect()
}

// ---- canonical decomposition -----------------------------------------------

/// `psi = rho^(1/2) exp(beta γ5 / 2) R`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalFactors {
    pub rho: f64,
    pub beta: f64,
    pub rotor: Rotor,
}

impl CanonicalFactors {
    pub fn reconstruct(&self) -> Multivector {
        (&duality_phase(self.beta / 2.0) * self.rotor.as_mv()).scale(self.rho.sqrt())
    }
}

/// `exp(t γ5) = cos t + sin t γ5`.
pub fn duality_phase(t: f64) -> Multivector {
    &Multivector::scalar(sta(), t.cos()) + &gamma5().scale(t.sin())
}

pub fn canonical_decompose(d: &DHSRep) -> Result<CanonicalFactors> {
    let c = bilinear_covariants(d);
    let rho2 = c.density_squared();
    if rho2 <= REGULARITY_TOL {
        return Err(CliffordError::SingularSpinor(rho2));
    }
    let rho = rho2.sqrt();
    let mut beta = c.omega.atan2(c.sigma);
    if beta <= -std::f64::consts::PI {
        beta += 2.0 * std::f64::consts::PI;
    }
    let r = (&duality_phase(-beta / 2.0) * &d.psi).scale(rho.powf(-0.5));
    let rotor = Rotor::new(r)?;
    Ok(CanonicalFactors { rho, beta, rotor })
}

/// A spinor with the given covariants. Unique up to a right factor
/// `exp(γ2γ1 φ)` in the frame.
pub fn recover_from_covariants(c: &BilinearCovariants, frame: &SpinorialFrame) -> Result<DHSRep> {
    require_sta(frame.signature())?;
    let rho2 = c.density_squared();
    if rho2 <= REGULARITY_TOL {
        return Err(CliffordError::SingularSpinor(rho2));
    }
    let rho = rho2.sqrt();
    let beta = c.omega.atan2(c.sigma);
    let fr = frame.frame();
    let e0 = fr.get(0).clone();
    let e3 = fr.get(3).clone();
    // R e^0 ~R = J / rho, then a rotation fixing e^0 with R e^3 ~R = K / rho
    let v = c.j.scale(1.0 / rho);
    let w = c.k.scale(1.0 / rho);
    let r1 = rotor_between(&v, &e0)?;
    let w1 = r1.inverse().apply(&w).grade_part(1)?;
    let r2 = match rotor_between(&w1, &e3) {
        Ok(r) => r,
        Err(CliffordError::NullRotorPath) => {
            // half-turn in the e^1 e^3 plane
            Rotor::new(fr.get(1) * &e3)?
        }
        Err(e) => return Err(e),
    };
    let r = r1.compose(&r2);
    let psi = (&duality_phase(beta / 2.0) * r.as_mv()).scale(rho.sqrt());
    DHSRep::new(frame.clone(), psi)
}

// ---- mother spinors --------------------------------------------------------

/// Basis `s1 = e, s2 = E3E1 e, s3 = E3E0 e, s4 = E1E0 e` with `e = ½(1 + E0)`.
pub fn mother_basis() -> [Multivector; 4] {
    let e = (&Multivector::one(sta()) + &gamma(0)).scale(0.5);
    [
        e.clone(),
        &(&gamma(3) * &gamma(1)) * &e,
        &(&gamma(3) * &gamma(0)) * &e,
        &(&gamma(1) * &gamma(0)) * &e,
    ]
}

/// Formally complex coefficient `a + b E2E1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormalComplex {
    pub a: f64,
    pub b: f64,
}

impl FormalComplex {
    pub fn as_mv(&self) -> Multivector {
        &Multivector::scalar(sta(), self.a) + &(&gamma(2) * &gamma(1)).scale(self.b)
    }
}

/// Coefficients `psi_i = a_i + b_i E2E1` with `Phi = sum psi_i s_i`.
pub fn mother_spinor_expand(phi: &ASRep) -> Result<[FormalComplex; 4]> {
    let e = (&Multivector::one(sta()) + &gamma(0)).scale(0.5);
    let x = phi.element();
    let res = (x * &e).distance(x);
    if res > IDEAL_TOL * x.max_abs().max(1.0) {
        return Err(CliffordError::NotInIdeal(res));
    }
    let e21 = &gamma(2) * &gamma(1);
    let mut columns = Vec::with_capacity(8);
    for s in mother_basis() {
        columns.push(s.to_dense().iter().map(|c| c.re).collect::<Vec<_>>());
        columns.push((&e21 * &s).to_dense().iter().map(|c| c.re).collect());
    }
    let target: Vec<f64> = x.to_dense().iter().map(|c| c.re).collect();
    let (coef, residual) = least_squares(&columns, &target);
    if residual > IDEAL_TOL * x.max_abs().max(1.0) {
        return Err(CliffordError::NotInIdeal(residual));
    }
    Ok(std::array::from_fn(|i| FormalComplex {
        a: coef[2 * i],
        b: coef[2 * i + 1],
    }))
}

pub fn mother_spinor_compose(coeffs: &[FormalComplex; 4]) -> Multivector {
    mother_basis()
        .iter()
        .zip(coeffs)
        .fold(Multivector::zero(sta()), |acc, (s, c)| {
            &acc + &(&c.as_mv() * s)
        })
}

// ---- JSON ------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DHSJson {
    pub frame_rotor: Multivector,
    pub psi: Multivector,
}

impl From<&DHSRep> for DHSJson {
    fn from(d: &DHSRep) -> Self {
        Self {
            frame_rotor: d.frame.rotor().as_mv().clone(),
            psi: d.psi.clone(),
        }
    }
}

impl TryFrom<DHSJson> for DHSRep {
    type Error = CliffordError;

    fn try_from(j: DHSJson) -> Result<Self> {
        DHSRep::new(SpinorialFrame::new(Rotor::new(j.frame_rotor)?), j.psi)
    }
}

impl Serialize for DHSRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DHSJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DHSRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DHSRep::try_from(DHSJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one() -> Multivector {
        Multivector::one(sta())
    }

    #[test]
    fn covariants_of_unit_spinor() {
        let c = bilinear_covariants(&DHSRep::fiducial(one()).unwrap());
        assert_eq!((c.sigma, c.omega), (1.0, 0.0));
        assert_eq!(c.j, gamma(0));
        assert_eq!(c.s, &gamma(1) * &gamma(2));
        assert_eq!(c.k, gamma(3));
        // ⋆S = ψ γ^0 γ^3 ψ~ and ⋆K = ψ γ^0 γ^1 γ^2 ψ~ for ψ = 1
        assert_eq!(star(&c.s), &gamma(0) * &gamma(3));
        assert_eq!(star(&c.k), &(&gamma(0) * &gamma(1)) * &gamma(2));
    }

    #[test]
    fn covariants_scale_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = random::rotor(&mut rng, sta());
        let c = bilinear_covariants(&DHSRep::fiducial(r.as_mv().scale(2.0)).unwrap());
        assert!((c.sigma - 4.0).abs() < 1e-12 && c.omega.abs() < 1e-12);
        assert!(c.j.approx_eq(&r.apply(&gamma(0)).scale(4.0), 1e-12));
    }

    #[test]
    fn singular_spinor_is_flagged() {
        // ½(1 + γ0γ3) is even with ψψ~ = ½(1 + γ0γ3)·½(1 - γ0γ3) = 0
        let psi = (&one() + &(&gamma(0) * &gamma(3))).scale(0.5);
        let d = DHSRep::fiducial(psi).unwrap();
        let c = bilinear_covariants(&d);
        assert!(c.is_singular());
        assert!(matches!(
            canonical_decompose(&d),
            Err(CliffordError::SingularSpinor(_))
        ));
        assert!(recover_from_covariants(&c, d.frame()).is_err());
    }

    #[test]
    fn as_dhs_round_trip() {
        let psi = one();
        let a = as_from_dhs(&DHSRep::fiducial(psi).unwrap());
        assert_eq!(a.element(), &(&one() + &gamma(0)).scale(0.5));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let psi = random::even(&mut rng, sta());
            let frame = SpinorialFrame::new(random::rotor(&mut rng, sta()));
            let d = DHSRep::new(frame, psi).unwrap();
            let back = dhs_from_as(&as_from_dhs(&d)).unwrap();
            assert!(back.psi().approx_eq(d.psi(), 1e-12));
        }
        let bad = ASRep::new(SpinorialFrame::fiducial(sta()), gamma(1));
        assert!(matches!(bad, Err(CliffordError::NotInIdeal(_))));
    }

    #[test]
    fn change_frame_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random::rotor(&mut rng, sta());
        let frame = SpinorialFrame::new(u.clone());
        let d = DHSRep::new(frame.clone(), random::even(&mut rng, sta())).unwrap();
        assert!(d
            .change_frame(&frame)
            .unwrap()
            .psi()
            .approx_eq(d.psi(), 1e-14));
        let flipped = d.change_frame(&SpinorialFrame::new(u.neg())).unwrap();
        assert!(flipped.psi().approx_eq(&-d.psi(), 1e-12));
        let target = SpinorialFrame::new(random::rotor(&mut rng, sta()));
        let moved = d.change_frame(&target).unwrap();
        let back = moved.change_frame(&frame).unwrap();
        assert!(back.psi().approx_eq(d.psi(), 1e-10));
        assert!(bilinear_covariants(&moved).approx_eq(&bilinear_covariants(&d), 1e-10));
        // transport commutes with the ideal projection
        let a1 = as_from_dhs(&moved);
        let a2 = as_from_dhs(&d).change_frame(&target).unwrap();
        assert!(a1.element().approx_eq(a2.element(), 1e-10));
    }

    #[test]
    fn fierz_at_unit_spinor() {
        let r = fierz_residuals(&bilinear_covariants(&DHSRep::fiducial(one()).unwrap()));
        for e in &r.entries {
            assert!(e.best().1 < 1e-15, "{}", e.name);
        }
        assert!(!r.s_inverse_skipped);
    }

    #[test]
    fn canonical_examples() {
        let f = canonical_decompose(&DHSRep::fiducial(Multivector::scalar(sta(), 2.0)).unwrap())
            .unwrap();
        assert!((f.rho - 4.0).abs() < 1e-14 && f.beta == 0.0);
        assert!(f.rotor.as_mv().approx_eq(&one(), 1e-14));
        let boost = Rotor::exp(&(&gamma(1) * &gamma(0)).scale(0.4)).unwrap();
        let psi = &duality_phase(0.3) * boost.as_mv();
        let f = canonical_decompose(&DHSRep::fiducial(psi.clone()).unwrap()).unwrap();
        assert!((f.beta - 0.6).abs() < 1e-12 && (f.rho - 1.0).abs() < 1e-12);
        assert!(f.reconstruct().approx_eq(&psi, 1e-12));
    }

    #[test]
    fn beta_branch_is_half_open() {
        // ψψ~ = -1 gives beta = pi, never -pi
        let psi = gamma5().scale(1.0);
        let f = canonical_decompose(&DHSRep::fiducial(psi).unwrap()).unwrap();
        assert_eq!(f.beta, std::f64::consts::PI);
    }

    #[test]
    fn recovery_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let (psi, ..) = random::regular_spinor(&mut rng);
            let frame = SpinorialFrame::new(random::rotor(&mut rng, sta()));
            let d = DHSRep::new(frame.clone(), psi).unwrap();
            let c = bilinear_covariants(&d);
            let rec = recover_from_covariants(&c, &frame).unwrap();
            let c2 = bilinear_covariants(&rec);
            assert!(c2.max_difference(&c) <= 1e-8 * c.density_squared().sqrt().max(1.0));
            // differs by a right phase in the frame's e2e1 plane
            let ratio = &d.psi().inverse().unwrap() * rec.psi();
            let fr = frame.frame();
            let plane = fr.get(2) * fr.get(1);
            let coeff = (&ratio * &plane).scalar_part() / (&plane * &plane).scalar_part();
            let residual =
                &(&ratio - &Multivector::scalar(sta(), ratio.scalar_part())) - &plane.scale(coeff);
            assert!(residual.max_abs() < 1e-8, "{residual}");
        }
    }

    #[test]
    fn mother_spinor_coefficients() {
        let phi = |x: Multivector| ASRep::new(SpinorialFrame::fiducial(sta()), x).unwrap();
        let basis = mother_basis();
        let c = mother_spinor_expand(&phi(basis[0].clone())).unwrap();
        assert!(
            (c[0].a - 1.0).abs() < 1e-12
                && c[1..]
                    .iter()
                    .all(|z| z.a.abs() < 1e-12 && z.b.abs() < 1e-12)
        );
        let c = mother_spinor_expand(&phi(basis[1].clone())).unwrap();
        assert!((c[1].a - 1.0).abs() < 1e-12 && c[0].a.abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e = (&one() + &gamma(0)).scale(0.5);
        for _ in 0..20 {
            let x = &random::multivector(&mut rng, sta()) * &e;
            let c = mother_spinor_expand(&phi(x.clone())).unwrap();
            assert!(mother_spinor_compose(&c).approx_eq(&x, 1e-10));
        }
    }

    #[test]
    fn dhs_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = DHSRep::new(
            SpinorialFrame::new(random::rotor(&mut rng, sta())),
            random::even(&mut rng, sta()),
        )
        .unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: DHSRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    fn resolution(seed: u64, n: usize) -> Vec<FierzResolution> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let batch: Vec<_> = (0..n)
            .map(|_| {
                let (psi, ..) = random::regular_spinor(&mut rng);
                fierz_residuals(&bilinear_covariants(&DHSRep::fiducial(psi).unwrap()))
            })
            .collect();
        resolve_fierz(&batch, 1e-9)
    }

    #[test]
    fn fierz_resolution_is_stable() {
        let a = resolution(1, 200);
        let b = resolution(2, 200);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.holding, y.holding, "{}", x.name);
            assert!(x.resolved_form().is_some(), "{x}");
        }
        let get = |name: &str| a.iter().find(|r| r.name == name).unwrap();
        for name in [
            "J.J = sigma^2 + omega^2",
            "J.K = 0",
            "J.J = -K.K",
            "S.S = sigma^2 - omega^2",
        ] {
            assert!(get(name).printed_holds(), "{name}");
        }
        assert_eq!(
            get("J^K = -(omega + *K)S").resolved_form(),
            Some("-(omega + *sigma)S")
        );
        // contraction forms of Lounesto: S|_J = omega K, (S γ5).S = -2 sigma omega
        assert_eq!(get("S|_J = -omega K").resolved_form(), Some("+omega K"));
        assert_eq!(
            get("(*S).S = -2 sigma omega").resolved_form(),
            Some("+2 sigma omega")
        );
    }
}
