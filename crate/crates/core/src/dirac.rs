//! Plane-wave Dirac–Hestenes fields on the constant coframe `γ^μ = dx^μ`,
//! and the Dirac equation in its Dirac–Hestenes, algebraic-spinor and
//! matrix forms. Natural units, `c = ħ = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::error::{CliffordError, Result};
use crate::groups::{is_spin_e, rotor_between, Rotor, SpinorialFrame};
use crate::matrix_rep::matrix_of;
use crate::multivector::Multivector;
use crate::signature::Signature;
use crate::spinor::{bilinear_covariants, gamma, gamma5, BilinearCovariants, DHSRep};

/// Step of the central finite-difference oracle.
pub const FD_STEP: f64 = 1e-5;

fn sta() -> Signature {
    Signature::spacetime()
}

/// Coordinates `x^0..x^3` in the global Lorentz chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint(pub [f64; 4]);

impl SpacetimePoint {
    pub fn new(x: [f64; 4]) -> Result<Self> {
        if x.iter().all(|v| v.is_finite()) {
            Ok(Self(x))
        } else {
            Err(CliffordError::NonFinite)
        }
    }

    pub fn origin() -> Self {
        Self([0.0; 4])
    }

    fn shifted(&self, mu: usize, h: f64) -> Self {
        let mut x = self.0;
        x[mu] += h;
        Self(x)
    }
}

/// Constant electromagnetic potential `A` and charge `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantPotential {
    #[serde(rename = "A")]
    pub a: Multivector,
    #[serde(rename = "q")]
    pub charge: f64,
}

impl ConstantPotential {
    pub fn new(a: Multivector, charge: f64) -> Result<Self> {
        if a.signature() != sta() {
            return Err(CliffordError::WrongSignature {
                expected: sta(),
                found: a.signature(),
            });
        }
        if !a.is_real() || !a.is_nearly_homogeneous(1, 0.0) {
            return Err(CliffordError::NotVector);
        }
        Ok(Self { a, charge })
    }

    pub fn zero() -> Self {
        Self {
            a: Multivector::zero(sta()),
            charge: 0.0,
        }
    }

    /// `A = A_μ γ^μ` from covariant components.
    pub fn from_components(a: [f64; 4], charge: f64) -> Result<Self> {
        Self::new(Multivector::vector(sta(), &a)?, charge)
    }

    /// `qA`.
    pub fn coupling(&self) -> Multivector {
        self.a.scale(self.charge)
    }
}

/// `ψ(x) = ψ0 exp(-ε B k_μ x^μ)` with `B = e_2 e_1` of the field's frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveDHSF {
    frame: SpinorialFrame,
    psi0: Multivector,
    k: [f64; 4],
    energy_sign: f64,
}

impl PlaneWaveDHSF {
    pub fn new(
        frame: SpinorialFrame,
        psi0: Multivector,
        k: [f64; 4],
        energy_sign: f64,
    ) -> Result<Self> {
        if frame.signature() != sta() || psi0.signature() != sta() {
            return Err(CliffordError::WrongSignature {
                expected: sta(),
                found: psi0.signature(),
            });
        }
        if !psi0.is_real() || !psi0.odd_part().is_zero() {
            return Err(CliffordError::NotEven);
        }
        if energy_sign != 1.0 && energy_sign != -1.0 {
            return Err(CliffordError::InvalidArgument(
                "energy sign must be +1 or -1".into(),
            ));
        }
        if k.iter().any(|v| !v.is_finite()) {
            return Err(CliffordError::NonFinite);
        }
        Ok(Self {
            frame,
            psi0,
            k,
            energy_sign,
        })
    }

    pub fn frame(&self) -> &SpinorialFrame {
        &self.frame
    }

    pub fn psi0(&self) -> &Multivector {
        &self.psi0
    }

    /// Covariant wave-vector components `k_μ`.
    pub fn wave_vector(&self) -> [f64; 4] {
        self.k
    }

    pub fn energy_sign(&self) -> f64 {
        self.energy_sign
    }

    /// `k = k_μ γ^μ`.
    pub fn wave_vector_mv(&self) -> Multivector {
        Multivector::vector(sta(), &self.k).expect("finite")
    }

    /// `B = e_2 e_1` of the field's frame.
    pub fn phase_bivector(&self) -> Multivector {
        let fr = self.frame.frame();
        fr.get(2) * fr.get(1)
    }

    pub fn phase(&self, x: &SpacetimePoint) -> f64 {
        self.k.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    pub fn eval(&self, x: &SpacetimePoint) -> Multivector {
        let phi = self.phase(x);
        let b = self.phase_bivector();
        // exp(-ε B φ) = cos φ - ε sin φ B, since B² = -1
        let rot = &Multivector::scalar(sta(), phi.cos()) - &b.scale(self.energy_sign * phi.sin());
        &self.psi0 * &rot
    }

    /// `∂_μ ψ = -ε k_μ ψ B`.
    pub fn derivative(&self, mu: usize, x: &SpacetimePoint) -> Multivector {
        (&self.eval(x) * &self.phase_bivector()).scale(-self.energy_sign * self.k[mu])
    }

    /// Central difference of `ψ` along `x^μ`.
    pub fn derivative_fd(&self, mu: usize, x: &SpacetimePoint, h: f64) -> Multivector {
        (&self.eval(&x.shifted(mu, h)) - &self.eval(&x.shifted(mu, -h))).scale(0.5 / h)
    }

    pub fn covariants(&self, x: &SpacetimePoint) -> BilinearCovariants {
        bilinear_covariants(&DHSRep::new(self.frame.clone(), self.eval(x)).expect("even"))
    }
}

/// A plane wave together with a potential and the coframe in `D^s = c^μ ∂_μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracSystem {
    pub field: PlaneWaveDHSF,
    pub potential: ConstantPotential,
    pub coframe: [Multivector; 4],
}

impl DiracSystem {
    pub fn new(field: PlaneWaveDHSF, potential: ConstantPotential) -> Self {
        Self {
            field,
            potential,
            coframe: std::array::from_fn(gamma),
        }
    }

    pub fn spin_dirac(&self, x: &SpacetimePoint) -> Multivector {
        self.coframe
            .iter()
            .enumerate()
            .fold(Multivector::zero(sta()), |acc, (mu, c)| {
                &acc + &(c * &self.field.derivative(mu, x))
            })
    }

    pub fn spin_dirac_fd(&self, x: &SpacetimePoint, h: f64) -> Multivector {
        self.coframe
            .iter()
            .enumerate()
            .fold(Multivector::zero(sta()), |acc, (mu, c)| {
                &acc + &(c * &self.field.derivative_fd(mu, x, h))
            })
    }

    /// `D^s ψ B - m ψ e_0 + q A ψ`.
    pub fn dhe_residual(&self, m: f64, x: &SpacetimePoint) -> Multivector {
        let psi = self.field.eval(x);
        let b = self.field.phase_bivector();
        let e0 = self.field.frame.frame().get(0);
        let lhs = &(&self.spin_dirac(x) * &b) - &(&psi * e0).scale(m);
        &lhs + &(&self.potential.coupling() * &psi)
    }

    /// `Φ = ψ ½(1 + e_0) ½(1 + e_3 e_0)` with lower-index frame vectors.
    pub fn asf_field(&self, x: &SpacetimePoint) -> Multivector {
        &self.field.eval(x) * &self.asf_projector()
    }

    fn asf_projector(&self) -> Multivector {
        let fr = self.field.frame.frame();
        let one = Multivector::one(sta());
        let e = (&one + &fr.reciprocal(0)).scale(0.5);
        let e_prime = (&one + &(&fr.reciprocal(3) * &fr.reciprocal(0))).scale(0.5);
        &e * &e_prime
    }

    fn d_phi(&self, x: &SpacetimePoint) -> Multivector {
        &self.spin_dirac(x) * &self.asf_projector()
    }

    /// Right multiplication of the equation by the two idempotents:
    /// `-D^s Φ ⋆1 - m Φ + q A Φ`, using `Φ B = -Φ ⋆1` in the ideal.
    pub fn asf_residual(&self, m: f64, x: &SpacetimePoint) -> Multivector {
        let phi = self.asf_field(x);
        let g5 = gamma5();
        let lhs = &(&self.d_phi(x) * &g5).scale(-1.0) - &phi.scale(m);
        &lhs + &(&self.potential.coupling() * &phi)
    }

    /// The algebraic-spinor equation written as `D^s Φ - m Φ ⋆1 + q A Φ`.
    pub fn asf_residual_printed(&self, m: f64, x: &SpacetimePoint) -> Multivector {
        let phi = self.asf_field(x);
        let lhs = &self.d_phi(x) - &(&phi * &gamma5()).scale(m);
        &lhs + &(&self.potential.coupling() * &phi)
    }

    /// Column spinor `Ψ(x)`: first column of `γ(u ψ(x) u^-1)`.
    pub fn column(&self, x: &SpacetimePoint) -> [Complex64; 4] {
        let u = self.field.frame.rotor();
        matrix_of(&u.apply(&self.field.eval(x)))
            .expect("spacetime")
            .column(0)
    }

    fn column_derivative(&self, mu: usize, x: &SpacetimePoint) -> [Complex64; 4] {
        let u = self.field.frame.rotor();
        matrix_of(&u.apply(&self.field.derivative(mu, x)))
            .expect("spacetime")
            .column(0)
    }

    /// `γ̲^μ (i ∂_μ + q A_μ) Ψ - m Ψ` with `γ̲^μ` the matrix of the rotated coframe.
    pub fn matrix_residual(&self, m: f64, x: &SpacetimePoint) -> [Complex64; 4] {
        let u = self.field.frame.rotor();
        let i = Complex64::i();
        let col = self.column(x);
        let mut out = col.map(|z| -z * m);
        for (mu, c) in self.coframe.iter().enumerate() {
            let g = matrix_of(&u.apply(c)).expect("spacetime");
            let d = self.column_derivative(mu, x).map(|z| z * i);
            for (o, v) in out.iter_mut().zip(g.apply(&d)) {
                *o += v;
            }
        }
        let a = matrix_of(&u.apply(&self.potential.coupling())).expect("spacetime");
        for (o, v) in out.iter_mut().zip(a.apply(&col)) {
            *o += v;
        }
        out
    }

    /// `ψ ↦ ψ s^-1` with the frame relabelled `u ↦ u s^-1`.
    pub fn right_gauge(&self, s: &Rotor) -> Result<Self> {
        check_gauge(s)?;
        let u = self.field.frame.rotor().compose(&s.inverse());
        let field = PlaneWaveDHSF::new(
            SpinorialFrame::new(u),
            self.field.psi0() * s.inverse().as_mv(),
            self.field.k,
            self.field.energy_sign,
        )?;
        Ok(Self {
            field,
            potential: self.potential.clone(),
            coframe: self.coframe.clone(),
        })
    }

    /// `ψ ↦ s ψ`, `A ↦ s A s^-1` and `c^μ ↦ s c^μ s^-1`.
    pub fn left_gauge(&self, s: &Rotor) -> Result<Self> {
        check_gauge(s)?;
        let field = PlaneWaveDHSF::new(
            self.field.frame.clone(),
            s.as_mv() * self.field.psi0(),
            self.field.k,
            self.field.energy_sign,
        )?;
        Ok(Self {
            field,
            potential: ConstantPotential {
                a: s.apply(&self.potential.a),
                charge: self.potential.charge,
            },
            coframe: self.coframe.clone().map(|c| s.apply(&c)),
        })
    }

    /// Left and right transformations by the same `s`.
    pub fn both_gauge(&self, s: &Rotor) -> Result<Self> {
        self.left_gauge(s)?.right_gauge(s)
    }

    /// Residual norms at one point.
    pub fn sample(&self, m: f64, x: &SpacetimePoint) -> ResidualSample {
        ResidualSample {
            point: *x,
            dhe: self.dhe_residual(m, x).norm(),
            asf: self.asf_residual(m, x).norm(),
            matrix: column_norm(&self.matrix_residual(m, x)),
        }
    }
}

fn check_gauge(s: &Rotor) -> Result<()> {
    if s.signature() != sta() {
        return Err(CliffordError::WrongSignature {
            expected: sta(),
            found: s.signature(),
        });
    }
    if !is_spin_e(s.as_mv()) {
        return Err(CliffordError::NotSpinE("gauge element".into()));
    }
    Ok(())
}

pub fn column_norm(v: &[Complex64; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `D^s ψ` on the fiducial coframe, evaluated analytically.
pub fn spin_dirac_apply(field: &PlaneWaveDHSF, x: &SpacetimePoint) -> Multivector {
    DiracSystem::new(field.clone(), ConstantPotential::zero()).spin_dirac(x)
}

/// `D^s ψ` by central differences with step `h`.
pub fn spin_dirac_apply_fd(field: &PlaneWaveDHSF, x: &SpacetimePoint, h: f64) -> Multivector {
    DiracSystem::new(field.clone(), ConstantPotential::zero()).spin_dirac_fd(x, h)
}

pub fn dhe_residual(
    field: &PlaneWaveDHSF,
    pot: &ConstantPotential,
    m: f64,
    x: &SpacetimePoint,
) -> Multivector {
    DiracSystem::new(field.clone(), pot.clone()).dhe_residual(m, x)
}

pub fn asf_residual(
    field: &PlaneWaveDHSF,
    pot: &ConstantPotential,
    m: f64,
    x: &SpacetimePoint,
) -> Multivector {
    DiracSystem::new(field.clone(), pot.clone()).asf_residual(m, x)
}

pub fn matrix_dirac_residual(
    field: &PlaneWaveDHSF,
    pot: &ConstantPotential,
    m: f64,
    x: &SpacetimePoint,
) -> [Complex64; 4] {
    DiracSystem::new(field.clone(), pot.clone()).matrix_residual(m, x)
}

/// Kinetic momentum `P = p_μ γ^μ` with `p_0 = +sqrt(m² + |p|²)` and `p_i = -p^i`.
pub fn on_shell_momentum(m: f64, spatial: [f64; 3]) -> Result<Multivector> {
    if !m.is_finite() || m <= 0.0 {
        return Err(CliffordError::InvalidArgument(format!(
            "mass must be positive, got {m}"
        )));
    }
    let e = (m * m + spatial.iter().map(|v| v * v).sum::<f64>()).sqrt();
    Multivector::vector(sta(), &[e, -spatial[0], -spatial[1], -spatial[2]])
}

/// Plane-wave solution in the fiducial frame for a constant potential.
///
/// `ε = +1`: `ψ0 = R` with `R γ^0 ~R = P/m`; `ε = -1`: `ψ0 = R γ5`. The wave
/// vector is `k = P - ε q A`.
pub fn planewave_in_potential(
    m: f64,
    spatial: [f64; 3],
    sign: f64,
    pot: &ConstantPotential,
) -> Result<PlaneWaveDHSF> {
    let p = on_shell_momentum(m, spatial)?;
    let r = rotor_between(&p.scale(1.0 / m), &gamma(0))?;
    let psi0 = if sign > 0.0 {
        r.into_mv()
    } else {
        r.as_mv() * &gamma5()
    };
    let k = &p - &pot.coupling().scale(sign);
    let comps = std::array::from_fn(|mu| k.get(Blade::generator(mu)));
    PlaneWaveDHSF::new(SpinorialFrame::fiducial(sta()), psi0, comps, sign.signum())
}

/// Free plane wave with spatial momentum `p^i`.
pub fn planewave_solution(m: f64, spatial: [f64; 3], sign: f64) -> Result<PlaneWaveDHSF> {
    planewave_in_potential(m, spatial, sign, &ConstantPotential::zero())
}

/// One row of the residual report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub point: SpacetimePoint,
    pub dhe: f64,
    pub asf: f64,
    pub matrix: f64,
}

impl ResidualSample {
    pub fn max(&self) -> f64 {
        self.dhe.max(self.asf).max(self.matrix)
    }

    pub fn min(&self) -> f64 {
        self.dhe.min(self.asf).min(self.matrix)
    }
}

pub const CSV_HEADER: &str = "t,x,y,z,dhe_res,asf_res,matrix_res";

pub fn residual_csv(samples: &[ResidualSample]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let [t, x, y, z] = s.point.0;
        out.push_str(&format!(
            "{t},{x},{y},{z},{:e},{:e},{:e}\n",
            s.dhe, s.asf, s.matrix
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point(rng: &mut ChaCha8Rng) -> SpacetimePoint {
        SpacetimePoint(std::array::from_fn(|_| rng.random_range(-5.0..5.0)))
    }

    #[test]
    fn constant_field_has_zero_derivative() {
        let f = PlaneWaveDHSF::new(
            SpinorialFrame::fiducial(sta()),
            Multivector::one(sta()),
            [0.0; 4],
            1.0,
        )
        .unwrap();
        assert!(spin_dirac_apply(&f, &SpacetimePoint([1.0, 2.0, 3.0, 4.0])).is_zero());
    }

    #[test]
    fn rest_wave_derivative() {
        let m = 1.3;
        let f = planewave_solution(m, [0.0; 3], 1.0).unwrap();
        assert_eq!(f.psi0(), &Multivector::one(sta()));
        let x = SpacetimePoint([0.7, 0.1, -0.2, 0.3]);
        let b = &gamma(2) * &gamma(1);
        let expected = (&(&gamma(0) * &f.eval(&x)) * &b).scale(-m);
        assert!(spin_dirac_apply(&f, &x).approx_eq(&expected, 1e-14));
        let fd = spin_dirac_apply_fd(&f, &x, FD_STEP);
        assert!(fd.distance(&expected) <= 1e-6 * expected.norm());
    }

    #[test]
    fn on_shell_waves_solve_all_three_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..30 {
            let m = rng.random_range(0.5..2.0);
            let p = [
                0.6 * m,
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let sign = if trial % 2 == 0 { 1.0 } else { -1.0 };
            let pot = if trial % 3 == 0 {
                ConstantPotential::zero()
            } else {
                ConstantPotential::new(random::vector(&mut rng, sta()), rng.random_range(-1.0..1.0))
                    .unwrap()
            };
            let f = planewave_in_potential(m, p, sign, &pot).unwrap();
            let sys = DiracSystem::new(f, pot);
            for _ in 0..5 {
                let x = point(&mut rng);
                let s = sys.sample(m, &x);
                assert!(s.max() <= 1e-9, "{s:?}");
            }
        }
    }

    #[test]
    fn off_shell_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let f = planewave_solution(1.0, [0.6, 0.0, 0.0], 1.0).unwrap();
        let sys = DiracSystem::new(f, ConstantPotential::zero());
        for _ in 0..10 {
            let s = sys.sample(1.01, &point(&mut rng));
            assert!(s.min() >= 1e-3, "{s:?}");
        }
    }

    #[test]
    fn phase_bivector_acts_as_minus_pseudoscalar_on_the_ideal() {
        let sys = DiracSystem::new(
            planewave_solution(1.0, [0.0; 3], 1.0).unwrap(),
            ConstantPotential::zero(),
        );
        let p = sys.asf_projector();
        let b = sys.field.phase_bivector();
        assert!((&p * &b).approx_eq(&-&(&p * &gamma5()), 1e-15));
    }

    #[test]
    fn printed_asf_form_holds_only_without_potential() {
        let x = SpacetimePoint([0.4, 0.0, 1.0, 0.0]);
        let free = DiracSystem::new(
            planewave_solution(1.0, [0.3, -0.2, 0.5], 1.0).unwrap(),
            ConstantPotential::zero(),
        );
        assert!(free.asf_residual_printed(1.0, &x).norm() < 1e-12);
        let pot = ConstantPotential::from_components([0.3, 0.1, 0.0, -0.2], 1.0).unwrap();
        let sys = DiracSystem::new(
            planewave_in_potential(1.0, [0.3, -0.2, 0.5], 1.0, &pot).unwrap(),
            pot,
        );
        assert!(sys.asf_residual(1.0, &x).norm() < 1e-12);
        assert!(sys.asf_residual_printed(1.0, &x).norm() > 1e-2);
        // moving ⋆1 onto the coupling term restores it
        let phi = sys.asf_field(&x);
        let g5 = gamma5();
        let fixed =
            &(&sys.d_phi(&x) - &(&phi * &g5)) + &(&sys.potential.coupling() * &(&phi * &g5));
        assert!(fixed.norm() < 1e-12);
    }

    #[test]
    fn rest_column_is_a_phase_times_first_basis_vector() {
        let m = 0.8;
        let sys = DiracSystem::new(
            planewave_solution(m, [0.0; 3], 1.0).unwrap(),
            ConstantPotential::zero(),
        );
        let t = 0.37;
        let col = sys.column(&SpacetimePoint([t, 0.0, 0.0, 0.0]));
        let expected = Complex64::from_polar(1.0, -m * t);
        assert!((col[0] - expected).norm() < 1e-14);
        assert!(col[1..].iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn currents_of_positive_energy_waves_are_future_timelike() {
        let f = planewave_solution(1.0, [1.5, -0.4, 2.0], 1.0).unwrap();
        let c = f.covariants(&SpacetimePoint([1.0, 2.0, 0.0, -1.0]));
        assert!(c.j.get(Blade::generator(0)) > 0.0);
        assert!((c.j.dot(&c.j) - c.density_squared()).abs() < 1e-10);
        // J = ρ v with v = P / m
        let p = on_shell_momentum(1.0, [1.5, -0.4, 2.0]).unwrap();
        assert!(c.j.approx_eq(&p.scale(c.density_squared().sqrt()), 1e-10));
    }

    #[test]
    fn gauge_transformations() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pot = ConstantPotential::new(random::vector(&mut rng, sta()), 0.5).unwrap();
        let f = planewave_in_potential(1.0, [0.2, 0.3, -0.1], 1.0, &pot).unwrap();
        let sys = DiracSystem::new(f, pot);
        let x = point(&mut rng);
        let off = 1.2;
        let id = Rotor::identity(sta());
        assert_eq!(sys.left_gauge(&id).unwrap().field.psi0(), sys.field.psi0());
        // s = -1 flips ψ but leaves covariants alone
        let flipped = sys.left_gauge(&id.neg()).unwrap();
        assert!(flipped
            .field
            .eval(&x)
            .approx_eq(&-&sys.field.eval(&x), 1e-14));
        assert!(flipped
            .field
            .covariants(&x)
            .approx_eq(&sys.field.covariants(&x), 1e-12));
        for _ in 0..10 {
            let s = random::rotor(&mut rng, sta());
            let r = sys.dhe_residual(off, &x);
            let right = sys.right_gauge(&s).unwrap().dhe_residual(off, &x);
            assert!(right.approx_eq(&(&r * s.inverse().as_mv()), 1e-10));
            let left = sys.left_gauge(&s).unwrap().dhe_residual(off, &x);
            assert!(left.approx_eq(&(s.as_mv() * &r), 1e-10));
            let both = sys.both_gauge(&s).unwrap().dhe_residual(off, &x);
            assert!(both.approx_eq(&s.apply(&r), 1e-10));
            // solutions stay solutions
            assert!(sys.both_gauge(&s).unwrap().sample(1.0, &x).max() < 1e-9);
        }
        // spatial rotations preserve the residual norm under the right action
        let rot = Rotor::exp(&(&gamma(1) * &gamma(2)).scale(0.7)).unwrap();
        let n0 = sys.dhe_residual(off, &x).norm();
        let n1 = sys.right_gauge(&rot).unwrap().dhe_residual(off, &x).norm();
        assert!((n0 - n1).abs() < 1e-10 * n0.max(1.0));
    }

    #[test]
    fn csv_report() {
        let sys = DiracSystem::new(
            planewave_solution(1.0, [0.0; 3], 1.0).unwrap(),
            ConstantPotential::zero(),
        );
        let csv = residual_csv(&[sys.sample(1.0, &SpacetimePoint::origin())]);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(planewave_solution(0.0, [0.0; 3], 1.0).is_err());
        assert!(ConstantPotential::new(Multivector::one(sta()), 1.0).is_err());
        let not_even = PlaneWaveDHSF::new(SpinorialFrame::fiducial(sta()), gamma(0), [0.0; 4], 1.0);
        assert!(not_even.is_err());
    }
}
