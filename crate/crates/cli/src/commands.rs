//! Subcommands. Each writes its report to `out` and says whether every
//! checked residual stayed within tolerance.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use clifspin::classify::{classify, find_primitive_idempotent};
use clifspin::dirac::{self, ConstantPotential, DiracSystem, SpacetimePoint};
use clifspin::groups::{is_spin_e, Rotor, SpinorialFrame};
use clifspin::matrix_rep::{anticommutator_defect, matrix_of, s_of_rotor, standard_gammas};
use clifspin::spinor::{self, bilinear_covariants, canonical_decompose, DHSJson, DHSRep};
use clifspin::text::{self, Style};
use clifspin::{random, CliffordError, Multivector, Signature};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Debug, Parser)]
#[command(
    name = "clifspin",
    version,
    about = "Clifford algebras, minimal ideals and spacetime spinors"
)]
pub struct Cli {
    /// Print `^`, `_|`, `|_` instead of `∧`, `⌟`, `⌞`.
    #[arg(long, global = true)]
    pub ascii: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix algebra isomorphic to Cl(p,q).
    Classify(SigArgs),
    /// Primitive idempotent and minimal left ideal of Cl(p,q).
    Idempotent {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fierz identities on random regular spinors, with variant resolution.
    Fierz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Emit the resolution report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Plane-wave Dirac solution: residual CSV and covariants JSON.
    Planewave(PlanewaveArgs),
    /// Homomorphism residuals of the gamma-matrix map and of S(u).
    VerifyRep {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Canonical factors rho, beta, R of a spinor given as JSON.
    Decompose {
        /// Multivector JSON or `{"frame_rotor":..,"psi":..}`; `-` reads stdin.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Evaluate an expression. Generators are e1..en with e1..ep squaring to +1;
    /// in Cl(1,3) g0..g3 alias e1..e4.
    Eval {
        #[arg(long, value_parser = parse_signature)]
        sig: Signature,
        expr: String,
        /// Print the multivector JSON schema instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct SigArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
}

#[derive(Debug, Args)]
pub struct PlanewaveArgs {
    #[arg(long)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub px: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub py: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pz: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub charge: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub at: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub ax: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub ay: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub az: f64,
    /// Negative-energy branch.
    #[arg(long)]
    pub negative: bool,
    /// Evaluate the equations with the mass scaled by this factor.
    #[arg(long, default_value_t = 1.0)]
    pub mass_factor: f64,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the covariants JSON here instead of after the CSV.
    #[arg(long)]
    pub covariants: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    AboveTolerance,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::AboveTolerance
        }
    }
}

pub fn parse_signature(s: &str) -> std::result::Result<Signature, String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    let p = p.trim().parse().map_err(|e| format!("{e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{e}"))?;
    Signature::new(p, q).map_err(|e| e.to_string())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let style = Style {
        ascii: cli.ascii,
        gamma_names: false,
    };
    match &cli.command {
        Command::Classify(s) => {
            let d = classify(s.p, s.q)?;
            if cli.ascii {
                writeln!(out, "Cl({},{}) = {}", s.p, s.q, d.to_ascii())?;
            } else {
                writeln!(out, "Cl({},{}) ≅ {d}", s.p, s.q)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Idempotent { sig, seed } => idempotent(sig, *seed, style, out),
        Command::Fierz {
            trials,
            seed,
            tol,
            json,
        } => fierz(*trials, *seed, *tol, *json, out),
        Command::Planewave(a) => planewave(a, out),
        Command::VerifyRep { trials, seed, tol } => verify_rep(*trials, *seed, *tol, out),
        Command::Decompose { input, tol } => decompose(input, *tol, style, out),
        Command::Eval { sig, expr, json } => {
            let x = text::parse(expr, *sig)?.eval(*sig)?;
            if *json {
                writeln!(out, "{}", clifspin::json::to_json(&x))?;
            } else {
                writeln!(out, "{}", text::format_multivector(&x, style))?;
            }
            Ok(Outcome::Pass)
        }
    }
}

fn idempotent(s: &SigArgs, seed: u64, style: Style, out: &mut dyn Write) -> Result<Outcome> {
    let d = classify(s.p, s.q)?;
    let sig = Signature::new(s.p, s.q)?;
    let ideal = find_primitive_idempotent(s.p, s.q, seed)?;
    let factors: Vec<String> = ideal
        .factors
        .iter()
        .map(|&b| text::format_blade(b, sig, style))
        .collect();
    let algebra = if style.ascii {
        d.to_ascii()
    } else {
        d.to_string()
    };
    writeln!(out, "algebra: {algebra}")?;
    writeln!(
        out,
        "idempotent: {}",
        text::format_multivector(&ideal.idempotent, style)
    )?;
    writeln!(out, "factors: {}", factors.join(", "))?;
    writeln!(out, "k: {}", ideal.k_factors)?;
    writeln!(out, "division ring: {}", ideal.division_ring)?;
    writeln!(out, "ideal real dim: {}", ideal.ideal_basis.len())?;
    writeln!(
        out,
        "ideal dim over {}: {}",
        ideal.division_ring,
        ideal.ideal_basis.len() / ideal.division_ring.real_dim()
    )?;
    Ok(Outcome::Pass)
}

fn fierz(
    trials: usize,
    seed: u64,
    tol: f64,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batch: Vec<_> = (0..trials)
        .map(|_| {
            let (psi, ..) = random::regular_spinor(&mut rng);
            spinor::fierz_residuals(&bilinear_covariants(&DHSRep::fiducial(psi).expect("even")))
        })
        .collect();
    let report = spinor::resolve_fierz(&batch, tol);
    let ok = report.iter().all(|r| r.resolved_form().is_some());
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        return Ok(Outcome::from_ok(ok));
    }
    writeln!(out, "{:<42} {:>9}  result", "identity", "printed")?;
    for r in &report {
        let result = match (r.printed_holds(), r.resolved_form()) {
            (true, _) => "holds".to_string(),
            (false, Some(f)) => format!("holds as {f} ({:.1e})", r.best_max()),
            (false, None) => format!("FAILS (best {:.1e})", r.best_max()),
        };
        writeln!(out, "{:<42} {:>9.1e}  {result}", r.name, r.printed_max)?;
    }
    writeln!(out, "trials: {trials}, seed: {seed}, tol: {tol:e}")?;
    Ok(Outcome::from_ok(ok))
}

fn planewave(a: &PlanewaveArgs, out: &mut dyn Write) -> Result<Outcome> {
    let pot = ConstantPotential::from_components([a.at, a.ax, a.ay, a.az], a.charge)?;
    let sign = if a.negative { -1.0 } else { 1.0 };
    let field = dirac::planewave_in_potential(a.mass, [a.px, a.py, a.pz], sign, &pot)?;
    let sys = DiracSystem::new(field, pot);
    let m = a.mass * a.mass_factor;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let samples: Vec<_> = (0..a.points)
        .map(|_| {
            let x = SpacetimePoint(std::array::from_fn(|_| rng.random_range(-5.0..5.0)));
            sys.sample(m, &x)
        })
        .collect();
    write!(out, "{}", dirac::residual_csv(&samples))?;
    let c = sys.field.covariants(&SpacetimePoint::origin());
    let doc = json!({
        "mass": a.mass,
        "wave_vector": sys.field.wave_vector(),
        "energy_sign": sign,
        "covariants_at_origin": c,
        "max_residual": samples.iter().map(|s| s.max()).fold(0.0, f64::max),
    });
    let doc = serde_json::to_string_pretty(&doc)?;
    match &a.covariants {
        Some(path) => std::fs::write(path, doc + "\n")?,
        None => writeln!(out, "\n{doc}")?,
    }
    Ok(Outcome::from_ok(samples.iter().all(|s| s.max() <= a.tol)))
}

fn verify_rep(trials: usize, seed: u64, tol: f64, out: &mut dyn Write) -> Result<Outcome> {
    let sig = Signature::spacetime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = standard_gammas();
    let d13 = (0..4)
        .map(|mu| {
            matrix_of(&Multivector::generator(sig, mu)).map(|g| g.max_abs_diff(&rep.gammas[mu]))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut hom = 0.0f64;
    let mut s_hom = 0.0f64;
    for _ in 0..trials {
        let x = random::multivector(&mut rng, sig);
        let y = random::multivector(&mut rng, sig);
        let lhs = matrix_of(&(&x * &y))?;
        let rhs = matrix_of(&x)? * matrix_of(&y)?;
        hom = hom.max(lhs.max_abs_diff(&rhs));
        let u = random::rotor(&mut rng, sig);
        let v = random::rotor(&mut rng, sig);
        let s = s_of_rotor(&u)? * s_of_rotor(&v)?;
        s_hom = s_hom.max(s_of_rotor(&u.compose(&v))?.max_abs_diff(&s));
    }
    let anti = anticommutator_defect(&rep);
    writeln!(out, "gamma matrices vs standard: {d13:e}")?;
    writeln!(out, "anticommutator defect: {anti:e}")?;
    writeln!(out, "matrix_of(xy) - matrix_of(x)matrix_of(y): {hom:e}")?;
    writeln!(out, "S(uv) - S(u)S(v): {s_hom:e}")?;
    writeln!(out, "trials: {trials}, seed: {seed}, tol: {tol:e}")?;
    Ok(Outcome::from_ok(
        d13 == 0.0 && anti == 0.0 && hom <= tol && s_hom <= tol,
    ))
}

fn read_spinor(input: &PathBuf) -> Result<DHSRep> {
    let mut src = String::new();
    if input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src)?;
    } else {
        src = std::fs::read_to_string(input)?;
    }
    let value: serde_json::Value = serde_json::from_str(&src)?;
    if value.get("psi").is_some() {
        let j: DHSJson = serde_json::from_value(value)?;
        return Ok(DHSRep::try_from(j)?);
    }
    let psi: Multivector = serde_json::from_value(value)?;
    if psi.signature() != Signature::spacetime() {
        return Err(CliffordError::WrongSignature {
            expected: Signature::spacetime(),
            found: psi.signature(),
        }
        .into());
    }
    Ok(DHSRep::new(SpinorialFrame::fiducial(psi.signature()), psi)?)
}

fn decompose(input: &PathBuf, tol: f64, style: Style, out: &mut dyn Write) -> Result<Outcome> {
    let d = read_spinor(input)?;
    let f = canonical_decompose(&d)?;
    let err = f.reconstruct().distance(d.psi());
    let r: &Rotor = &f.rotor;
    writeln!(out, "rho: {}", text::format_real(f.rho))?;
    writeln!(out, "beta: {}", text::format_real(f.beta))?;
    writeln!(out, "R: {}", text::format_multivector(r.as_mv(), style))?;
    writeln!(out, "R in Spin^e: {}", is_spin_e(r.as_mv()))?;
    writeln!(out, "reconstruction residual: {err:e}")?;
    Ok(Outcome::from_ok(err <= tol * d.psi().norm().max(1.0)))
}
