//! Browser bindings for the demo page in `www/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

use clifspin::classify::{classify, find_primitive_idempotent};
use clifspin::dirac::{self, ConstantPotential, DiracSystem, SpacetimePoint};
use clifspin::text::{self, Style};
use clifspin::Signature;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn evaluate(p: usize, q: usize, source: &str) -> Result<String, String> {
    let sig = Signature::new(p, q).map_err(|e| e.to_string())?;
    let x = text::parse(source, sig)
        .and_then(|e| e.eval(sig))
        .map_err(|e| e.to_string())?;
    Ok(text::format_multivector(&x, Style::default()))
}

/// Evaluates an expression in `Cl(p,q)`.
#[wasm_bindgen]
pub fn eval_expression(p: usize, q: usize, source: &str) -> Result<String, JsValue> {
    evaluate(p, q, source).map_err(err)
}

fn describe(p: usize, q: usize) -> Result<String, String> {
    let d = classify(p, q).map_err(|e| e.to_string())?;
    let ideal = find_primitive_idempotent(p, q, 0).map_err(|e| e.to_string())?;
    let sig = Signature::new(p, q).map_err(|e| e.to_string())?;
    let factors: Vec<String> = ideal
        .factors
        .iter()
        .map(|&b| text::format_blade(b, sig, Style::default()))
        .collect();
    Ok(json!({
        "algebra": format!("Cl({p},{q}) ≅ {d}"),
        "idempotent": text::format_multivector(&ideal.idempotent, Style::default()),
        "factors": factors,
        "ideal_dim_over_k": ideal.ideal_basis.len() / ideal.division_ring.real_dim(),
        "division_ring": ideal.division_ring.to_string(),
    })
    .to_string())
}

/// Classification and a primitive idempotent of `Cl(p,q)` as JSON.
#[wasm_bindgen]
pub fn classify_algebra(p: usize, q: usize) -> Result<String, JsValue> {
    describe(p, q).map_err(err)
}

fn residuals(
    mass: f64,
    momentum: [f64; 3],
    mass_factor: f64,
    points: usize,
    seed: u64,
) -> Result<String, String> {
    let field = dirac::planewave_solution(mass, momentum, 1.0).map_err(|e| e.to_string())?;
    let sys = DiracSystem::new(field, ConstantPotential::zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<_> = (0..points)
        .map(|_| {
            sys.sample(
                mass * mass_factor,
                &SpacetimePoint(std::array::from_fn(|_| rng.random_range(-5.0..5.0))),
            )
        })
        .collect();
    let c = sys.field.covariants(&SpacetimePoint::origin());
    Ok(json!({
        "csv": dirac::residual_csv(&samples),
        "max_residual": samples.iter().map(|s| s.max()).fold(0.0, f64::max),
        "sigma": c.sigma,
        "omega": c.omega,
        "J": text::format_multivector(&c.j, Style::default()),
    })
    .to_string())
}

/// Residuals of the three forms of the Dirac equation for a free plane wave.
#[wasm_bindgen]
pub fn planewave_residuals(
    mass: f64,
    px: f64,
    py: f64,
    pz: f64,
    mass_factor: f64,
    points: usize,
    seed: u64,
) -> Result<String, JsValue> {
    residuals(mass, [px, py, pz], mass_factor, points, seed).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_errors() {
        assert_eq!(evaluate(1, 3, "e1*e2 + e2*e1").unwrap(), "0");
        assert!(evaluate(1, 3, "e9").is_err());
    }

    #[test]
    fn classify_json() {
        let v: serde_json::Value = serde_json::from_str(&describe(1, 3).unwrap()).unwrap();
        assert_eq!(v["algebra"], "Cl(1,3) ≅ H(2)");
        assert_eq!(v["ideal_dim_over_k"], 2);
    }

    #[test]
    fn planewave_json() {
        let v: serde_json::Value =
            serde_json::from_str(&residuals(1.0, [0.5, 0.0, 0.0], 1.0, 4, 1).unwrap()).unwrap();
        assert!(v["max_residual"].as_f64().unwrap() < 1e-9);
        let v: serde_json::Value =
            serde_json::from_str(&residuals(1.0, [0.5, 0.0, 0.0], 1.01, 4, 1).unwrap()).unwrap();
        assert!(v["max_residual"].as_f64().unwrap() > 1e-3);
        assert!(residuals(-1.0, [0.0; 3], 1.0, 1, 1).is_err());
    }
}
