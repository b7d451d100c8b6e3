//! Browser bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string; the page parses it with `JSON.parse`.
//! Complex vectors cross the boundary as interleaved `[re0, im0, re1, ...]`
//! arrays, and `p = Infinity` selects the max-norm.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wdk_core::gauge::{self, GaugeParams};
use wdk_core::solver::{self, GuessStrategy, IterationMode, SolveOptions, TraceRetention};
use wdk_core::{CVec, Complex, PExponent, Polynomial};

/// Largest number of sample points [`gauge_curves`] will produce.
pub const MAX_SAMPLES: usize = 2000;

fn interleaved(values: &[f64], what: &str) -> Result<Vec<Complex>, String> {
    if !values.len().is_multiple_of(2) {
        return Err(format!(
            "{what}: expected re/im pairs, got {} numbers",
            values.len()
        ));
    }
    Ok(values.chunks(2).map(|c| Complex::new(c[0], c[1])).collect())
}

fn exponent(p: f64) -> Result<PExponent, String> {
    if p == f64::INFINITY {
        Ok(PExponent::INF)
    } else {
        PExponent::new(p).map_err(|e| e.to_string())
    }
}

/// JSON numbers cannot be infinite or NaN.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn pair(z: Complex) -> Value {
    json!([num(z.re), num(z.im)])
}

/// Solves and reports roots, disks and per-root trajectories.
/// An empty `x0` picks start points on a circle enclosing the zeros.
pub fn solve_report(coeffs: &[f64], x0: &[f64], p: f64, mode: &str) -> Result<String, String> {
    let f = Polynomial::new(interleaved(coeffs, "coefficients")?).map_err(|e| e.to_string())?;
    let x0 = if x0.is_empty() {
        solver::initial_guess(&f, GuessStrategy::Circle)
    } else {
        CVec::new(interleaved(x0, "start vector")?).map_err(|e| e.to_string())?
    };
    if x0.len() != f.degree() {
        return Err(format!(
            "start vector has {} entries, degree is {}",
            x0.len(),
            f.degree()
        ));
    }
    let mut opts = SolveOptions::new(exponent(p)?);
    opts.mode = mode.parse::<IterationMode>().map_err(|e| e.to_string())?;
    opts.retention = TraceRetention::Full;
    let report = solver::solve(&f, &x0, &opts).map_err(|e| e.to_string())?;

    let trajectories: Vec<Value> = (0..f.degree())
        .map(|i| Value::Array(report.trace.iterates.iter().map(|x| pair(x[i])).collect()))
        .collect();
    let disks: Value = match &report.disks {
        Some(d) => d
            .iter()
            .map(|d| json!({"center": pair(d.center), "radius": num(d.radius)}))
            .collect(),
        None => Value::Null,
    };
    let certificate = report.certificate.as_ref().map_or(Value::Null, |c| {
        json!({
            "e0": num(c.e0),
            "lambda": num(c.lambda),
            "theta": num(c.theta),
            "passed": c.passed,
            "quadratic": c.quadratic,
            "anchor": c.anchor,
        })
    });
    Ok(json!({
        "status": report.status.as_str(),
        "iterations": report.iterations,
        "roots": report.roots.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
        "disks": disks,
        "certificate": certificate,
        "e_values": report.trace.e_values.iter().map(|&e| num(e)).collect::<Vec<_>>(),
        "trajectories": trajectories,
    })
    .to_string())
}

/// All convergence radii and thresholds for degree `n`.
pub fn radii_report(n: usize, p: f64) -> Result<String, String> {
    let gp = GaugeParams::new(n, exponent(p)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "local1": gauge::radius_local1(&gp).value,
        "local2": gauge::radius_local2(&gp).value,
        "local2_lower_bound": gauge::lower_bound_local2(&gp),
        "wang_zhao": gauge::wang_zhao_threshold(&gp),
        "semilocal": gauge::radius_semi(&gp).value,
        "semilocal_simple": gauge::simple_semilocal_threshold(&gp),
    })
    .to_string())
}

/// Samples `φ`, `β` and `tφ` of the semilocal theory on `[0, 1.5 R]`
/// (clipped to the domain), plus the local `ϕ` for comparison.
pub fn gauge_curves_report(n: usize, p: f64, samples: usize) -> Result<String, String> {
    let gp = GaugeParams::new(n, exponent(p)?).map_err(|e| e.to_string())?;
    let samples = samples.clamp(2, MAX_SAMPLES);
    let r = gauge::radius_semi(&gp).value;
    let end = (1.5 * r).min(0.999 * gp.gauge_limit().min(1.0));
    let ts: Vec<f64> = (0..samples)
        .map(|k| end * k as f64 / (samples - 1) as f64)
        .collect();
    let curve = |g: fn(f64, &GaugeParams) -> wdk_core::Result<f64>| -> Vec<Value> {
        ts.iter()
            .map(|&t| g(t, &gp).map_or(Value::Null, num))
            .collect()
    };
    Ok(json!({
        "t": ts,
        "phi_semi": curve(gauge::phi_semi),
        "beta_semi": curve(gauge::beta_semi),
        "varphi_semi": curve(gauge::varphi_semi),
        "phi_local1": curve(gauge::phi_local1),
        "radius_semi": r,
    })
    .to_string())
}

fn js_err(msg: String) -> JsValue {
    JsValue::from_str(&msg)
}

#[wasm_bindgen]
pub fn solve(coeffs: &[f64], x0: &[f64], p: f64, mode: &str) -> Result<String, JsValue> {
    solve_report(coeffs, x0, p, mode).map_err(js_err)
}

#[wasm_bindgen]
pub fn radii(n: usize, p: f64) -> Result<String, JsValue> {
    radii_report(n, p).map_err(js_err)
}

#[wasm_bindgen(js_name = gaugeCurves)]
pub fn gauge_curves(n: usize, p: f64, samples: usize) -> Result<String, JsValue> {
    gauge_curves_report(n, p, samples).map_err(js_err)
}
