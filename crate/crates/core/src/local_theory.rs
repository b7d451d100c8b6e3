//! Validation of the local convergence theorems, which are stated in terms
//! of the true root-vector `ξ`.
//!
//! Each `check_*` evaluates a theorem's initial condition and then runs the
//! plain Weierstrass iteration for [`DEFAULT_STEPS`] steps, testing the
//! theorem's two error estimates component-wise at every step. The roots
//! must be ordered to match `x0` (see [`crate::solver::match_roots`]).

use std::fmt;
use std::str::FromStr;

use crate::core_math::{min_pairwise_distances, p_norm_of, vec_quotient, CVec, PExponent, RVec};
use crate::error::{Error, Result};
use crate::gauge::{self, CFunction, GaugeParams};
use crate::polynomial::{separation, smale_gamma, Polynomial, RootVector};
use crate::solver::Slack;
use crate::weierstrass::step;

/// Steps run by every estimate check.
pub const DEFAULT_STEPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalTheorem {
    /// `‖(x⁰ − ξ)/d(ξ)‖_p < R(n, p)`.
    Local1,
    /// `‖(x⁰ − ξ)/d(ξ)‖_p <= R(n, p, h)`.
    Local1H,
    /// `h(‖(x⁰ − ξ)/d(x⁰)‖_p) <= 2`.
    Local2,
    /// `‖(x⁰ − ξ)/d(x⁰)‖_p <= c(σ)`.
    Local3,
}

impl LocalTheorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            LocalTheorem::Local1 => "local1",
            LocalTheorem::Local1H => "local1_h",
            LocalTheorem::Local2 => "local2",
            LocalTheorem::Local3 => "local3",
        }
    }
}

impl fmt::Display for LocalTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LocalTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "local1" => Ok(LocalTheorem::Local1),
            "local1_h" => Ok(LocalTheorem::Local1H),
            "local2" => Ok(LocalTheorem::Local2),
            "local3" => Ok(LocalTheorem::Local3),
            _ => Err(Error::Domain(format!("unknown theorem '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalCheckReport {
    pub theorem: LocalTheorem,
    /// The relevant `E(x⁰)`.
    pub condition_value: f64,
    pub threshold: f64,
    pub satisfied: bool,
    /// Contraction factor of the estimates (`σ` for the third theorem).
    pub lambda: f64,
    pub theta: Option<f64>,
    /// One entry per step; empty when the condition fails.
    pub per_step_ok: Vec<bool>,
    pub quadratic: bool,
    /// Second theorem only: `E <=` the Han-type threshold.
    pub han_ok: Option<bool>,
    /// Second theorem only: `E <=` the Wang–Zhao-type threshold.
    pub wang_zhao_ok: Option<bool>,
    /// Third theorem with the quadratic `c` only:
    /// `‖x^k − ξ‖_∞ <= σ^{2^k} max_i d_i(x⁰)` for every step.
    pub tilli_ok: Option<bool>,
}

impl LocalCheckReport {
    fn new(theorem: LocalTheorem, condition_value: f64, threshold: f64, satisfied: bool) -> Self {
        LocalCheckReport {
            theorem,
            condition_value,
            threshold,
            satisfied,
            lambda: f64::NAN,
            theta: None,
            per_step_ok: Vec::new(),
            quadratic: false,
            han_ok: None,
            wang_zhao_ok: None,
            tilli_ok: None,
        }
    }

    /// Condition holds and every estimate held.
    pub fn passed(&self) -> bool {
        self.satisfied && self.per_step_ok.iter().all(|&ok| ok) && self.tilli_ok != Some(false)
    }
}

fn check_lengths(x: &CVec, roots: &RootVector) -> Result<()> {
    if x.len() != roots.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: roots.len(),
        });
    }
    Ok(())
}

fn error_vec(x: &CVec, roots: &RootVector) -> CVec {
    x - roots.as_cvec()
}

/// `‖(x − ξ)/d(ξ)‖_p`.
pub fn e_local1(x: &CVec, roots: &RootVector, p: PExponent) -> Result<f64> {
    check_lengths(x, roots)?;
    let d = min_pairwise_distances(roots.as_cvec())?;
    Ok(p_norm_of(
        vec_quotient(&error_vec(x, roots), &d)?.as_slice(),
        p,
    ))
}

/// `‖(x − ξ)/d(x)‖_p`.
pub fn e_local2(x: &CVec, roots: &RootVector, p: PExponent) -> Result<f64> {
    check_lengths(x, roots)?;
    let d = min_pairwise_distances(x)?;
    Ok(p_norm_of(
        vec_quotient(&error_vec(x, roots), &d)?.as_slice(),
        p,
    ))
}

/// `R(n, p, h) sep f`.
pub fn dochev_radius(roots: &RootVector, p: PExponent, h: f64) -> Result<f64> {
    let gp = GaugeParams::new(roots.len(), p)?;
    Ok(gauge::radius_local1_h(&gp, h)?.value * separation(roots)?)
}

/// `R(n, p) sep f`.
pub fn km_threshold(roots: &RootVector, p: PExponent) -> Result<f64> {
    let gp = GaugeParams::new(roots.len(), p)?;
    Ok(gauge::radius_local1(&gp).value * separation(roots)?)
}

/// `R(n, p, h)/(2 γ(f))`.
pub fn yakoubsohn_threshold(
    f: &Polynomial,
    roots: &RootVector,
    p: PExponent,
    h: f64,
) -> Result<f64> {
    let gp = GaugeParams::new(roots.len(), p)?;
    let r = gauge::radius_local1_h(&gp, h)?.value;
    Ok(r / (2.0 * smale_gamma(f, roots)?))
}

/// Runs `steps` Weierstrass steps from `x0` and checks, for each `k`,
/// `|x^{k+1} − ξ| ⪯ c1(k)|x^k − ξ|` and `|x^{k+1} − ξ| ⪯ c2(k+1)|x⁰ − ξ|`.
/// Returns the per-step verdicts and the iterates.
fn run_estimates(
    f: &Polynomial,
    roots: &RootVector,
    x0: &CVec,
    steps: usize,
    c1: impl Fn(usize) -> f64,
    c2: impl Fn(usize) -> f64,
) -> (Vec<bool>, Vec<CVec>) {
    let slack = Slack::default();
    let xi = roots.as_cvec();
    let err = |x: &CVec| -> RVec { crate::core_math::abs_vec(&error_vec(x, roots)) };
    let e0 = err(x0);
    let mut x = x0.clone();
    let mut ok = Vec::with_capacity(steps);
    let mut iterates = vec![x0.clone()];
    for k in 0..steps {
        let next = match step(f, &x) {
            Ok(s) if s.output.is_finite() => s.output,
            _ => {
                ok.resize(steps, false);
                break;
            }
        };
        let (ek, ek1) = (err(&x), err(&next));
        let (r1, r2) = (c1(k), c2(k + 1));
        let holds = (0..xi.len()).all(|i| {
            let s = xi[i].norm();
            slack.admits(ek1[i], r1 * ek[i], s) && slack.admits(ek1[i], r2 * e0[i], s)
        });
        ok.push(holds);
        iterates.push(next.clone());
        x = next;
    }
    (ok, iterates)
}

/// `λ^{2^k}`, saturating for large `k`.
fn pow2k(lambda: f64, k: usize) -> f64 {
    lambda.powf(2f64.powi(i32::try_from(k).unwrap_or(i32::MAX)))
}

/// `λ^{2^k − 1}`.
fn pow2k_m1(lambda: f64, k: usize) -> f64 {
    lambda.powf(2f64.powi(i32::try_from(k).unwrap_or(i32::MAX)) - 1.0)
}

/// First local theorem; with `h` given, its variant with `R(n, p, h)`.
pub fn check_local1(
    f: &Polynomial,
    roots: &RootVector,
    x0: &CVec,
    p: PExponent,
    h: Option<f64>,
) -> Result<LocalCheckReport> {
    let gp = GaugeParams::new(x0.len(), p)?;
    let e = e_local1(x0, roots, p)?;
    let mut report = match h {
        None => {
            let r = gauge::radius_local1(&gp).value;
            let mut rep = LocalCheckReport::new(LocalTheorem::Local1, e, r, e < r);
            rep.lambda = gauge::phi_local1(e, &gp).unwrap_or(f64::INFINITY);
            rep
        }
        Some(h) => {
            let r = gauge::radius_local1_h(&gp, h)?.value;
            let mut rep = LocalCheckReport::new(LocalTheorem::Local1H, e, r, e <= r);
            rep.lambda = h;
            rep
        }
    };
    if report.satisfied {
        let lambda = report.lambda;
        report.quadratic = lambda < 1.0;
        report.per_step_ok = run_estimates(
            f,
            roots,
            x0,
            DEFAULT_STEPS,
            |k| pow2k(lambda, k),
            |k| pow2k_m1(lambda, k),
        )
        .0;
    }
    Ok(report)
}

/// Second local theorem. The condition `h(E) <= 2` is evaluated as
/// `E <= R`, with `R` the solution of `h(R) = 2`; convergence is quadratic
/// when the inequality is strict.
pub fn check_local2(
    f: &Polynomial,
    roots: &RootVector,
    x0: &CVec,
    p: PExponent,
) -> Result<LocalCheckReport> {
    let gp = GaugeParams::new(x0.len(), p)?;
    let e = e_local2(x0, roots, p)?;
    let r = gauge::radius_local2(&gp).value;
    let mut report = LocalCheckReport::new(LocalTheorem::Local2, e, r, e <= r);
    report.han_ok = Some(e <= gauge::lower_bound_local2(&gp));
    report.wang_zhao_ok = Some(e <= gauge::wang_zhao_threshold(&gp));
    if !report.satisfied {
        return Ok(report);
    }
    let lambda = gauge::phi_local2(e, &gp)?;
    let theta = gauge::psi_local2(e, &gp)?;
    report.lambda = lambda;
    report.theta = Some(theta);
    report.quadratic = e < r;
    report.per_step_ok = run_estimates(
        f,
        roots,
        x0,
        DEFAULT_STEPS,
        |k| theta * pow2k(lambda, k),
        |k| theta.powi(i32::try_from(k).unwrap_or(i32::MAX)) * pow2k_m1(lambda, k),
    )
    .0;
    Ok(report)
}

/// Third local theorem with majorant `c` and contraction factor `sigma`.
pub fn check_local3(
    f: &Polynomial,
    roots: &RootVector,
    x0: &CVec,
    p: PExponent,
    c: CFunction,
    sigma: f64,
) -> Result<LocalCheckReport> {
    let gp = GaugeParams::new(x0.len(), p)?;
    if !gauge::sigma_feasible(sigma, &gp, c) {
        return Err(Error::Precondition(format!(
            "sigma = {sigma} violates the sigma-condition for n = {}, p = {p}",
            gp.n()
        )));
    }
    let e = e_local2(x0, roots, p)?;
    let threshold = c.eval(sigma, &gp)?;
    let mut report = LocalCheckReport::new(LocalTheorem::Local3, e, threshold, e <= threshold);
    report.lambda = sigma;
    if !report.satisfied {
        return Ok(report);
    }
    report.quadratic = true;
    let (ok, iterates) = run_estimates(
        f,
        roots,
        x0,
        DEFAULT_STEPS,
        |k| pow2k(sigma, k),
        |k| pow2k_m1(sigma, k),
    );
    report.per_step_ok = ok;
    if c == CFunction::Quadratic {
        let d_max = min_pairwise_distances(x0)?.max();
        let slack = Slack::default();
        report.tilli_ok = Some(iterates.iter().enumerate().all(|(k, x)| {
            let err = error_vec(x, roots).p_norm(PExponent::INF);
            slack.admits(err, pow2k(sigma, k) * d_max, d_max)
        }));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::Complex;
    use crate::polynomial::from_roots;

    fn rv(re: &[f64]) -> CVec {
        CVec::from_reals(re).unwrap()
    }

    fn roots(re: &[f64]) -> RootVector {
        RootVector::new(rv(re))
    }

    fn z2m1() -> Polynomial {
        Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn e_local_examples() {
        let xi = roots(&[1.0, -1.0]);
        assert_eq!(e_local1(xi.as_cvec(), &xi, PExponent::INF).unwrap(), 0.0);
        assert_eq!(
            e_local1(&rv(&[2.0, -2.0]), &xi, PExponent::INF).unwrap(),
            0.5
        );
        let e = e_local1(
            &rv(&[0.1, 1.0, 3.0]),
            &roots(&[0.0, 1.0, 3.0]),
            PExponent::ONE,
        )
        .unwrap();
        assert!((e - 0.1).abs() < 1e-15);
        assert!(matches!(
            e_local1(&rv(&[0.0, 1.0]), &roots(&[1.0, 1.0]), PExponent::INF),
            Err(Error::NotDistinct { .. })
        ));

        assert_eq!(e_local2(xi.as_cvec(), &xi, PExponent::INF).unwrap(), 0.0);
        assert_eq!(
            e_local2(&rv(&[2.0, -2.0]), &xi, PExponent::INF).unwrap(),
            0.25
        );
        let e = e_local2(&rv(&[1.1, -1.0]), &xi, PExponent::INF).unwrap();
        assert!((e - 0.1 / 2.1).abs() < 1e-15);
        assert!(matches!(
            e_local2(&rv(&[0.5, 0.5]), &xi, PExponent::INF),
            Err(Error::NotDistinct { .. })
        ));
    }

    #[test]
    fn thresholds() {
        let xi = roots(&[1.0, -1.0]);
        assert!((dochev_radius(&xi, PExponent::INF, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((km_threshold(&xi, PExponent::INF).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let y = yakoubsohn_threshold(&z2m1(), &xi, PExponent::INF, 0.5).unwrap();
        assert!((y - 0.25).abs() < 1e-15);
    }

    #[test]
    fn local1_examples() {
        let xi = roots(&[1.0, -1.0]);
        let rep = check_local1(&z2m1(), &xi, &rv(&[1.05, -0.95]), PExponent::INF, None).unwrap();
        assert!((rep.condition_value - 0.025).abs() < 1e-15);
        assert!((rep.threshold - 1.0 / 3.0).abs() < 1e-15);
        assert!(rep.satisfied && rep.quadratic);
        assert_eq!(rep.per_step_ok.len(), DEFAULT_STEPS);
        assert!(rep.passed());

        // E₁ = R exactly: strict inequality fails
        let r = rep.threshold;
        let g = Polynomial::from_reals(&[1.0, -1.0, 0.0]).unwrap();
        let rep = check_local1(
            &g,
            &roots(&[0.0, 1.0]),
            &rv(&[r, 1.0]),
            PExponent::INF,
            None,
        )
        .unwrap();
        assert_eq!(rep.condition_value, r);
        assert!(!rep.satisfied);
        assert!(rep.per_step_ok.is_empty());

        let rep = check_local1(&z2m1(), &xi, &rv(&[1.4, -0.6]), PExponent::INF, Some(0.5)).unwrap();
        assert!((rep.threshold - 0.25).abs() < 1e-15);
        assert!((rep.condition_value - 0.2).abs() < 1e-15);
        assert_eq!(rep.theorem, LocalTheorem::Local1H);
        assert_eq!(rep.lambda, 0.5);
        assert!(rep.passed());
    }

    #[test]
    fn local2_examples() {
        let xi = roots(&[1.0, -1.0]);
        let gp = GaugeParams::new(2, PExponent::INF).unwrap();
        let rep = check_local2(&z2m1(), &xi, &rv(&[1.1, -1.05]), PExponent::INF).unwrap();
        assert!((rep.condition_value - 0.1 / 2.15).abs() < 1e-15);
        let h = gauge::h_local2(rep.condition_value, &gp).unwrap();
        // (1 + 2E)(1 + E) with E = 2/43
        assert!((h - 45.0 * 47.0 / (43.0 * 43.0)).abs() < 1e-14);
        assert!(rep.satisfied && rep.quadratic && rep.passed());
        assert_eq!(rep.han_ok, Some(true));
        assert!(rep.theta.is_some());

        // E₂ = R exactly: x0 = (1 + t, −1) with t/(2 + t) = R
        let r = gauge::radius_local2(&gp).value;
        let t = 2.0 * r / (1.0 - r);
        let x0 = rv(&[1.0 + t, -1.0]);
        let rep = check_local2(&z2m1(), &xi, &x0, PExponent::INF).unwrap();
        assert!((rep.condition_value - r).abs() < 1e-15);
        if rep.condition_value <= r {
            assert!(rep.satisfied && !rep.quadratic);
            assert!(rep.passed());
        }

        let rep = check_local2(&z2m1(), &xi, xi.as_cvec(), PExponent::INF).unwrap();
        assert!(rep.satisfied && rep.passed());
        assert_eq!(rep.condition_value, 0.0);
    }

    fn ten_roots() -> RootVector {
        RootVector::new(
            CVec::new(
                (0..10)
                    .map(|k| Complex::from_polar(2.0, 0.6 * k as f64))
                    .collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn local3_examples() {
        let xi = ten_roots();
        let f = from_roots(&xi, Complex::new(1.0, 0.0)).unwrap();
        let gp = GaugeParams::new(10, PExponent::INF).unwrap();
        let c = gauge::c_quadratic(0.5, &gp).unwrap();
        // every component pushed outward by the same relative amount
        let x0 = CVec::new(
            xi.as_cvec()
                .iter()
                .map(|z| z * (1.0 + 0.5 * c * 0.5))
                .collect(),
        )
        .unwrap();
        let rep = check_local3(&f, &xi, &x0, PExponent::INF, CFunction::Quadratic, 0.5).unwrap();
        assert!(rep.satisfied, "{} > {}", rep.condition_value, rep.threshold);
        assert!(rep.passed());
        assert_eq!(rep.tilli_ok, Some(true));

        let rep = check_local3(
            &f,
            &xi,
            xi.as_cvec(),
            PExponent::INF,
            CFunction::Quadratic,
            0.5,
        )
        .unwrap();
        assert!(rep.passed());

        let cap = gauge::rational_sigma_cap(&gp);
        assert!(matches!(
            check_local3(
                &f,
                &xi,
                &x0,
                PExponent::INF,
                CFunction::Rational,
                cap + 0.01
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn theorem_names() {
        for t in ["local1", "local1_h", "local2", "local3"] {
            assert_eq!(t.parse::<LocalTheorem>().unwrap().as_str(), t);
        }
        assert!("local4".parse::<LocalTheorem>().is_err());
    }
}
