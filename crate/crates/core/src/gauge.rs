//! Scalar control functions of the convergence theorems and the radii they
//! define.
//!
//! Three families live here, one per function of initial conditions:
//!
//! * `*_local1`: the error is measured as `‖(x − ξ)/d(ξ)‖_p`;
//! * `*_local2`, `h_local2`, `c_*`: the error is measured as `‖(x − ξ)/d(x)‖_p`;
//! * `*_semi`: the computable quantity `‖W(x)/d(x)‖_p`.
//!
//! Throughout, `a = (n−1)^{1/q}`, `b = 2^{1/q}` and `c = (n−1)^{1/p}`.

use crate::core_math::PExponent;
use crate::error::{domain, Result};

/// Degree `n` and exponent `p` shared by every gauge function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams {
    n: usize,
    p: PExponent,
    a: f64,
    b: f64,
    c: f64,
}

impl GaugeParams {
    pub fn new(n: usize, p: PExponent) -> Result<Self> {
        if n < 2 {
            return domain(format!("degree n = {n} must be at least 2"));
        }
        let m = (n - 1) as f64;
        Ok(GaugeParams {
            n,
            p,
            a: m.powf(p.inv_q()),
            b: 2f64.powf(p.inv_q()),
            c: m.powf(p.inv_p()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> PExponent {
        self.p
    }

    /// `(n−1)^{1/q}`
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `2^{1/q}`
    pub fn b(&self) -> f64 {
        self.b
    }

    /// `(n−1)^{1/p}`
    pub fn c(&self) -> f64 {
        self.c
    }

    /// `2^{−1/q}`, the upper end of every gauge interval.
    pub fn gauge_limit(&self) -> f64 {
        1.0 / self.b
    }

    fn m(&self) -> i32 {
        (self.n - 1) as i32
    }
}

/// Which defining equation a radius solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusKind {
    /// `ϕ(R) = 1` for the first local theory.
    Local1,
    /// `ϕ(R) = h`.
    Local1H(f64),
    /// `h(R) = 2` for the second local theory.
    Local2,
    /// `φ(R) = 1` for the semilocal theory.
    Semilocal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    pub value: f64,
    pub kind: RadiusKind,
    pub params: GaugeParams,
}

/// Bisection bracket offset below `2^{−1/q}`.
pub const BRACKET_EPS: f64 = 1e-15;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-14;
pub const BISECTION_MAX_ITER: usize = 200;

/// `(1 + u)^m − 1` without cancellation for small `u`.
fn pow_m1(u: f64, m: i32) -> f64 {
    if m == 1 {
        u
    } else {
        (f64::from(m) * u.ln_1p()).exp_m1()
    }
}

/// `(1 + u)^m`, exact for `m = 1`.
fn pow1p(u: f64, m: i32) -> f64 {
    if m == 1 {
        1.0 + u
    } else {
        (1.0 + u).powi(m)
    }
}

fn check_gauge_domain(t: f64, gp: &GaugeParams) -> Result<()> {
    if !(t >= 0.0 && t < gp.gauge_limit()) {
        return domain(format!(
            "t = {t} outside [0, 2^(-1/q)) = [0, {})",
            gp.gauge_limit()
        ));
    }
    Ok(())
}

/// Finds the root of a nondecreasing `g` on `(0, hi)` given `g(0) < 0 < g(hi)`.
fn bisect(mut g: impl FnMut(f64) -> f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, hi);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `S_k(t) = 1 + t + … + t^{k−1}`, with `S_0 ≡ 0`.
pub fn geom_sum(nterms: u32, t: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for _ in 0..nterms {
        sum += term;
        term *= t;
    }
    sum
}

// ---------------------------------------------------------------------------
// First local theory

/// `ϕ(t) = (1 + t/(c(1 − b t)))^{n−1} − 1` on `[0, 2^{−1/q})`.
pub fn phi_local1(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_gauge_domain(t, gp)?;
    Ok(pow_m1(t / (gp.c * (1.0 - gp.b * t)), gp.m()))
}

/// `t ϕ(t)`.
pub fn varphi_local1(t: f64, gp: &GaugeParams) -> Result<f64> {
    Ok(t * phi_local1(t, gp)?)
}

/// Closed-form fixed point of `varphi_local1`, where `ϕ(R) = 1`.
pub fn radius_local1(gp: &GaugeParams) -> Radius {
    Radius {
        value: local1_closed_form(gp, 1.0),
        kind: RadiusKind::Local1,
        params: *gp,
    }
}

fn local1_closed_form(gp: &GaugeParams, h: f64) -> f64 {
    let s = (h.ln_1p() / f64::from(gp.m())).exp_m1();
    s / (gp.b * s + 1.0 / gp.c)
}

/// Solution of `ϕ(t) = h`, for `0 < h < 1`.
pub fn radius_local1_h(gp: &GaugeParams, h: f64) -> Result<Radius> {
    if !(h > 0.0 && h < 1.0) {
        return domain(format!("h = {h} must lie in (0, 1)"));
    }
    Ok(Radius {
        value: local1_closed_form(gp, h),
        kind: RadiusKind::Local1H(h),
        params: *gp,
    })
}

// ---------------------------------------------------------------------------
// Second local theory

/// `h(t) = (1 + b t)(1 + t/c)^{n−1}`, `t >= 0`.
pub fn h_local2(t: f64, gp: &GaugeParams) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("t = {t} must be nonnegative"));
    }
    Ok((1.0 + gp.b * t) * pow1p(t / gp.c, gp.m()))
}

/// `β(t) = (1 + t/c)^{n−1} − 1`.
pub fn beta_local2(t: f64, gp: &GaugeParams) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("t = {t} must be nonnegative"));
    }
    Ok(pow_m1(t / gp.c, gp.m()))
}

/// `ψ(t) = 1 − b t (1 + t/c)^{n−1}`.
pub fn psi_local2(t: f64, gp: &GaugeParams) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("t = {t} must be nonnegative"));
    }
    Ok(1.0 - gp.b * t * pow1p(t / gp.c, gp.m()))
}

/// `φ(t) = β(t)/ψ(t)`, defined while `ψ(t) > 0`.
pub fn phi_local2(t: f64, gp: &GaugeParams) -> Result<f64> {
    let psi = psi_local2(t, gp)?;
    if !(psi > 0.0) {
        return domain(format!("psi({t}) = {psi} is not positive"));
    }
    Ok(beta_local2(t, gp)? / psi)
}

/// `t β(t)/ψ(t)`.
pub fn varphi_local2(t: f64, gp: &GaugeParams) -> Result<f64> {
    Ok(t * phi_local2(t, gp)?)
}

/// Unique positive solution of `h(t) = 2`.
pub fn radius_local2(gp: &GaugeParams) -> Radius {
    let g = |t: f64| (1.0 + gp.b * t) * pow1p(t / gp.c, gp.m()) - 2.0;
    Radius {
        value: bisect(g, gp.gauge_limit() - BRACKET_EPS),
        kind: RadiusKind::Local2,
        params: *gp,
    }
}

/// `n(2^{1/n} − 1)/((n−1)^{1/q} + 2^{1/q})`, a lower bound for
/// [`radius_local2`]; it is also the Han-type threshold.
pub fn lower_bound_local2(gp: &GaugeParams) -> f64 {
    let n = gp.n as f64;
    n * (std::f64::consts::LN_2 / n).exp_m1() / (gp.a + gp.b)
}

/// Wang–Zhao-type threshold
/// `(2^{1/(n−1)} − 1)/(2^{1+1/q}(2^{1/(n−1)} − 1) + (n−1)^{−1/p})`.
pub fn wang_zhao_threshold(gp: &GaugeParams) -> f64 {
    let s = (std::f64::consts::LN_2 / f64::from(gp.m())).exp_m1();
    s / (2.0 * gp.b * s + 1.0 / gp.c)
}

/// The two admissible majorants `c(t)` for the sigma-form local theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CFunction {
    /// `(2t − t²)/(2(n−1)^{1/q})`
    Quadratic,
    /// `2t/((n−1)^{1/q}(t + 2))`
    Rational,
}

impl CFunction {
    pub fn eval(self, t: f64, gp: &GaugeParams) -> Result<f64> {
        match self {
            CFunction::Quadratic => c_quadratic(t, gp),
            CFunction::Rational => c_rational(t, gp),
        }
    }
}

fn check_unit_interval(t: f64) -> Result<()> {
    if !(0.0..1.0).contains(&t) {
        return domain(format!("t = {t} outside [0, 1)"));
    }
    Ok(())
}

pub fn c_quadratic(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_unit_interval(t)?;
    Ok((2.0 * t - t * t) / (2.0 * gp.a))
}

pub fn c_rational(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_unit_interval(t)?;
    Ok(2.0 * t / (gp.a * (t + 2.0)))
}

/// Grid spacing for [`sigma_feasible`].
pub const SIGMA_GRID_STEP: f64 = 1e-4;

/// Checks `t c(t) <= c(t²)(1 − b(1 + t)c(t))` on a grid of `[0, σ]` with
/// spacing [`SIGMA_GRID_STEP`], endpoint included.
pub fn sigma_feasible(sigma: f64, gp: &GaugeParams, c: CFunction) -> bool {
    if !(sigma > 0.0 && sigma < 1.0) {
        return false;
    }
    let steps = (sigma / SIGMA_GRID_STEP).floor() as usize;
    let holds = |t: f64| -> bool {
        let (Ok(ct), Ok(ct2)) = (c.eval(t, gp), c.eval(t * t, gp)) else {
            return false;
        };
        t * ct <= ct2 * (1.0 - gp.b * (1.0 + t) * ct)
    };
    (0..=steps)
        .map(|k| k as f64 * SIGMA_GRID_STEP)
        .filter(|&t| t <= sigma)
        .chain(std::iter::once(sigma))
        .all(holds)
}

/// Largest σ admitted by the rational `c` (solving the σ-condition in closed
/// form): `((n−1)^{1/q} − 2^{1+1/q})/((n−1)^{1/q} + 2^{1+1/q})`. Negative when
/// no σ works.
pub fn rational_sigma_cap(gp: &GaugeParams) -> f64 {
    (gp.a - 2.0 * gp.b) / (gp.a + 2.0 * gp.b)
}

// ---------------------------------------------------------------------------
// Semilocal theory

fn check_semi_domain(t: f64, gp: &GaugeParams) -> Result<()> {
    check_gauge_domain(t, gp)?;
    if t >= 1.0 {
        return domain(format!("t = {t} must be below 1"));
    }
    Ok(())
}

fn semi_inner(t: f64, gp: &GaugeParams) -> f64 {
    pow1p(t / (gp.c * (1.0 - gp.b * t)), gp.m())
}

/// `φ(t) = a t (1 + t/(c(1 − b t)))^{n−1} / ((1 − t)(1 − b t))`.
pub fn phi_semi(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_semi_domain(t, gp)?;
    Ok(gp.a * t * semi_inner(t, gp) / ((1.0 - t) * (1.0 - gp.b * t)))
}

/// `β(t) = a t (1 + t/(c(1 − b t)))^{n−1} / (1 − t)`, equal to `φ ψ`.
pub fn beta_semi(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_semi_domain(t, gp)?;
    Ok(gp.a * t * semi_inner(t, gp) / (1.0 - t))
}

/// `ψ(t) = 1 − b t`.
pub fn psi_semi(t: f64, gp: &GaugeParams) -> Result<f64> {
    check_semi_domain(t, gp)?;
    Ok(1.0 - gp.b * t)
}

/// `t φ(t)`, the gauge function of the semilocal iteration.
pub fn varphi_semi(t: f64, gp: &GaugeParams) -> Result<f64> {
    Ok(t * phi_semi(t, gp)?)
}

/// Unique solution of `φ(t) = 1` in `(0, 2^{−1/q})`.
pub fn radius_semi(gp: &GaugeParams) -> Radius {
    let hi = gp.gauge_limit().min(1.0) - BRACKET_EPS;
    let g = |t: f64| gp.a * t * semi_inner(t, gp) - (1.0 - t) * (1.0 - gp.b * t);
    Radius {
        value: bisect(g, hi),
        kind: RadiusKind::Semilocal,
        params: *gp,
    }
}

/// `1/(2(n−1)^{1/q} + 2)`.
pub fn simple_semilocal_threshold(gp: &GaugeParams) -> f64 {
    1.0 / (2.0 * gp.a + 2.0)
}
