//! Semilocal certification of the Weierstrass iteration.
//!
//! Everything here is computable from the polynomial and the current
//! approximations alone. With `E = ‖W(x)/d(x)‖_p`, `λ = φ(E)` and
//! `θ = ψ(E)`, an initial guess passes when `E < 2^{−1/q}` and `λ <= 1`;
//! the iteration then converges, stays in the ball of radius
//! `ρ = |W(x⁰)|/(1 − β(E))`, and obeys the a priori, a posteriori and
//! step-decay bounds below. When `λ < 1` the disks of radius
//! `|W_i(x)|/(1 − β(E))` around the `x_i` are disjoint and each holds
//! exactly one zero.

use crate::core_math::{abs_vec, CVec, Complex, PExponent, RVec};
use crate::error::{Error, Result};
use crate::gauge::{self, GaugeParams};
use crate::polynomial::Polynomial;
use crate::weierstrass::{correction, e_from_correction};

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// `E` at the certified point.
    pub e0: f64,
    /// `φ(E)`; infinite when `E` is outside the gauge interval.
    pub lambda: f64,
    /// `ψ(E) = 1 − 2^{1/q} E`.
    pub theta: f64,
    /// Component-wise ball radius `|W(x)|/(1 − β(E))`; infinite when
    /// `β(E) >= 1`.
    pub rho: RVec,
    pub passed: bool,
    /// `λ < 1`: convergence is quadratic and inclusion disks exist.
    pub quadratic: bool,
    /// Iteration index of the point the certificate was computed at.
    pub anchor: usize,
    pub params: GaugeParams,
}

impl Certificate {
    /// Builds the certificate at `x` from its already computed correction.
    pub fn from_correction(w: &CVec, x: &CVec, p: PExponent, anchor: usize) -> Result<Self> {
        let gp = GaugeParams::new(x.len(), p)?;
        let e0 = e_from_correction(w, x, p)?;
        Ok(Self::from_parts(e0, w, gp, anchor))
    }

    fn from_parts(e0: f64, w: &CVec, gp: GaugeParams, anchor: usize) -> Self {
        let in_domain = e0 < gp.gauge_limit() && e0 < 1.0;
        let (lambda, beta) = if in_domain {
            (
                gauge::phi_semi(e0, &gp).unwrap_or(f64::INFINITY),
                gauge::beta_semi(e0, &gp).unwrap_or(f64::INFINITY),
            )
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let theta = 1.0 - gp.b() * e0;
        let abs_w = abs_vec(w);
        let rho = if beta < 1.0 {
            abs_w.scaled(1.0 / (1.0 - beta))
        } else {
            RVec::from_vec_unchecked(vec![f64::INFINITY; w.len()])
        };
        let passed = in_domain && lambda <= 1.0;
        Certificate {
            e0,
            lambda,
            theta,
            rho,
            passed,
            quadratic: passed && lambda < 1.0,
            anchor,
            params: gp,
        }
    }
}

/// Evaluates the semilocal convergence conditions at `x0`.
pub fn check_semilocal(f: &Polynomial, x0: &CVec, p: PExponent) -> Result<Certificate> {
    let w = correction(f, x0)?;
    Certificate::from_correction(&w, x0, p, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `|x^k − ξ| ⪯ θ^k λ^{2^k−1}/(1 − θλ^{2^k}) |x¹ − x⁰|`
    APriori,
    /// `|x^k − ξ| ⪯ |x^{k+1} − x^k| / (1 − β(E(x^k)))`
    APosteriori1,
    /// `|x^{k+1} − ξ| ⪯ θ_k λ_k/(1 − θ_k λ_k²) |x^{k+1} − x^k|`
    APosteriori2,
    /// `|x^{k+2} − x^{k+1}| ⪯ θ λ^{2^k} |x^{k+1} − x^k|`
    StepDecay1,
    /// `|x^{k+1} − x^k| ⪯ θ^k λ^{2^k−1} |x¹ − x⁰|`
    StepDecay2,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::APriori => "a_priori",
            BoundKind::APosteriori1 => "a_post_1",
            BoundKind::APosteriori2 => "a_post_2",
            BoundKind::StepDecay1 => "step_decay_1",
            BoundKind::StepDecay2 => "step_decay_2",
        }
    }
}

/// A component-wise bound attached to iteration `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundVec {
    pub kind: BoundKind,
    pub k: usize,
    pub values: RVec,
}

impl BoundVec {
    /// Re-labels the bound with an absolute iteration index.
    pub fn at(mut self, k: usize) -> Self {
        self.k = k;
        self
    }
}

fn require_passed(cert: &Certificate) -> Result<()> {
    if !cert.passed {
        return Err(Error::Precondition(
            "certificate did not pass the semilocal check".into(),
        ));
    }
    Ok(())
}

/// `λ^{2^k}` and `λ^{2^k − 1}` (the latter via `S_k(2) = 2^k − 1`).
fn lambda_powers(lambda: f64, k: usize) -> (f64, f64) {
    let k32 = u32::try_from(k).unwrap_or(u32::MAX);
    let e = gauge::geom_sum(k32, 2.0);
    (lambda.powf(e + 1.0), lambda.powf(e))
}

/// Coefficient pair `(θ λ^{2^k}, θ^k λ^{2^k − 1})` of the two step-decay
/// estimates.
pub fn step_decay_bounds(cert: &Certificate, k: usize) -> Result<(f64, f64)> {
    require_passed(cert)?;
    let (l_pow, l_pow_m1) = lambda_powers(cert.lambda, k);
    let theta_k = cert.theta.powi(i32::try_from(k).unwrap_or(i32::MAX));
    Ok((cert.theta * l_pow, theta_k * l_pow_m1))
}

/// A priori bound on `|x^k − ξ|` from the first step `|x¹ − x⁰|`.
pub fn a_priori_bound(cert: &Certificate, first_step: &RVec, k: usize) -> Result<BoundVec> {
    require_passed(cert)?;
    let (l_pow, l_pow_m1) = lambda_powers(cert.lambda, k);
    let denom = 1.0 - cert.theta * l_pow;
    if !(denom > 0.0) {
        return Err(Error::BoundUndefined(format!(
            "1 - theta lambda^(2^k) = {denom} at k = {k}"
        )));
    }
    let theta_k = cert.theta.powi(i32::try_from(k).unwrap_or(i32::MAX));
    Ok(BoundVec {
        kind: BoundKind::APriori,
        k,
        values: first_step.scaled(theta_k * l_pow_m1 / denom),
    })
}

/// `|x^k − ξ| ⪯ step / (1 − β(e_k))` given `e_k = E(x^k)` and
/// `step = |x^{k+1} − x^k|`.
pub fn a_posteriori_1_from(e_k: f64, step: &RVec, gp: &GaugeParams) -> Result<RVec> {
    let beta = gauge::beta_semi(e_k, gp)
        .map_err(|_| Error::BoundUndefined(format!("E = {e_k} outside the gauge interval")))?;
    if !(beta < 1.0) {
        return Err(Error::BoundUndefined(format!("beta(E) = {beta} >= 1")));
    }
    Ok(step.scaled(1.0 / (1.0 - beta)))
}

/// `|x^{k+1} − ξ| ⪯ θ_k λ_k/(1 − θ_k λ_k²) step`.
pub fn a_posteriori_2_from(e_k: f64, step: &RVec, gp: &GaugeParams) -> Result<RVec> {
    let undefined = |_| Error::BoundUndefined(format!("E = {e_k} outside the gauge interval"));
    let lambda = gauge::phi_semi(e_k, gp).map_err(undefined)?;
    let theta = gauge::psi_semi(e_k, gp).map_err(undefined)?;
    let denom = 1.0 - theta * lambda * lambda;
    if !(denom > 0.0) {
        return Err(Error::BoundUndefined(format!(
            "1 - theta lambda^2 = {denom}"
        )));
    }
    Ok(step.scaled(theta * lambda / denom))
}

fn step_between(
    f: &Polynomial,
    xk: &CVec,
    xk1: &CVec,
    p: PExponent,
) -> Result<(f64, RVec, GaugeParams)> {
    if xk.len() != xk1.len() {
        return Err(Error::LengthMismatch {
            left: xk.len(),
            right: xk1.len(),
        });
    }
    let w = correction(f, xk)?;
    let e_k = e_from_correction(&w, xk, p)?;
    let gp = GaugeParams::new(xk.len(), p)?;
    Ok((e_k, abs_vec(&(xk1 - xk)), gp))
}

/// First a posteriori bound, bounding the error of `xk`; `xk1` is the
/// Weierstrass step of `xk`.
pub fn a_posteriori_1(
    f: &Polynomial,
    xk: &CVec,
    xk1: &CVec,
    p: PExponent,
    k: usize,
) -> Result<BoundVec> {
    let (e_k, step, gp) = step_between(f, xk, xk1, p)?;
    Ok(BoundVec {
        kind: BoundKind::APosteriori1,
        k,
        values: a_posteriori_1_from(e_k, &step, &gp)?,
    })
}

/// Second a posteriori bound, bounding the error of `xk1`.
pub fn a_posteriori_2(
    f: &Polynomial,
    xk: &CVec,
    xk1: &CVec,
    p: PExponent,
    k: usize,
) -> Result<BoundVec> {
    let (e_k, step, gp) = step_between(f, xk, xk1, p)?;
    Ok(BoundVec {
        kind: BoundKind::APosteriori2,
        k,
        values: a_posteriori_2_from(e_k, &step, &gp)?,
    })
}

/// Closed disk `{z : |z − center| <= radius}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InclusionDisk {
    pub center: Complex,
    pub radius: f64,
}

impl InclusionDisk {
    pub fn contains(&self, z: Complex) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionDiskSet {
    pub disks: Vec<InclusionDisk>,
}

impl InclusionDiskSet {
    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, InclusionDisk> {
        self.disks.iter()
    }

    /// First pair with `r_i + r_j >= |c_i − c_j|`, if any.
    pub fn first_overlap(&self) -> Option<(usize, usize)> {
        let d = &self.disks;
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                if d[i].radius + d[j].radius >= (d[i].center - d[j].center).norm() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.first_overlap().is_none()
    }

    /// How many of `points` fall in each disk.
    pub fn containment_counts(&self, points: &[Complex]) -> Vec<usize> {
        self.disks
            .iter()
            .map(|disk| points.iter().filter(|&&z| disk.contains(z)).count())
            .collect()
    }
}

/// Relative inflation of disk radii. Near convergence `|W_i(x)|/(1 − β)`
/// and `|x_i − ξ_i|` agree to the last bit, so unguarded disks can miss
/// their zero by an ulp.
pub const DISK_ROUNDING_GUARD: f64 = 1e-12;

/// Inclusion disks at `x` from its correction `w` and `e = E(x)`.
pub fn inclusion_disks_from(
    w: &CVec,
    x: &CVec,
    e: f64,
    gp: &GaugeParams,
) -> Result<InclusionDiskSet> {
    let phi = gauge::phi_semi(e, gp).unwrap_or(f64::INFINITY);
    if !(phi < 1.0) {
        return Err(Error::NotCertifiable(phi));
    }
    let beta = gauge::beta_semi(e, gp)?;
    let scale = (1.0 + DISK_ROUNDING_GUARD) / (1.0 - beta);
    let set = InclusionDiskSet {
        disks: x
            .iter()
            .zip(w)
            .map(|(&center, wi)| InclusionDisk {
                center,
                radius: wi.norm() * scale,
            })
            .collect(),
    };
    match set.first_overlap() {
        Some((i, j)) => Err(Error::DisksOverlap { i, j }),
        None => Ok(set),
    }
}

/// Disjoint disks around the components of `xk`, each containing exactly
/// one zero of `f`. Requires `φ(E(xk)) < 1`.
pub fn inclusion_disks(f: &Polynomial, xk: &CVec, p: PExponent) -> Result<InclusionDiskSet> {
    let w = correction(f, xk)?;
    let e = e_from_correction(&w, xk, p)?;
    let gp = GaugeParams::new(xk.len(), p)?;
    inclusion_disks_from(&w, xk, e, &gp)
}
