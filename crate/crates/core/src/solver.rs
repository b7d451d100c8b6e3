//! Iteration driver: initial guesses, the guarded Weierstrass iteration with
//! certification at every step, stopping rules and the final report.
//!
//! The certificate is *anchored*: if the initial guess does not pass the
//! semilocal check, every later iterate is checked until one does, and the
//! a priori and step-decay bounds are counted from that iterate on.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::certify::{
    a_posteriori_1_from, a_posteriori_2_from, a_priori_bound, inclusion_disks_from,
    step_decay_bounds, BoundKind, BoundVec, Certificate, InclusionDiskSet,
};
use crate::core_math::{abs_vec, CVec, Complex, PExponent, RVec};
use crate::error::{Error, Result};
use crate::gauge::{self, GaugeParams};
use crate::polynomial::{Polynomial, RootVector};
use crate::weierstrass::{correction, e_from_correction, two_point_step};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationMode {
    /// `x^{k+1} = x^k − W(x^k)` every step.
    #[default]
    OnePoint,
    /// One Weierstrass step, then the two-point form that never evaluates `f`.
    TwoPoint,
}

impl IterationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            IterationMode::OnePoint => "one_point",
            IterationMode::TwoPoint => "two_point",
        }
    }
}

impl fmt::Display for IterationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IterationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_point" => Ok(IterationMode::OnePoint),
            "two_point" => Ok(IterationMode::TwoPoint),
            _ => Err(Error::Domain(format!("unknown iteration mode '{s}'"))),
        }
    }
}

/// How much history a solve keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceRetention {
    #[default]
    Full,
    /// Only the last two iterates and the bounds that refer to them.
    Tail,
}

impl TraceRetention {
    /// Reads `WDK_TRACE=full|tail`; anything else means `Full`.
    pub fn from_env() -> Self {
        match std::env::var("WDK_TRACE").as_deref() {
            Ok("tail") => TraceRetention::Tail,
            _ => TraceRetention::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub p: PExponent,
    /// Stop once the ∞-norm of the first a posteriori bound is this small.
    pub tol: f64,
    pub max_iter: usize,
    pub mode: IterationMode,
    /// Fail with [`Error::Precondition`] instead of iterating when the
    /// initial guess does not pass the semilocal check.
    pub require_certificate: bool,
    pub retention: TraceRetention,
}

impl SolveOptions {
    pub fn new(p: PExponent) -> Self {
        SolveOptions {
            p,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            mode: IterationMode::OnePoint,
            require_certificate: false,
            retention: TraceRetention::from_env(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!(
                "tol = {} must be positive",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Domain("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Iterates `x^k`, corrections `W(x^k)` and `E(x^k)`, aligned by index.
///
/// `offset` is the iteration index of the first retained entry; it is zero
/// unless the trace was truncated. Each bound's `k` names the iterate it
/// controls: the error `|x^k − ξ|` for the a priori and a posteriori kinds,
/// the step `|x^{k+1} − x^k| = |W(x^k)|` for the step-decay kinds.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IterationTrace {
    pub iterates: Vec<CVec>,
    pub corrections: Vec<CVec>,
    pub e_values: Vec<f64>,
    pub bound_history: Vec<BoundVec>,
    pub offset: usize,
}

impl IterationTrace {
    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    /// Position of iteration `k` in the retained lists.
    pub fn position(&self, k: usize) -> Option<usize> {
        k.checked_sub(self.offset)
            .filter(|&i| i < self.iterates.len())
    }

    pub fn bounds_of(&self, kind: BoundKind) -> impl Iterator<Item = &BoundVec> {
        self.bound_history.iter().filter(move |b| b.kind == kind)
    }

    fn push(&mut self, x: CVec, w: CVec, e: f64, bounds: Vec<BoundVec>, retention: TraceRetention) {
        self.iterates.push(x);
        self.corrections.push(w);
        self.e_values.push(e);
        self.bound_history.extend(bounds);
        if retention == TraceRetention::Tail && self.iterates.len() > 2 {
            let drop = self.iterates.len() - 2;
            self.iterates.drain(..drop);
            self.corrections.drain(..drop);
            self.e_values.drain(..drop);
            self.offset += drop;
            let offset = self.offset;
            self.bound_history.retain(|b| b.k >= offset);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Stopped on the certified bound; disks are present and disjoint.
    CertifiedConverged,
    /// Stopped on the raw correction, or the final disks are unavailable.
    ConvergedUncertified,
    MaxIterReached,
    /// An iterate lost distinct components or became non-finite.
    Degenerate,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::CertifiedConverged => "certified_converged",
            SolveStatus::ConvergedUncertified => "converged_uncertified",
            SolveStatus::MaxIterReached => "max_iter_reached",
            SolveStatus::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// The anchored certificate, or the failed one at `x⁰` if no iterate
    /// ever passed.
    pub certificate: Option<Certificate>,
    pub roots: CVec,
    pub disks: Option<InclusionDiskSet>,
    pub trace: IterationTrace,
    /// Number of steps taken; `roots` is `x^iterations`.
    pub iterations: usize,
    pub p: PExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GuessStrategy {
    #[default]
    Circle,
}

/// `n` equally spaced points on the circle about `−a_1/(n a_0)` of radius
/// `1 + max_k |a_k/a_0|^{1/k}`, rotated by `π/(2n)`.
pub fn initial_guess(f: &Polynomial, strategy: GuessStrategy) -> CVec {
    match strategy {
        GuessStrategy::Circle => circle_guess(f),
    }
}

fn circle_guess(f: &Polynomial) -> CVec {
    let n = f.degree();
    let a = f.coefficients();
    let center = -a[1] / (a[0] * n as f64);
    let radius = 1.0
        + (1..=n)
            .map(|k| (a[k] / a[0]).norm().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
    let nf = n as f64;
    let points = (0..n)
        .map(|j| center + Complex::from_polar(radius, 2.0 * PI * j as f64 / nf + PI / (2.0 * nf)))
        .collect();
    CVec::from_vec_unchecked(points)
}

/// The certificate the bounds are counted from, with `|W(x^anchor)|`.
struct Anchor {
    cert: Certificate,
    first_step: RVec,
}

/// `E(x^k)` passes the semilocal check: inside the domain and `φ(E) <= 1`.
fn passes(e: f64, gp: &GaugeParams) -> bool {
    matches!(gauge::phi_semi(e, gp), Ok(phi) if phi <= 1.0)
}

fn bounds_at(
    k: usize,
    e: f64,
    step: &RVec,
    anchor: Option<&Anchor>,
    gp: &GaugeParams,
) -> Vec<BoundVec> {
    let mut out = Vec::new();
    if passes(e, gp) {
        if let Ok(values) = a_posteriori_1_from(e, step, gp) {
            out.push(BoundVec {
                kind: BoundKind::APosteriori1,
                k,
                values,
            });
        }
        if let Ok(values) = a_posteriori_2_from(e, step, gp) {
            out.push(BoundVec {
                kind: BoundKind::APosteriori2,
                k: k + 1,
                values,
            });
        }
    }
    if let Some(a) = anchor.filter(|a| a.cert.anchor <= k) {
        let j = k - a.cert.anchor;
        if let Ok(b) = a_priori_bound(&a.cert, &a.first_step, j) {
            out.push(b.at(k));
        }
        if let Ok((sd1, sd2)) = step_decay_bounds(&a.cert, j) {
            out.push(BoundVec {
                kind: BoundKind::StepDecay1,
                k: k + 1,
                values: step.scaled(sd1),
            });
            out.push(BoundVec {
                kind: BoundKind::StepDecay2,
                k,
                values: a.first_step.scaled(sd2),
            });
        }
    }
    out
}

enum Stop {
    Certified,
    Raw,
    MaxIter,
    Degenerate,
}

/// Runs the Weierstrass iteration from `x0`.
///
/// Errors are reserved for bad input (options, lengths, coinciding
/// components of `x0`) and for `require_certificate` with a failing `x0`;
/// numerical breakdown during the iteration is reported as
/// [`SolveStatus::Degenerate`].
pub fn solve(f: &Polynomial, x0: &CVec, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    if x0.len() != f.degree() {
        return Err(Error::LengthMismatch {
            left: x0.len(),
            right: f.degree(),
        });
    }
    x0.ensure_distinct()?;
    let p = opts.p;
    let gp = GaugeParams::new(f.degree(), p)?;

    let w0 = correction(f, x0)?;
    let initial = Certificate::from_correction(&w0, x0, p, 0)?;
    if opts.require_certificate && !initial.passed {
        return Err(Error::Precondition(format!(
            "initial guess fails the semilocal check (E = {})",
            initial.e0
        )));
    }
    let mut anchor = initial.passed.then(|| Anchor {
        cert: initial.clone(),
        first_step: abs_vec(&w0),
    });

    let mut trace = IterationTrace::default();
    let mut prev: Option<CVec> = None;
    let mut x = x0.clone();
    let mut pending = Some(w0);
    let mut k = 0;
    // (x^k, W(x^k), E(x^k)) of the last iterate whose correction is known
    let mut last: Option<(CVec, f64)> = None;

    let stop = loop {
        let (w, next) = match (pending.take(), &prev, opts.mode) {
            (Some(w), _, _) => {
                let next = &x - &w;
                (w, next)
            }
            (None, Some(xp), IterationMode::TwoPoint) => match two_point_step(xp, &x) {
                Ok(next) => (&x - &next, next),
                Err(_) => break Stop::Degenerate,
            },
            (None, _, _) => match correction(f, &x) {
                Ok(w) => {
                    let next = &x - &w;
                    (w, next)
                }
                Err(_) => break Stop::Degenerate,
            },
        };
        if !w.is_finite() {
            break Stop::Degenerate;
        }
        let e = e_from_correction(&w, &x, p)?;
        if anchor.is_none() {
            let cert = Certificate::from_correction(&w, &x, p, k)?;
            if cert.passed {
                anchor = Some(Anchor {
                    cert,
                    first_step: abs_vec(&w),
                });
            }
        }
        let step = abs_vec(&w);
        let bounds = bounds_at(k, e, &step, anchor.as_ref(), &gp);
        let a_post = bounds
            .iter()
            .find(|b| b.kind == BoundKind::APosteriori1)
            .map(|b| b.values.max());
        trace.push(x.clone(), w.clone(), e, bounds, opts.retention);
        last = Some((w, e));

        match a_post {
            Some(bound) if bound <= opts.tol => break Stop::Certified,
            None if step.max() <= opts.tol => break Stop::Raw,
            _ => {}
        }
        if k == opts.max_iter {
            break Stop::MaxIter;
        }
        if !next.is_finite() || next.first_coincidence().is_some() {
            break Stop::Degenerate;
        }
        prev = Some(std::mem::replace(&mut x, next));
        k += 1;
    };

    let disks = match (&stop, &last) {
        (Stop::Degenerate, _) | (_, None) => None,
        (_, Some((w, e))) => inclusion_disks_from(w, &x, *e, &gp).ok(),
    };
    let certificate = Some(anchor.map(|a| a.cert).unwrap_or(initial));
    let certified = certificate.as_ref().is_some_and(|c| c.passed) && disks.is_some();
    let status = match stop {
        Stop::Certified if certified => SolveStatus::CertifiedConverged,
        Stop::Certified | Stop::Raw => SolveStatus::ConvergedUncertified,
        Stop::MaxIter => SolveStatus::MaxIterReached,
        Stop::Degenerate => SolveStatus::Degenerate,
    };
    Ok(SolveReport {
        status,
        certificate,
        roots: x,
        disks,
        trace,
        iterations: k,
        p,
    })
}

/// Tolerances for comparing computed bounds with true errors.
///
/// A bound `b` dominates an error `e` when `e <= b (1 + rel) + abs·s`, with
/// `s = max(1, |ξ_i|)` (or `max(1, |x_i|)` for step bounds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slack {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Slack {
            rel: 1e-12,
            abs: 1e-13,
        }
    }
}

impl Slack {
    pub fn admits(&self, actual: f64, bound: f64, scale: f64) -> bool {
        actual <= bound * (1.0 + self.rel) + self.abs * scale.max(1.0)
    }
}

/// Reorders `roots` so that root `i` is the one nearest to `approx[i]`,
/// greedily in index order.
pub fn match_roots(roots: &RootVector, approx: &CVec) -> RootVector {
    let mut pool: Vec<Complex> = roots.as_cvec().iter().copied().collect();
    let mut ordered = Vec::with_capacity(pool.len());
    for z in approx {
        if pool.is_empty() {
            break;
        }
        let (best, _) = pool
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (r - z).norm()))
            .fold(
                (0, f64::INFINITY),
                |acc, cur| if cur.1 < acc.1 { cur } else { acc },
            );
        ordered.push(pool.swap_remove(best));
    }
    RootVector::new(CVec::from_vec_unchecked(ordered))
}

/// [`verify_trace_with`] under the default [`Slack`].
pub fn verify_trace(trace: &IterationTrace, roots: &RootVector, cert: &Certificate) -> bool {
    verify_trace_with(trace, roots, cert, Slack::default())
}

/// Checks a trace against the true zeros, ordered to match the iterates:
/// every recorded bound dominates the error (or step) it controls, and
/// from the anchor on `E(x^{k+1}) <= E(x^k) φ(E(x^k))` and
/// `E(x^k) <= E(x^anchor) λ^{2^j − 1}`.
pub fn verify_trace_with(
    trace: &IterationTrace,
    roots: &RootVector,
    cert: &Certificate,
    slack: Slack,
) -> bool {
    let xi = roots.as_cvec();
    if trace.iterates.iter().any(|x| x.len() != xi.len()) {
        return false;
    }
    for b in &trace.bound_history {
        let Some(pos) = trace.position(b.k) else {
            continue;
        };
        let ok = match b.kind {
            BoundKind::APriori | BoundKind::APosteriori1 | BoundKind::APosteriori2 => {
                let x = &trace.iterates[pos];
                (0..xi.len())
                    .all(|i| slack.admits((x[i] - xi[i]).norm(), b.values[i], xi[i].norm()))
            }
            BoundKind::StepDecay1 | BoundKind::StepDecay2 => {
                let (x, w) = (&trace.iterates[pos], &trace.corrections[pos]);
                (0..xi.len()).all(|i| slack.admits(w[i].norm(), b.values[i], x[i].norm()))
            }
        };
        if !ok {
            return false;
        }
    }
    if !cert.passed {
        return true;
    }
    let gp = cert.params;
    for k in cert.anchor.max(trace.offset)..trace.offset + trace.len() {
        let pos = k - trace.offset;
        let e = trace.e_values[pos];
        let j = i32::try_from(k - cert.anchor).unwrap_or(i32::MAX);
        let envelope = cert.e0 * cert.lambda.powf(2f64.powi(j) - 1.0);
        if !slack.admits(e, envelope, 0.0) {
            return false;
        }
        if let Some(&e_next) = trace.e_values.get(pos + 1) {
            match gauge::varphi_semi(e, &gp) {
                Ok(v) if slack.admits(e_next, v, 0.0) => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(re: &[f64]) -> CVec {
        CVec::from_reals(re).unwrap()
    }

    fn opts() -> SolveOptions {
        let mut o = SolveOptions::new(PExponent::INF);
        o.retention = TraceRetention::Full;
        o
    }

    fn z2m1() -> Polynomial {
        Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap()
    }

    fn max_err(x: &CVec, xi: &CVec) -> f64 {
        x.iter()
            .zip(xi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn initial_guess_examples() {
        let x = initial_guess(&z2m1(), GuessStrategy::Circle);
        assert_eq!(x.len(), 2);
        assert!(x.iter().all(|z| (z.norm() - 2.0).abs() < 1e-15));
        assert!((x[0] + x[1]).norm() < 1e-15);

        let g = Polynomial::from_reals(&[1.0, 0.0, 0.0, 0.0, -0.5]).unwrap();
        let x = initial_guess(&g, GuessStrategy::Circle);
        assert_eq!(x.len(), 4);
        assert!(x.iter().all(|z| z.norm() <= 2.0));
        x.ensure_distinct().unwrap();

        let h = Polynomial::from_reals(&[2.0, -6.0, 1.0, 3.0, -1.0]).unwrap();
        let x = initial_guess(&h, GuessStrategy::Circle);
        assert!(crate::core_math::min_pairwise_distances(&x).is_ok());
    }

    #[test]
    fn solve_quadratic_example() {
        let r = solve(&z2m1(), &rv(&[2.0, -2.0]), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::CertifiedConverged);
        assert!(r.iterations <= 8);
        assert!(max_err(&r.roots, &rv(&[1.0, -1.0])) <= 1e-12);
        let disks = r.disks.as_ref().unwrap();
        assert!(disks.pairwise_disjoint());
        assert_eq!(r.trace.len(), r.iterations + 1);
        let cert = r.certificate.as_ref().unwrap();
        assert!(cert.passed && cert.quadratic && cert.anchor == 0);
        let roots = RootVector::new(rv(&[1.0, -1.0]));
        assert!(verify_trace(&r.trace, &roots, cert));
    }

    #[test]
    fn solve_double_root_example() {
        let f = Polynomial::from_reals(&[1.0, -2.0, 1.0]).unwrap();
        let r = solve(&f, &rv(&[2.0, 0.0]), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::ConvergedUncertified);
        let cert = r.certificate.as_ref().unwrap();
        assert!(cert.passed && !cert.quadratic);
        assert!(r.disks.is_none());
        for (k, x) in r.trace.iterates.iter().enumerate().take(31) {
            let t = 2f64.powi(-(k as i32));
            assert!((x[0].re - (1.0 + t)).abs() <= 1e-13 * (1.0 + t));
            assert!((x[1].re - (1.0 - t)).abs() <= 1e-13);
        }
        // linear convergence: halving errors reach 1e-12 after about 40 steps
        assert!(r.iterations >= 39 && r.iterations <= 41);
        let roots = RootVector::new(rv(&[1.0, 1.0]));
        assert!(verify_trace(&r.trace, &roots, cert));

        let mut corrupted = r.trace.clone();
        let b = corrupted
            .bound_history
            .iter_mut()
            .find(|b| b.kind == BoundKind::APriori && b.k == 3)
            .unwrap();
        b.values = b.values.scaled(0.5);
        assert!(!verify_trace(&corrupted, &roots, cert));
    }

    #[test]
    fn solve_from_exact_roots() {
        let r = solve(&z2m1(), &rv(&[1.0, -1.0]), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::CertifiedConverged);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.roots, rv(&[1.0, -1.0]));
    }

    #[test]
    fn anchors_later_when_x0_fails() {
        let f = z2m1();
        let x0 = initial_guess(&f, GuessStrategy::Circle);
        let r = solve(&f, &x0, &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::CertifiedConverged);
        let cert = r.certificate.as_ref().unwrap();
        assert!(cert.anchor > 0 && cert.passed);
        let roots = match_roots(&RootVector::new(rv(&[1.0, -1.0])), &r.roots);
        assert!(verify_trace(&r.trace, &roots, cert));

        let mut strict = opts();
        strict.require_certificate = true;
        assert!(matches!(
            solve(&f, &x0, &strict),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn two_point_matches_one_point() {
        let f = z2m1();
        let x0 = rv(&[2.0, -2.0]);
        let a = solve(&f, &x0, &opts()).unwrap();
        let mut o = opts();
        o.mode = IterationMode::TwoPoint;
        let b = solve(&f, &x0, &o).unwrap();
        assert_eq!(b.status, SolveStatus::CertifiedConverged);
        for (xa, xb) in a.trace.iterates.iter().zip(&b.trace.iterates) {
            assert!(max_err(xa, xb) <= 1e-10);
        }
    }

    #[test]
    fn tail_retention_and_limits() {
        let f = Polynomial::from_reals(&[1.0, -2.0, 1.0]).unwrap();
        let mut o = opts();
        o.retention = TraceRetention::Tail;
        let r = solve(&f, &rv(&[2.0, 0.0]), &o).unwrap();
        assert_eq!(r.trace.len(), 2);
        assert_eq!(r.trace.offset + 1, r.iterations);
        assert!(r.trace.bound_history.iter().all(|b| b.k >= r.trace.offset));

        let mut o = opts();
        o.max_iter = 3;
        let r = solve(&f, &rv(&[2.0, 0.0]), &o).unwrap();
        assert_eq!(r.status, SolveStatus::MaxIterReached);
        assert_eq!(r.iterations, 3);

        o.max_iter = 0;
        assert!(solve(&f, &rv(&[2.0, 0.0]), &o).is_err());
        let mut o = opts();
        o.tol = 0.0;
        assert!(solve(&f, &rv(&[2.0, 0.0]), &o).is_err());
        assert!(matches!(
            solve(&f, &rv(&[1.0, 1.0]), &opts()),
            Err(Error::NotDistinct { .. })
        ));
    }

    #[test]
    fn degenerate_when_iterates_collide() {
        // for z² − 1, T sends (a, b) with ab = 1 to (0, 0)
        let r = solve(&z2m1(), &rv(&[2.0, 0.5]), &opts()).unwrap();
        assert_eq!(r.status, SolveStatus::Degenerate);
        assert!(r.disks.is_none());
    }

    #[test]
    fn deterministic() {
        let f = Polynomial::from_reals(&[1.0, -3.0, 0.5, 2.0, -1.0]).unwrap();
        let x0 = initial_guess(&f, GuessStrategy::Circle);
        assert_eq!(
            solve(&f, &x0, &opts()).unwrap(),
            solve(&f, &x0, &opts()).unwrap()
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "two_point".parse::<IterationMode>().unwrap(),
            IterationMode::TwoPoint
        );
        assert!("three_point".parse::<IterationMode>().is_err());
        assert_eq!(SolveStatus::MaxIterReached.to_string(), "max_iter_reached");
    }
}
