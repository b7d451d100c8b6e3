//! Seeded instance generation shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wdk_core::core_math::min_pairwise_distances;
use wdk_core::polynomial::from_roots;
use wdk_core::{CVec, Complex, PExponent, Polynomial, RootVector};

pub const SEED: u64 = 0x5eed_d0c5;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub const PS: [PExponent; 3] = [PExponent::ONE, PExponent::TWO, PExponent::INF];

/// `n` roots on the grid `(a + bi)/4`, `|a|, |b| <= 8`, pairwise at least
/// `min_sep` apart. Grid points keep `from_roots` coefficients exact for
/// small `n`.
pub fn grid_roots(rng: &mut impl Rng, n: usize, min_sep: f64) -> RootVector {
    let mut roots: Vec<Complex> = Vec::with_capacity(n);
    while roots.len() < n {
        let z = Complex::new(
            f64::from(rng.gen_range(-8i32..=8)) / 4.0,
            f64::from(rng.gen_range(-8i32..=8)) / 4.0,
        );
        if roots.iter().all(|r| (r - z).norm() >= min_sep) {
            roots.push(z);
        }
    }
    RootVector::new(CVec::new(roots).unwrap())
}

pub fn monic_from(roots: &RootVector) -> Polynomial {
    from_roots(roots, Complex::new(1.0, 0.0)).unwrap()
}

/// Uniform in the box `[-r, r] + [-r, r] i`.
pub fn complex_in(rng: &mut impl Rng, r: f64) -> Complex {
    Complex::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// Random direction with component moduli in `[0.2, 1]`.
pub fn direction(rng: &mut impl Rng, n: usize) -> Vec<Complex> {
    (0..n)
        .map(|_| {
            Complex::from_polar(
                rng.gen_range(0.2..=1.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}

/// `ξ + s·u_i·d_i(ξ)` component-wise.
pub fn shifted(roots: &RootVector, u: &[Complex], s: f64) -> CVec {
    let xi = roots.as_cvec();
    let d = min_pairwise_distances(xi).unwrap();
    CVec::new((0..xi.len()).map(|i| xi[i] + u[i] * (s * d[i])).collect()).unwrap()
}

/// Largest `s` found by bisection with `e(ξ + s u d(ξ)) <= target`; `e`
/// returns `None` where it is undefined.
pub fn perturb_to(
    roots: &RootVector,
    u: &[Complex],
    target: f64,
    e: impl Fn(&CVec) -> Option<f64>,
) -> CVec {
    let ok = |s: f64| matches!(e(&shifted(roots, u, s)), Some(v) if v <= target);
    let mut hi = target.max(1e-3);
    while ok(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    shifted(roots, u, lo)
}

/// Max-norm relative distance `max_i |a_i − b_i| / max(1, |b_i|)`.
pub fn rel_dist(a: &CVec, b: &CVec) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / y.norm().max(1.0))
        .fold(0.0, f64::max)
}

pub fn max_err(a: &CVec, b: &CVec) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

use wdk_core::gauge::{self, CFunction, GaugeParams};
use wdk_core::local_theory::{e_local1, e_local2};
use wdk_core::weierstrass::e_semilocal;

/// A polynomial with known zeros and a starting vector placed by a
/// perturbation of those zeros.
pub struct Instance {
    pub roots: RootVector,
    pub f: Polynomial,
    pub x0: CVec,
    pub p: PExponent,
}

fn base(stream: u64, n: usize) -> (rand_chacha::ChaCha8Rng, RootVector, Polynomial) {
    let mut r = rng(stream);
    let roots = grid_roots(&mut r, n, 0.5);
    let f = monic_from(&roots);
    (r, roots, f)
}

/// `E(x0) = ‖W(x0)/d(x0)‖_p <= frac · R_semi`.
pub fn semilocal_instance(stream: u64, n: usize, p: PExponent, frac: f64) -> Instance {
    let (mut r, roots, f) = base(stream, n);
    let target = frac * gauge::radius_semi(&GaugeParams::new(n, p).unwrap()).value;
    let u = direction(&mut r, n);
    let x0 = perturb_to(&roots, &u, target, |x| e_semilocal(&f, x, p).ok());
    Instance { roots, f, x0, p }
}

/// `‖(x0 − ξ)/d(ξ)‖_p <= frac · threshold`.
pub fn local1_instance(stream: u64, n: usize, p: PExponent, frac: f64, threshold: f64) -> Instance {
    let (mut r, roots, f) = base(stream, n);
    let u = direction(&mut r, n);
    let x0 = perturb_to(&roots, &u, frac * threshold, |x| {
        e_local1(x, &roots, p).ok()
    });
    Instance { roots, f, x0, p }
}

/// `‖(x0 − ξ)/d(x0)‖_p <= frac · threshold`.
pub fn local2_instance(stream: u64, n: usize, p: PExponent, frac: f64, threshold: f64) -> Instance {
    let (mut r, roots, f) = base(stream, n);
    let u = direction(&mut r, n);
    let x0 = perturb_to(&roots, &u, frac * threshold, |x| {
        e_local2(x, &roots, p).ok()
    });
    Instance { roots, f, x0, p }
}

/// Degree, `c` and a feasible `σ` for the third local theorem with `p = ∞`.
pub fn local3_setup(stream: u64) -> (usize, CFunction, f64) {
    let mut r = rng(stream ^ 0x1003);
    let n = r.gen_range(9..=12);
    let gp = GaugeParams::new(n, PExponent::INF).unwrap();
    if r.gen_bool(0.5) {
        (n, CFunction::Quadratic, 0.5)
    } else {
        (n, CFunction::Rational, 0.9 * gauge::rational_sigma_cap(&gp))
    }
}
