//! Vector toolkit over the complex numbers: p-norms with conjugate
//! exponents, the cone norm `(|x_1|, …, |x_n|)`, component-wise quotients,
//! the minimum-distance vector `d(x)`, the coordinate-wise order and power
//! means.

use std::fmt;
use std::ops::{Index, Sub};
use std::str::FromStr;

use crate::error::{domain, Error, Result};

pub use num_complex::Complex64 as Complex;

/// A Hölder exponent `p ∈ [1, ∞]` together with its conjugate `q`.
///
/// Both reciprocals are cached, so `2^{1/q}` and `(n-1)^{1/p}` never have
/// to special-case infinity at the call site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent {
    p: f64,
    q: f64,
    inv_p: f64,
    inv_q: f64,
}

impl PExponent {
    pub const ONE: PExponent = PExponent {
        p: 1.0,
        q: f64::INFINITY,
        inv_p: 1.0,
        inv_q: 0.0,
    };
    pub const TWO: PExponent = PExponent {
        p: 2.0,
        q: 2.0,
        inv_p: 0.5,
        inv_q: 0.5,
    };
    pub const INF: PExponent = PExponent {
        p: f64::INFINITY,
        q: 1.0,
        inv_p: 0.0,
        inv_q: 1.0,
    };

    pub fn new(p: f64) -> Result<Self> {
        conjugate_exponent(p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `1/p`, zero when `p = ∞`.
    pub fn inv_p(&self) -> f64 {
        self.inv_p
    }

    /// `1/q`, zero when `p = 1`.
    pub fn inv_q(&self) -> f64 {
        self.inv_q
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_infinite()
    }
}

/// Returns the pair `(p, q)` with `1/p + 1/q = 1`.
pub fn conjugate_exponent(p: f64) -> Result<PExponent> {
    if p.is_nan() || p < 1.0 {
        return domain(format!("exponent p = {p} must satisfy p >= 1"));
    }
    if p == 1.0 {
        return Ok(PExponent::ONE);
    }
    if p.is_infinite() {
        return Ok(PExponent::INF);
    }
    if p == 2.0 {
        return Ok(PExponent::TWO);
    }
    let inv_p = 1.0 / p;
    let inv_q = 1.0 - inv_p;
    Ok(PExponent {
        p,
        q: p / (p - 1.0),
        inv_p,
        inv_q,
    })
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.p)
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PExponent::INF);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse exponent {s:?}")))?;
        conjugate_exponent(p)
    }
}

/// p-norm of a list of nonnegative moduli.
///
/// The sum is scaled by the largest modulus so that very small or very
/// large inputs neither underflow nor overflow.
pub fn p_norm_of(moduli: &[f64], p: PExponent) -> f64 {
    let max = moduli.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if p.is_infinite() || max == 0.0 || max.is_infinite() {
        return max;
    }
    if p.p() == 1.0 {
        return moduli.iter().map(|v| v.abs()).sum();
    }
    let s: f64 = moduli.iter().map(|v| (v.abs() / max).powf(p.p())).sum();
    max * s.powf(p.inv_p())
}

/// Vector in `C^n`, `n >= 2`.
///
/// Distinctness of components is a property of use sites, not of the type.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec(Vec<Complex>);

impl CVec {
    pub fn new(components: Vec<Complex>) -> Result<Self> {
        if components.len() < 2 {
            return domain(format!(
                "vector must have at least 2 components, got {}",
                components.len()
            ));
        }
        if components
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return domain("vector components must be finite");
        }
        Ok(CVec(components))
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex::new(v, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(components: Vec<Complex>) -> Self {
        CVec(components)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Complex::new(0.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.0
    }

    pub fn abs_vec(&self) -> RVec {
        abs_vec(self)
    }

    pub fn p_norm(&self, p: PExponent) -> f64 {
        p_norm_of(&self.abs_vec().0, p)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Returns the first coinciding pair of components, if any.
    pub fn first_coincidence(&self) -> Option<(usize, usize)> {
        let x = &self.0;
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                if x[i] == x[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ensure_distinct(&self) -> Result<()> {
        match self.first_coincidence() {
            Some((i, j)) => Err(Error::NotDistinct { i, j }),
            None => Ok(()),
        }
    }
}

impl Index<usize> for CVec {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl Sub for &CVec {
    type Output = CVec;

    fn sub(self, rhs: &CVec) -> CVec {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        CVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl<'a> IntoIterator for &'a CVec {
    type Item = &'a Complex;
    type IntoIter = std::slice::Iter<'a, Complex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Vector of nonnegative reals, ordered coordinate-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct RVec(Vec<f64>);

impl RVec {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.iter().any(|v| v.is_nan() || *v < 0.0) {
            return domain("real vector components must be nonnegative");
        }
        Ok(RVec(components))
    }

    pub(crate) fn from_vec_unchecked(components: Vec<f64>) -> Self {
        RVec(components)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn p_norm(&self, p: PExponent) -> f64 {
        p_norm_of(&self.0, p)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().fold(0.0, |m, &v| m.max(v))
    }

    /// Multiplies every component by a nonnegative scalar.
    pub fn scaled(&self, factor: f64) -> RVec {
        debug_assert!(factor >= 0.0);
        RVec(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for RVec {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Cone norm: the vector of component moduli.
pub fn abs_vec(x: &CVec) -> RVec {
    RVec(x.iter().map(|z| z.norm()).collect())
}

/// `x / y = (|x_1|/y_1, …, |x_n|/y_n)`; every `y_i` must be positive.
pub fn vec_quotient(x: &CVec, y: &RVec) -> Result<RVec> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if let Some(i) = y.iter().position(|&v| !(v > 0.0)) {
        return domain(format!(
            "quotient denominator y[{i}] = {} is not positive",
            y[i]
        ));
    }
    Ok(RVec(
        x.iter().zip(y.iter()).map(|(a, b)| a.norm() / b).collect(),
    ))
}

/// `d_i(x) = min_{j≠i} |x_i − x_j|`.
pub fn min_pairwise_distances(x: &CVec) -> Result<RVec> {
    let n = x.len();
    let mut d = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = (x[i] - x[j]).norm();
            if dist == 0.0 {
                return Err(Error::NotDistinct { i, j });
            }
            d[i] = d[i].min(dist);
            d[j] = d[j].min(dist);
        }
    }
    Ok(RVec(d))
}

/// Coordinate-wise order: `a ⪯ b` iff `a_i <= b_i` for all `i`.
pub fn componentwise_leq(a: &RVec, b: &RVec) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b.iter()).all(|(x, y)| x <= y))
}

/// Power mean `M_r` of a list of moduli, with the limiting values at
/// `r = 0` (geometric mean) and `r = ±∞` (max / min).
pub fn power_mean_of(moduli: &[f64], r: f64) -> Result<f64> {
    if r.is_nan() {
        return domain("power mean exponent is NaN");
    }
    if moduli.is_empty() {
        return domain("power mean of an empty vector");
    }
    let abs: Vec<f64> = moduli.iter().map(|v| v.abs()).collect();
    if r <= 0.0 && abs.contains(&0.0) {
        return domain("power mean with r <= 0 needs nonzero components");
    }
    let n = abs.len() as f64;
    let out = if r == f64::INFINITY {
        abs.iter().fold(0.0f64, |m, &v| m.max(v))
    } else if r == f64::NEG_INFINITY {
        abs.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    } else if r == 0.0 {
        (abs.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
    } else {
        // scale by the max modulus so large |r| does not overflow
        let max = abs.iter().fold(0.0f64, |m, &v| m.max(v));
        if max == 0.0 {
            return Ok(0.0);
        }
        let s = abs.iter().map(|v| (v / max).powf(r)).sum::<f64>() / n;
        max * s.powf(1.0 / r)
    };
    Ok(out)
}

pub fn power_mean(x: &CVec, r: f64) -> Result<f64> {
    power_mean_of(x.abs_vec().as_slice(), r)
}
