//! Dense complex polynomials stored highest-degree-first, so the leading
//! coefficient `a_0` sits at index 0.

use std::ops::Add;

use crate::core_math::{min_pairwise_distances, CVec, Complex};
use crate::error::{domain, Error, Result};
use crate::weierstrass;

/// Polynomial of degree `n >= 2` with nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Coefficients `a_0, a_1, …, a_n`, highest degree first.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() < 3 {
            return domain(format!(
                "polynomial degree must be at least 2, got {}",
                coeffs.len().saturating_sub(1)
            ));
        }
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return domain("polynomial coefficients must be finite");
        }
        if coeffs[0] == Complex::new(0.0, 0.0) {
            return domain("leading coefficient a_0 must be nonzero");
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_reals(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0] == Complex::new(1.0, 0.0)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_monic() {
            return self.clone();
        }
        let a0 = self.coeffs[0];
        let mut coeffs: Vec<Complex> = self.coeffs.iter().map(|c| c / a0).collect();
        coeffs[0] = Complex::new(1.0, 0.0);
        Polynomial { coeffs }
    }

    /// `c · f` for a nonzero constant `c`.
    pub fn scaled(&self, c: Complex) -> Result<Polynomial> {
        if c == Complex::new(0.0, 0.0) {
            return domain("scale factor must be nonzero");
        }
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner's scheme.
    pub fn eval(&self, z: Complex) -> Complex {
        horner(&self.coeffs, z)
    }

    /// Horner's scheme carried in double-double arithmetic, rounded once at
    /// the end. Near a zero this keeps the relative accuracy of `f(z)` that
    /// plain Horner loses to cancellation.
    pub fn eval_accurate(&self, z: Complex) -> Complex {
        let mut re = DoubleDouble::from(self.coeffs[0].re);
        let mut im = DoubleDouble::from(self.coeffs[0].im);
        for a in &self.coeffs[1..] {
            let new_re = re.mul_f64(z.re).sub(im.mul_f64(z.im)).add_f64(a.re);
            let new_im = re.mul_f64(z.im).add(im.mul_f64(z.re)).add_f64(a.im);
            re = new_re;
            im = new_im;
        }
        Complex::new(re.to_f64(), im.to_f64())
    }

    pub fn derivative(&self, k: usize) -> RawPoly {
        RawPoly::from(self).derivative(k)
    }
}

fn horner(coeffs: &[Complex], z: Complex) -> Complex {
    coeffs
        .iter()
        .fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Coefficient list of arbitrary degree, possibly the zero polynomial.
/// Used for derivatives and sums, which may drop below degree 2.
#[derive(Debug, Clone, PartialEq)]
pub struct RawPoly {
    coeffs: Vec<Complex>,
}

impl RawPoly {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        let first = coeffs
            .iter()
            .position(|c| *c != Complex::new(0.0, 0.0))
            .unwrap_or(coeffs.len());
        RawPoly {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn zero() -> Self {
        RawPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex) -> Complex {
        horner(&self.coeffs, z)
    }

    /// k-th formal derivative; `k = 0` is the identity and `k > degree`
    /// yields the zero polynomial.
    pub fn derivative(&self, k: usize) -> RawPoly {
        let Some(n) = self.degree() else {
            return RawPoly::zero();
        };
        if k > n {
            return RawPoly::zero();
        }
        // coefficient of z^m (index n - m) picks up m (m-1) … (m-k+1)
        let coeffs = (k..=n)
            .rev()
            .map(|m| {
                let falling: f64 = (m - k + 1..=m).map(|v| v as f64).product();
                self.coeffs[n - m] * falling
            })
            .collect();
        RawPoly::new(coeffs)
    }
}

impl From<&Polynomial> for RawPoly {
    fn from(f: &Polynomial) -> Self {
        RawPoly {
            coeffs: f.coeffs.clone(),
        }
    }
}

impl Add for &RawPoly {
    type Output = RawPoly;

    fn add(self, rhs: &RawPoly) -> RawPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let pad = |c: &[Complex]| {
            let mut v = vec![Complex::new(0.0, 0.0); len - c.len()];
            v.extend_from_slice(c);
            v
        };
        let (a, b) = (pad(&self.coeffs), pad(&rhs.coeffs));
        RawPoly::new(a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }
}

/// The zeros of a polynomial listed as a vector, in some fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootVector(CVec);

impl RootVector {
    pub fn new(roots: CVec) -> Self {
        RootVector(roots)
    }

    pub fn as_cvec(&self) -> &CVec {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<CVec> for RootVector {
    fn from(v: CVec) -> Self {
        RootVector(v)
    }
}

/// Expands `a_0 Π (z − ξ_i)` by sequential convolution.
pub fn from_roots(roots: &RootVector, a0: Complex) -> Result<Polynomial> {
    if a0 == Complex::new(0.0, 0.0) {
        return domain("leading coefficient a_0 must be nonzero");
    }
    let mut coeffs = vec![a0];
    for &r in roots.as_cvec() {
        let mut next = coeffs.clone();
        next.push(Complex::new(0.0, 0.0));
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] -= c * r;
        }
        coeffs = next;
    }
    Polynomial::new(coeffs)
}

/// `f(z) − [Σ_i W_i(x) Π_{j≠i}(z − x_j) + Π_j (z − x_j)]` for the monic
/// normalization of `f`. Zero in exact arithmetic.
pub fn lagrange_residual(f: &Polynomial, x: &CVec, z: Complex) -> Result<Complex> {
    if x.len() != f.degree() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: f.degree(),
        });
    }
    let g = f.monic();
    let w = weierstrass::correction(&g, x)?;
    let n = x.len();
    let mut interp = Complex::new(0.0, 0.0);
    for i in 0..n {
        let prod: Complex = (0..n).filter(|&j| j != i).map(|j| z - x[j]).product();
        interp += w[i] * prod;
    }
    let full: Complex = x.iter().map(|xj| z - xj).product();
    Ok(g.eval(z) - (interp + full))
}

/// `sep f = min_{i≠j} |ξ_i − ξ_j|`.
pub fn separation(roots: &RootVector) -> Result<f64> {
    let d = min_pairwise_distances(roots.as_cvec())?;
    Ok(d.iter().fold(f64::INFINITY, |m, &v| m.min(v)))
}

/// Smale's `γ(f, z) = max_{k≥2} |f^{(k)}(z) / (k! f'(z))|^{1/(k−1)}`.
pub fn smale_gamma_at(f: &Polynomial, z: Complex) -> Result<f64> {
    let df = f.derivative(1).eval(z);
    if df == Complex::new(0.0, 0.0) {
        return Err(Error::CriticalPoint(format!("{z}")));
    }
    let mut gamma = 0.0f64;
    let mut factorial = 1.0f64;
    for k in 2..=f.degree() {
        factorial *= k as f64;
        let dk = f.derivative(k).eval(z);
        let term = (dk / (df * factorial)).norm().powf(1.0 / (k as f64 - 1.0));
        gamma = gamma.max(term);
    }
    Ok(gamma)
}

/// `γ(f) = max_i γ(f, ξ_i)`.
pub fn smale_gamma(f: &Polynomial, roots: &RootVector) -> Result<f64> {
    roots
        .as_cvec()
        .iter()
        .try_fold(0.0f64, |m, &r| Ok(m.max(smale_gamma_at(f, r)?)))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    fn add(self, o: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    fn sub(self, o: DoubleDouble) -> DoubleDouble {
        self.add(DoubleDouble {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    fn add_f64(self, b: f64) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleDouble { hi, lo }
    }

    fn mul_f64(self, b: f64) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}
