//! The Weierstrass correction `W`, the iteration function `T x = x − W(x)`,
//! the equivalent two-point step, and the semilocal quantity
//! `E(x) = ‖W(x)/d(x)‖_p`.

use crate::core_math::{min_pairwise_distances, p_norm_of, vec_quotient, CVec, Complex, PExponent};
use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, RootVector};

/// One application of the iteration function, kept whole so later
/// certification steps do not need to re-evaluate `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassStep {
    pub input: CVec,
    pub correction: CVec,
    pub output: CVec,
    pub e_value: Option<f64>,
}

fn check_len(f: &Polynomial, x: &CVec) -> Result<()> {
    if x.len() != f.degree() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: f.degree(),
        });
    }
    Ok(())
}

/// `W_i(x) = f(x_i) / (a_0 Π_{j≠i} (x_i − x_j))`.
///
/// The denominator product runs over ascending `j`, and `f(x_i)` is evaluated
/// with [`Polynomial::eval_accurate`].
pub fn correction(f: &Polynomial, x: &CVec) -> Result<CVec> {
    check_len(f, x)?;
    x.ensure_distinct()?;
    let a0 = f.leading();
    let n = x.len();
    let w = (0..n)
        .map(|i| {
            let mut denom = a0;
            for j in 0..n {
                if j != i {
                    denom *= x[i] - x[j];
                }
            }
            f.eval_accurate(x[i]) / denom
        })
        .collect();
    Ok(CVec::from_vec_unchecked(w))
}

/// `T x = x − W(x)`. The output is not checked for distinct components.
pub fn step(f: &Polynomial, x: &CVec) -> Result<WeierstrassStep> {
    let w = correction(f, x)?;
    let output = x - &w;
    Ok(WeierstrassStep {
        input: x.clone(),
        correction: w,
        output,
        e_value: None,
    })
}

/// Like [`step`], also recording `E(x)`.
pub fn step_with_e(f: &Polynomial, x: &CVec, p: PExponent) -> Result<WeierstrassStep> {
    let mut s = step(f, x)?;
    s.e_value = Some(e_from_correction(&s.correction, x, p)?);
    Ok(s)
}

/// Next iterate computed from the two previous ones without evaluating `f`:
///
/// `x_i^{k+1} = x_i^k − (x_i^k − x_i^{k−1}) Σ_{j≠i} (x_j^{k−1} − x_j^k)/(x_i^k − x_j^{k−1})
///              · Π_{j≠i} (x_i^k − x_j^{k−1})/(x_i^k − x_j^k)`.
///
/// `x_curr` must be the Weierstrass step of `x_prev`.
pub fn two_point_step(x_prev: &CVec, x_curr: &CVec) -> Result<CVec> {
    if x_prev.len() != x_curr.len() {
        return Err(Error::LengthMismatch {
            left: x_prev.len(),
            right: x_curr.len(),
        });
    }
    x_curr.ensure_distinct()?;
    let n = x_curr.len();
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let moved = x_curr[i] - x_prev[i];
        if moved == Complex::new(0.0, 0.0) {
            next.push(x_curr[i]);
            continue;
        }
        let mut sum = Complex::new(0.0, 0.0);
        let mut prod = Complex::new(1.0, 0.0);
        for j in (0..n).filter(|&j| j != i) {
            let mixed = x_curr[i] - x_prev[j];
            if mixed == Complex::new(0.0, 0.0) {
                return Err(Error::DegenerateGeometry(format!(
                    "x_{i}^k coincides with x_{j}^(k-1)"
                )));
            }
            sum += (x_prev[j] - x_curr[j]) / mixed;
            prod *= mixed / (x_curr[i] - x_curr[j]);
        }
        next.push(x_curr[i] - moved * sum * prod);
    }
    Ok(CVec::from_vec_unchecked(next))
}

/// `E(x) = ‖W(x)/d(x)‖_p` from an already computed correction.
pub fn e_from_correction(w: &CVec, x: &CVec, p: PExponent) -> Result<f64> {
    let d = min_pairwise_distances(x)?;
    Ok(p_norm_of(vec_quotient(w, &d)?.as_slice(), p))
}

/// `E(x) = ‖W(x)/d(x)‖_p`.
pub fn e_semilocal(f: &Polynomial, x: &CVec, p: PExponent) -> Result<f64> {
    let w = correction(f, x)?;
    e_from_correction(&w, x, p)
}

/// `T_i(x) − ξ_i − (1 − Π_{j≠i}(1 + u_j))(x_i − ξ_i)` with
/// `u_j = (x_j − ξ_j)/(x_i − x_j)`. Vanishes in exact arithmetic because
/// `W_i(x) = (x_i − ξ_i) Π_{j≠i}(1 + u_j)` for monic-normalized `f`.
pub fn identity_residual_local1(
    f: &Polynomial,
    roots: &RootVector,
    x: &CVec,
    i: usize,
) -> Result<Complex> {
    let xi = roots.as_cvec();
    if xi.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: xi.len(),
            right: x.len(),
        });
    }
    if i >= x.len() {
        return Err(Error::Domain(format!("index {i} out of range")));
    }
    let t = step(f, x)?.output;
    let prod: Complex = (0..x.len())
        .filter(|&j| j != i)
        .map(|j| 1.0 + (x[j] - xi[j]) / (x[i] - x[j]))
        .product();
    Ok(t[i] - xi[i] - (1.0 - prod) * (x[i] - xi[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::from_roots;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rv(re: &[f64]) -> CVec {
        CVec::from_reals(re).unwrap()
    }

    fn close(a: &CVec, b: &CVec, tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn correction_examples() {
        let xi = rv(&[1.0, -2.0, 0.5]);
        let f = from_roots(&RootVector::new(xi.clone()), c(2.0, 1.0)).unwrap();
        assert!(correction(&f, &xi)
            .unwrap()
            .iter()
            .all(|w| w.norm() < 1e-15));

        let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
        let w = correction(&f, &rv(&[2.0, -2.0])).unwrap();
        assert_eq!(w, rv(&[0.75, -0.75]));

        let x = CVec::new(vec![c(0.3, 0.1), c(-1.0, 2.0), c(4.0, -1.0)]).unwrap();
        let g = Polynomial::from_reals(&[1.0, -2.0, 0.5, 3.0]).unwrap();
        let scaled = g.scaled(c(-3.5, 0.25)).unwrap();
        assert!(close(
            &correction(&g, &x).unwrap(),
            &correction(&scaled, &x).unwrap(),
            1e-13
        ));
        assert!(matches!(
            correction(&f, &rv(&[1.0, 1.0])),
            Err(Error::NotDistinct { .. })
        ));
        assert!(matches!(
            correction(&f, &rv(&[1.0, 2.0, 3.0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn step_examples() {
        let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
        let s = step(&f, &rv(&[2.0, -2.0])).unwrap();
        assert_eq!(s.output, rv(&[1.25, -1.25]));
        assert_eq!(&s.input - &s.correction, s.output);

        let g = Polynomial::from_reals(&[1.0, -2.0, 1.0]).unwrap();
        assert_eq!(step(&g, &rv(&[2.0, 0.0])).unwrap().output, rv(&[1.5, 0.5]));

        let roots = rv(&[1.0, -1.0]);
        assert_eq!(step(&f, &roots).unwrap().output, roots);
    }

    #[test]
    fn two_point_examples() {
        let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
        let x0 = rv(&[2.0, -2.0]);
        let x1 = step(&f, &x0).unwrap().output;
        let one_point = step(&f, &x1).unwrap().output;
        let two_point = two_point_step(&x0, &x1).unwrap();
        assert!(close(&one_point, &two_point, 1e-12));

        assert_eq!(two_point_step(&x0, &x0).unwrap(), x0);

        let next = two_point_step(&rv(&[2.0, 0.0]), &rv(&[1.5, 0.5])).unwrap();
        assert!(close(&next, &rv(&[1.25, 0.75]), 1e-15));

        // x_curr[0] lands exactly on x_prev[1]
        assert!(matches!(
            two_point_step(&rv(&[0.0, 1.0]), &rv(&[1.0, 3.0])),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn e_semilocal_examples() {
        let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(
            e_semilocal(&f, &rv(&[1.0, -1.0]), PExponent::INF).unwrap(),
            0.0
        );
        assert_eq!(
            e_semilocal(&f, &rv(&[2.0, -2.0]), PExponent::INF).unwrap(),
            0.1875
        );
        let g = Polynomial::from_reals(&[1.0, -2.0, 1.0]).unwrap();
        assert_eq!(
            e_semilocal(&g, &rv(&[2.0, 0.0]), PExponent::INF).unwrap(),
            0.25
        );
        let s = step_with_e(&f, &rv(&[2.0, -2.0]), PExponent::INF).unwrap();
        assert_eq!(s.e_value, Some(0.1875));
    }

    #[test]
    fn identity_residual_examples() {
        let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
        let roots = RootVector::new(rv(&[1.0, -1.0]));
        let r = identity_residual_local1(&f, &roots, roots.as_cvec(), 0).unwrap();
        assert_eq!(r, c(0.0, 0.0));
        for i in 0..2 {
            let r = identity_residual_local1(&f, &roots, &rv(&[2.0, -2.0]), i).unwrap();
            assert!(r.norm() < 1e-12);
        }
        let xi = CVec::new(vec![c(1.0, 0.5), c(-1.0, 0.0), c(0.0, -2.0), c(2.5, 1.0)]).unwrap();
        let roots = RootVector::new(xi.clone());
        let f = from_roots(&roots, c(1.0, 0.0)).unwrap();
        let x = CVec::new(
            xi.iter()
                .enumerate()
                .map(|(k, z)| z + c(0.05 * (k as f64 + 1.0), -0.03 * k as f64))
                .collect(),
        )
        .unwrap();
        for i in 0..4 {
            let r = identity_residual_local1(&f, &roots, &x, i).unwrap();
            let scale = (step(&f, &x).unwrap().output[i] - xi[i]).norm() + (x[i] - xi[i]).norm();
            assert!(r.norm() <= 1e-10 * scale, "i={i} r={r}");
        }
    }
}
