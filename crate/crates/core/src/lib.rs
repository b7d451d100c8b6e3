//! Certified simultaneous polynomial root finding.
//!
//! The Weierstrass (Durand–Kerner) iteration `x ← x − W(x)` refines all
//! zeros of a polynomial at once. Alongside the iteration this crate
//! computes checkable convergence conditions, a priori and a posteriori
//! error bounds, and disjoint inclusion disks that each contain exactly one
//! zero.
//!
//! ```
//! use wdk_core::{solver, Polynomial, PExponent};
//!
//! let f = Polynomial::from_reals(&[1.0, 0.0, -1.0]).unwrap();
//! let x0 = wdk_core::CVec::from_reals(&[2.0, -2.0]).unwrap();
//! let opts = solver::SolveOptions::new(PExponent::INF);
//! let report = solver::solve(&f, &x0, &opts).unwrap();
//! assert_eq!(report.status, solver::SolveStatus::CertifiedConverged);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod core_math;
mod error;
pub mod gauge;
pub mod local_theory;
pub mod polynomial;
pub mod solver;
pub mod weierstrass;

pub use core_math::{CVec, Complex, PExponent, RVec};
pub use error::{Error, Result};
pub use gauge::GaugeParams;
pub use polynomial::{Polynomial, RootVector};
