//! Complex scalar utilities shared by the whole crate: branch-tracked
//! logarithms, the Bloch-Wigner dilogarithm, dense complex linear algebra
//! and a damped Newton iteration.

mod dilog;
mod linear;
mod newton;

pub use dilog::{bloch_wigner, li2};
pub use linear::{solve_dense, ComplexMat};
pub use newton::{newton_solve, NewtonOptions};

use num_complex::Complex64;
use thiserror::Error;

pub type C = Complex64;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// `(1 + i sqrt(3))/2`, the similarity type of an equilateral triangle.
pub fn omega() -> C {
    C::new(0.5, 3.0f64.sqrt() / 2.0)
}

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("argument outside the operation's domain: {0}")]
    Domain(String),
    #[error("linear system is singular or ill-conditioned (condition estimate {cond:.3e})")]
    Singular { cond: f64 },
    #[error("Newton iteration did not converge within {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },
}

pub fn is_finite_c(z: C) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A logarithm with an explicitly tracked branch: `total() = value + 2 pi i winding`
/// where `value` is the principal logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedLog {
    pub value: C,
    pub winding: i64,
}

impl BranchedLog {
    pub fn total(&self) -> C {
        C::new(self.value.re, self.value.im + TWO_PI * self.winding as f64)
    }
}

/// Logarithm of `z`. Without a hint the principal branch is taken; with a
/// hint the winding is chosen so the total imaginary part lands within pi
/// of the hint's, which continues a branch along a path of solutions.
pub fn branched_log(z: C, continuity_hint: Option<&BranchedLog>) -> Result<BranchedLog, NumericsError> {
    if !is_finite_c(z) {
        return Err(NumericsError::Domain(format!("log of non-finite value {z}")));
    }
    if z == C::new(0.0, 0.0) {
        return Err(NumericsError::Domain("log of zero".into()));
    }
    let value = z.ln();
    let winding = match continuity_hint {
        None => 0,
        Some(hint) => ((hint.total().im - value.im) / TWO_PI).round() as i64,
    };
    Ok(BranchedLog { value, winding })
}
