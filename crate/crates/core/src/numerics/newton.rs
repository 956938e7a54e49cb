//! Damped Newton iteration on complex parameter vectors.
//!
//! Systems here are small and often redundant (more equations than
//! unknowns), so each step is a least-squares step through the normal
//! equations.

use super::{solve_dense, ComplexMat, NumericsError, C};

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Convergence threshold on the residual sup-norm.
    pub tol: f64,
    pub max_iter: usize,
    /// Maximum number of step halvings per iteration.
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-12, max_iter: 50, max_halvings: 30 }
    }
}

fn sup_norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Solve `residual(x) = 0` from `start`. The Jacobian must be consistent
/// with the residual; callers are responsible for a start within the basin
/// (continuation provides good starts downstream).
pub fn newton_solve<R, J>(
    residual: R,
    jacobian: J,
    start: &[C],
    opts: NewtonOptions,
) -> Result<Vec<C>, NumericsError>
where
    R: Fn(&[C]) -> Vec<C>,
    J: Fn(&[C]) -> ComplexMat,
{
    let mut x = start.to_vec();
    let mut r = residual(&x);
    let mut rnorm = sup_norm(&r);
    for _ in 0..opts.max_iter {
        if rnorm < opts.tol {
            return Ok(x);
        }
        let jac = jacobian(&x);
        assert_eq!(jac.cols, x.len());
        assert_eq!(jac.rows, r.len());
        let gram = jac.gram();
        let rhs: Vec<C> = jac.adjoint_apply(&r).iter().map(|v| -v).collect();
        let step = solve_dense(&gram, &rhs)?;

        // Step halving when the full step fails to reduce the residual.
        let mut scale = 1.0f64;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<C> = x.iter().zip(step.iter()).map(|(xi, si)| xi + si * scale).collect();
            let tr = residual(&trial);
            let tn = sup_norm(&tr);
            if tn < rnorm || tn < opts.tol {
                x = trial;
                r = tr;
                rnorm = tn;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            return Err(NumericsError::NoConvergence { iters: opts.max_iter, residual: rnorm });
        }
    }
    if rnorm < opts.tol {
        Ok(x)
    } else {
        Err(NumericsError::NoConvergence { iters: opts.max_iter, residual: rnorm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_system_one_step() {
        let c = C::new(0.3, -1.7);
        let res = move |v: &[C]| vec![v[0] - c];
        let jac = |_: &[C]| {
            let mut m = ComplexMat::zeros(1, 1);
            m.set(0, 0, C::new(1.0, 0.0));
            m
        };
        let got = newton_solve(res, jac, &[C::new(5.0, 5.0)], NewtonOptions::default()).unwrap();
        assert!((got[0] - c).norm() < 1e-12);
    }

    #[test]
    fn quadratic_root() {
        // z^2 - z + 1 = 0 has root (1 + i sqrt 3)/2; quadratic formula oracle.
        let res = |v: &[C]| vec![v[0] * v[0] - v[0] + C::new(1.0, 0.0)];
        let jac = |v: &[C]| {
            let mut m = ComplexMat::zeros(1, 1);
            m.set(0, 0, v[0] * 2.0 - C::new(1.0, 0.0));
            m
        };
        let got = newton_solve(res, jac, &[C::new(0.5, 0.9)], NewtonOptions::default()).unwrap();
        let oracle = (C::new(1.0, 0.0) + (C::new(1.0, 0.0) - C::new(4.0, 0.0)).sqrt()) / 2.0;
        assert!((got[0] - oracle).norm() < 1e-12);
    }

    #[test]
    fn singular_jacobian_at_start() {
        let res = |v: &[C]| vec![v[0] * v[0] + C::new(1.0, 0.0)];
        let jac = |v: &[C]| {
            let mut m = ComplexMat::zeros(1, 1);
            m.set(0, 0, v[0] * 2.0);
            m
        };
        let r = newton_solve(res, jac, &[C::new(0.0, 0.0)], NewtonOptions::default());
        assert!(matches!(r, Err(NumericsError::Singular { .. })));
    }
}
