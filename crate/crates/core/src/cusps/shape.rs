//! Similarity classes of Euclidean tori as points of the modular orbifold,
//! reduced to the standard fundamental domain by Gauss reduction.

use crate::numerics::C;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("modulus {0} is real; the two translations are linearly dependent")]
    DegenerateModulus(C),
}

/// The similarity class of a Euclidean torus: the raw ratio `tau` of
/// longitude to meridian translation, its representative `reduced` in the
/// closed standard fundamental domain, and the integer matrix realizing
/// the reduction.
///
/// When `basis_change` has determinant -1 the input was conjugated into the
/// upper half-plane first: `reduced = (a conj(tau) + b) / (c conj(tau) + d)`
/// where `[[a, b], [c, d]]` is `basis_change` with its second column negated.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CuspShape {
    pub tau: C,
    pub reduced: C,
    pub basis_change: [[i64; 2]; 2],
}

#[cfg(test)]
fn mobius(m: [[i64; 2]; 2], t: C) -> C {
    let num = t * m[0][0] as f64 + C::new(m[0][1] as f64, 0.0);
    let den = t * m[1][0] as f64 + C::new(m[1][1] as f64, 0.0);
    num / den
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

impl CuspShape {
    /// Reduce `tau` to the fundamental domain `|Re| <= 1/2, |tau| >= 1`.
    /// Boundary ties prefer `Re in (-1/2, 1/2]` and, on the unit circle,
    /// the representative with `Re >= 0`.
    pub fn from_tau(tau: C) -> Result<CuspShape, ShapeError> {
        if tau.im == 0.0 || !tau.im.is_finite() || !tau.re.is_finite() {
            return Err(ShapeError::DegenerateModulus(tau));
        }
        let conjugated = tau.im < 0.0;
        let mut t = if conjugated { tau.conj() } else { tau };
        let mut m = [[1i64, 0], [0, 1]];
        // Boundary tolerance: Re within 1e-9 of -1/2 shifts to +1/2, and Re
        // within 1e-9 above +1/2 stays put, so noise at the boundary cannot
        // flip the representative between the two vertical edges.
        let shift = |re: f64| (re - 0.5 - 1e-9).ceil() as i64;
        for _ in 0..200 {
            // Shift Re into (-1/2, 1/2].
            let n = shift(t.re);
            if n != 0 {
                t -= C::new(n as f64, 0.0);
                m = mat_mul([[1, -n], [0, 1]], m);
            }
            if t.norm() < 1.0 - 1e-12 {
                t = -t.inv();
                m = mat_mul([[0, -1], [1, 0]], m);
            } else {
                break;
            }
        }
        // On the unit circle prefer the representative with Re >= 0.
        if (t.norm() - 1.0).abs() < 1e-9 && t.re < 0.0 {
            t = -t.inv();
            m = mat_mul([[0, -1], [1, 0]], m);
            let n = shift(t.re);
            if n != 0 {
                t -= C::new(n as f64, 0.0);
                m = mat_mul([[1, -n], [0, 1]], m);
            }
        }
        let basis_change = if conjugated {
            // Negating the second column flags the conjugation via det = -1.
            [[m[0][0], -m[0][1]], [m[1][0], -m[1][1]]]
        } else {
            m
        };
        Ok(CuspShape { tau, reduced: t, basis_change })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::omega;

    #[test]
    fn square_lattice_reduces_to_i() {
        let s = CuspShape::from_tau(C::new(1.0, 1.0)).unwrap();
        assert!((s.reduced - C::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn hexagonal_corner_ties() {
        for t in [omega(), omega() - C::new(1.0, 0.0), C::new(0.5, 3.0f64.sqrt() / 2.0 - 1e-13)] {
            let s = CuspShape::from_tau(t).unwrap();
            assert!((s.reduced - omega()).norm() < 1e-10, "tau={t} reduced={}", s.reduced);
        }
    }

    #[test]
    fn matrix_realizes_reduction() {
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let tau = C::new(20.0 * next() - 10.0, 6.0 * next() - 3.0);
            if tau.im.abs() < 1e-3 {
                continue;
            }
            let s = CuspShape::from_tau(tau).unwrap();
            let det = s.basis_change[0][0] * s.basis_change[1][1] - s.basis_change[0][1] * s.basis_change[1][0];
            assert!(det == 1 || det == -1);
            let (m, arg) = if det == -1 {
                let b = s.basis_change;
                ([[b[0][0], -b[0][1]], [b[1][0], -b[1][1]]], tau.conj())
            } else {
                (s.basis_change, tau)
            };
            assert!((mobius(m, arg) - s.reduced).norm() < 1e-9);
            assert!(s.reduced.im > 0.0);
            assert!(s.reduced.re.abs() <= 0.5 + 1e-9);
            assert!(s.reduced.norm() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn basis_independence_of_reduced_value() {
        let tau = C::new(0.37, 1.21);
        let base = CuspShape::from_tau(tau).unwrap().reduced;
        for m in [[[1i64, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]], [[5, 2], [2, 1]]] {
            let other = CuspShape::from_tau(mobius(m, tau)).unwrap().reduced;
            assert!((other - base).norm() < 1e-10);
        }
    }
}
