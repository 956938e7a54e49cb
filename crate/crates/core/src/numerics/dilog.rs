//! Complex dilogarithm and the Bloch-Wigner function.
//!
//! `D(z) = Im(Li2(z)) + arg(1-z) log|z|` is the signed hyperbolic volume of
//! the ideal tetrahedron with simplex parameter `z`.

use super::{is_finite_c, NumericsError, C};
use std::f64::consts::PI;
use std::sync::OnceLock;

const PI2_6: f64 = PI * PI / 6.0;

/// Coefficients `B_n / (n+1)!` for the Bernoulli series of Li2 in
/// `w = -ln(1-z)`. Odd Bernoulli numbers past B_1 vanish.
fn bernoulli_coeffs() -> &'static [f64; 44] {
    static TABLE: OnceLock<[f64; 44]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_n by the standard recurrence; n <= 43 is plenty since the series
        // terms decay like (|w|/2pi)^n and |w| stays below 3.3 here.
        let n = 44;
        let mut b = vec![0.0f64; n];
        b[0] = 1.0;
        for m in 1..n {
            // sum_{k=0}^{m-1} C(m+1, k) B_k = 0
            let mut acc = 0.0;
            let mut binom = 1.0; // C(m+1, 0)
            for (k, bk) in b.iter().enumerate().take(m) {
                acc += binom * bk;
                binom = binom * (m as f64 + 1.0 - k as f64) / (k as f64 + 1.0);
            }
            b[m] = -acc / (m as f64 + 1.0);
        }
        let mut coeffs = [0.0f64; 44];
        let mut fact = 1.0f64; // (n+1)!
        for (i, c) in coeffs.iter_mut().enumerate() {
            fact *= (i + 1) as f64;
            *c = b[i] / fact;
        }
        coeffs
    })
}

fn li2_series(z: C) -> C {
    // Direct power series, |z| <= 0.5.
    let mut sum = C::new(0.0, 0.0);
    let mut pow = C::new(1.0, 0.0);
    for k in 1..60 {
        pow *= z;
        let term = pow / (k * k) as f64;
        sum += term;
        if term.norm() < 1e-17 {
            break;
        }
    }
    sum
}

fn li2_bernoulli(z: C) -> C {
    let w = -(C::new(1.0, 0.0) - z).ln();
    let coeffs = bernoulli_coeffs();
    let mut sum = C::new(0.0, 0.0);
    let mut pow = C::new(1.0, 0.0);
    for &c in coeffs.iter() {
        pow *= w;
        sum += pow * c;
    }
    sum
}

/// Complex dilogarithm, principal branch, absolute accuracy around 1e-13.
pub fn li2(z: C) -> C {
    if z == C::new(0.0, 0.0) {
        return C::new(0.0, 0.0);
    }
    if z == C::new(1.0, 0.0) {
        return C::new(PI2_6, 0.0);
    }
    let one = C::new(1.0, 0.0);
    if z.norm() <= 0.5 {
        li2_series(z)
    } else if z.norm() > 1.0 {
        // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - ln(-z)^2 / 2.
        let l = (-z).ln();
        -li2(one / z) - C::new(PI2_6, 0.0) - l * l * 0.5
    } else if (one - z).norm() <= 0.5 {
        // Reflection: Li2(z) = pi^2/6 - ln(z) ln(1-z) - Li2(1-z).
        C::new(PI2_6, 0.0) - z.ln() * (one - z).ln() - li2_series(one - z)
    } else {
        li2_bernoulli(z)
    }
}

/// Bloch-Wigner dilogarithm: the signed volume of the ideal tetrahedron
/// with parameter `z`. Antisymmetric under conjugation, zero on the reals.
pub fn bloch_wigner(z: C) -> Result<f64, NumericsError> {
    if !is_finite_c(z) {
        return Err(NumericsError::Domain(format!("bloch_wigner of non-finite {z}")));
    }
    if z == C::new(0.0, 0.0) || z == C::new(1.0, 0.0) {
        return Err(NumericsError::Domain(format!("bloch_wigner undefined at {z}")));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    let one = C::new(1.0, 0.0);
    Ok(li2(z).im + (one - z).arg() * z.norm().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::omega;

    /// Lobachevsky function by its sine series, an oracle independent of Li2.
    fn lobachevsky(theta: f64) -> f64 {
        let mut s = 0.0;
        for n in (1..=2_000_000u64).rev() {
            s += (2.0 * n as f64 * theta).sin() / (n * n) as f64;
        }
        s / 2.0
    }

    #[test]
    fn regular_tetrahedron_volume() {
        let v = bloch_wigner(omega()).unwrap();
        let oracle = 3.0 * lobachevsky(PI / 3.0);
        assert!((v - oracle).abs() < 1e-12, "v={v} oracle={oracle}");
        assert!((v - 1.0149416064096536).abs() < 1e-12);
    }

    #[test]
    fn conjugation_antisymmetry_and_reals() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let z = C::new(4.0 * next() - 2.0, 2.0 * next() + 0.01);
            let d = bloch_wigner(z).unwrap();
            let dc = bloch_wigner(z.conj()).unwrap();
            assert!((d + dc).abs() < 1e-12);
        }
        assert_eq!(bloch_wigner(C::new(0.5, 0.0)).unwrap(), 0.0);
        assert!(bloch_wigner(C::new(0.0, 0.0)).is_err());
        assert!(bloch_wigner(C::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn five_term_symmetry() {
        let one = C::new(1.0, 0.0);
        let mut state = 123456789u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let z = C::new(4.0 * next() - 2.0, 1.9 * next() + 0.05);
            let d = bloch_wigner(z).unwrap();
            let d1 = bloch_wigner(one - one / z).unwrap();
            let d2 = bloch_wigner(one / (one - z)).unwrap();
            assert!((d - d1).abs() < 1e-12, "z={z} d={d} d1={d1}");
            assert!((d - d2).abs() < 1e-12, "z={z} d={d} d2={d2}");
        }
    }

    #[test]
    fn li2_matches_series_continuation() {
        // Compare the functional-equation regions against the raw series at
        // a point where both apply (|z| slightly above 0.5).
        let z = C::new(0.49, 0.1);
        let a = li2(z);
        let b = li2_series(z);
        assert!((a - b).norm() < 1e-14);
        // Landen check: Li2(z) + Li2(z/(z-1)) = -ln(1-z)^2/2 off the cuts.
        let one = C::new(1.0, 0.0);
        for &z in &[C::new(0.8, 0.4), C::new(-0.3, 0.9), C::new(0.6, -0.7), C::new(1.4, 0.9)] {
            let l = (one - z).ln();
            let lhs = li2(z) + li2(z / (z - one));
            assert!((lhs + l * l * 0.5).norm() < 1e-13, "z={z}");
        }
    }
}
