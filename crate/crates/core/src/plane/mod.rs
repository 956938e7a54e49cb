//! Euclidean similarity geometry of labeled triangles: Napoleon's theorem,
//! tilings with forced symmetry, and the hexagon-torus deformations built
//! from them.

mod hexagon;
mod svg;
mod tiling;

pub use hexagon::{
    admissible_assignments, hexagon_torus_modulus, HexagonTorus, FIRST_TORUS_ASSIGNMENT,
    SECOND_TORUS_ASSIGNMENT,
};
pub use svg::{render_svg, render_svg_string};
pub use tiling::{build_napoleon_tiling, right_napoleon_octagon, OctagonTiling};

use crate::numerics::{is_finite_c, C};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("parameter outside domain: {0}")]
    Domain(String),
    #[error("inconsistent configuration: {0}")]
    Inconsistent(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

/// A Euclidean triangle with its similarity type tracked explicitly.
/// `similarity_type` always has nonnegative imaginary part; for negatively
/// oriented triangles the vertex ratio is its conjugate.
#[derive(Debug, Clone, Copy)]
pub struct LabeledTriangle {
    pub v0: C,
    pub v1: C,
    pub v2: C,
    pub similarity_type: C,
    pub orientation: i8,
    pub degenerate: bool,
}

impl LabeledTriangle {
    pub fn from_vertices(v0: C, v1: C, v2: C) -> Result<LabeledTriangle, PlaneError> {
        for v in [v0, v1, v2] {
            if !is_finite_c(v) {
                return Err(PlaneError::Domain(format!("non-finite vertex {v}")));
            }
        }
        let d01 = (v1 - v0).norm();
        let d12 = (v2 - v1).norm();
        let d20 = (v0 - v2).norm();
        let diameter = d01.max(d12).max(d20);
        let min_sep = d01.min(d12).min(d20);
        let degenerate = diameter == 0.0 || min_sep < 1e-9 * diameter;
        let (ratio, orientation) = if degenerate {
            (C::new(0.0, 0.0), 1)
        } else {
            let r = (v2 - v0) / (v1 - v0);
            if r.im >= 0.0 {
                (r, 1)
            } else {
                (r.conj(), -1)
            }
        };
        Ok(LabeledTriangle { v0, v1, v2, similarity_type: ratio, orientation, degenerate })
    }

    pub fn vertices(&self) -> [C; 3] {
        [self.v0, self.v1, self.v2]
    }
}

/// A finite collection of triangles plus point labels, the render target
/// for tilings and cusp cross-sections.
#[derive(Debug, Clone, Default)]
pub struct PlaneScene {
    pub triangles: Vec<LabeledTriangle>,
    pub annotations: Vec<(C, String)>,
}

/// Centers of the three equilateral triangles erected externally on the
/// sides of `t`, ordered by the side they sit on: sides `(v2,v0)`,
/// `(v1,v2)`, `(v0,v1)`. The ratio `(c2-c1)/(c3-c1)` is `e^{i pi/3}` for a
/// positively oriented triangle and its conjugate otherwise.
pub fn napoleon_centers(t: &LabeledTriangle) -> Result<(C, C, C), PlaneError> {
    if t.degenerate {
        return Err(PlaneError::Degenerate("napoleon_centers of a degenerate triangle".into()));
    }
    let rot = C::from_polar(1.0, -(t.orientation as f64) * std::f64::consts::PI / 3.0);
    let center_on = |a: C, b: C| {
        // External apex: rotate the directed side away from the interior.
        let apex = a + (b - a) * rot;
        (a + b + apex) / 3.0
    };
    let c1 = center_on(t.v2, t.v0);
    let c2 = center_on(t.v1, t.v2);
    let c3 = center_on(t.v0, t.v1);
    Ok((c1, c2, c3))
}

/// The sixfold product `z * w * (z-1)/z * w * 1/(1-z) * w` with
/// `w = (1 + i sqrt 3)/2`, the holonomy around a vertex where a triangle of
/// type `z` alternates with equilateral triangles. Identically 1.
pub fn vertex_holonomy_product(z: C) -> Result<C, PlaneError> {
    if z == C::new(0.0, 0.0) || z == C::new(1.0, 0.0) {
        return Err(PlaneError::Domain(format!("similarity parameter {z} excluded")));
    }
    let w = crate::numerics::omega();
    let one = C::new(1.0, 0.0);
    Ok(z * w * ((z - one) / z) * w * (one / (one - z)) * w)
}

/// The three corner similarity parameters of the triangle `(0, 1, p)` in
/// counterclockwise order: `p`, `1/(1-p)`, `(p-1)/p`.
pub(crate) fn corner_param(p: C, k: usize) -> C {
    let one = C::new(1.0, 0.0);
    match k {
        0 => p,
        1 => one / (one - p),
        2 => (p - one) / p,
        _ => unreachable!("corner index out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::omega;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    /// Brute-force oracle: apex by rotating one endpoint about the side
    /// midpoint, trying both senses and keeping the one away from the
    /// centroid.
    fn oracle_centers(v: [C; 3]) -> [C; 3] {
        let centroid = (v[0] + v[1] + v[2]) / 3.0;
        let mut out = [c(0.0, 0.0); 3];
        for (i, (a, b)) in [(v[2], v[0]), (v[1], v[2]), (v[0], v[1])].into_iter().enumerate() {
            let mid = (a + b) / 2.0;
            let apex_plus = mid + (a - mid) * C::from_polar(1.0, PI / 2.0) * 3.0f64.sqrt();
            let apex_minus = mid + (a - mid) * C::from_polar(1.0, -PI / 2.0) * 3.0f64.sqrt();
            let apex = if (apex_plus - centroid).norm() >= (apex_minus - centroid).norm() {
                apex_plus
            } else {
                apex_minus
            };
            out[i] = (a + b + apex) / 3.0;
        }
        out
    }

    #[test]
    fn equilateral_input_concentric() {
        let t = LabeledTriangle::from_vertices(c(0.0, 0.0), c(1.0, 0.0), omega()).unwrap();
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        let centroid = (t.v0 + t.v1 + t.v2) / 3.0;
        assert!(((c1 + c2 + c3) / 3.0 - centroid).norm() < 1e-13);
        let ratio = (c2 - c1) / (c3 - c1);
        assert!((ratio - C::from_polar(1.0, PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn real_parameter_matches_proof_constants() {
        // z = 0.3 on the real line: E3 center at 1 - (1 + i/sqrt 3)/2, and
        // the other two centers split the segments 0..w and w..1 in the
        // ratio z : 1-z with w = (1 + i/sqrt 3)/2.
        let z = 0.3;
        let w = c(0.5, 0.5 / 3.0f64.sqrt());
        let t = LabeledTriangle::from_vertices(c(0.0, 0.0), c(1.0, 0.0), c(z, 0.0)).unwrap();
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        assert!((c3 - (c(1.0, 0.0) - w)).norm() < 1e-13, "c3={c3}");
        assert!((c1 - w * z).norm() < 1e-13, "c1={c1}");
        assert!((c2 - (w + (c(1.0, 0.0) - w) * z)).norm() < 1e-13, "c2={c2}");
    }

    #[test]
    fn generic_triangle_matches_rotation_oracle() {
        let t = LabeledTriangle::from_vertices(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0)).unwrap();
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        let oracle = oracle_centers([t.v0, t.v1, t.v2]);
        assert!((c1 - oracle[0]).norm() < 1e-12);
        assert!((c2 - oracle[1]).norm() < 1e-12);
        assert!((c3 - oracle[2]).norm() < 1e-12);
        let ratio = (c2 - c1) / (c3 - c1);
        assert!((ratio - C::from_polar(1.0, PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn negatively_oriented_triangle() {
        let t = LabeledTriangle::from_vertices(c(0.0, 0.0), c(1.0, 0.0), c(0.4, -0.8)).unwrap();
        assert_eq!(t.orientation, -1);
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        let ratio = (c2 - c1) / (c3 - c1);
        assert!((ratio - C::from_polar(1.0, -PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn point_triangle_rejected() {
        let t = LabeledTriangle::from_vertices(c(1.0, 1.0), c(1.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!(t.degenerate);
        assert!(napoleon_centers(&t).is_err());
    }

    #[test]
    fn holonomy_identity() {
        for z in [C::from_polar(1.0, PI / 3.0), c(2.0, 1.0), c(-0.7, 0.2), c(0.01, -5.0)] {
            let p = vertex_holonomy_product(z).unwrap();
            assert!((p - c(1.0, 0.0)).norm() < 1e-12, "z={z} p={p}");
        }
        assert!(vertex_holonomy_product(c(0.0, 0.0)).is_err());
        assert!(vertex_holonomy_product(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn centers_commute_with_affine_maps() {
        let a = c(1.7, -0.6);
        let b = c(-2.0, 0.9);
        let t = LabeledTriangle::from_vertices(c(0.1, 0.2), c(1.3, -0.4), c(0.8, 1.9)).unwrap();
        let (c1, c2, c3) = napoleon_centers(&t).unwrap();
        let mapped = LabeledTriangle::from_vertices(
            a * t.v0 + b,
            a * t.v1 + b,
            a * t.v2 + b,
        )
        .unwrap();
        let (m1, m2, m3) = napoleon_centers(&mapped).unwrap();
        assert!((m1 - (a * c1 + b)).norm() < 1e-10);
        assert!((m2 - (a * c2 + b)).norm() < 1e-10);
        assert!((m3 - (a * c3 + b)).norm() < 1e-10);
    }
}
