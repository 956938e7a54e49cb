//! Two-hexagon torus deformations: six triangles of alternating similarity
//! types developed around a central vertex, with opposite sides of the
//! resulting hexagon glued by translations.

use super::{corner_param, LabeledTriangle, PlaneError};
use crate::cusps::CuspShape;
use crate::numerics::C;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Corner assignment under which deforming `w` with `z` held at the
/// equilateral value leaves the torus modulus hexagonal.
pub const FIRST_TORUS_ASSIGNMENT: [usize; 6] = [0, 0, 2, 2, 1, 1];

/// Corner assignment under which deforming `z` with `w` held at the
/// equilateral value leaves the torus modulus hexagonal. Its combinatorial
/// triangulation is a fundamental domain of the S(3,3,3) tessellation.
pub const SECOND_TORUS_ASSIGNMENT: [usize; 6] = [0, 1, 2, 0, 1, 2];

/// Six triangles in cyclic order around a central vertex, alternating
/// similarity types `z` (positions 0, 2, 4) and `w` (positions 1, 3, 5).
/// `corner_assignment[j]` picks which of the three corner parameters of
/// triangle `j` sits at the center.
#[derive(Debug, Clone)]
pub struct HexagonTorus {
    pub triangles: [LabeledTriangle; 6],
    pub corner_assignment: [usize; 6],
    pub params: (C, C),
    /// Developed positions of the outer ring, `ring[j] .. ring[j+1]` being
    /// the outer side of triangle `j` (`ring[6] == ring[0]` when the
    /// central holonomy closes).
    ring: [C; 7],
}

impl HexagonTorus {
    pub fn new(z: C, w: C, corner_assignment: [usize; 6]) -> Result<HexagonTorus, PlaneError> {
        for p in [z, w] {
            if p == C::new(0.0, 0.0) || p == C::new(1.0, 0.0) {
                return Err(PlaneError::Domain(format!("similarity parameter {p} excluded")));
            }
        }
        let mut ring = [C::new(0.0, 0.0); 7];
        ring[0] = C::new(1.0, 0.0);
        for j in 0..6 {
            let p = if j % 2 == 0 { z } else { w };
            ring[j + 1] = ring[j] * corner_param(p, corner_assignment[j]);
        }
        let center = C::new(0.0, 0.0);
        let mut triangles = Vec::with_capacity(6);
        for j in 0..6 {
            triangles.push(LabeledTriangle::from_vertices(center, ring[j], ring[j + 1])?);
        }
        Ok(HexagonTorus {
            triangles: triangles.try_into().unwrap(),
            corner_assignment,
            params: (z, w),
            ring,
        })
    }

    pub fn first_torus(z: C, w: C) -> Result<HexagonTorus, PlaneError> {
        HexagonTorus::new(z, w, FIRST_TORUS_ASSIGNMENT)
    }

    pub fn second_torus(z: C, w: C) -> Result<HexagonTorus, PlaneError> {
        HexagonTorus::new(z, w, SECOND_TORUS_ASSIGNMENT)
    }

    /// The two translations pairing opposite sides of the developed
    /// hexagon. Errors if the central holonomy fails to close or a pairing
    /// is not an honest translation.
    pub fn side_pairings(&self) -> Result<(C, C), PlaneError> {
        let g = &self.ring;
        let scale = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if (g[6] - g[0]).norm() > 1e-9 * scale {
            return Err(PlaneError::Inconsistent(format!(
                "central vertex holonomy does not close (defect {:.3e})",
                (g[6] - g[0]).norm()
            )));
        }
        // Side j runs g[j] .. g[j+1]; it is glued to side j+3 reversed, so
        // the pairing translation must carry g[j] to g[j+4] and g[j+1] to
        // g[j+3].
        let mut trans = [C::new(0.0, 0.0); 3];
        for (j, t) in trans.iter_mut().enumerate() {
            let a = g[(j + 4) % 6] - g[j];
            let b = g[(j + 3) % 6] - g[j + 1];
            if (a - b).norm() > 1e-9 * scale {
                return Err(PlaneError::Inconsistent(format!(
                    "opposite sides {j} and {} are not related by a translation",
                    j + 3
                )));
            }
            *t = a;
        }
        Ok((trans[0], trans[1]))
    }

    pub fn modulus(&self) -> Result<CuspShape, PlaneError> {
        let (t1, t2) = self.side_pairings()?;
        if t1.norm() == 0.0 {
            return Err(PlaneError::Degenerate("zero side-pairing translation".into()));
        }
        let tau = t2 / t1;
        CuspShape::from_tau(tau)
            .map_err(|_| PlaneError::Degenerate(format!("side pairings linearly dependent (tau = {tau})")))
    }
}

/// Modulus of the torus obtained by gluing opposite sides of the developed
/// hexagon.
pub fn hexagon_torus_modulus(h: &HexagonTorus) -> Result<CuspShape, PlaneError> {
    h.modulus()
}

/// Exhaustive search over the 36 corner assignments placing each corner
/// parameter of either similarity type at the center exactly once, keeping
/// those for which the central holonomy closes identically and opposite
/// sides are glued by translations (verified at `trials` random parameter
/// pairs).
pub fn admissible_assignments(trials: usize) -> Vec<[usize; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6865786167);
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for pz in perms {
        for pw in perms {
            let a = [pz[0], pw[0], pz[1], pw[1], pz[2], pw[2]];
            let mut ok = true;
            for _ in 0..trials {
                let z = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
                let w = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
                let h = match HexagonTorus::new(z, w, a) {
                    Ok(h) => h,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                };
                if h.side_pairings().is_err() {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(a);
            }
        }
    }
    out
}
