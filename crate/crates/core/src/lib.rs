//! Hyperbolic structures on ideally triangulated cusped 3-manifolds via
//! gluing equations and generalized Dehn filling, together with the plane
//! similarity geometry of Napoleon-type tilings. The `experiments` module
//! ties the two together into isolation experiments on cusp shapes.

pub mod cusps;
pub mod equations;
pub mod experiments;
pub mod numerics;
pub mod plane;
pub mod solver;
pub mod triangulation;
