//! Newton and continuation solves of gluing-equation systems: the complete
//! structure, Dehn-filled structures along a straight path in generalized
//! surgery coefficients, the complex-length coordinates u, and volume.

use crate::equations::{build_filling_equations, logs_at, EquationError, EquationSystem};
use crate::numerics::{bloch_wigner, omega, solve_dense, BranchedLog, C};
use crate::triangulation::Triangulation;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const TOL: f64 = 1e-12;
const DEGENERATE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("newton iteration did not converge (best residual {residual:.3e})")]
    NoConvergence { residual: f64 },
    #[error("degenerate simplex during continuation at t = {t}: z_{tet} = {z}")]
    Degeneration { t: f64, tet: usize, z: C },
    #[error(transparent)]
    Equations(#[from] EquationError),
    #[error("linear algebra failure: {0}")]
    Numerics(#[from] crate::numerics::NumericsError),
}

/// A parameter vector together with branch-tracked logs of `z_i` and
/// `1 − z_i`, carried continuously along solves.
#[derive(Debug, Clone)]
pub struct SimplexAssignment {
    pub z: Vec<C>,
    pub logs: Vec<(BranchedLog, BranchedLog)>,
}

impl SimplexAssignment {
    pub fn new(z: Vec<C>, prev: Option<&SimplexAssignment>) -> SimplexAssignment {
        let logs = logs_at(&z, prev.map(|p| p.logs.as_slice()));
        SimplexAssignment { z, logs }
    }

    /// All simplices positively oriented.
    pub fn is_geometric(&self) -> bool {
        self.z.iter().all(|z| z.im > 0.0)
    }
}

#[derive(Debug, Clone)]
pub struct SolvedStructure {
    pub assignment: SimplexAssignment,
    pub system: EquationSystem,
    pub residual_norm: f64,
    /// Per-cusp meridian dilation value (the complex length coordinate);
    /// 0 at the complete structure.
    pub u: Vec<C>,
    pub geometric: bool,
}

impl SolvedStructure {
    fn from_assignment(assignment: SimplexAssignment, system: EquationSystem, t: f64) -> SolvedStructure {
        let residual = system.residual(&assignment.logs, t);
        let residual_norm = sup_norm(&residual);
        let u = system.cusp_forms.iter().map(|(m, _)| m.evaluate(&assignment.logs)).collect();
        let geometric = assignment.is_geometric();
        SolvedStructure { assignment, system, residual_norm, u, geometric }
    }

    pub fn volume(&self) -> f64 {
        volume_of(&self.assignment.z)
    }
}

/// Hyperbolic volume `∑ D(z_i)` by the Bloch–Wigner dilogarithm.
pub fn volume_of(z: &[C]) -> f64 {
    z.iter().map(|&zt| bloch_wigner(zt).expect("z not in {0,1}")).sum()
}

fn sup_norm(v: &[C]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Damped least-squares Newton on the system residual at continuation time
/// `t`, threading log branches by continuity from the start point.
fn newton(
    system: &EquationSystem,
    start: &SimplexAssignment,
    t: f64,
) -> Result<SimplexAssignment, SolverError> {
    let mut x = start.clone();
    let mut r = system.residual(&x.logs, t);
    let mut rnorm = sup_norm(&r);
    for _ in 0..50 {
        if rnorm < TOL {
            return Ok(x);
        }
        let jac = system.jacobian(&x.z);
        let gram = jac.gram();
        let rhs: Vec<C> = jac.adjoint_apply(&r).iter().map(|v| -v).collect();
        let step = solve_dense(&gram, &rhs)?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=30 {
            let trial: Vec<C> = x.z.iter().zip(&step).map(|(z, s)| z + s * scale).collect();
            if trial.iter().any(|z| z.norm() < 1e-14 || (z - C::new(1.0, 0.0)).norm() < 1e-14) {
                scale *= 0.5;
                continue;
            }
            let cand = SimplexAssignment::new(trial, Some(&x));
            let tr = system.residual(&cand.logs, t);
            let tn = sup_norm(&tr);
            if tn < rnorm || tn < TOL {
                x = cand;
                r = tr;
                rnorm = tn;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            return Err(SolverError::NoConvergence { residual: rnorm });
        }
    }
    if rnorm < TOL {
        Ok(x)
    } else {
        Err(SolverError::NoConvergence { residual: rnorm })
    }
}

/// Solve for the complete structure: all completeness equations, initial
/// guess `z_i = e^{iπ/3}`, with 10 seeded random restarts as fallback.
pub fn solve_complete(tri: &Triangulation) -> Result<SolvedStructure, SolverError> {
    let system = EquationSystem::complete(tri);
    let start = SimplexAssignment::new(vec![omega(); tri.n_tet], None);
    let mut best = newton(&system, &start, 1.0);
    if best.is_err() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x636f6d706c657465);
        for _ in 0..10 {
            let z: Vec<C> = (0..tri.n_tet)
                .map(|_| C::new(rng.gen_range(-1.0..2.0), rng.gen_range(0.2..1.8)))
                .collect();
            best = newton(&system, &SimplexAssignment::new(z, None), 1.0);
            if best.is_ok() {
                break;
            }
        }
    }
    let solved = best?;
    Ok(SolvedStructure::from_assignment(solved, system, 1.0))
}

/// Solve a filled structure by continuation from the complete structure (or
/// `hint`) along the straight path that scales the filling targets from 0
/// to 2πi. Starts with 8 steps, doubling on failure up to 256.
pub fn solve_filled(
    tri: &Triangulation,
    fillings: &[Option<(f64, f64)>],
    hint: Option<&SolvedStructure>,
) -> Result<SolvedStructure, SolverError> {
    let system = build_filling_equations(tri, fillings)?;
    if fillings.iter().all(|f| f.is_none()) {
        return solve_complete(tri);
    }
    let start = match hint {
        Some(h) => h.assignment.clone(),
        None => solve_complete(tri)?.assignment,
    };
    continue_from(system, &start)
}

/// Like [`solve_filled`] but with a fixed continuation step count and no
/// doubling, so that path-independence of the end point can be checked by
/// comparing different step counts.
pub fn solve_filled_with_steps(
    tri: &Triangulation,
    fillings: &[Option<(f64, f64)>],
    hint: Option<&SolvedStructure>,
    steps: usize,
) -> Result<SolvedStructure, SolverError> {
    let system = build_filling_equations(tri, fillings)?;
    let start = match hint {
        Some(h) => h.assignment.clone(),
        None => solve_complete(tri)?.assignment,
    };
    let x = continuation(&system, &start, steps)?;
    Ok(SolvedStructure::from_assignment(x, system, 1.0))
}

/// Solve with the constraints `u_m = s` on the listed cusps (generalized
/// surgery probes along the rays through the `s` values), all other cusps
/// complete. Used for finite-difference derivatives of cusp shapes with
/// respect to the complex-length coordinates.
pub fn solve_meridian_probes(
    tri: &Triangulation,
    probes: &[(usize, C)],
    hint: Option<&SolvedStructure>,
) -> Result<SolvedStructure, SolverError> {
    let mut fillings = vec![None; tri.cusps.len()];
    for &(cusp, _) in probes {
        fillings[cusp] = Some((1.0, 0.0));
    }
    let mut system = build_filling_equations(tri, &fillings)?;
    for form in &mut system.filling_forms {
        let &(_, s) = probes
            .iter()
            .find(|(cusp, _)| *cusp == form.cusp)
            .expect("one probe per filled cusp");
        form.target = s;
    }
    let start = match hint {
        Some(h) => h.assignment.clone(),
        None => solve_complete(tri)?.assignment,
    };
    continue_from(system, &start)
}

/// Continuation with step doubling from 8 up to 256 on non-degenerate
/// failure.
fn continue_from(
    system: EquationSystem,
    start: &SimplexAssignment,
) -> Result<SolvedStructure, SolverError> {
    let mut steps = 8usize;
    loop {
        match continuation(&system, start, steps) {
            Ok(x) => return Ok(SolvedStructure::from_assignment(x, system, 1.0)),
            Err(e @ SolverError::Degeneration { .. }) => return Err(e),
            Err(e) => {
                if steps >= 256 {
                    return Err(e);
                }
                steps *= 2;
            }
        }
    }
}

fn continuation(
    system: &EquationSystem,
    start: &SimplexAssignment,
    steps: usize,
) -> Result<SimplexAssignment, SolverError> {
    let mut x = start.clone();
    for k in 1..=steps {
        let t = k as f64 / steps as f64;
        x = newton(system, &x, t)?;
        for (tet, z) in x.z.iter().enumerate() {
            if z.im < DEGENERATE || z.norm() < DEGENERATE || (z - C::new(1.0, 0.0)).norm() < DEGENERATE {
                return Err(SolverError::Degeneration { t, tet, z: *z });
            }
        }
    }
    Ok(x)
}
