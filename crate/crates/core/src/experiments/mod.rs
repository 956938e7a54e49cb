//! Isolation experiments on cusp shapes: surgery sweeps, Brunnian
//! isolation verdicts, and first-order (finite-difference) isolation, with
//! CSV/JSON report emission. Batches of independent solves run data-parallel
//! when the `parallel` feature is enabled.

mod report;

use crate::cusps::{cusp_shape, develop_cusp, CuspError};
use crate::numerics::C;
use crate::solver::{solve_complete, solve_filled, solve_meridian_probes, SolvedStructure, SolverError};
use crate::triangulation::{census, census_names, parse_triangulation, TriError, Triangulation};
use serde::Serialize;
use thiserror::Error;

pub use report::{CuspRow, ReportFormat, SolveReport};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown cusp label {0}")]
    UnknownCusp(String),
    #[error("cusp {0} is filled and cannot be observed")]
    ObservedFilled(String),
    #[error("cusp {0} listed twice")]
    DuplicateCusp(String),
    #[error("step size {0} outside [1e-5, 1e-2]")]
    BadStep(f64),
    #[error("unknown format {0:?} (expected csv or json)")]
    BadFormat(String),
    #[error("solving {filling}: {source}")]
    Solver {
        filling: String,
        #[source]
        source: SolverError,
    },
    #[error(transparent)]
    Triangulation(#[from] TriError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One surgery instruction: cusp label and real coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct FillSpec {
    pub cusp: String,
    pub p: f64,
    pub q: f64,
}

impl std::fmt::Display for FillSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}={},{}", self.cusp, self.p, self.q)
    }
}

/// Before/after reduced shape of one observed cusp.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeChange {
    pub cusp: String,
    pub before_re: f64,
    pub before_im: f64,
    pub after_re: f64,
    pub after_im: f64,
    pub delta: f64,
    pub isolated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsolationReport {
    pub report: String,
    pub kind: String,
    pub manifold: String,
    pub fillings: Vec<FillSpec>,
    pub tol: f64,
    pub shapes: Vec<ShapeChange>,
    /// True iff every observed cusp stayed within `tol`.
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrunnianReport {
    pub report: String,
    pub kind: String,
    pub manifold: String,
    pub triple: [String; 3],
    pub p: f64,
    pub q: f64,
    pub tol_iso: f64,
    pub tol_change: f64,
    pub singles: Vec<IsolationReport>,
    pub doubles: Vec<IsolationReport>,
    /// True iff all single fills isolate the other two and some double fill
    /// moves the third.
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeReport {
    pub report: String,
    pub kind: String,
    pub manifold: String,
    pub with_respect_to: Vec<String>,
    pub observed_cusp: String,
    pub h: f64,
    /// Richardson-extrapolated d(cusp shape)/d(u²) as a real 2×2 matrix
    /// (the matrix of the complex derivative). Cusp shapes are analytic in
    /// the even coordinate u², so this is the natural first derivative at
    /// the complete structure; the derivative along u itself vanishes
    /// identically because u and −u give isometric structures.
    pub jacobian: [[f64; 2]; 2],
    pub coarse: [[f64; 2]; 2],
    pub fine: [[f64; 2]; 2],
    pub error_estimate: f64,
    pub norm: f64,
}

/// Resolve a manifold argument: a census name, or a path to a `tri v1`
/// file.
pub fn load_manifold(spec: &str) -> Result<Triangulation, ExperimentError> {
    if census_names().contains(&spec) {
        return Ok(census(spec)?);
    }
    // A bare word that is neither a census name nor an existing file gets
    // the census error, which lists the available names.
    let looks_like_path = spec.contains(std::path::MAIN_SEPARATOR) || spec.contains('.');
    if !looks_like_path && !std::path::Path::new(spec).exists() {
        return Ok(census(spec)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|source| ExperimentError::Io { path: spec.to_string(), source })?;
    Ok(parse_triangulation(&text)?)
}

fn cusp_indices(tri: &Triangulation, labels: &[String]) -> Result<Vec<usize>, ExperimentError> {
    labels
        .iter()
        .map(|l| tri.cusp_index(l).ok_or_else(|| ExperimentError::UnknownCusp(l.clone())))
        .collect()
}

fn fillings_of(tri: &Triangulation, spec: &[FillSpec]) -> Result<Vec<Option<(f64, f64)>>, ExperimentError> {
    let mut fillings = vec![None; tri.cusps.len()];
    for f in spec {
        let idx = tri.cusp_index(&f.cusp).ok_or_else(|| ExperimentError::UnknownCusp(f.cusp.clone()))?;
        if fillings[idx].is_some() {
            return Err(ExperimentError::DuplicateCusp(f.cusp.clone()));
        }
        fillings[idx] = Some((f.p, f.q));
    }
    Ok(fillings)
}

fn reduced_shape(tri: &Triangulation, s: &SolvedStructure, cusp: usize) -> Result<C, ExperimentError> {
    Ok(cusp_shape(&develop_cusp(tri, s, cusp)?)?.reduced)
}

fn fill_label(spec: &[FillSpec]) -> String {
    if spec.is_empty() {
        "complete".to_string()
    } else {
        spec.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Map a batch of independent jobs, in parallel when the `parallel`
/// feature is enabled. Output order matches input order either way.
pub fn map_jobs<T, O, F>(items: Vec<T>, f: F) -> Vec<O>
where
    T: Send,
    O: Send,
    F: Fn(T) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Solve a batch of filling specifications against one triangulation,
/// sharing the complete structure as the continuation start. Always
/// sequential; the batched entry point [`batch_fill`] parallelizes it.
pub fn batch_fill_sequential(
    tri: &Triangulation,
    specs: &[Vec<Option<(f64, f64)>>],
    hint: &SolvedStructure,
) -> Vec<Result<SolvedStructure, SolverError>> {
    specs.iter().map(|f| solve_filled(tri, f, Some(hint))).collect()
}

/// Parallel batch of independent filled solves (sequential without the
/// `parallel` feature). Each solve is single-threaded.
pub fn batch_fill(
    tri: &Triangulation,
    specs: &[Vec<Option<(f64, f64)>>],
    hint: &SolvedStructure,
) -> Vec<Result<SolvedStructure, SolverError>> {
    map_jobs(specs.to_vec(), |f| solve_filled(tri, &f, Some(hint)))
}

/// Fill per `fill_spec`, observe the reduced shapes of `observe`, and
/// compare with the complete structure. An empty `fill_spec` compares the
/// complete structure with itself (all deltas exactly zero).
pub fn run_isolation(
    manifold: &str,
    fill_spec: &[FillSpec],
    observe: &[String],
    tol: f64,
) -> Result<IsolationReport, ExperimentError> {
    let tri = load_manifold(manifold)?;
    let fillings = fillings_of(&tri, fill_spec)?;
    let observed = cusp_indices(&tri, observe)?;
    for (label, &idx) in observe.iter().zip(&observed) {
        if fillings[idx].is_some() {
            return Err(ExperimentError::ObservedFilled(label.clone()));
        }
    }
    let complete = solve_complete(&tri).map_err(|source| ExperimentError::Solver {
        filling: "complete".to_string(),
        source,
    })?;
    let filled = if fill_spec.is_empty() {
        None
    } else {
        Some(solve_filled(&tri, &fillings, Some(&complete)).map_err(|source| {
            ExperimentError::Solver { filling: fill_label(fill_spec), source }
        })?)
    };
    let mut shapes = Vec::new();
    for (label, &idx) in observe.iter().zip(&observed) {
        let before = reduced_shape(&tri, &complete, idx)?;
        let (after, delta) = match &filled {
            None => (before, 0.0),
            Some(f) => {
                let after = reduced_shape(&tri, f, idx)?;
                (after, (after - before).norm())
            }
        };
        shapes.push(ShapeChange {
            cusp: label.clone(),
            before_re: before.re,
            before_im: before.im,
            after_re: after.re,
            after_im: after.im,
            delta,
            isolated: delta < tol,
        });
    }
    let verdict = shapes.iter().all(|s| s.isolated);
    Ok(IsolationReport {
        report: "v1".to_string(),
        kind: "isolation".to_string(),
        manifold: tri.name.clone(),
        fillings: fill_spec.to_vec(),
        tol,
        shapes,
        verdict,
    })
}

/// Brunnian isolation of a cusp triple: each single `(p,q)` surgery must
/// leave the other two reduced shapes within `tol_iso`, while some surgery
/// on two of the cusps moves the third by more than `tol_change`.
pub fn check_brunnian(
    manifold: &str,
    triple: [&str; 3],
    pq: (f64, f64),
    tol_iso: f64,
    tol_change: f64,
) -> Result<BrunnianReport, ExperimentError> {
    let (p, q) = pq;
    let fill = |cusp: &str| FillSpec { cusp: cusp.to_string(), p, q };
    let mut jobs: Vec<(bool, Vec<FillSpec>, Vec<String>)> = Vec::new();
    for i in 0..3 {
        let others: Vec<String> =
            (0..3).filter(|&j| j != i).map(|j| triple[j].to_string()).collect();
        jobs.push((true, vec![fill(triple[i])], others));
    }
    for i in 0..3 {
        let pair: Vec<FillSpec> = (0..3).filter(|&j| j != i).map(|j| fill(triple[j])).collect();
        jobs.push((false, pair, vec![triple[i].to_string()]));
    }
    let results = map_jobs(jobs, |(single, spec, observe)| {
        let tol = if single { tol_iso } else { tol_change };
        (single, run_isolation(manifold, &spec, &observe, tol))
    });
    let mut singles = Vec::new();
    let mut doubles = Vec::new();
    for (single, result) in results {
        let report = result?;
        if single {
            singles.push(report);
        } else {
            doubles.push(report);
        }
    }
    let all_isolated = singles.iter().all(|r| r.verdict);
    let any_change = doubles.iter().any(|r| r.shapes.iter().any(|s| s.delta > tol_change));
    Ok(BrunnianReport {
        report: "v1".to_string(),
        kind: "brunnian".to_string(),
        manifold: manifold.to_string(),
        triple: [triple[0].to_string(), triple[1].to_string(), triple[2].to_string()],
        p,
        q,
        tol_iso,
        tol_change,
        singles,
        doubles,
        verdict: all_isolated && any_change,
    })
}

/// Finite-difference derivative of one cusp's shape with respect to the
/// even coordinate `v = u²` of a shared complex-length probe `u = s` on the
/// listed cusps, evaluated at the complete structure and Richardson-
/// extrapolated from steps `h` and `h/2`. Probing `u = ±h` samples
/// `v = h²` and `u = ±ih` samples `v = -h²`, so the difference quotient
/// `(τ(h) + τ(-h) - τ(ih) - τ(-ih)) / (4h²)` converges to `dτ/dv` with an
/// `O(h⁴)` error. The raw modulus `τ` (fixed peripheral basis) is used so
/// the quotient is smooth even when the shape sits at a corner of the
/// modular fundamental domain.
pub fn equivariant_derivative(
    manifold: &str,
    filled: &[&str],
    observed: &str,
    h: f64,
) -> Result<DerivativeReport, ExperimentError> {
    if !(1e-5..=1e-2).contains(&h) {
        return Err(ExperimentError::BadStep(h));
    }
    let tri = load_manifold(manifold)?;
    let filled_labels: Vec<String> = filled.iter().map(|s| s.to_string()).collect();
    let filled_idx = cusp_indices(&tri, &filled_labels)?;
    let observed_idx = cusp_indices(&tri, &[observed.to_string()])?[0];
    if filled_idx.contains(&observed_idx) {
        return Err(ExperimentError::ObservedFilled(observed.to_string()));
    }
    let complete = solve_complete(&tri).map_err(|source| ExperimentError::Solver {
        filling: "complete".to_string(),
        source,
    })?;
    // Probe directions ±h, ±ih at two step sizes; eight solves total.
    let jobs: Vec<(usize, C)> = [1.0, 0.5]
        .iter()
        .enumerate()
        .flat_map(|(level, &scale)| {
            [C::new(h, 0.0), C::new(-h, 0.0), C::new(0.0, h), C::new(0.0, -h)]
                .into_iter()
                .map(move |dir| (level, dir * scale))
        })
        .collect();
    let shapes = map_jobs(jobs, |(level, s)| {
        let probes: Vec<(usize, C)> = filled_idx.iter().map(|&c| (c, s)).collect();
        let solved = solve_meridian_probes(&tri, &probes, Some(&complete)).map_err(|source| {
            ExperimentError::Solver { filling: format!("probe u = {s}"), source }
        })?;
        let tau = cusp_shape(&develop_cusp(&tri, &solved, observed_idx)?)?.tau;
        Ok::<(usize, C), ExperimentError>((level, tau))
    });
    let mut values = [[C::new(0.0, 0.0); 4]; 2];
    for (k, shape) in shapes.into_iter().enumerate() {
        let (level, value) = shape?;
        values[level][k % 4] = value;
    }
    let matrix = |level: usize, step: f64| -> [[f64; 2]; 2] {
        let [sp, sm, ip, im] = values[level];
        // τ(±step) sample v = step², τ(±i·step) sample v = −step².
        let dv = (sp + sm - ip - im) / (4.0 * step * step);
        [[dv.re, -dv.im], [dv.im, dv.re]]
    };
    let coarse = matrix(0, h);
    let fine = matrix(1, h / 2.0);
    let mut jacobian = [[0.0; 2]; 2];
    let mut error_estimate: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            // The quotient has an O(h⁴) truncation error, so halving the
            // step divides it by 16.
            jacobian[r][c] = (16.0 * fine[r][c] - coarse[r][c]) / 15.0;
            error_estimate = error_estimate.max((fine[r][c] - coarse[r][c]).abs() / 15.0);
        }
    }
    let norm = jacobian.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    Ok(DerivativeReport {
        report: "v1".to_string(),
        kind: "derivative".to_string(),
        manifold: tri.name.clone(),
        with_respect_to: filled_labels,
        observed_cusp: observed.to_string(),
        h,
        jacobian,
        coarse,
        fine,
        error_estimate,
        norm,
    })
}

/// First-order isolation probe of a single filled cusp (see
/// [`equivariant_derivative`]).
pub fn first_order_derivative(
    manifold: &str,
    filled: &str,
    observed: &str,
    h: f64,
) -> Result<DerivativeReport, ExperimentError> {
    equivariant_derivative(manifold, &[filled], observed, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(cusp: &str, p: f64, q: f64) -> FillSpec {
        FillSpec { cusp: cusp.to_string(), p, q }
    }

    #[test]
    fn empty_fill_has_zero_deltas() {
        let report =
            run_isolation("napoleon", &[], &["c1".into(), "d1".into()], 1e-9).unwrap();
        assert!(report.verdict);
        for s in &report.shapes {
            assert_eq!(s.delta, 0.0);
        }
    }

    #[test]
    fn single_fill_isolates_dark_cusps_but_not_light() {
        let observe: Vec<String> =
            ["c2", "c3", "d1", "d2", "d3"].iter().map(|s| s.to_string()).collect();
        let report = run_isolation("napoleon", &[spec("c1", 5.0, 0.0)], &observe, 1e-9).unwrap();
        for s in &report.shapes {
            if s.cusp.starts_with('c') {
                assert!(s.isolated, "{}: delta {}", s.cusp, s.delta);
            }
        }
        let max_d = report
            .shapes
            .iter()
            .filter(|s| s.cusp.starts_with('d'))
            .map(|s| s.delta)
            .fold(0.0, f64::max);
        assert!(max_d > 1e-4, "light cusps should move, max delta {max_d:.3e}");
    }

    #[test]
    fn double_fill_moves_the_third_dark_cusp() {
        let report = run_isolation(
            "napoleon",
            &[spec("c1", 5.0, 0.0), spec("c2", 5.0, 0.0)],
            &["c3".into()],
            1e-9,
        )
        .unwrap();
        assert!(report.shapes[0].delta > 1e-6, "delta {:.3e}", report.shapes[0].delta);
    }

    #[test]
    fn unknown_cusp_and_observed_filled_are_rejected() {
        match run_isolation("napoleon", &[spec("c9", 5.0, 0.0)], &[], 1e-9) {
            Err(ExperimentError::UnknownCusp(l)) => assert_eq!(l, "c9"),
            other => panic!("expected unknown cusp, got {other:?}"),
        }
        match run_isolation("napoleon", &[spec("c1", 5.0, 0.0)], &["c1".into()], 1e-9) {
            Err(ExperimentError::ObservedFilled(l)) => assert_eq!(l, "c1"),
            other => panic!("expected observed-filled, got {other:?}"),
        }
    }

    #[test]
    fn first_order_isolation_and_its_failure() {
        // Isolated pair: derivative vanishes, and symmetrically.
        let d = first_order_derivative("napoleon", "c1", "c2", 1e-3).unwrap();
        assert!(d.norm < 1e-6, "c1 -> c2 norm {:.3e}", d.norm);
        let d = first_order_derivative("napoleon", "c2", "c1", 1e-3).unwrap();
        assert!(d.norm < 1e-6, "c2 -> c1 norm {:.3e}", d.norm);
        // Non-isolated pair: derivative clearly nonzero.
        let d = first_order_derivative("napoleon", "c1", "d1", 1e-3).unwrap();
        assert!(d.norm > 1e-3, "c1 -> d1 norm {:.3e}", d.norm);
    }

    /// Equivariant double probe: simultaneous equal surgeries on c2 and c3
    /// are first-order invisible at c1, even though the corresponding
    /// integral double surgery moves c1. First-order isolation without
    /// isolation.
    #[test]
    fn equivariant_probe_is_first_order_isolated_but_not_isolated() {
        let d =
            equivariant_derivative("hexagonal_orbifold_cover_test", &["c2", "c3"], "c1", 1e-3)
                .unwrap();
        assert!(d.norm < 1e-6, "equivariant first-order norm {:.3e}", d.norm);
        let report = run_isolation(
            "hexagonal_orbifold_cover_test",
            &[spec("c2", 5.0, 0.0), spec("c3", 5.0, 0.0)],
            &["c1".into()],
            1e-9,
        )
        .unwrap();
        assert!(report.shapes[0].delta > 1e-6, "delta {:.3e}", report.shapes[0].delta);
    }

    #[test]
    fn derivative_step_validation() {
        match first_order_derivative("napoleon", "c1", "c2", 0.5) {
            Err(ExperimentError::BadStep(_)) => {}
            other => panic!("expected step rejection, got {other:?}"),
        }
    }
}
