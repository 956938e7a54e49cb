//! Command-line front end: solve census or file-based triangulations, run
//! Dehn-filling and isolation experiments, and render plane tilings and
//! cusp cross-sections. Exit code 0 on success, 1 when an experiment's
//! verdict is false (for CI gating), 2 on any error.

use clap::{Args, Parser, Subcommand};
use cusped::cusps::{develop_cusp, export_cusp_svg};
use cusped::experiments::{
    check_brunnian, equivariant_derivative, load_manifold, run_isolation, FillSpec, ReportFormat,
    SolveReport,
};
use cusped::numerics::C;
use cusped::plane::{build_napoleon_tiling, HexagonTorus, OctagonTiling};
use cusped::solver::{solve_complete, solve_filled};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cusped", version, about = "Cusped hyperbolic structures and isolation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Report format.
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized search paths (reports are deterministic for a
    /// fixed seed; the built-in experiments use none).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the complete hyperbolic structure.
    Solve {
        /// Census name or path to a `tri v1` file.
        #[arg(long)]
        manifold: String,
        #[command(flatten)]
        output: Output,
    },
    /// Solve a Dehn-filled structure by continuation.
    Fill {
        #[arg(long)]
        manifold: String,
        /// Surgery per cusp, e.g. `--fill c1=5,0` (repeatable).
        #[arg(long = "fill", required = true)]
        fills: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Cusp shapes of the complete structure.
    Shapes {
        #[arg(long)]
        manifold: String,
        #[command(flatten)]
        output: Output,
    },
    /// Fill some cusps and compare the observed cusp shapes with the
    /// complete structure. Exit 1 if any observed cusp moved beyond the
    /// tolerance.
    Isolation {
        #[arg(long)]
        manifold: String,
        #[arg(long = "fill", required = true)]
        fills: Vec<String>,
        /// Cusps to observe (repeatable; default: all unfilled cusps).
        #[arg(long = "observe")]
        observe: Vec<String>,
        /// Isolation tolerance on the reduced shape.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Brunnian isolation verdict for a cusp triple. Exit 1 on a false
    /// verdict.
    Brunnian {
        #[arg(long)]
        manifold: String,
        /// Comma-separated cusp triple, e.g. `c1,c2,c3`.
        #[arg(long)]
        cusps: String,
        /// Surgery coefficients, e.g. `5,0`.
        #[arg(long, default_value = "5,0")]
        pq: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_change: f64,
        #[command(flatten)]
        output: Output,
    },
    /// First-order derivative of an observed cusp shape with respect to the
    /// even coordinate u² of a complex-length probe on the filled cusp(s).
    Derivative {
        #[arg(long)]
        manifold: String,
        /// Cusp(s) carrying the probe (repeatable; several cusps share one
        /// equivariant probe).
        #[arg(long = "fill-cusp", required = true)]
        fill_cusps: Vec<String>,
        #[arg(long)]
        observe: String,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Render the forced-symmetry triangle tiling for a parameter.
    Tiling {
        /// Similarity parameter `re,im` of the base triangle.
        #[arg(long, default_value = "0.5,0.8660254037844386")]
        param: String,
        /// Lattice radius (rings of hexagons).
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Modulus of a two-parameter hexagon torus.
    HexagonTorus {
        /// First similarity parameter `re,im`.
        #[arg(long)]
        z: String,
        /// Second similarity parameter `re,im`.
        #[arg(long)]
        w: String,
        /// Which corner assignment: `first` or `second`.
        #[arg(long, default_value = "second")]
        assignment: String,
        #[command(flatten)]
        output: Output,
    },
    /// Right-triangle octagon tiling diagnostics for an interior point.
    Octagon {
        /// Point `re,im` inside the open unit square.
        #[arg(long)]
        p: String,
        #[command(flatten)]
        output: Output,
    },
    /// Render a developed cusp cross-section as SVG.
    Render {
        #[arg(long)]
        manifold: String,
        /// Cusp label to develop.
        #[arg(long)]
        cusp: String,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("{what}: expected `re,im`, got {s:?}"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("{what}: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("{what}: {e}"))?;
    Ok((a, b))
}

fn parse_fill(s: &str) -> Result<FillSpec, String> {
    let (cusp, pq) = s
        .split_once('=')
        .ok_or_else(|| format!("fill: expected `cusp=p,q`, got {s:?}"))?;
    let (p, q) = parse_pair(pq, "fill coefficients")?;
    Ok(FillSpec { cusp: cusp.trim().to_string(), p, q })
}

fn parse_fills(fills: &[String]) -> Result<Vec<FillSpec>, String> {
    fills.iter().map(|f| parse_fill(f)).collect()
}

fn emit(output: &Output, text: &str) -> Result<(), String> {
    match &output.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing {path:?}: {e}")),
    }
}

#[derive(Serialize)]
struct ShapeRow {
    cusp: String,
    tau_re: f64,
    tau_im: f64,
    reduced_re: f64,
    reduced_im: f64,
    basis_change: [[i64; 2]; 2],
}

#[derive(Serialize)]
struct ShapesReport {
    report: String,
    kind: String,
    manifold: String,
    shapes: Vec<ShapeRow>,
}

#[derive(Serialize)]
struct ModulusReport {
    report: String,
    kind: String,
    tau_re: f64,
    tau_im: f64,
    reduced_re: f64,
    reduced_im: f64,
    /// Octagon only: area and lattice edge-matching flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_matching: Option<bool>,
}

impl ModulusReport {
    fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialization");
                s.push('\n');
                s
            }
            ReportFormat::Csv => {
                let mut out = format!("# report v1 kind={}\n", self.kind);
                out.push_str("tau_re,tau_im,reduced_re,reduced_im,area,edge_matching\n");
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    self.tau_re,
                    self.tau_im,
                    self.reduced_re,
                    self.reduced_im,
                    self.area.map(|a| a.to_string()).unwrap_or_default(),
                    self.edge_matching.map(|m| m.to_string()).unwrap_or_default()
                ));
                out
            }
        }
    }
}

/// Run one subcommand; `Ok(true)` means success with a true verdict.
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Solve { manifold, output } => {
            let tri = load_manifold(&manifold).map_err(|e| e.to_string())?;
            let solved = solve_complete(&tri).map_err(|e| e.to_string())?;
            let report = SolveReport::new(&tri, &solved, &[]).map_err(|e| e.to_string())?;
            emit(&output, &report.render(output.format))?;
            Ok(true)
        }
        Command::Fill { manifold, fills, output } => {
            let tri = load_manifold(&manifold).map_err(|e| e.to_string())?;
            let spec = parse_fills(&fills)?;
            let mut fillings = vec![None; tri.cusps.len()];
            for f in &spec {
                let idx = tri
                    .cusp_index(&f.cusp)
                    .ok_or_else(|| format!("unknown cusp label {}", f.cusp))?;
                fillings[idx] = Some((f.p, f.q));
            }
            let solved = solve_filled(&tri, &fillings, None).map_err(|e| e.to_string())?;
            let report = SolveReport::new(&tri, &solved, &spec).map_err(|e| e.to_string())?;
            emit(&output, &report.render(output.format))?;
            Ok(true)
        }
        Command::Shapes { manifold, output } => {
            let tri = load_manifold(&manifold).map_err(|e| e.to_string())?;
            let solved = solve_complete(&tri).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for (c, cusp) in tri.cusps.iter().enumerate() {
                let shape = cusped::cusps::cusp_shape(
                    &develop_cusp(&tri, &solved, c).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?;
                rows.push((cusp.label.clone(), shape));
            }
            let text = match output.format {
                ReportFormat::Csv => cusped::cusps::shapes_csv(&rows),
                ReportFormat::Json => {
                    let report = ShapesReport {
                        report: "v1".to_string(),
                        kind: "shapes".to_string(),
                        manifold: tri.name.clone(),
                        shapes: rows
                            .into_iter()
                            .map(|(cusp, s)| ShapeRow {
                                cusp,
                                tau_re: s.tau.re,
                                tau_im: s.tau.im,
                                reduced_re: s.reduced.re,
                                reduced_im: s.reduced.im,
                                basis_change: s.basis_change,
                            })
                            .collect(),
                    };
                    let mut s = serde_json::to_string_pretty(&report).expect("report serialization");
                    s.push('\n');
                    s
                }
            };
            emit(&output, &text)?;
            Ok(true)
        }
        Command::Isolation { manifold, fills, observe, tol, output } => {
            let spec = parse_fills(&fills)?;
            let observe = if observe.is_empty() {
                let tri = load_manifold(&manifold).map_err(|e| e.to_string())?;
                tri.cusps
                    .iter()
                    .map(|c| c.label.clone())
                    .filter(|l| spec.iter().all(|f| &f.cusp != l))
                    .collect()
            } else {
                observe
            };
            let report =
                run_isolation(&manifold, &spec, &observe, tol).map_err(|e| e.to_string())?;
            emit(&output, &report.render(output.format))?;
            Ok(report.verdict)
        }
        Command::Brunnian { manifold, cusps, pq, tol, tol_change, output } => {
            let labels: Vec<&str> = cusps.split(',').map(str::trim).collect();
            let [a, b, c] = labels[..] else {
                return Err(format!("cusps: expected three labels, got {cusps:?}"));
            };
            let pq = parse_pair(&pq, "pq")?;
            let report = check_brunnian(&manifold, [a, b, c], pq, tol, tol_change)
                .map_err(|e| e.to_string())?;
            emit(&output, &report.render(output.format))?;
            Ok(report.verdict)
        }
        Command::Derivative { manifold, fill_cusps, observe, h, output } => {
            let filled: Vec<&str> = fill_cusps.iter().map(String::as_str).collect();
            let report = equivariant_derivative(&manifold, &filled, &observe, h)
                .map_err(|e| e.to_string())?;
            emit(&output, &report.render(output.format))?;
            Ok(true)
        }
        Command::Tiling { param, radius, output } => {
            let (re, im) = parse_pair(&param, "param")?;
            let scene =
                build_napoleon_tiling(C::new(re, im), radius).map_err(|e| e.to_string())?;
            let svg = cusped::plane::render_svg_string(&scene).map_err(|e| e.to_string())?;
            emit(&output, &svg)?;
            Ok(true)
        }
        Command::HexagonTorus { z, w, assignment, output } => {
            let (zr, zi) = parse_pair(&z, "z")?;
            let (wr, wi) = parse_pair(&w, "w")?;
            let torus = match assignment.as_str() {
                "first" => HexagonTorus::first_torus(C::new(zr, zi), C::new(wr, wi)),
                "second" => HexagonTorus::second_torus(C::new(zr, zi), C::new(wr, wi)),
                other => return Err(format!("assignment: expected first or second, got {other:?}")),
            }
            .map_err(|e| e.to_string())?;
            let modulus = torus.modulus().map_err(|e| e.to_string())?;
            let report = ModulusReport {
                report: "v1".to_string(),
                kind: "hexagon-torus".to_string(),
                tau_re: modulus.tau.re,
                tau_im: modulus.tau.im,
                reduced_re: modulus.reduced.re,
                reduced_im: modulus.reduced.im,
                area: None,
                edge_matching: None,
            };
            emit(&output, &report.render(output.format))?;
            Ok(true)
        }
        Command::Octagon { p, output } => {
            let (pr, pi) = parse_pair(&p, "p")?;
            let tiling = OctagonTiling::new(C::new(pr, pi)).map_err(|e| e.to_string())?;
            let modulus = tiling.quotient_modulus().map_err(|e| e.to_string())?;
            let report = ModulusReport {
                report: "v1".to_string(),
                kind: "octagon".to_string(),
                tau_re: modulus.tau.re,
                tau_im: modulus.tau.im,
                reduced_re: modulus.reduced.re,
                reduced_im: modulus.reduced.im,
                area: Some(tiling.area()),
                edge_matching: Some(tiling.lattice_edge_matching(1e-10)),
            };
            emit(&output, &report.render(output.format))?;
            Ok(true)
        }
        Command::Render { manifold, cusp, out } => {
            let tri = load_manifold(&manifold).map_err(|e| e.to_string())?;
            let idx = tri.cusp_index(&cusp).ok_or_else(|| format!("unknown cusp label {cusp}"))?;
            let solved = solve_complete(&tri).map_err(|e| e.to_string())?;
            let developed = develop_cusp(&tri, &solved, idx).map_err(|e| e.to_string())?;
            export_cusp_svg(&developed, &out).map_err(|e| e.to_string())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
