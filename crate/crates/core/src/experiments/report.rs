//! `report v1` emission: every report renders to pretty JSON (with
//! `report`/`kind` discriminators) or to a flat CSV table with a leading
//! `# report v1` comment line. Output is deterministic for fixed inputs.

use super::{BrunnianReport, DerivativeReport, ExperimentError, FillSpec, IsolationReport};
use crate::cusps::{cusp_shape, develop_cusp, CuspShape};
use crate::solver::SolvedStructure;
use crate::triangulation::Triangulation;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<ReportFormat, ExperimentError> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(ExperimentError::BadFormat(other.to_string())),
        }
    }
}

fn json_of<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serialization");
    out.push('\n');
    out
}

/// Quote a CSV field if it contains separators.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fills_field(fillings: &[FillSpec]) -> String {
    csv_field(&fillings.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "))
}

/// Per-cusp row of a solved structure: complex length and, for unfilled
/// cusps, the cusp shape.
#[derive(Debug, Clone, Serialize)]
pub struct CuspRow {
    pub cusp: String,
    pub filled: Option<(f64, f64)>,
    pub u_re: f64,
    pub u_im: f64,
    pub tau_re: Option<f64>,
    pub tau_im: Option<f64>,
    pub reduced_re: Option<f64>,
    pub reduced_im: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub report: String,
    pub kind: String,
    pub manifold: String,
    pub fillings: Vec<FillSpec>,
    pub n_tet: usize,
    pub geometric: bool,
    pub residual: f64,
    pub volume: f64,
    pub z: Vec<(f64, f64)>,
    pub cusps: Vec<CuspRow>,
}

impl SolveReport {
    pub fn new(
        tri: &Triangulation,
        solved: &SolvedStructure,
        fillings: &[FillSpec],
    ) -> Result<SolveReport, ExperimentError> {
        let mut cusps = Vec::new();
        for (c, cusp) in tri.cusps.iter().enumerate() {
            let filled = solved.system.fillings[c];
            let shape: Option<CuspShape> = if filled.is_none() && solved.geometric {
                Some(cusp_shape(&develop_cusp(tri, solved, c)?)?)
            } else {
                None
            };
            cusps.push(CuspRow {
                cusp: cusp.label.clone(),
                filled,
                u_re: solved.u[c].re,
                u_im: solved.u[c].im,
                tau_re: shape.as_ref().map(|s| s.tau.re),
                tau_im: shape.as_ref().map(|s| s.tau.im),
                reduced_re: shape.as_ref().map(|s| s.reduced.re),
                reduced_im: shape.as_ref().map(|s| s.reduced.im),
            });
        }
        Ok(SolveReport {
            report: "v1".to_string(),
            kind: if fillings.is_empty() { "solve" } else { "fill" }.to_string(),
            manifold: tri.name.clone(),
            fillings: fillings.to_vec(),
            n_tet: tri.n_tet,
            geometric: solved.geometric,
            residual: solved.residual_norm,
            volume: solved.volume(),
            z: solved.assignment.z.iter().map(|z| (z.re, z.im)).collect(),
            cusps,
        })
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => json_of(self),
            ReportFormat::Csv => {
                let mut out = format!(
                    "# report v1 kind={} manifold={} fillings={} volume={} geometric={} residual={}\n",
                    self.kind,
                    self.manifold,
                    fills_field(&self.fillings),
                    self.volume,
                    self.geometric,
                    self.residual
                );
                out.push_str("cusp,u_re,u_im,tau_re,tau_im,reduced_re,reduced_im\n");
                let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                for row in &self.cusps {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        csv_field(&row.cusp),
                        row.u_re,
                        row.u_im,
                        opt(row.tau_re),
                        opt(row.tau_im),
                        opt(row.reduced_re),
                        opt(row.reduced_im)
                    ));
                }
                out
            }
        }
    }
}

impl IsolationReport {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => json_of(self),
            ReportFormat::Csv => {
                let mut out = format!(
                    "# report v1 kind={} manifold={} fillings={} tol={} verdict={}\n",
                    self.kind,
                    self.manifold,
                    fills_field(&self.fillings),
                    self.tol,
                    self.verdict
                );
                out.push_str("cusp,before_re,before_im,after_re,after_im,delta,isolated\n");
                for s in &self.shapes {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        csv_field(&s.cusp),
                        s.before_re,
                        s.before_im,
                        s.after_re,
                        s.after_im,
                        s.delta,
                        s.isolated
                    ));
                }
                out
            }
        }
    }
}

impl BrunnianReport {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => json_of(self),
            ReportFormat::Csv => {
                let mut out = format!(
                    "# report v1 kind={} manifold={} triple={} p={} q={} tol_iso={} tol_change={} verdict={}\n",
                    self.kind,
                    self.manifold,
                    csv_field(&self.triple.join(" ")),
                    self.p,
                    self.q,
                    self.tol_iso,
                    self.tol_change,
                    self.verdict
                );
                out.push_str("experiment,fillings,cusp,delta,threshold,within\n");
                for (tag, reports, tol) in [
                    ("single", &self.singles, self.tol_iso),
                    ("double", &self.doubles, self.tol_change),
                ] {
                    for r in reports {
                        for s in &r.shapes {
                            out.push_str(&format!(
                                "{tag},{},{},{},{tol},{}\n",
                                fills_field(&r.fillings),
                                csv_field(&s.cusp),
                                s.delta,
                                s.delta < tol
                            ));
                        }
                    }
                }
                out
            }
        }
    }
}

impl DerivativeReport {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => json_of(self),
            ReportFormat::Csv => {
                let mut out = format!(
                    "# report v1 kind={} manifold={} with_respect_to={} observed={} h={}\n",
                    self.kind,
                    self.manifold,
                    csv_field(&self.with_respect_to.join(" ")),
                    self.observed_cusp,
                    self.h
                );
                out.push_str("j00,j01,j10,j11,error_estimate,norm\n");
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    self.jacobian[0][0],
                    self.jacobian[0][1],
                    self.jacobian[1][0],
                    self.jacobian[1][1],
                    self.error_estimate,
                    self.norm
                ));
                out
            }
        }
    }
}
