//! Gluing equations as integer-exponent log-linear forms over the simplex
//! parameters: edge equations, cusp (completeness) equations from the
//! peripheral dual paths, and generalized Dehn-filling equations.

use crate::numerics::{branched_log, BranchedLog, C, TWO_PI};
use crate::triangulation::{ccw_corners, corner_param_index, CuspPath, Triangulation};
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EquationError {
    #[error("filling coefficients (0, 0) are not a surgery")]
    ZeroFilling,
    #[error("cusp index {0} out of range")]
    BadCusp(usize),
    #[error("cusp {0} is filled; no completeness form")]
    Filled(usize),
}

/// The form `∑ c_i·ln(z_i) + ∑ d_i·ln(1−z_i) − πi·e − target`, evaluated
/// with branch-tracked logarithms.
#[derive(Debug, Clone, Serialize)]
pub struct LogLinearForm {
    pub kind: String,
    pub c: Vec<i64>,
    pub d: Vec<i64>,
    pub e: i64,
    pub target: C,
}

impl LogLinearForm {
    fn zero(kind: &str, n_tet: usize, target: C) -> LogLinearForm {
        LogLinearForm { kind: kind.to_string(), c: vec![0; n_tet], d: vec![0; n_tet], e: 0, target }
    }

    /// Add the log of one corner parameter of tet `t`, `sign`-times:
    /// `z` is `ln z`; `1/(1−z)` is `−ln(1−z)`; `(z−1)/z` is
    /// `ln(1−z) − ln z + iπ` (exact for `Im z > 0`).
    fn add_corner(&mut self, t: usize, param_index: usize, sign: i64) {
        match param_index {
            0 => self.c[t] += sign,
            1 => self.d[t] -= sign,
            2 => {
                self.c[t] -= sign;
                self.d[t] += sign;
                self.e -= sign;
            }
            _ => unreachable!("corner parameter index out of range"),
        }
    }

    /// Value of the form given per-tet logs of `z_i` and `1 − z_i`.
    pub fn evaluate(&self, logs: &[(BranchedLog, BranchedLog)]) -> C {
        let mut acc = -self.target - C::new(0.0, PI) * self.e as f64;
        for (t, (lz, lw)) in logs.iter().enumerate() {
            acc += lz.total() * self.c[t] as f64 + lw.total() * self.d[t] as f64;
        }
        acc
    }
}

/// Compute per-tet branched logs of `z` and `1−z` at `z`, continuing from
/// optional previous logs.
pub fn logs_at(z: &[C], prev: Option<&[(BranchedLog, BranchedLog)]>) -> Vec<(BranchedLog, BranchedLog)> {
    let one = C::new(1.0, 0.0);
    z.iter()
        .enumerate()
        .map(|(t, &zt)| {
            let hints = prev.map(|p| &p[t]);
            let lz = branched_log(zt, hints.map(|h| &h.0)).expect("z not in {0}");
            let lw = branched_log(one - zt, hints.map(|h| &h.1)).expect("z not in {1}");
            (lz, lw)
        })
        .collect()
}

/// A generalized Dehn-filling condition `p·u_m + q·u_l = 2πi` on a cusp,
/// with `u_m`, `u_l` the values of the cusp's dilation forms.
#[derive(Debug, Clone, Serialize)]
pub struct FillingForm {
    pub cusp: usize,
    pub p: f64,
    pub q: f64,
    pub target: C,
}

/// Edge, completeness, and filling forms for one triangulation. Cusp forms
/// are always present (they define the `u` coordinates); `fillings[c]`
/// decides whether cusp `c` contributes its completeness pair or a single
/// filling form to the residual.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    pub n_tet: usize,
    pub edge_forms: Vec<LogLinearForm>,
    /// Meridian and longitude dilation forms per cusp (target 0 at
    /// completeness).
    pub cusp_forms: Vec<(LogLinearForm, LogLinearForm)>,
    pub fillings: Vec<Option<(f64, f64)>>,
    pub filling_forms: Vec<FillingForm>,
}

/// One form per edge class: corner parameters around the edge multiply to 1
/// with total angle 2π (log-form target 2πi).
pub fn build_edge_equations(tri: &Triangulation) -> Vec<LogLinearForm> {
    tri.edge_classes
        .iter()
        .enumerate()
        .map(|(k, class)| {
            let mut form =
                LogLinearForm::zero(&format!("edge{k}"), tri.n_tet, C::new(0.0, TWO_PI));
            for &(t, a, b) in class {
                form.add_corner(t, crate::triangulation::edge_param_index(a, b), 1);
            }
            form
        })
        .collect()
}

/// Symbolic dilation of the holonomy along a closed dual path: one corner
/// parameter per step, pivoting about the corner shared by the entry and
/// exit sides. With sides oriented consistently with the counterclockwise
/// corner order, turning so the exit side precedes the entry side
/// contributes the pivot parameter with exponent +1, the other direction
/// −1 (the orientation-reversal signs of the turn and of the side gluing
/// cancel); a backtrack through the entry side contributes −1.
pub fn path_dilation_form(tri: &Triangulation, kind: &str, path: &CuspPath) -> LogLinearForm {
    let mut form = LogLinearForm::zero(kind, tri.n_tet, C::new(0.0, 0.0));
    for step in &path.steps {
        let v = step.triangle.vertex;
        let ccw = ccw_corners(v);
        let ei = ccw.iter().position(|&f| f == step.entry).expect("entry side of this triangle");
        let xi = ccw.iter().position(|&f| f == step.exit).expect("exit side of this triangle");
        if ei == xi {
            form.e -= 1;
            continue;
        }
        let pivot = ccw[3 - ei - xi];
        let sign = if xi == (ei + 2) % 3 { 1 } else { -1 };
        form.add_corner(step.triangle.tet, corner_param_index(v, pivot), sign);
    }
    form
}

/// Per-cusp meridian/longitude dilation forms, normalized so that the value
/// at the all-regular reference point `z_i = e^{iπ/3}` is the nearest
/// multiple of 2πi to zero (absorbed into the even part of `e`). The
/// completeness condition is then `form = 0`.
pub fn build_cusp_equations(tri: &Triangulation) -> Vec<(LogLinearForm, LogLinearForm)> {
    let omega = vec![crate::numerics::omega(); tri.n_tet];
    let logs = logs_at(&omega, None);
    tri.cusps
        .iter()
        .enumerate()
        .map(|(c, cusp)| {
            let mut m = path_dilation_form(tri, &format!("meridian{c}"), &cusp.meridian);
            let mut l = path_dilation_form(tri, &format!("longitude{c}"), &cusp.longitude);
            for form in [&mut m, &mut l] {
                let v0 = form.evaluate(&logs);
                let k = (v0.im / TWO_PI).round() as i64;
                form.e += 2 * k;
            }
            (m, l)
        })
        .collect()
}

/// Full system for the given fillings: `None` keeps a cusp's completeness
/// pair, `Some((p, q))` replaces it with `p·u_m + q·u_l = 2πi`.
pub fn build_filling_equations(
    tri: &Triangulation,
    fillings: &[Option<(f64, f64)>],
) -> Result<EquationSystem, EquationError> {
    if fillings.len() != tri.cusps.len() {
        return Err(EquationError::BadCusp(fillings.len()));
    }
    let mut filling_forms = Vec::new();
    for (c, fill) in fillings.iter().enumerate() {
        if let Some((p, q)) = fill {
            if *p == 0.0 && *q == 0.0 {
                return Err(EquationError::ZeroFilling);
            }
            filling_forms.push(FillingForm { cusp: c, p: *p, q: *q, target: C::new(0.0, TWO_PI) });
        }
    }
    Ok(EquationSystem {
        n_tet: tri.n_tet,
        edge_forms: build_edge_equations(tri),
        cusp_forms: build_cusp_equations(tri),
        fillings: fillings.to_vec(),
        filling_forms,
    })
}

impl EquationSystem {
    pub fn complete(tri: &Triangulation) -> EquationSystem {
        build_filling_equations(tri, &vec![None; tri.cusps.len()]).expect("no fillings")
    }

    /// Number of residual rows: edges plus two per unfilled cusp plus one
    /// per filled cusp.
    pub fn rows(&self) -> usize {
        let unfilled = self.fillings.iter().filter(|f| f.is_none()).count();
        self.edge_forms.len() + 2 * unfilled + self.filling_forms.len()
    }

    /// Residual vector at the given logs, with filling targets scaled by
    /// `t` (continuation parameter; `t = 1` is the full surgery).
    pub fn residual(&self, logs: &[(BranchedLog, BranchedLog)], t: f64) -> Vec<C> {
        let mut out = Vec::with_capacity(self.rows());
        for form in &self.edge_forms {
            out.push(form.evaluate(logs));
        }
        let mut filled = self.filling_forms.iter();
        for (c, fill) in self.fillings.iter().enumerate() {
            let (m, l) = &self.cusp_forms[c];
            match fill {
                None => {
                    out.push(m.evaluate(logs));
                    out.push(l.evaluate(logs));
                }
                Some((p, q)) => {
                    let target = filled.next().expect("one filling form per filled cusp").target;
                    let um = m.evaluate(logs);
                    let ul = l.evaluate(logs);
                    out.push(um * *p + ul * *q - target * t);
                }
            }
        }
        out
    }

    /// Jacobian rows matching [`EquationSystem::residual`].
    pub fn jacobian(&self, z: &[C]) -> crate::numerics::ComplexMat {
        let one = C::new(1.0, 0.0);
        let grad = |form: &LogLinearForm, t: usize| {
            form.c[t] as f64 / z[t] + form.d[t] as f64 / (z[t] - one)
        };
        let mut m = crate::numerics::ComplexMat::zeros(self.rows(), z.len());
        let mut row = 0;
        for form in &self.edge_forms {
            for t in 0..z.len() {
                m.set(row, t, grad(form, t));
            }
            row += 1;
        }
        for (c, fill) in self.fillings.iter().enumerate() {
            let (mf, lf) = &self.cusp_forms[c];
            match fill {
                None => {
                    for t in 0..z.len() {
                        m.set(row, t, grad(mf, t));
                        m.set(row + 1, t, grad(lf, t));
                    }
                    row += 2;
                }
                Some((p, q)) => {
                    for t in 0..z.len() {
                        m.set(row, t, grad(mf, t) * *p + grad(lf, t) * *q);
                    }
                    row += 1;
                }
            }
        }
        m
    }

    /// TSV dump, one row per form. Columns: kind, then `c_0..c_{n-1}`, then
    /// `d_0..d_{n-1}`, then `e`, then `target_re`, `target_im`. Filling
    /// forms list the combined real coefficients `p·m + q·l`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("kind");
        for t in 0..self.n_tet {
            out.push_str(&format!("\tc{t}"));
        }
        for t in 0..self.n_tet {
            out.push_str(&format!("\td{t}"));
        }
        out.push_str("\te\ttarget_re\ttarget_im\n");
        let push_int = |out: &mut String, form: &LogLinearForm| {
            out.push_str(&form.kind);
            for v in &form.c {
                out.push_str(&format!("\t{v}"));
            }
            for v in &form.d {
                out.push_str(&format!("\t{v}"));
            }
            out.push_str(&format!("\t{}\t{}\t{}\n", form.e, form.target.re, form.target.im));
        };
        for form in &self.edge_forms {
            push_int(&mut out, form);
        }
        for (c, (m, l)) in self.cusp_forms.iter().enumerate() {
            if self.fillings[c].is_none() {
                push_int(&mut out, m);
                push_int(&mut out, l);
            }
        }
        for ff in &self.filling_forms {
            let (m, l) = &self.cusp_forms[ff.cusp];
            out.push_str(&format!("filling{}", ff.cusp));
            for t in 0..self.n_tet {
                out.push_str(&format!("\t{}", ff.p * m.c[t] as f64 + ff.q * l.c[t] as f64));
            }
            for t in 0..self.n_tet {
                out.push_str(&format!("\t{}", ff.p * m.d[t] as f64 + ff.q * l.d[t] as f64));
            }
            out.push_str(&format!(
                "\t{}\t{}\t{}\n",
                ff.p * m.e as f64 + ff.q * l.e as f64,
                ff.target.re,
                ff.target.im
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusps::develop::path_holonomy;
    use crate::numerics::omega;
    use crate::triangulation::census;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_interior(rng: &mut ChaCha8Rng, n: usize) -> Vec<C> {
        (0..n).map(|_| C::new(rng.gen_range(-0.5..1.5), rng.gen_range(0.3..1.5))).collect()
    }

    /// The exponentiated dilation form must reproduce the scale of the
    /// developed holonomy of every peripheral path, at arbitrary positively
    /// oriented parameters, not just at solutions.
    #[test]
    fn dilation_forms_match_developed_holonomy() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x64696c6174);
        for name in ["fig8", "napoleon"] {
            let tri = census(name).unwrap();
            for _ in 0..5 {
                let z = random_interior(&mut rng, tri.n_tet);
                let logs = logs_at(&z, None);
                for cusp in &tri.cusps {
                    for path in [&cusp.meridian, &cusp.longitude] {
                        let form = path_dilation_form(&tri, "p", path);
                        let symbolic = form.evaluate(&logs).exp();
                        let numeric = path_holonomy(&tri, &z, path).unwrap().scale;
                        assert!(
                            (symbolic / numeric - C::new(1.0, 0.0)).norm() < 1e-9,
                            "{name} cusp {}: {symbolic} vs {numeric}",
                            cusp.label
                        );
                    }
                }
            }
        }
    }

    /// Normalized completeness forms vanish at the all-regular reference
    /// point of each census entry.
    #[test]
    fn cusp_forms_vanish_at_regular_point() {
        for name in ["fig8", "napoleon"] {
            let tri = census(name).unwrap();
            let logs = logs_at(&vec![omega(); tri.n_tet], None);
            for (m, l) in build_cusp_equations(&tri) {
                assert!(m.evaluate(&logs).norm() < 1e-12, "{name}: {}", m.kind);
                assert!(l.evaluate(&logs).norm() < 1e-12, "{name}: {}", l.kind);
            }
        }
    }

    /// Summing all edge-form evaluations at random parameters lands in
    /// 2πi·ℤ: the total of the corner contributions is an integer
    /// combination of full turns.
    #[test]
    fn edge_form_sum_redundancy() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x65646765);
        for name in ["fig8", "napoleon"] {
            let tri = census(name).unwrap();
            let z = random_interior(&mut rng, tri.n_tet);
            let logs = logs_at(&z, None);
            let total: C = build_edge_equations(&tri).iter().map(|f| f.evaluate(&logs)).sum();
            assert!(total.re.abs() < 1e-9, "{name}: {total}");
            let turns = total.im / TWO_PI;
            assert!((turns - turns.round()).abs() < 1e-9, "{name}: {total}");
        }
    }

    /// Rank of the complete-system Jacobian at the regular point equals
    /// n_tet for the census entries (the redundant rows do not lower it
    /// below, and regularity does not push it above, the parameter count).
    #[test]
    fn complete_jacobian_rank_is_n_tet() {
        for name in ["fig8", "napoleon"] {
            let tri = census(name).unwrap();
            let system = EquationSystem::complete(&tri);
            let z = vec![omega(); tri.n_tet];
            let jac = system.jacobian(&z);
            // Column-pivoted elimination on a copy, counting pivots.
            let (rows, cols) = (system.rows(), tri.n_tet);
            let mut m: Vec<Vec<C>> =
                (0..rows).map(|r| (0..cols).map(|c| jac.get(r, c)).collect()).collect();
            let mut rank = 0;
            for col in 0..cols {
                let Some(p) = (rank..rows).max_by(|&a, &b| {
                    m[a][col].norm().partial_cmp(&m[b][col].norm()).expect("finite")
                }) else {
                    break;
                };
                if m[p][col].norm() < 1e-9 {
                    continue;
                }
                m.swap(rank, p);
                for r in rank + 1..rows {
                    let f = m[r][col] / m[rank][col];
                    for c2 in col..cols {
                        let sub = f * m[rank][c2];
                        m[r][c2] -= sub;
                    }
                }
                rank += 1;
            }
            assert_eq!(rank, tri.n_tet, "{name}");
        }
    }

    /// TSV dump: header plus one line per row of the system, and the
    /// integer columns of a filling form combine the cusp pair.
    #[test]
    fn tsv_layout() {
        let tri = census("fig8").unwrap();
        let system = build_filling_equations(&tri, &[Some((5.0, 1.0))]).unwrap();
        let tsv = system.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 1 + system.rows());
        assert_eq!(lines[0], "kind\tc0\tc1\td0\td1\te\ttarget_re\ttarget_im");
        assert!(lines.last().unwrap().starts_with("filling0\t"));
    }

    #[test]
    fn zero_filling_rejected() {
        let tri = census("fig8").unwrap();
        match build_filling_equations(&tri, &[Some((0.0, 0.0))]) {
            Err(EquationError::ZeroFilling) => {}
            other => panic!("expected zero-filling rejection, got {other:?}"),
        }
    }
}
