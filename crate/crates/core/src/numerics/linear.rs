//! Dense complex linear algebra, sized for the small systems that show up
//! here (at most a few dozen unknowns).

use super::{NumericsError, C};

#[derive(Debug, Clone)]
pub struct ComplexMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C>,
}

impl ComplexMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMat { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] += v;
    }

    /// `A^H A`, the normal-equations matrix.
    pub fn gram(&self) -> ComplexMat {
        let mut g = ComplexMat::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut s = C::new(0.0, 0.0);
                for r in 0..self.rows {
                    s += self.get(r, i).conj() * self.get(r, j);
                }
                g.set(i, j, s);
            }
        }
        g
    }

    /// `A^H v`.
    pub fn adjoint_apply(&self, v: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); self.cols];
        for (c, o) in out.iter_mut().enumerate() {
            for r in 0..self.rows {
                *o += self.get(r, c).conj() * v[r];
            }
        }
        out
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for c in 0..self.cols {
                *o += self.get(r, c) * v[c];
            }
        }
        out
    }
}

/// Solve `A x = b` by LU with partial pivoting. The pivot ratio serves as a
/// cheap condition estimate; past 1e12 the factorization is refused.
pub fn solve_dense(a: &ComplexMat, b: &[C]) -> Result<Vec<C>, NumericsError> {
    assert_eq!(a.rows, a.cols, "solve_dense requires a square matrix");
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.clone();
    let mut x = b.to_vec();
    let mut max_piv = 0.0f64;
    let mut min_piv = f64::INFINITY;

    for col in 0..n {
        let mut piv = col;
        let mut best = m.get(col, col).norm();
        for r in col + 1..n {
            let v = m.get(r, col).norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Err(NumericsError::Singular { cond: f64::INFINITY });
        }
        if piv != col {
            for c in 0..n {
                let t = m.get(col, c);
                m.set(col, c, m.get(piv, c));
                m.set(piv, c, t);
            }
            x.swap(col, piv);
        }
        max_piv = max_piv.max(best);
        min_piv = min_piv.min(best);
        if max_piv / min_piv > 1e12 {
            return Err(NumericsError::Singular { cond: max_piv / min_piv });
        }
        let d = m.get(col, col);
        for r in col + 1..n {
            let f = m.get(r, col) / d;
            if f.norm() == 0.0 {
                continue;
            }
            for c in col..n {
                let v = m.get(r, c) - f * m.get(col, c);
                m.set(r, c, v);
            }
            let xc = x[col];
            x[r] -= f * xc;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for c in col + 1..n {
            s -= m.get(col, c) * x[c];
        }
        x[col] = s / m.get(col, col);
    }
    Ok(x)
}
