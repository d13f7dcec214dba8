use super::gf::{Elem, FieldSpec};
use super::FieldError;

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Reduced row echelon form with zero rows removed.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of packed elements, checking ranges and shape.
    pub fn from_rows(
        field: &FieldSpec,
        cols: usize,
        rows: &[Vec<Elem>],
    ) -> Result<Self, FieldError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(FieldError::Shape(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            for &v in r {
                field.check(v as u64)?;
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if p != lead {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(inv, m.get(lead, j));
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.data.truncate(lead * m.cols);
        m.rows = lead;
        Rref {
            matrix: m,
            rank: lead,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of the right kernel `{x : M x^T = 0}`.
    pub fn null_space(&self) -> Matrix {
        let f = &self.field;
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (b, &j) in free.iter().enumerate() {
            basis.set(b, j, 1);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(b, p, f.neg(r.get(i, j)));
            }
        }
        basis
    }

    /// Basis of `{x : x M = 0}`.
    pub fn left_null_space(&self) -> Matrix {
        self.transpose().null_space()
    }

    /// Solves `x M = b`, returning a particular solution and a basis of the
    /// homogeneous solutions, or `None` when the system is inconsistent.
    pub fn solve_left(&self, b: &[Elem]) -> Option<(Vec<Elem>, Matrix)> {
        assert_eq!(b.len(), self.cols);
        let f = &self.field;
        // augmented system M^T x^T = b^T
        let mut aug = Matrix::zeros(f, self.cols, self.rows + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(c, r, self.get(r, c));
            }
        }
        for (c, &v) in b.iter().enumerate() {
            aug.set(c, self.rows, v);
        }
        let Rref {
            matrix: red,
            pivots,
            ..
        } = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.rows);
        }
        Some((x, self.left_null_space()))
    }

    /// True when `v` lies in the row space of `self`, assuming `self` is in
    /// reduced row echelon form with the given pivots.
    pub fn rref_contains(&self, pivots: &[usize], v: &[Elem]) -> bool {
        self.rref_reduce(pivots, v).iter().all(|&x| x == 0)
    }

    /// Reduces `v` against an RREF matrix, clearing its pivot columns.
    pub fn rref_reduce(&self, pivots: &[usize], v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (i, &p) in pivots.iter().enumerate() {
            let a = w[p];
            if a == 0 {
                continue;
            }
            for (c, x) in w.iter_mut().enumerate() {
                *x = f.sub(*x, f.mul(a, self.get(i, c)));
            }
        }
        w
    }

    /// Positions of columns containing a nonzero entry.
    pub fn nonzero_columns(&self) -> usize {
        (0..self.cols)
            .filter(|&c| (0..self.rows).any(|r| self.get(r, c) != 0))
            .count()
    }
}
