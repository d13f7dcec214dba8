use std::fmt::Write as _;

use super::gf::{Elem, FieldSpec};
use super::matrix::Matrix;
use super::FieldError;

/// A linear code stored by its generator matrix in reduced row echelon form.
///
/// The RREF generator is unique per subspace, so two codes are equal exactly
/// when their generators are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Code spanned by the rows of `m` (rows need not be independent).
    pub fn span(m: &Matrix) -> Self {
        let r = m.rref();
        Self {
            generator: r.matrix,
            pivots: r.pivots,
        }
    }

    pub fn from_rows(field: &FieldSpec, n: usize, rows: &[Vec<Elem>]) -> Result<Self, FieldError> {
        Ok(Self::span(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Self::span(&Matrix::zeros(field, 0, n))
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        Self::span(&Matrix::identity(field, n))
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// The k x n generator in reduced row echelon form.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.length() && self.generator.rref_contains(&self.pivots, v)
    }

    /// Codeword `x G` for a message `x` of length k.
    pub fn encode(&self, x: &[Elem]) -> Vec<Elem> {
        self.generator.left_mul(x)
    }

    /// Every row of `other` lies in `self`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        (0..other.dimension()).all(|i| self.contains(other.generator.row(i)))
    }

    /// Euclidean dual code.
    pub fn dual(&self) -> LinearCode {
        LinearCode::span(&self.generator.null_space())
    }

    /// The subcode `C ∩ V_I` of codewords vanishing outside `support`
    /// (0-based coordinates).
    pub fn intersect_coordinate_subspace(&self, support: &[usize]) -> LinearCode {
        let n = self.length();
        let outside: Vec<usize> = (0..n).filter(|c| !support.contains(c)).collect();
        let restricted = self.generator.select_columns(&outside);
        let messages = restricted.left_null_space();
        LinearCode::span(&messages.mul(&self.generator))
    }

    /// `dim(C ∩ V_I)` without materializing the subcode.
    pub fn dim_in_coordinates(&self, support: &[usize]) -> usize {
        let outside: Vec<usize> = (0..self.length())
            .filter(|c| !support.contains(c))
            .collect();
        self.dimension() - self.generator.select_columns(&outside).rank()
    }

    /// Parses the text format: `q n k` followed by k rows of n packed elements.
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| FieldError::Format("empty code file".into()))?;
        let nums = parse_ints(header)?;
        let [q, n, k] = nums[..] else {
            return Err(FieldError::Format(format!(
                "header must be `q n k`, got `{header}`"
            )));
        };
        let field = FieldSpec::new(q as usize)?;
        let mut rows = Vec::with_capacity(k as usize);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| FieldError::Format(format!("expected {k} generator rows")))?;
            let vals = parse_ints(line)?;
            if vals.len() as u64 != n {
                return Err(FieldError::Format(format!(
                    "row has {} entries, expected {n}",
                    vals.len()
                )));
            }
            rows.push(
                vals.into_iter()
                    .map(|v| field.check(v))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        if let Some(extra) = lines.next() {
            return Err(FieldError::Format(format!("trailing content `{extra}`")));
        }
        let code = LinearCode::from_rows(&field, n as usize, &rows)?;
        if code.dimension() as u64 != k {
            return Err(FieldError::Format(format!(
                "generator rows are dependent: rank {} < k = {k}",
                code.dimension()
            )));
        }
        Ok(code)
    }

    /// Serializes the RREF generator in the text format.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {}\n",
            self.field().order(),
            self.length(),
            self.dimension()
        );
        for r in 0..self.dimension() {
            let row: Vec<String> = self
                .generator
                .row(r)
                .iter()
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>, FieldError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| FieldError::Format(format!("not a nonnegative integer: `{t}`")))
        })
        .collect()
}

/// Nested pair `C2 ⊊ C1` over the same field and length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedCodePair {
    c1: LinearCode,
    c2: LinearCode,
}

impl NestedCodePair {
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self, FieldError> {
        if c1.field() != c2.field() || c1.length() != c2.length() {
            return Err(FieldError::Mismatch);
        }
        if !c1.contains_code(&c2) {
            return Err(FieldError::NotNested);
        }
        if c1.dimension() == c2.dimension() {
            return Err(FieldError::NotStrict);
        }
        Ok(Self { c1, c2 })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn length(&self) -> usize {
        self.c1.length()
    }

    pub fn field(&self) -> &FieldSpec {
        self.c1.field()
    }

    /// `k1 - k2`, the number of secret symbols.
    pub fn ell(&self) -> usize {
        self.c1.dimension() - self.c2.dimension()
    }

    /// The dual pair `C1^⊥ ⊊ C2^⊥`, returned as (outer, inner) = (C2^⊥, C1^⊥).
    pub fn dual(&self) -> NestedCodePair {
        NestedCodePair {
            c1: self.c2.dual(),
            c2: self.c1.dual(),
        }
    }

    /// Canonical complement of C2 in C1: the rows of C1's RREF generator that
    /// are independent of C2 (taken greedily in order), each reduced against
    /// C2's RREF generator. Returns an `ell x n` matrix.
    pub fn complement(&self) -> Matrix {
        let g2 = self.c2.generator();
        let mut span = g2.clone();
        let mut w = Matrix::zeros(self.field(), 0, self.length());
        for i in 0..self.c1.dimension() {
            let row = self.c1.generator().row(i);
            let trial = span
                .stack(&Matrix::from_rows(self.field(), self.length(), &[row.to_vec()]).unwrap());
            if trial.rank() > span.rows() {
                span = trial;
                w.push_row(&g2.rref_reduce(self.c2.pivots(), row));
            }
            if w.rows() == self.ell() {
                break;
            }
        }
        w
    }
}
