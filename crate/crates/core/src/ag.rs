//! Concrete one-point algebraic geometric codes: Reed-Solomon codes (genus
//! 0) and codes on the Hermitian curve `y^q0 + y = x^(q0+1)` over
//! GF(q0^2). Also the order-bound map `ρ̄`, the support bound for subspaces
//! read off `ρ̄`, and the level parameters of the second
//! Garcia-Stichtenoth tower.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;
use thiserror::Error;

use crate::field::{Elem, FieldError, FieldSpec, LinearCode, Matrix, NestedCodePair};
use crate::semigroup::NumericalSemigroup;
use crate::weights::{for_each_subspace, support_size, WeightError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AgError {
    #[error("evaluation points must be distinct and number at most q: {0}")]
    BadPoints(String),
    #[error("unsupported Hermitian parameter q0 = {0} (supported: 2, 3)")]
    UnsupportedCurve(u64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("vector is not in the code")]
    NotInCode,
    #[error("q = {0} is not a perfect square")]
    NotSquare(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curve {
    ReedSolomon { q: usize, points: Vec<Elem> },
    Hermitian { q0: u64 },
}

/// `C_L(D, μQ)` with its evaluation basis ordered by pole order.
#[derive(Clone, Debug)]
pub struct OnePointCode {
    pub code: LinearCode,
    pub mu: i64,
    pub semigroup: NumericalSemigroup,
    /// Pole orders `γ_1 < … < γ_k` of the basis rows.
    pub pole_orders: Vec<i64>,
    /// Evaluation vectors, row i has pole order `pole_orders[i]`.
    pub basis: Matrix,
    pub curve: Curve,
}

impl OnePointCode {
    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    pub fn field(&self) -> &FieldSpec {
        self.code.field()
    }

    pub fn genus(&self) -> u64 {
        self.semigroup.genus()
    }

    pub fn conductor(&self) -> u64 {
        self.semigroup.conductor()
    }
}

/// Keeps candidates (sorted by pole order) whose evaluations are independent
/// of the ones kept so far.
fn assemble(
    field: &FieldSpec,
    n: usize,
    mu: i64,
    candidates: Vec<(i64, Vec<Elem>)>,
    semigroup: NumericalSemigroup,
    curve: Curve,
) -> OnePointCode {
    let mut basis = Matrix::zeros(field, 0, n);
    let mut pole_orders = Vec::new();
    for (order, row) in candidates {
        if order > mu || basis.rows() == n {
            break;
        }
        let mut trial = basis.clone();
        trial.push_row(&row);
        if trial.rank() > basis.rows() {
            basis = trial;
            pole_orders.push(order);
        }
    }
    OnePointCode {
        code: LinearCode::span(&basis),
        mu,
        semigroup,
        pole_orders,
        basis,
        curve,
    }
}

/// Reed-Solomon code spanned by `1, x, …, x^{k-1}` evaluated at `points`.
pub fn reed_solomon(
    q: usize,
    n: usize,
    k: usize,
    points: &[Elem],
) -> Result<OnePointCode, AgError> {
    let field = FieldSpec::new(q)?;
    if points.len() != n || n > q {
        return Err(AgError::BadPoints(format!(
            "{} points for n = {n}, q = {q}",
            points.len()
        )));
    }
    let mut seen = points.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n || points.iter().any(|&p| p as usize >= q) {
        return Err(AgError::BadPoints(format!("{points:?}")));
    }
    if k > n {
        return Err(AgError::OutOfRange(format!("k = {k} > n = {n}")));
    }
    let candidates = (0..n)
        .map(|j| {
            (
                j as i64,
                points.iter().map(|&x| field.pow(x, j as u64)).collect(),
            )
        })
        .collect();
    let semigroup = NumericalSemigroup::from_generators(&[1]).unwrap();
    Ok(assemble(
        &field,
        n,
        k as i64 - 1,
        candidates,
        semigroup,
        Curve::ReedSolomon {
            q,
            points: points.to_vec(),
        },
    ))
}

/// Affine points of `y^q0 + y = x^(q0+1)` over GF(q0^2), sorted by (x, y).
pub fn hermitian_points(q0: u64) -> Result<(FieldSpec, Vec<(Elem, Elem)>), AgError> {
    if !(q0 == 2 || q0 == 3) {
        return Err(AgError::UnsupportedCurve(q0));
    }
    let field = FieldSpec::new((q0 * q0) as usize)?;
    let mut points = Vec::new();
    for x in field.elements() {
        for y in field.elements() {
            if field.add(field.pow(y, q0), y) == field.pow(x, q0 + 1) {
                points.push((x, y));
            }
        }
    }
    Ok((field, points))
}

/// One-point Hermitian code with pole-order cap `μ`, for `-1 <= μ < n + 2g`.
pub fn hermitian_code(q0: u64, mu: i64) -> Result<OnePointCode, AgError> {
    let (field, points) = hermitian_points(q0)?;
    let n = points.len();
    let g = (q0 * (q0 - 1) / 2) as i64;
    if !(-1 <= mu && mu < n as i64 + 2 * g) {
        return Err(AgError::OutOfRange(format!(
            "mu = {mu} outside [-1, {})",
            n as i64 + 2 * g
        )));
    }
    // x has pole order q0 and y has pole order q0 + 1
    let top = n as i64 + 2 * g;
    let mut candidates: Vec<(i64, Vec<Elem>)> = Vec::new();
    for b in 0..q0 as i64 {
        let mut a = 0i64;
        while a * q0 as i64 + b * (q0 as i64 + 1) < top {
            let row = points
                .iter()
                .map(|&(x, y)| field.mul(field.pow(x, a as u64), field.pow(y, b as u64)))
                .collect();
            candidates.push((a * q0 as i64 + b * (q0 as i64 + 1), row));
            a += 1;
        }
    }
    candidates.sort_by_key(|(order, _)| *order);
    let semigroup = NumericalSemigroup::from_generators(&[q0, q0 + 1]).unwrap();
    Ok(assemble(
        &field,
        n,
        mu,
        candidates,
        semigroup,
        Curve::Hermitian { q0 },
    ))
}

/// Rebuilds the code of the same family with another pole-order cap.
pub fn same_family(code: &OnePointCode, mu: i64) -> Result<OnePointCode, AgError> {
    match &code.curve {
        Curve::ReedSolomon { q, points } => {
            let k = (mu + 1).clamp(0, points.len() as i64) as usize;
            reed_solomon(*q, points.len(), k, points)
        }
        Curve::Hermitian { q0 } => hermitian_code(*q0, mu),
    }
}

/// Nested pair `C_L(D, μ2 Q) ⊊ C_L(D, μ1 Q)`.
pub fn one_point_pair(c1: &OnePointCode, c2: &OnePointCode) -> Result<NestedCodePair, AgError> {
    Ok(NestedCodePair::new(c1.code.clone(), c2.code.clone())?)
}

/// `ρ̄(v)`: the least i with v in the span of the first i basis vectors,
/// and 0 for the zero vector.
pub fn rho_bar(code: &OnePointCode, v: &[Elem]) -> Result<usize, AgError> {
    if !code.code.contains(v) {
        return Err(AgError::NotInCode);
    }
    if v.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    let coords = coordinates(code, &[v.to_vec()]);
    Ok(coords[0].iter().rposition(|&c| c != 0).unwrap() + 1)
}

/// Coordinates of code vectors in the pole-ordered basis.
fn coordinates(code: &OnePointCode, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    vectors
        .iter()
        .map(|v| code.basis.solve_left(v).expect("vector lies in the code").0)
        .collect()
}

/// The m values of `ρ̄(D \ {0})` for the subspace spanned by `rows`, sorted.
pub fn rho_bar_set(code: &OnePointCode, rows: &[Vec<Elem>]) -> Vec<usize> {
    let k = code.dimension();
    // echelon form taken from the right: each pivot is a distinct top index
    let reversed: Vec<Vec<Elem>> = coordinates(code, rows)
        .into_iter()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect();
    let m = Matrix::from_rows(code.field(), k, &reversed).unwrap();
    let mut set: Vec<usize> = m.rref().pivots.iter().map(|p| k - p).collect();
    set.sort_unstable();
    set
}

/// `n - γ_{i_m} + #{α ∈ ∪_{s<m} (γ_{i_s} - γ_{i_m} + H) : α ∉ H}` for
/// 1-based indices `i_1 < … < i_m` into `gammas`.
pub fn appendix_b_support_bound(
    h: &NumericalSemigroup,
    gammas: &[i64],
    indices: &[usize],
    n: i64,
) -> i64 {
    let top = gammas[indices[indices.len() - 1] - 1];
    let shifts: Vec<i64> = indices[..indices.len() - 1]
        .iter()
        .map(|&i| gammas[i - 1] - top)
        .collect();
    let lo = shifts.iter().copied().min().unwrap_or(0);
    let c = h.conductor() as i64;
    let count = (lo..c)
        .filter(|&alpha| !h.contains(alpha) && shifts.iter().any(|&s| h.contains(alpha - s)))
        .count();
    n - top + count as i64
}

/// Exhaustive check over every m-dimensional `D ⊆ C1` with `D ∩ C2 ≠ {0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AppendixBReport {
    pub subspaces: u64,
    /// Subspaces whose support is below `n - k1 + m - max{0, c - ℓ}`.
    pub gap_violations: u64,
    /// Subspaces whose support is below the `ρ̄`-based bound.
    pub lemma_violations: u64,
    pub min_support: Option<usize>,
}

pub fn appendix_b_check(
    c1: &OnePointCode,
    c2: &OnePointCode,
    m: usize,
    budget: u64,
) -> Result<AppendixBReport, AgError> {
    let n = c1.length() as i64;
    let (k1, k2) = (c1.dimension(), c2.dimension());
    let ell = (k1 - k2) as i64;
    let c = c1.conductor() as i64;
    if m == 0 || m as i64 > ell {
        return Err(AgError::OutOfRange(format!("m = {m} outside 1..={ell}")));
    }
    let target = n - k1 as i64 + m as i64 - (c - ell).max(0);
    let g2 = c2.code.generator();
    let mut report = AppendixBReport::default();
    for_each_subspace(&c1.code, m, budget, &mut |rows| {
        let d = Matrix::from_rows(c1.field(), c1.length(), rows).unwrap();
        if g2.stack(&d).rank() == k2 + m {
            return;
        }
        report.subspaces += 1;
        let support = support_size(rows);
        report.min_support = Some(report.min_support.map_or(support, |s| s.min(support)));
        if (support as i64) < target {
            report.gap_violations += 1;
        }
        let indices = rho_bar_set(c1, rows);
        if (support as i64) < appendix_b_support_bound(&c1.semigroup, &c1.pole_orders, &indices, n)
        {
            report.lemma_violations += 1;
        }
    })?;
    Ok(report)
}

/// Dimension jumps of the family `μ = -1..n-1` occur exactly at `H ∩ [0, n)`.
pub fn hstar_window_check(code: &OnePointCode) -> Result<bool, AgError> {
    let n = code.length() as i64;
    let mut prev = same_family(code, -1)?.dimension();
    for mu in 0..n {
        let k = same_family(code, mu)?.dimension();
        if (k > prev) != code.semigroup.contains(mu) {
            return Ok(false);
        }
        prev = k;
    }
    Ok(true)
}

/// Level-i parameters of the second Garcia-Stichtenoth tower over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerParams {
    pub q: u64,
    pub level: u32,
    pub genus: BigUint,
    pub conductor: BigUint,
    /// The number of rational places exceeds this value.
    pub places_exceed: BigUint,
}

pub fn gs_tower_params(q: u64, i: u32) -> Result<TowerParams, AgError> {
    let s = q.sqrt();
    if s * s != q || q < 4 {
        return Err(AgError::NotSquare(q));
    }
    if i == 0 {
        return Err(AgError::OutOfRange("tower levels start at 1".into()));
    }
    let s = BigUint::from(s);
    let one = BigUint::one();
    // q^{j/4} = s^{j/2}
    let (genus, conductor) = if i % 2 == 0 {
        let half = s.pow(i / 2);
        ((&half - &one) * (&half - &one), s.pow(i) - &half)
    } else {
        let up = s.pow(i.div_ceil(2));
        let down = s.pow(i / 2);
        ((&up - &one) * (&down - &one), s.pow(i) - &up)
    };
    let places_exceed = s.pow(i) * (&s - &one);
    Ok(TowerParams {
        q,
        level: i,
        genus,
        conductor,
        places_exceed,
    })
}
