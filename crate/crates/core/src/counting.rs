//! Exact subspace counting and the existence inequality for nested code
//! pairs whose RGHWs exceed given targets on both the primary and the dual
//! side.
//!
//! All counts are exact big integers; floats appear only in the estimates
//! `pi_q`, `entropy_hq` and the sandwich checks built on them.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{FieldSpec, LinearCode, Matrix, NestedCodePair};
use crate::weights::{rghw_via_rdlp, WeightError};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountError {
    #[error("product ratio does not divide exactly: {0}")]
    NonIntegral(String),
    #[error("invalid existence query: {0}")]
    InvalidQuery(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

fn pow(q: u64, e: i64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn exact_ratio(num: BigUint, den: BigUint, what: &str) -> Result<BigUint, CountError> {
    let (quot, rem) = num.div_rem(&den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(CountError::NonIntegral(what.to_string()))
    }
}

/// Number of u-dimensional subspaces of a w-dimensional space over GF(q).
pub fn n1(w: i64, u: i64, q: u64) -> Result<BigCount, CountError> {
    if u < 0 || w < 0 || u > w {
        return Ok(BigUint::zero());
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..u {
        num *= pow(q, w) - pow(q, i);
        den *= pow(q, u) - pow(q, i);
    }
    exact_ratio(num, den, &format!("N1({w},{u}) over q={q}"))
}

/// Gaussian binomial coefficient `[w choose u]_q`.
pub fn gaussian_binomial(w: u64, u: u64, q: u64) -> BigUint {
    n1(w as i64, u as i64, q).expect("Gaussian binomials are integral")
}

/// Number of v-dimensional subspaces meeting a fixed u-dimensional subspace
/// of a w-dimensional space trivially.
pub fn n2(w: i64, u: i64, v: i64, q: u64) -> Result<BigCount, CountError> {
    if u < 0 || v < 0 || u + v > w {
        return Ok(BigUint::zero());
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..v {
        num *= pow(q, w) - pow(q, u + i);
        den *= pow(q, v) - pow(q, i);
    }
    exact_ratio(num, den, &format!("N2({w},{u},{v}) over q={q}"))
}

/// Number of v-dimensional subspaces meeting a fixed u-dimensional subspace
/// of a w-dimensional space in exactly dimension a.
pub fn n3(w: i64, u: i64, v: i64, a: i64, q: u64) -> Result<BigCount, CountError> {
    if a < 0 || a > u || a > v || u + v - a > w {
        return Ok(BigUint::zero());
    }
    Ok(n1(u, a, q)? * n2(w - a, u - a, v - a, q)?)
}

/// Number of pairs `C2 ⊊ C1 ⊆ F_q^n` with the given dimensions and
/// `dim(C1 ∩ V_I) - dim(C2 ∩ V_I) = s` for one fixed I with `#I = d`.
pub fn n4(n: i64, k1: i64, k2: i64, d: i64, s: i64, q: u64) -> Result<BigCount, CountError> {
    if s < 0 || s > d.min(k1 - k2) || k2 < 0 || k1 < k2 || d < 0 || d > n {
        return Ok(BigUint::zero());
    }
    let top = (d - s).min(k1 - s).min(k2);
    let mut total = BigUint::zero();
    for a in 0..=top {
        total += n1(d, a, q)? * n2(n - a, d - a, k2 - a, q)? * n3(n - k2, d - a, k1 - k2, s, q)?;
    }
    Ok(total)
}

/// Ordinary binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Parameters of the pair-existence inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExistenceQuery {
    pub n: u64,
    pub k1: u64,
    pub k2: u64,
    pub d: u64,
    pub d_perp: u64,
    pub s: u64,
    pub s_perp: u64,
    pub q: u64,
}

impl ExistenceQuery {
    pub fn ell(&self) -> u64 {
        self.k1 - self.k2
    }

    pub fn validate(&self) -> Result<(), CountError> {
        let bad = |m: &str| Err(CountError::InvalidQuery(m.to_string()));
        if !(1 <= self.k2 && self.k2 < self.k1 && self.k1 < self.n) {
            return bad("need 1 <= k2 < k1 < n");
        }
        if !(1..=self.n).contains(&self.d) || !(1..=self.n).contains(&self.d_perp) {
            return bad("need 1 <= d, d_perp <= n");
        }
        if self.s < 1 || self.s > self.d.min(self.ell()) {
            return bad("need 1 <= s <= min(d, k1 - k2)");
        }
        if self.s_perp < 1 || self.s_perp > self.d_perp.min(self.ell()) {
            return bad("need 1 <= s_perp <= min(d_perp, k1 - k2)");
        }
        if FieldSpec::new(self.q as usize).is_err()
            && crate::field::prime_power(self.q as usize).is_none()
        {
            return bad("q must be a prime power");
        }
        Ok(())
    }
}

/// Outcome of the exact existence comparison `lhs > rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceCheck {
    pub holds: bool,
    pub lhs: BigCount,
    pub rhs: BigCount,
}

/// Exact evaluation of the existence inequality. When it holds, some pair
/// with `M_s(C1, C2) > d` and `M_{s⊥}(C2⊥, C1⊥) > d⊥` exists. Both sums start
/// at `s` (resp. `s⊥`).
pub fn ryu3_check(query: &ExistenceQuery) -> Result<ExistenceCheck, CountError> {
    query.validate()?;
    let ExistenceQuery {
        n,
        k1,
        k2,
        d,
        d_perp,
        s,
        s_perp,
        q,
    } = *query;
    let (n, k1, k2, d, d_perp, s, s_perp) = (
        n as i64,
        k1 as i64,
        k2 as i64,
        d as i64,
        d_perp as i64,
        s as i64,
        s_perp as i64,
    );
    let ell = k1 - k2;
    let lhs = n1(n, k2, q)? * n1(n - k2, ell, q)?;
    let mut primal = BigUint::zero();
    for sigma in s..=ell {
        primal += n4(n, k1, k2, d, sigma, q)?;
    }
    let mut dual = BigUint::zero();
    for sigma in s_perp..=ell {
        dual += n4(n, n - k2, n - k1, d_perp, sigma, q)?;
    }
    let rhs = binomial(n as u64, d as u64) * primal + binomial(n as u64, d_perp as u64) * dual;
    Ok(ExistenceCheck {
        holds: lhs > rhs,
        lhs,
        rhs,
    })
}

/// A pair found by random search that meets both RGHW targets.
#[derive(Clone, Debug)]
pub struct Witness {
    pub pair: NestedCodePair,
    pub m_s: usize,
    pub m_s_perp: usize,
    pub trials: usize,
}

fn random_full_rank(field: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data: Vec<Vec<u8>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| rng.random_range(0..field.order()) as u8)
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(field, cols, &data).unwrap();
        if m.rank() == rows {
            return m;
        }
    }
}

/// Samples random pairs with the query's dimensions and returns the first
/// one whose RGHWs satisfy `M_s > d` and `M_{s⊥}(C2⊥, C1⊥) > d⊥`.
pub fn random_witness_search(
    query: &ExistenceQuery,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Result<Option<Witness>, CountError> {
    query.validate()?;
    let field =
        FieldSpec::new(query.q as usize).map_err(|e| CountError::InvalidQuery(e.to_string()))?;
    let n = query.n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=trials {
        let g1 = random_full_rank(&field, query.k1 as usize, n, &mut rng);
        let coeffs = random_full_rank(&field, query.k2 as usize, query.k1 as usize, &mut rng);
        let c1 = LinearCode::span(&g1);
        let c2 = LinearCode::span(&coeffs.mul(&g1));
        let pair = NestedCodePair::new(c1, c2).expect("C2 built inside C1");
        let m_s = rghw_via_rdlp(&pair, query.s as usize, budget)?;
        if m_s <= query.d as usize {
            continue;
        }
        let m_s_perp = rghw_via_rdlp(&pair.dual(), query.s_perp as usize, budget)?;
        if m_s_perp > query.d_perp as usize {
            return Ok(Some(Witness {
                pair,
                m_s,
                m_s_perp,
                trials: t,
            }));
        }
    }
    Ok(None)
}

/// `π(q) = ∏_{i>=1} (1 - q^{-i})`, truncated once a factor changes the
/// product by less than `tol`.
pub fn pi_q(q: f64, tol: f64) -> f64 {
    let mut prod = 1.0;
    let mut term = 1.0 / q;
    loop {
        let next = prod * (1.0 - term);
        if (prod - next).abs() < tol {
            return next;
        }
        prod = next;
        term /= q;
    }
}

/// q-ary entropy function, with `H_q(0) = H_q(1) = 0`.
pub fn entropy_hq(x: f64, q: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.log(q)) - (1.0 - x) * (1.0 - x).log(q)
}

fn big_to_f64(b: &BigUint) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

/// `π(q) q^{u(w-u)} <= N1(w, u) <= π(q)^{-1} q^{u(w-u)}`.
pub fn lemma35_sandwich_check(w: u64, u: u64, q: u64) -> bool {
    let exact = big_to_f64(&gaussian_binomial(w, u, q));
    let pi = pi_q(q as f64, 1e-12);
    let scale = (q as f64).powi((u * (w - u)) as i32);
    pi * scale <= exact && exact <= scale / pi
}

/// `q^{n H_q(m/n)} / (n + 1) <= C(n, m) <= q^{n H_q(m/n)}`.
pub fn lemma36_sandwich_check(n: u64, m: u64, q: u64) -> bool {
    let exact = big_to_f64(&binomial(n, m));
    let e = (q as f64).powf(n as f64 * entropy_hq(m as f64 / n as f64, q as f64));
    // relative slack for float rounding of the exponential
    let slack = 1e-9 * e;
    e / (n as f64 + 1.0) <= exact + slack && exact <= e + slack
}

/// Rates and relative distances for the asymptotic existence theorem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateQuery {
    pub r1: f64,
    pub r2: f64,
    pub delta: f64,
    pub delta_perp: f64,
    pub tau: f64,
    pub tau_perp: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    pub conditions_hold: bool,
    pub smallest_n: Option<u64>,
}

// Rates arrive as decimals; snap products like 10 * 0.3 to the nearest
// integer before flooring so representation error cannot shift a count.
const SNAP: f64 = 1e-9;

fn floor_snap(x: f64) -> i64 {
    (x + SNAP).floor() as i64
}

fn ceil_snap(x: f64) -> i64 {
    (x - SNAP).ceil() as i64
}

impl RateQuery {
    fn validate(&self) -> Result<(), CountError> {
        let l = self.r1 - self.r2;
        let ok = 0.0 <= self.r2
            && self.r2 < self.r1
            && self.r1 <= 1.0
            && (0.0..=1.0).contains(&self.delta)
            && (0.0..=1.0).contains(&self.delta_perp)
            && 0.0 < self.tau
            && self.tau <= self.delta.min(l) + 1e-12
            && 0.0 < self.tau_perp
            && self.tau_perp <= self.delta_perp.min(l) + 1e-12;
        if ok {
            Ok(())
        } else {
            Err(CountError::OutOfRange(format!("{self:?}")))
        }
    }

    /// `R1 + δ < 1 + τ` and `(1 - R2) + δ⊥ < 1 + τ⊥`.
    pub fn conditions_hold(&self) -> bool {
        self.r1 + self.delta < 1.0 + self.tau
            && (1.0 - self.r2) + self.delta_perp < 1.0 + self.tau_perp
    }

    /// The rounded finite-length query used at length `n`, if valid.
    pub fn discretize(&self, n: u64, q: u64) -> Option<ExistenceQuery> {
        let nf = n as f64;
        let k1 = floor_snap(nf * self.r1);
        let k2 = ceil_snap(nf * self.r2);
        let s = ceil_snap(nf * self.tau);
        let s_perp = ceil_snap(nf * self.tau_perp);
        let d = floor_snap(nf * self.delta);
        let d_perp = floor_snap(nf * self.delta_perp);
        if [k1, k2, s, s_perp, d, d_perp].iter().any(|&v| v < 0) {
            return None;
        }
        let query = ExistenceQuery {
            n,
            k1: k1 as u64,
            k2: k2 as u64,
            d: d as u64,
            d_perp: d_perp as u64,
            s: s as u64,
            s_perp: s_perp as u64,
            q,
        };
        query.validate().ok().map(|_| query)
    }
}

/// Checks the rate conditions and scans `n = 2..=n_max` for the first length
/// where the exact existence inequality holds on the rounded parameters.
pub fn theorem37_feasible(
    rates: &RateQuery,
    q: u64,
    n_max: u64,
) -> Result<Feasibility, CountError> {
    rates.validate()?;
    if !rates.conditions_hold() {
        return Ok(Feasibility {
            conditions_hold: false,
            smallest_n: None,
        });
    }
    let found: Vec<u64> = (2..=n_max)
        .into_par_iter()
        .filter(|&n| {
            rates
                .discretize(n, q)
                .and_then(|query| ryu3_check(&query).ok())
                .is_some_and(|c| c.holds)
        })
        .collect();
    Ok(Feasibility {
        conditions_hold: true,
        smallest_n: found.into_iter().min(),
    })
}

/// Relative parameters derived from target deficiencies and defects.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedRates {
    pub delta: f64,
    pub delta_perp: f64,
    pub tau: f64,
    pub tau_perp: f64,
    /// The derived values satisfy the hypotheses and conditions of the
    /// asymptotic existence theorem.
    pub existence_hypotheses_hold: bool,
}

/// `τ = ε2 L`, `τ⊥ = ε1 L`, `δ = 1 - R1 - Λ2`, `δ⊥ = R2 - Λ1`.
pub fn theorem38_params(
    r1: f64,
    r2: f64,
    eps1: f64,
    eps2: f64,
    lambda1: f64,
    lambda2: f64,
) -> Result<DerivedRates, CountError> {
    const TOL: f64 = 1e-12;
    let l = r1 - r2;
    let fail = |m: String| Err(CountError::OutOfRange(m));
    if !(0.0 <= r2 && r2 < r1 && r1 <= 1.0) {
        return fail(format!("need 0 <= R2 < R1 <= 1, got R1={r1} R2={r2}"));
    }
    if !(0.0 < eps1 && eps1 < 1.0 && 0.0 < eps2 && eps2 < 1.0) {
        return fail(format!("need 0 < eps1, eps2 < 1, got {eps1}, {eps2}"));
    }
    if !(-eps1 * l < lambda1 && lambda1 <= r2 - eps1 * l + TOL) {
        return fail(format!(
            "need -eps1 L < Lambda1 <= R2 - eps1 L, got Lambda1={lambda1}"
        ));
    }
    if !(-eps2 * l < lambda2 && lambda2 <= 1.0 - r1 - eps2 * l + TOL) {
        return fail(format!(
            "need -eps2 L < Lambda2 <= 1 - R1 - eps2 L, got Lambda2={lambda2}"
        ));
    }
    let tau = eps2 * l;
    let tau_perp = eps1 * l;
    let delta = 1.0 - r1 - lambda2;
    let delta_perp = r2 - lambda1;
    let rates = RateQuery {
        r1,
        r2,
        delta,
        delta_perp,
        tau,
        tau_perp,
    };
    let existence_hypotheses_hold = rates.validate().is_ok() && rates.conditions_hold();
    Ok(DerivedRates {
        delta,
        delta_perp,
        tau,
        tau_perp,
        existence_hypotheses_hold,
    })
}
