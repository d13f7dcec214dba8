//! Asymptotic bounds on relative generalized Hamming weights of one-point
//! AG code sequences from optimal towers, the regions where each bound is
//! strongest, and the deficiencies of the resulting secret sharing scheme
//! sequences.
//!
//! Throughout, `a = 1/(√q - 1)` for a perfect square q. Bound evaluators
//! work in f64; region endpoints and scheme parameters are exact rationals.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::prime_power;

/// Tolerance applied at region boundaries.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is not a perfect square; supply A(q) explicitly")]
    NeedOverride(u64),
    #[error("A(q) = {value} is not allowed for q = {q}: {reason}")]
    BadOverride { q: u64, value: f64, reason: String },
    #[error("q = {0} is not a perfect square")]
    NotSquare(u64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid grid `{0}` (expected start:stop:step)")]
    BadGrid(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IharaProvenance {
    ExactSquare,
    UserSupplied,
}

/// Ihara's constant `A(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IharaValue {
    pub q: u64,
    pub value: f64,
    pub provenance: IharaProvenance,
}

impl IharaValue {
    /// `A(q)` as a rational: exact for squares, the binary value of the
    /// supplied float otherwise.
    pub fn as_rational(&self) -> BigRational {
        match self.provenance {
            IharaProvenance::ExactSquare => {
                BigRational::from_integer(BigInt::from(self.value as u64))
            }
            IharaProvenance::UserSupplied => BigRational::from_float(self.value).unwrap(),
        }
    }
}

/// `A(q) = √q - 1` for squares; otherwise the caller must supply a value
/// not exceeding `√q - 1`.
pub fn ihara(q: u64, override_value: Option<f64>) -> Result<IharaValue, AsymptoticError> {
    if prime_power(q as usize).is_none() {
        return Err(AsymptoticError::NotPrimePower(q));
    }
    let ceiling = (q as f64).sqrt() - 1.0;
    let bad = |value: f64, reason: &str| AsymptoticError::BadOverride {
        q,
        value,
        reason: reason.into(),
    };
    match (exact_sqrt(q), override_value) {
        (Some(s), None) => Ok(IharaValue {
            q,
            value: (s - 1) as f64,
            provenance: IharaProvenance::ExactSquare,
        }),
        (Some(s), Some(v)) => {
            if (v - (s - 1) as f64).abs() > BOUNDARY_TOL {
                return Err(bad(v, "A(q) = sqrt(q) - 1 for square q"));
            }
            Ok(IharaValue {
                q,
                value: (s - 1) as f64,
                provenance: IharaProvenance::ExactSquare,
            })
        }
        (None, None) => Err(AsymptoticError::NeedOverride(q)),
        (None, Some(v)) => {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(v, "must be positive"));
            }
            if v > ceiling + BOUNDARY_TOL {
                return Err(bad(v, "exceeds sqrt(q) - 1"));
            }
            Ok(IharaValue {
                q,
                value: v,
                provenance: IharaProvenance::UserSupplied,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundTag {
    Tsfasman,
    Thm57,
    Thm58,
    Thm59,
    Thm510,
}

impl BoundTag {
    pub const ALL: [BoundTag; 5] = [
        BoundTag::Tsfasman,
        BoundTag::Thm57,
        BoundTag::Thm58,
        BoundTag::Thm59,
        BoundTag::Thm510,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundTag::Tsfasman => "tsfasman",
            BoundTag::Thm57 => "thm57",
            BoundTag::Thm58 => "thm58",
            BoundTag::Thm59 => "thm59",
            BoundTag::Thm510 => "thm510",
        }
    }
}

/// A lower bound (or exact value) for `δ = lim d_{m_i}(C_i)/n_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundResult {
    /// `raw` clamped to `[0, 1]`.
    pub delta: f64,
    pub raw: f64,
    pub tag: BoundTag,
    /// `(R, ρ, V)` lies in the theorem's region.
    pub applicable: bool,
    /// δ equals the Singleton value `1 - R + ρ`.
    pub equality: bool,
    pub clamped: bool,
}

fn le(a: f64, b: f64) -> bool {
    a <= b + BOUNDARY_TOL
}

fn result(tag: BoundTag, raw: f64, applicable: bool, equality: bool) -> BoundResult {
    let delta = raw.clamp(0.0, 1.0);
    BoundResult {
        delta,
        raw,
        tag,
        applicable,
        equality,
        clamped: delta != raw,
    }
}

fn basic_region(r: f64, rho: f64) -> bool {
    le(0.0, rho) && le(rho, r) && le(r, 1.0)
}

fn singleton(r: f64, rho: f64) -> f64 {
    1.0 - r + rho
}

fn square_root(q: u64) -> Result<f64, AsymptoticError> {
    exact_sqrt(q)
        .map(|s| s as f64)
        .ok_or(AsymptoticError::NotSquare(q))
}

/// `δ >= 1 - R + ρ - 1/A`, with `δ = 1 - R + ρ` once `ρ > 1/A`.
pub fn tsfasman_bound(r: f64, rho: f64, a: f64) -> BoundResult {
    let applicable = basic_region(r, rho);
    if rho > 1.0 / a + BOUNDARY_TOL {
        result(BoundTag::Tsfasman, singleton(r, rho), applicable, true)
    } else {
        result(
            BoundTag::Tsfasman,
            singleton(r, rho) - 1.0 / a,
            applicable,
            false,
        )
    }
}

/// `δ = 1 - R + ρ` on `1/A <= R <= 1`, `q/((q-1)A) - R/(q-1) <= ρ <= R`.
pub fn bound_thm57(r: f64, rho: f64, a: f64, q: u64) -> BoundResult {
    let qf = q as f64;
    let edge = qf / ((qf - 1.0) * a) - r / (qf - 1.0);
    let applicable = le(1.0 / a, r) && le(r, 1.0) && le(edge, rho) && le(rho, r);
    result(BoundTag::Thm57, singleton(r, rho), applicable, true)
}

/// `δ >= q/(q-1) (1 - R - 1/A) + ρ`.
pub fn bound_thm58(r: f64, rho: f64, a: f64, q: u64) -> BoundResult {
    let qf = q as f64;
    let raw = qf / (qf - 1.0) * (1.0 - r - 1.0 / a) + rho;
    result(
        BoundTag::Thm58,
        raw,
        basic_region(r, rho),
        (raw - singleton(r, rho)).abs() <= BOUNDARY_TOL,
    )
}

/// `δ >= 1 - R + 2ρ - a` on `R <= 1 - a`, `ρ <= min{R, a}`.
pub fn bound_thm59(r: f64, rho: f64, q: u64) -> Result<BoundResult, AsymptoticError> {
    let a = 1.0 / (square_root(q)? - 1.0);
    let raw = 1.0 - r + 2.0 * rho - a;
    let applicable = le(0.0, r) && le(r, 1.0 - a) && le(0.0, rho) && le(rho, r.min(a));
    Ok(result(
        BoundTag::Thm59,
        raw,
        applicable,
        (raw - singleton(r, rho)).abs() <= BOUNDARY_TOL,
    ))
}

/// `δ >= 1 - R + ρ - V` on `R <= 1 - a`, `0 <= V <= a`, `max{0, a - 2V} <= ρ <= R`.
pub fn bound_thm510(r: f64, rho: f64, v: f64, q: u64) -> Result<BoundResult, AsymptoticError> {
    let a = 1.0 / (square_root(q)? - 1.0);
    let raw = 1.0 - r + rho - v;
    let applicable = le(0.0, r)
        && le(r, 1.0 - a)
        && le(0.0, v)
        && le(v, a)
        && le(0.0_f64.max(a - 2.0 * v), rho)
        && le(rho, r);
    Ok(result(
        BoundTag::Thm510,
        raw,
        applicable,
        v.abs() <= BOUNDARY_TOL,
    ))
}

fn ceil_div(num: &BigRational) -> BigInt {
    num.ceil().to_integer()
}

/// `s^e` for a possibly negative exponent, exactly.
fn rational_pow(s: u64, e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(s)).pow(e as i32)
}

/// `n_u^{(i)} = s^{⌊(i + 1 - log_s(u + 1)) / 2⌋} - 1`, with the floor found
/// exactly as the largest e with `s^{i+1-2e} >= u + 1`.
pub fn brasamoros_n(s: u64, i: u32, u: u64) -> BigRational {
    let t = i as i64 + 1;
    let target = BigUint::from(u + 1);
    let sb = BigUint::from(s);
    // start above any feasible e and walk down
    let mut e = t.div_euclid(2) + 1;
    loop {
        let exp = t - 2 * e;
        let fits = exp >= 0 && sb.pow(exp as u32) >= target;
        if fits {
            break;
        }
        e -= 1;
    }
    rational_pow(s, e) - BigRational::one()
}

/// `dim(C_i) - g_i + min{m + ⌈m/(u-1)⌉, m + 1 + ⌈(u-1) n_{u-1}/u⌉}`, a lower
/// bound on `d_m(C_i⊥)` for level-i codes of the second tower.
pub fn brasamoros_finite_bound(
    q: u64,
    i: u32,
    u: u64,
    m: u64,
    dim: u64,
    genus: &BigUint,
) -> Result<BigInt, AsymptoticError> {
    let s = exact_sqrt(q).ok_or(AsymptoticError::NotSquare(q))?;
    if u < 2 {
        return Err(AsymptoticError::HypothesisViolated("u > 1".into()));
    }
    let m_big = BigInt::from(m);
    let first = &m_big + ceil_div(&BigRational::new(m_big.clone(), BigInt::from(u - 1)));
    let n_term = brasamoros_n(s, i, u - 1) * BigRational::new(BigInt::from(u - 1), BigInt::from(u));
    let second = &m_big + 1 + ceil_div(&n_term);
    Ok(BigInt::from(dim) - BigInt::from(genus.clone()) + first.min(second))
}

/// Code length `n_i = q^{(i+1)/2} - q^{i/2}` used with the finite bound.
pub fn brasamoros_length(q: u64, i: u32) -> Result<BigUint, AsymptoticError> {
    let s = BigUint::from(exact_sqrt(q).ok_or(AsymptoticError::NotSquare(q))?);
    Ok(s.pow(i + 1) - s.pow(i))
}

/// Parses `0.35`, `7/20` or `3` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, AsymptoticError> {
    let bad = || AsymptoticError::BadNumber(text.to_string());
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let v = BigRational::new(num, den);
    Ok(if neg { -v } else { v })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `1/(√q - 1)` exactly.
pub fn a_of(q: u64) -> Result<BigRational, AsymptoticError> {
    let s = exact_sqrt(q).ok_or(AsymptoticError::NotSquare(q))?;
    if s < 2 {
        return Err(AsymptoticError::NotSquare(q));
    }
    Ok(rat(1, s as i64 - 1))
}

/// `a_of` for the region comparisons, which only make sense from q = 9 on
/// (at q = 4 the closed-form length exceeds 1).
fn comparison_a(q: u64) -> Result<BigRational, AsymptoticError> {
    let a = a_of(q)?;
    if q < 9 {
        return Err(AsymptoticError::HypothesisViolated("q >= 9".into()));
    }
    Ok(a)
}

/// An open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

/// ρ-interval on which the `1 - R + 2ρ - a` bound is not implied by the
/// other two general bounds:
/// `(1 - R - a)/(q-1) < ρ < q a/(q-1) - R/(q-1)`.
pub fn comparison_prop61(q: u64, r: &BigRational) -> Result<Interval, AsymptoticError> {
    let a = comparison_a(q)?;
    let q1 = int(q - 1);
    Ok(Interval {
        lo: (BigRational::one() - r - &a) / &q1,
        hi: (int(q) * &a - r) / &q1,
    })
}

/// `(q - √q + 2) / ((q-1)(√q - 1))`, the R-independent length of the
/// interval above.
pub fn prop61_length(q: u64) -> Result<BigRational, AsymptoticError> {
    let s = exact_sqrt(q).ok_or(AsymptoticError::NotSquare(q))?;
    Ok(rat((q - s + 2) as i64, ((q - 1) * (s - 1)) as i64))
}

/// V-interval on which the `1 - R + ρ - V` bound can beat the other three:
/// `(R - a)/(2(q-1)) < V < min{a, q a/(q-1) - (1-R)/(q-1)}`.
pub fn comparison_prop62(q: u64, r: &BigRational) -> Result<Interval, AsymptoticError> {
    let a = comparison_a(q)?;
    let q1 = int(q - 1);
    let upper = (int(q) * &a - (BigRational::one() - r)) / &q1;
    Ok(Interval {
        lo: (r - &a) / (int(2) * &q1),
        hi: a.clone().min(upper),
    })
}

/// For fixed V, the ρ-interval
/// `max{a - 2V, (1 - R - a)/(q-1)} < ρ < a - V`.
pub fn prop62_rho_interval(
    q: u64,
    r: &BigRational,
    v: &BigRational,
) -> Result<Interval, AsymptoticError> {
    let a = a_of(q)?;
    let q1 = int(q - 1);
    let lo = (&a - int(2) * v).max((BigRational::one() - r - &a) / &q1);
    Ok(Interval { lo, hi: &a - v })
}

/// `(q - √q + 1) / ((q-1)(√q - 1))`, a lower bound on the V-interval length
/// for every `0 <= R <= 1 - a`.
pub fn prop62_min_length(q: u64) -> Result<BigRational, AsymptoticError> {
    let s = exact_sqrt(q).ok_or(AsymptoticError::NotSquare(q))?;
    Ok(rat((q - s + 1) as i64, ((q - 1) * (s - 1)) as i64))
}

/// Which construction theorem the deficiencies come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinalTheorem {
    /// Optimal deficiency from the general tower bound with Singleton equality.
    OptimalTower = 1,
    /// General tower bound from the `d_1` based GHW estimate.
    GeneralTower = 2,
    /// Second Garcia-Stichtenoth tower, `1 - R + 2ρ - a` bound.
    SemigroupDouble = 3,
    /// Second Garcia-Stichtenoth tower, `1 - R + ρ - V` bound.
    SemigroupShift = 4,
}

impl FinalTheorem {
    pub fn from_index(i: u32) -> Option<Self> {
        match i {
            1 => Some(Self::OptimalTower),
            2 => Some(Self::GeneralTower),
            3 => Some(Self::SemigroupDouble),
            4 => Some(Self::SemigroupShift),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FinalQuery {
    pub theorem: FinalTheorem,
    pub q: u64,
    pub r1: BigRational,
    pub r2: BigRational,
    pub eps1: BigRational,
    pub eps2: BigRational,
    pub v: Option<BigRational>,
    pub ihara_override: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinalParams {
    pub lambda1: BigRational,
    pub lambda2: BigRational,
    /// `Λ_j >= -ε_j L`, the optimum allowed by the threshold bounds.
    pub floor_ok: bool,
}

fn require(cond: bool, what: &str) -> Result<(), AsymptoticError> {
    if cond {
        Ok(())
    } else {
        Err(AsymptoticError::HypothesisViolated(what.to_string()))
    }
}

/// Deficiencies `(Λ1, Λ2)` of the scheme sequences built from one-point AG
/// code pairs, after checking the theorem's hypotheses.
pub fn final_params(query: &FinalQuery) -> Result<FinalParams, AsymptoticError> {
    let FinalQuery {
        theorem,
        q,
        r1,
        r2,
        eps1,
        eps2,
        v,
        ihara_override,
    } = query;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let l = r1 - r2;
    require(&zero <= r2 && r2 < r1 && r1 <= &one, "0 <= R2 < R1 <= 1")?;
    require(&zero <= eps1 && eps1 <= &one, "0 <= eps1 <= 1")?;
    require(&zero <= eps2 && eps2 <= &one, "0 <= eps2 <= 1")?;
    let q1 = int(q - 1);
    let (lambda1, lambda2) = match theorem {
        FinalTheorem::OptimalTower | FinalTheorem::GeneralTower => {
            let inv_a = one.clone() / ihara(*q, *ihara_override)?.as_rational();
            if *theorem == FinalTheorem::OptimalTower {
                require(eps1 == eps2, "eps1 = eps2")?;
                let el = eps1 * &l;
                require(inv_a <= *r1, "1/A(q) <= R1")?;
                let lower_l = zero.clone().max(r1 - &one + &inv_a);
                require(lower_l <= l, "max{0, R1 - 1 + 1/A(q)} <= L")?;
                let m = r1.clone().min(&one - r2);
                require(
                    el >= int(*q) / &q1 * &inv_a - m / &q1,
                    "eps L >= q/(q-1) 1/A(q) - 1/(q-1) min{R1, 1 - R2}",
                )?;
                (-el.clone(), -el)
            } else {
                let cap = r1 / &l - &one;
                require(eps1 <= &cap && eps2 <= &cap, "eps1, eps2 <= R1/L - 1")?;
                let shared = int(*q) / &q1 * &inv_a;
                (
                    -(r2 / &q1) + &shared - eps1 * &l,
                    -((&one - r1) / &q1) + &shared - eps2 * &l,
                )
            }
        }
        FinalTheorem::SemigroupDouble | FinalTheorem::SemigroupShift => {
            let a = a_of(*q)?;
            require(eps1 == eps2, "eps1 = eps2")?;
            let el = eps1 * &l;
            require(&zero < r2, "0 < R2")?;
            require(*r1 <= &one - &a, "R1 <= 1 - 1/(sqrt(q) - 1)")?;
            require(*r2 >= a, "R2 >= 1/(sqrt(q) - 1)")?;
            if *theorem == FinalTheorem::SemigroupDouble {
                require(el <= a, "eps L <= 1/(sqrt(q) - 1)")?;
                let lam = -(int(2) * &el) + &a;
                (lam.clone(), lam)
            } else {
                let v = v
                    .as_ref()
                    .ok_or_else(|| AsymptoticError::HypothesisViolated("V is required".into()))?;
                require(&zero <= v && *v <= a, "0 <= V <= 1/(sqrt(q) - 1)")?;
                require(
                    el >= zero.clone().max(&a - int(2) * v),
                    "eps L >= max{0, 1/(sqrt(q) - 1) - 2V}",
                )?;
                let lam = -el + v;
                (lam.clone(), lam)
            }
        }
    };
    let floor_ok = lambda1 >= -(eps1 * &l) && lambda2 >= -(eps2 * &l);
    Ok(FinalParams {
        lambda1,
        lambda2,
        floor_ok,
    })
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, AsymptoticError> {
    let bad = || AsymptoticError::BadGrid(text.to_string());
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match nums[..] {
        [x] => Ok(vec![x]),
        [start, stop, step] if step > 0.0 && stop >= start => {
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|k| start + k as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}

/// One sweep row: every bound at `(R, ρ, V)` and the best applicable one.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub q: u64,
    pub r: f64,
    pub rho: f64,
    pub v: f64,
    pub bounds: Vec<BoundResult>,
    pub best: BoundResult,
}

pub fn evaluate_all(q: u64, a: f64, r: f64, rho: f64, v: f64) -> Vec<BoundResult> {
    let mut out = vec![
        tsfasman_bound(r, rho, a),
        bound_thm57(r, rho, a, q),
        bound_thm58(r, rho, a, q),
    ];
    if exact_sqrt(q).is_some() {
        out.push(bound_thm59(r, rho, q).unwrap());
        out.push(bound_thm510(r, rho, v, q).unwrap());
    }
    out
}

/// Largest applicable δ; ties go to the earlier tag.
pub fn best_bound(bounds: &[BoundResult]) -> Option<BoundResult> {
    bounds
        .iter()
        .filter(|b| b.applicable)
        .fold(None, |best: Option<BoundResult>, b| match best {
            Some(cur) if b.delta <= cur.delta + BOUNDARY_TOL => Some(cur),
            _ => Some(*b),
        })
}

pub fn sweep(q: u64, a: &IharaValue, rs: &[f64], rhos: &[f64], vs: &[f64]) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &r in rs {
        for &rho in rhos {
            if rho > r + BOUNDARY_TOL {
                continue;
            }
            for &v in vs {
                let bounds = evaluate_all(q, a.value, r, rho, v);
                if let Some(best) = best_bound(&bounds) {
                    rows.push(SweepRow {
                        q,
                        r,
                        rho,
                        v,
                        bounds,
                        best,
                    });
                }
            }
        }
    }
    rows
}

pub const SWEEP_HEADER: &str = "q,R,rho,V,tsfasman,thm57,thm58,thm59,thm510,best,best_tag,clamped";

/// Formats a real with 12 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap();
    let plain = format!("{v}");
    if plain.len() <= 20 {
        plain
    } else {
        s
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let cell = |tag: BoundTag| {
            row.bounds
                .iter()
                .find(|b| b.tag == tag && b.applicable)
                .map(|b| fmt_real(b.delta))
                .unwrap_or_default()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.q,
            fmt_real(row.r),
            fmt_real(row.rho),
            fmt_real(row.v),
            cell(BoundTag::Tsfasman),
            cell(BoundTag::Thm57),
            cell(BoundTag::Thm58),
            cell(BoundTag::Thm59),
            cell(BoundTag::Thm510),
            fmt_real(row.best.delta),
            row.best.tag.name(),
            row.best.clamped,
        );
    }
    out
}

/// Converts an exact rational to f64 for display.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `p/q` (or `p` for integers).
pub fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
