//! Linear ramp secret sharing schemes built from nested code pairs.
//!
//! A secret `s ∈ F_q^ℓ` is shared as `c = ψ(s) + c2` with `c2` uniform in
//! C2 and `ψ(s) = s W` for a fixed complement W of C2 in C1. Information
//! quantities are measured in q-bits by enumerating the full joint
//! distribution of secret and randomness.

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, FieldSpec, Matrix, NestedCodePair};
use crate::weights::{rdlp_profile, WeightError};
use crate::TooLarge;

/// Default cap on `q^{k1}` for the information computations.
pub const MI_BUDGET: u64 = 10_000_000;
/// Distance from an integer tolerated in measured mutual information.
pub const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("supplied randomness is not a codeword of C2")]
    BadRandomness,
    #[error("shares are inconsistent with every codeword of C1")]
    Inconsistent,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("mutual information {value} is not within {tol} of an integer")]
    NonIntegral { value: f64, tol: f64 },
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RampScheme {
    pair: NestedCodePair,
    w: Matrix,
}

/// Scheme with the canonical complement of C2 in C1.
pub fn build_scheme(pair: NestedCodePair) -> RampScheme {
    let w = pair.complement();
    RampScheme { pair, w }
}

/// Result of reconstructing from a subset of shares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Exact(Vec<Elem>),
    /// The candidate secrets form `particular + span(directions)`.
    Underdetermined {
        particular: Vec<Elem>,
        directions: Vec<Vec<Elem>>,
        known_qbits: usize,
    },
}

impl RampScheme {
    pub fn pair(&self) -> &NestedCodePair {
        &self.pair
    }

    pub fn complement(&self) -> &Matrix {
        &self.w
    }

    pub fn field(&self) -> &FieldSpec {
        self.pair.field()
    }

    pub fn length(&self) -> usize {
        self.pair.length()
    }

    pub fn ell(&self) -> usize {
        self.pair.ell()
    }

    pub fn k2(&self) -> usize {
        self.pair.c2().dimension()
    }

    fn check_secret(&self, s: &[Elem]) -> Result<(), SchemeError> {
        if s.len() != self.ell() {
            return Err(SchemeError::Shape(format!(
                "secret has {} symbols, expected {}",
                s.len(),
                self.ell()
            )));
        }
        Ok(())
    }

    /// `ψ(s) + c2` for an explicit codeword `c2 ∈ C2`.
    pub fn share(&self, s: &[Elem], c2: &[Elem]) -> Result<Vec<Elem>, SchemeError> {
        self.check_secret(s)?;
        if c2.len() != self.length() || !self.pair.c2().contains(c2) {
            return Err(SchemeError::BadRandomness);
        }
        let f = self.field();
        Ok(self
            .w
            .left_mul(s)
            .iter()
            .zip(c2)
            .map(|(&a, &b)| f.add(a, b))
            .collect())
    }

    /// `ψ(s) + r G2` for coefficients `r ∈ F_q^{k2}`.
    pub fn share_with_randomness(&self, s: &[Elem], r: &[Elem]) -> Result<Vec<Elem>, SchemeError> {
        if r.len() != self.k2() {
            return Err(SchemeError::Shape(format!(
                "randomness has {} symbols, expected {}",
                r.len(),
                self.k2()
            )));
        }
        let c2 = if self.k2() == 0 {
            vec![0; self.length()]
        } else {
            self.pair.c2().encode(r)
        };
        self.share(s, &c2)
    }

    pub fn share_random<R: Rng + ?Sized>(
        &self,
        s: &[Elem],
        rng: &mut R,
    ) -> Result<Vec<Elem>, SchemeError> {
        let q = self.field().order();
        let r: Vec<Elem> = (0..self.k2())
            .map(|_| rng.random_range(0..q) as Elem)
            .collect();
        self.share_with_randomness(s, &r)
    }

    /// Recovers what the shares at `indices` (0-based) determine about the secret.
    pub fn reconstruct(
        &self,
        indices: &[usize],
        values: &[Elem],
    ) -> Result<Reconstruction, SchemeError> {
        if indices.len() != values.len() {
            return Err(SchemeError::Shape("index and value counts differ".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.length()) {
            return Err(SchemeError::Shape(format!("index {bad} out of range")));
        }
        let ell = self.ell();
        // rows: secret part first, then C2
        let basis = self.w.stack(self.pair.c2().generator());
        let restricted = basis.select_columns(indices);
        let (x, kernel) = restricted
            .solve_left(values)
            .ok_or(SchemeError::Inconsistent)?;
        let particular = x[..ell].to_vec();
        let projected: Vec<Vec<Elem>> = kernel
            .row_vecs()
            .into_iter()
            .map(|r| r[..ell].to_vec())
            .collect();
        let span = Matrix::from_rows(self.field(), ell, &projected)
            .unwrap()
            .rref();
        if span.rank == 0 {
            return Ok(Reconstruction::Exact(particular));
        }
        let directions = span.matrix.row_vecs();
        // reduce the particular solution against the directions so the answer is canonical
        let particular = span.matrix.rref_reduce(&span.pivots, &particular);
        Ok(Reconstruction::Underdetermined {
            particular,
            directions,
            known_qbits: ell - span.rank,
        })
    }

    /// All `q^{k1}` share vectors, ordered with the secret index major.
    fn all_share_vectors(&self, budget: u64) -> Result<Vec<Vec<Elem>>, SchemeError> {
        let q = self.field().order() as u64;
        let k1 = self.pair.c1().dimension() as u32;
        let total = q.checked_pow(k1).filter(|&t| t <= budget);
        let Some(_) = total else {
            return Err(TooLarge::new(format!("{q}^{k1} share vectors"), budget).into());
        };
        let f = self.field();
        let secrets = span_all(f, &self.w);
        let noise = span_all(f, self.pair.c2().generator());
        let mut out = Vec::with_capacity(secrets.len() * noise.len());
        for s in &secrets {
            for r in &noise {
                out.push(s.iter().zip(r).map(|(&a, &b)| f.add(a, b)).collect());
            }
        }
        Ok(out)
    }
}

/// Every vector `x M` in message order (first row's coefficient most significant).
fn span_all(f: &FieldSpec, m: &Matrix) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![0; m.cols()]];
    for r in 0..m.rows() {
        let row = m.row(r);
        let mut next = Vec::with_capacity(out.len() * f.order());
        for v in &out {
            for a in f.elements() {
                next.push(
                    v.iter()
                        .zip(row)
                        .map(|(&x, &y)| f.add(x, f.mul(a, y)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

/// Entropy (in q-bits) of the empirical distribution of `keys`, each key
/// equally likely. `space` bounds the key values.
struct EntropyCounter {
    counts: Vec<u32>,
    touched: Vec<usize>,
    /// `c ln c` for every count that can occur.
    c_ln_c: Vec<f64>,
    ln_q: f64,
}

const ARRAY_COUNT_LIMIT: u64 = 1 << 22;

impl EntropyCounter {
    fn new(q: usize, max_count: usize) -> Self {
        Self {
            counts: Vec::new(),
            touched: Vec::new(),
            c_ln_c: (0..=max_count)
                .map(|c| {
                    if c == 0 {
                        0.0
                    } else {
                        c as f64 * (c as f64).ln()
                    }
                })
                .collect(),
            ln_q: (q as f64).ln(),
        }
    }

    fn entropy(&mut self, keys: &[u64], space: u64) -> f64 {
        let total = keys.len();
        let sum_c_ln_c = if space <= ARRAY_COUNT_LIMIT {
            if self.counts.len() < space as usize {
                self.counts.resize(space as usize, 0);
            }
            for &k in keys {
                let slot = &mut self.counts[k as usize];
                if *slot == 0 {
                    self.touched.push(k as usize);
                }
                *slot += 1;
            }
            let mut acc = 0.0;
            for &k in &self.touched {
                acc += self.c_ln_c[self.counts[k] as usize];
                self.counts[k] = 0;
            }
            self.touched.clear();
            acc
        } else {
            let mut sorted = keys.to_vec();
            sorted.sort_unstable();
            sorted
                .chunk_by(|a, b| a == b)
                .map(|run| self.c_ln_c[run.len()])
                .sum()
        };
        let n = total as f64;
        (n.ln() - sum_c_ln_c / n) / self.ln_q
    }
}

/// Exhaustively measured entropies of every share subset.
#[derive(Clone, Debug)]
pub struct EntropyTable {
    pub n: usize,
    /// `H(M)`, `H(X)` and `H(X | M)` in q-bits.
    pub h_secret: f64,
    pub h_shares: f64,
    pub h_shares_given_secret: f64,
    /// `H(X_I)` indexed by the bitmask of I.
    pub h_subset: Vec<f64>,
    /// `H(X_I | M)` indexed by the bitmask of I.
    pub h_subset_given_secret: Vec<f64>,
}

impl EntropyTable {
    /// `I(X_I; M) = H(X_I) - H(X_I | M)`.
    pub fn mutual_information(&self, mask: u32) -> f64 {
        self.h_subset[mask as usize] - self.h_subset_given_secret[mask as usize]
    }
}

fn key_space(q: u64, len: usize) -> u64 {
    q.saturating_pow(len as u32)
}

struct SubsetWalker<'a> {
    shares: &'a [Vec<Elem>],
    q: u64,
    block: usize,
    counter: EntropyCounter,
    h: Vec<f64>,
    h_given: Vec<f64>,
}

impl SubsetWalker<'_> {
    fn record(&mut self, mask: u32, keys: &[u64], len: usize) {
        let space = key_space(self.q, len);
        self.h[mask as usize] = self.counter.entropy(keys, space);
        let blocks = keys.len() / self.block;
        let mut acc = 0.0;
        for b in 0..blocks {
            acc += self
                .counter
                .entropy(&keys[b * self.block..(b + 1) * self.block], space);
        }
        self.h_given[mask as usize] = acc / blocks as f64;
    }

    fn visit(&mut self, mask: u32, keys: &[u64], len: usize, start: usize) {
        let n = self.shares[0].len();
        let scale = self.q.pow(len as u32);
        let mut next = vec![0u64; keys.len()];
        for j in start..n {
            for (c, k) in next.iter_mut().enumerate() {
                *k = keys[c] + self.shares[c][j] as u64 * scale;
            }
            let child = mask | (1 << j);
            self.record(child, &next, len + 1);
            if j + 1 < n {
                self.visit(child, &next, len + 1, j + 1);
            }
        }
    }
}

/// Entropies of all `2^n` share subsets from the exhaustive joint
/// distribution of (secret, randomness).
pub fn entropy_table(scheme: &RampScheme, budget: u64) -> Result<EntropyTable, SchemeError> {
    let n = scheme.length();
    let q = scheme.field().order() as u64;
    if n > 24 || (q as f64).powi(n as i32) >= 2f64.powi(63) {
        return Err(TooLarge::new(format!("subsets of {n} shares over GF({q})"), budget).into());
    }
    let shares = scheme.all_share_vectors(budget)?;
    let work = (shares.len() as u64).saturating_mul(1 << n);
    if work > budget {
        return Err(TooLarge::new(work, budget).into());
    }
    let block = key_space(q, scheme.k2()) as usize;
    let mut walker = SubsetWalker {
        shares: &shares,
        q,
        block,
        counter: EntropyCounter::new(q as usize, shares.len()),
        h: vec![0.0; 1 << n],
        h_given: vec![0.0; 1 << n],
    };
    let keys = vec![0u64; shares.len()];
    walker.record(0, &keys, 0);
    walker.visit(0, &keys, 0, 0);
    let secret_keys: Vec<u64> = (0..shares.len()).map(|i| (i / block) as u64).collect();
    let h_secret = walker
        .counter
        .entropy(&secret_keys, key_space(q, scheme.ell()));
    let full = (1usize << n) - 1;
    // distinct messages give distinct share vectors, so X determines (M, S)
    let h_shares = walker.h[full];
    let h_shares_given_secret = walker.h_given[full];
    Ok(EntropyTable {
        n,
        h_secret,
        h_shares,
        h_shares_given_secret,
        h_subset: walker.h,
        h_subset_given_secret: walker.h_given,
    })
}

/// `I(X_I; M)` in q-bits for one 0-based index set, by exhaustive enumeration.
pub fn mutual_information_exhaustive(
    scheme: &RampScheme,
    indices: &[usize],
    budget: u64,
) -> Result<f64, SchemeError> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= scheme.length()) {
        return Err(SchemeError::Shape(format!("index {bad} out of range")));
    }
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let q = scheme.field().order() as u64;
    let shares = scheme.all_share_vectors(budget)?;
    let keys: Vec<u64> = if (q as f64).powi(idx.len() as i32) < 2f64.powi(63) {
        shares
            .iter()
            .map(|c| idx.iter().rev().fold(0u64, |acc, &i| acc * q + c[i] as u64))
            .collect()
    } else {
        return Err(TooLarge::new(format!("{q}^{} share patterns", idx.len()), budget).into());
    };
    let block = key_space(q, scheme.k2()) as usize;
    let space = key_space(q, idx.len());
    let mut counter = EntropyCounter::new(q as usize, shares.len());
    let h = counter.entropy(&keys, space);
    let blocks = keys.len() / block;
    let h_given: f64 = (0..blocks)
        .map(|b| counter.entropy(&keys[b * block..(b + 1) * block], space))
        .sum::<f64>()
        / blocks as f64;
    Ok(h - h_given)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdProfile {
    /// `t_1..t_ℓ`.
    pub t: Vec<usize>,
    /// `r_1..r_ℓ`.
    pub r: Vec<usize>,
}

impl ThresholdProfile {
    /// `t_m <= k2 + m - 1`, `r_m >= k2 + m`, `t_m < r_m`, both non-decreasing.
    pub fn satisfies_singleton_bounds(&self, k2: usize) -> bool {
        let ok_each = self
            .t
            .iter()
            .zip(&self.r)
            .enumerate()
            .all(|(i, (&t, &r))| t < k2 + i + 1 && r >= k2 + i + 1 && t < r);
        ok_each
            && self.t.windows(2).all(|w| w[0] <= w[1])
            && self.r.windows(2).all(|w| w[0] <= w[1])
    }
}

fn rghw_from_profile(profile: &[usize], m: usize) -> usize {
    profile.iter().position(|&k| k >= m).map(|i| i + 1).unwrap()
}

/// `t_m = M_m(C2⊥, C1⊥) - 1` and `r_m = n - M_{ℓ-m+1}(C1, C2) + 1`.
pub fn thresholds(scheme: &RampScheme, budget: u64) -> Result<ThresholdProfile, SchemeError> {
    let n = scheme.length();
    let ell = scheme.ell();
    let primal = rdlp_profile(scheme.pair(), budget)?;
    let dual = rdlp_profile(&scheme.pair().dual(), budget)?;
    let t = (1..=ell).map(|m| rghw_from_profile(&dual, m) - 1).collect();
    let r = (1..=ell)
        .map(|m| n + 1 - rghw_from_profile(&primal, ell - m + 1))
        .collect();
    Ok(ThresholdProfile { t, r })
}

fn rounded_mi(table: &EntropyTable, mask: u32) -> Result<usize, SchemeError> {
    let v = table.mutual_information(mask);
    let r = v.round();
    if (v - r).abs() > INTEGRALITY_TOL {
        return Err(SchemeError::NonIntegral {
            value: v,
            tol: INTEGRALITY_TOL,
        });
    }
    Ok(r as usize)
}

/// Thresholds from their information-theoretic definitions: `t_m` is the
/// largest size at which no share set carries m q-bits, `r_m` the smallest
/// size at which every share set does.
pub fn thresholds_by_definition(
    table: &EntropyTable,
    ell: usize,
) -> Result<ThresholdProfile, SchemeError> {
    let n = table.n;
    let mut min_by_size = vec![usize::MAX; n + 1];
    let mut max_by_size = vec![0usize; n + 1];
    for mask in 0..(1u32 << n) {
        let size = mask.count_ones() as usize;
        let mi = rounded_mi(table, mask)?;
        min_by_size[size] = min_by_size[size].min(mi);
        max_by_size[size] = max_by_size[size].max(mi);
    }
    let t = (1..=ell)
        .map(|m| {
            (0..=n)
                .rev()
                .find(|&s| (0..=s).all(|x| max_by_size[x] < m))
                .unwrap()
        })
        .collect();
    let r = (1..=ell)
        .map(|m| (0..=n).find(|&s| min_by_size[s] >= m).unwrap())
        .collect();
    Ok(ThresholdProfile { t, r })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdVerification {
    pub via_rghw: ThresholdProfile,
    pub by_definition: ThresholdProfile,
    /// Largest distance of a measured mutual information from an integer.
    pub max_integrality_error: f64,
}

impl ThresholdVerification {
    pub fn agree(&self) -> bool {
        self.via_rghw == self.by_definition
    }
}

pub fn verify_thresholds(
    scheme: &RampScheme,
    budget: u64,
) -> Result<ThresholdVerification, SchemeError> {
    let table = entropy_table(scheme, budget)?;
    let max_integrality_error = (0..(1u32 << table.n))
        .map(|m| {
            let v = table.mutual_information(m);
            (v - v.round()).abs()
        })
        .fold(0.0, f64::max);
    Ok(ThresholdVerification {
        via_rghw: thresholds(scheme, budget)?,
        by_definition: thresholds_by_definition(&table, scheme.ell())?,
        max_integrality_error,
    })
}

/// Interval for `r_m - t_{m'}` for pairs of AG codes from a genus-g function
/// field. Each threshold meets its Singleton-type value when the relevant
/// weight index exceeds g (`m <= ℓ - g` for `r_m`, `m' > g` for `t_{m'}`),
/// otherwise it may be off by up to g.
pub fn threshold_gap_bounds(
    g: i64,
    ell: i64,
    m: i64,
    m_prime: i64,
) -> Result<(i64, i64), SchemeError> {
    if !(1 <= m && m <= ell && 1 <= m_prime && m_prime <= ell && g >= 0) {
        return Err(SchemeError::OutOfRange(format!(
            "need 1 <= m, m' <= ell and g >= 0, got g={g} ell={ell} m={m} m'={m_prime}"
        )));
    }
    let lower = m - m_prime + 1;
    let mut upper = lower;
    if ell - m + 1 <= g {
        upper += g;
    }
    if m_prime <= g {
        upper += g;
    }
    Ok((lower, upper))
}

/// `min #I` with `H(X_I) = H(X)`.
pub fn appendix_a_mu(table: &EntropyTable) -> usize {
    (0..(1u32 << table.n))
        .filter(|&m| (table.h_subset[m as usize] - table.h_shares).abs() <= INTEGRALITY_TOL)
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AppendixAReport {
    pub mu: usize,
    /// `μ = ℓ + k2`.
    pub mu_matches_dimension: bool,
    /// Minimum over I of `I(X_I; M) - (H(X_I) - H(X | M))`.
    pub lemma_min_slack: f64,
    pub lemma_holds: bool,
    /// `μ - ℓ + m - 1 - t_m` for each m, with `t_m` from the definition.
    pub bound_slacks: Vec<i64>,
    pub bound_holds: bool,
}

pub fn appendix_a_bound_check(
    scheme: &RampScheme,
    budget: u64,
) -> Result<AppendixAReport, SchemeError> {
    let table = entropy_table(scheme, budget)?;
    let ell = scheme.ell();
    let mu = appendix_a_mu(&table);
    let lemma_min_slack = (0..(1u32 << table.n))
        .map(|m| {
            table.mutual_information(m) - (table.h_subset[m as usize] - table.h_shares_given_secret)
        })
        .fold(f64::INFINITY, f64::min);
    let profile = thresholds_by_definition(&table, ell)?;
    let h_m = table.h_secret.round() as i64;
    let bound_slacks: Vec<i64> = profile
        .t
        .iter()
        .enumerate()
        .map(|(i, &t)| mu as i64 - h_m + (i as i64 + 1) - 1 - t as i64)
        .collect();
    Ok(AppendixAReport {
        mu,
        mu_matches_dimension: mu == ell + scheme.k2(),
        lemma_min_slack,
        lemma_holds: lemma_min_slack >= -INTEGRALITY_TOL,
        bound_holds: bound_slacks.iter().all(|&s| s >= 0),
        bound_slacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::LinearCode;
    use crate::DEFAULT_BUDGET;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn rs(q: usize, points: &[u8], k: usize) -> LinearCode {
        let f = FieldSpec::new(q).unwrap();
        let rows: Vec<Vec<u8>> = (0..k)
            .map(|j| points.iter().map(|&x| f.pow(x, j as u64)).collect())
            .collect();
        LinearCode::from_rows(&f, points.len(), &rows).unwrap()
    }

    fn shamir() -> RampScheme {
        build_scheme(NestedCodePair::new(rs(5, &[1, 2, 3, 4], 2), rs(5, &[1, 2, 3, 4], 1)).unwrap())
    }

    /// Oracle: I(X_I; M) from a literal joint frequency table over
    /// (secret, share pattern), with plain f64 logs.
    fn mi_oracle(scheme: &RampScheme, idx: &[usize]) -> f64 {
        let f = scheme.field();
        let q = f.order();
        let mut joint: HashMap<(Vec<u8>, Vec<u8>), usize> = HashMap::new();
        let mut pattern: HashMap<Vec<u8>, usize> = HashMap::new();
        let secrets = span_all(f, &Matrix::identity(f, scheme.ell()));
        let noise = span_all(f, scheme.pair().c2().generator());
        for s in &secrets {
            for c2 in &noise {
                let c = scheme.share(s, c2).unwrap();
                let p: Vec<u8> = idx.iter().map(|&i| c[i]).collect();
                *joint.entry((s.clone(), p.clone())).or_default() += 1;
                *pattern.entry(p).or_default() += 1;
            }
        }
        let total = (secrets.len() * noise.len()) as f64;
        let ps = 1.0 / secrets.len() as f64;
        let mut mi = 0.0;
        for ((_, p), &c) in &joint {
            let pj = c as f64 / total;
            let px = pattern[p] as f64 / total;
            mi += pj * (pj / (ps * px)).log(q as f64);
        }
        mi
    }

    #[test]
    fn shamir_share_and_reconstruct() {
        let s = shamir();
        assert_eq!(s.ell(), 1);
        assert_eq!(s.share(&[0], &[0; 4]).unwrap(), vec![0; 4]);
        assert!(matches!(
            s.share(&[1], &[1, 2, 3, 4]),
            Err(SchemeError::BadRandomness)
        ));
        // W is the x-row reduced against the all-ones row
        let w = s.complement().row(0).to_vec();
        let expected: Vec<u8> = w.iter().map(|&a| (a + 2) % 5).collect();
        assert_eq!(s.share(&[1], &[2, 2, 2, 2]).unwrap(), expected);
        let c = s.share(&[3], &[4, 4, 4, 4]).unwrap();
        assert_eq!(
            s.reconstruct(&[0, 1, 2, 3], &c).unwrap(),
            Reconstruction::Exact(vec![3])
        );
        assert_eq!(
            s.reconstruct(&[1, 3], &[c[1], c[3]]).unwrap(),
            Reconstruction::Exact(vec![3])
        );
        match s.reconstruct(&[2], &[c[2]]).unwrap() {
            Reconstruction::Underdetermined {
                known_qbits,
                directions,
                ..
            } => {
                assert_eq!(known_qbits, 0);
                assert_eq!(directions.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let mut bad = c.clone();
        bad[0] = (bad[0] + 1) % 5;
        assert!(matches!(
            s.reconstruct(&[0, 1, 2, 3], &bad),
            Err(SchemeError::Inconsistent)
        ));
    }

    #[test]
    fn sharing_is_linear() {
        let c1 = rs(5, &[0, 1, 2, 3, 4], 4);
        let c2 = rs(5, &[0, 1, 2, 3, 4], 2);
        let s = build_scheme(NestedCodePair::new(c1, c2).unwrap());
        let f = s.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut v = || -> Vec<u8> { (0..2).map(|_| rng.random_range(0..5u8)).collect() };
            let (s1, s2, r1, r2) = (v(), v(), v(), v());
            let a = 3u8;
            let lin = |x: &[u8], y: &[u8]| -> Vec<u8> {
                x.iter()
                    .zip(y)
                    .map(|(&p, &q)| f.add(f.mul(a, p), q))
                    .collect()
            };
            let lhs = s
                .share_with_randomness(&lin(&s1, &s2), &lin(&r1, &r2))
                .unwrap();
            let rhs = lin(
                &s.share_with_randomness(&s1, &r1).unwrap(),
                &s.share_with_randomness(&s2, &r2).unwrap(),
            );
            assert_eq!(lhs, rhs);
            let full = s.share_with_randomness(&s1, &r1).unwrap();
            assert_eq!(
                s.reconstruct(&[0, 1, 2, 3, 4], &full).unwrap(),
                Reconstruction::Exact(s1.clone())
            );
        }
    }

    #[test]
    fn shamir_information() {
        let s = shamir();
        assert_eq!(
            mutual_information_exhaustive(&s, &[], DEFAULT_BUDGET).unwrap(),
            0.0
        );
        assert!(
            (mutual_information_exhaustive(&s, &[0, 1, 2, 3], DEFAULT_BUDGET).unwrap() - 1.0).abs()
                < 1e-12
        );
        assert!(
            mutual_information_exhaustive(&s, &[0], DEFAULT_BUDGET)
                .unwrap()
                .abs()
                < 1e-12
        );
        assert!(
            (mutual_information_exhaustive(&s, &[0, 1], DEFAULT_BUDGET).unwrap() - 1.0).abs()
                < 1e-12
        );
        let p = thresholds(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            p,
            ThresholdProfile {
                t: vec![1],
                r: vec![2]
            }
        );
        let v = verify_thresholds(&s, DEFAULT_BUDGET).unwrap();
        assert!(v.agree());
        assert!(v.max_integrality_error < 1e-12);
    }

    #[test]
    fn table_matches_literal_oracle() {
        let c1 = LinearCode::from_rows(
            &FieldSpec::new(3).unwrap(),
            5,
            &[
                vec![1, 0, 1, 2, 0],
                vec![0, 1, 1, 0, 2],
                vec![0, 0, 0, 1, 1],
            ],
        )
        .unwrap();
        let c2 =
            LinearCode::from_rows(&FieldSpec::new(3).unwrap(), 5, &[vec![1, 1, 2, 2, 2]]).unwrap();
        let s = build_scheme(NestedCodePair::new(c1, c2).unwrap());
        let table = entropy_table(&s, DEFAULT_BUDGET).unwrap();
        for mask in 0..32u32 {
            let idx: Vec<usize> = (0..5).filter(|i| mask & (1 << i) != 0).collect();
            let oracle = mi_oracle(&s, &idx);
            assert!(
                (table.mutual_information(mask) - oracle).abs() < 1e-9,
                "mask={mask}"
            );
            let direct = mutual_information_exhaustive(&s, &idx, DEFAULT_BUDGET).unwrap();
            assert!((direct - oracle).abs() < 1e-9);
        }
        assert!((table.h_secret - 2.0).abs() < 1e-12);
        assert!((table.h_shares - 3.0).abs() < 1e-12);
        assert!((table.h_shares_given_secret - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mds_pairs_meet_singleton_thresholds() {
        let pts = [0u8, 1, 2, 3, 4, 5, 6];
        for k1 in 2..=6 {
            for k2 in 1..k1 {
                let s =
                    build_scheme(NestedCodePair::new(rs(7, &pts, k1), rs(7, &pts, k2)).unwrap());
                let p = thresholds(&s, DEFAULT_BUDGET).unwrap();
                for m in 1..=s.ell() {
                    assert_eq!(p.t[m - 1], k2 + m - 1);
                    assert_eq!(p.r[m - 1], k2 + m);
                }
            }
        }
    }

    #[test]
    fn gap_bounds() {
        for m in 1..=4 {
            assert_eq!(threshold_gap_bounds(0, 4, m, m).unwrap(), (1, 1));
        }
        assert_eq!(threshold_gap_bounds(1, 2, 1, 1).unwrap(), (1, 2));
        assert_eq!(threshold_gap_bounds(1, 2, 2, 1).unwrap(), (2, 4));
        // g + 1 <= m <= ℓ - g
        assert_eq!(threshold_gap_bounds(2, 6, 3, 3).unwrap(), (1, 1));
        assert!(threshold_gap_bounds(1, 2, 3, 1).is_err());
        for g in 0..4 {
            for ell in 1..10 {
                for m in 1..=ell {
                    for mp in 1..=ell {
                        let (lo, hi) = threshold_gap_bounds(g, ell, m, mp).unwrap();
                        assert_eq!(lo, m - mp + 1);
                        assert!(hi <= m - mp + 2 * g + 1);
                        if ell >= 2 * g && m == mp {
                            assert!(hi <= g + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn appendix_a_examples() {
        let s = shamir();
        let r = appendix_a_bound_check(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.mu, 2);
        assert!(r.mu_matches_dimension && r.lemma_holds && r.bound_holds);
        assert_eq!(r.bound_slacks, vec![0]);
    }

    #[test]
    fn appendix_a_over_all_binary_pairs() {
        // every pair C2 ⊊ C1 ⊆ GF(2)^4 with C2 ≠ {0}, from all generator choices
        let f = FieldSpec::new(2).unwrap();
        let n = 4;
        let vectors: Vec<Vec<u8>> = (1..16u32)
            .map(|v| (0..n).map(|i| ((v >> i) & 1) as u8).collect())
            .collect();
        let mut seen = std::collections::HashSet::new();
        for a in 0..vectors.len() {
            for b in 0..vectors.len() {
                let c1 = LinearCode::from_rows(&f, n, &[vectors[a].clone(), vectors[b].clone()])
                    .unwrap();
                for c in 0..vectors.len() {
                    let c2 = LinearCode::from_rows(&f, n, &[vectors[c].clone()]).unwrap();
                    let Ok(pair) = NestedCodePair::new(c1.clone(), c2) else {
                        continue;
                    };
                    if !seen.insert(format!("{pair:?}")) {
                        continue;
                    }
                    let s = build_scheme(pair);
                    let r = appendix_a_bound_check(&s, DEFAULT_BUDGET).unwrap();
                    assert!(r.lemma_holds && r.bound_holds && r.mu_matches_dimension);
                    assert!(verify_thresholds(&s, DEFAULT_BUDGET).unwrap().agree());
                }
            }
        }
        assert!(seen.len() > 10);
    }

    #[test]
    fn budget_is_enforced() {
        let s = shamir();
        assert!(matches!(
            mutual_information_exhaustive(&s, &[0], 10),
            Err(SchemeError::TooLarge(_))
        ));
    }
}
