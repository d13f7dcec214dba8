//! Numerical semigroups and the lower bounds they give on (relative)
//! generalized Hamming weights of one-point algebraic geometric codes.

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::weights::combinations;
use crate::TooLarge;

/// Default cap on the number of index tuples visited by the tuple searches.
pub const TUPLE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generators {0:?} have gcd != 1, so the complement is infinite")]
    InfiniteGaps(Vec<u64>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

/// A numerical semigroup `H ⊆ ℕ0` with finite complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// Membership of `0..conductor`; everything from the conductor on is in H.
    below_conductor: Vec<bool>,
    genus: u64,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        let mut generators: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        generators.sort_unstable();
        generators.dedup();
        let gcd = generators.iter().fold(0u64, |a, &b| a.gcd(&b));
        if gcd != 1 {
            return Err(SemigroupError::InfiniteGaps(gens.to_vec()));
        }
        let smallest = generators[0] as usize;
        let mut member = vec![true];
        let mut run = 1;
        // once `smallest` consecutive integers are in H, all larger ones are
        while run < smallest {
            let x = member.len();
            let inside = generators
                .iter()
                .any(|&g| g as usize <= x && member[x - g as usize]);
            member.push(inside);
            run = if inside { run + 1 } else { 0 };
        }
        let conductor = member.iter().rposition(|&b| !b).map_or(0, |f| f + 1);
        member.truncate(conductor);
        let genus = member.iter().filter(|&&b| !b).count() as u64;
        Ok(Self {
            generators,
            below_conductor: member,
            genus,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        self.below_conductor
            .get(x as usize)
            .copied()
            .unwrap_or(true)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Smallest c with `[c, ∞) ⊆ H`.
    pub fn conductor(&self) -> u64 {
        self.below_conductor.len() as u64
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor())
            .filter(|&x| !self.contains(x as i64))
            .collect()
    }

    /// Elements of H up to and including `bound`.
    pub fn elements_up_to(&self, bound: i64) -> Vec<i64> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    /// `h_γ = #(H ∩ (0, γ])` and `h′_γ = #([γ, ∞) \ H)`.
    pub fn h_counts(&self, gamma: i64) -> (u64, u64) {
        (self.h(gamma), self.h_prime(gamma))
    }

    pub fn h(&self, gamma: i64) -> u64 {
        (1..=gamma).filter(|&x| self.contains(x)).count() as u64
    }

    /// For γ <= 0 this counts every gap.
    pub fn h_prime(&self, gamma: i64) -> u64 {
        (gamma.max(0)..self.conductor() as i64)
            .filter(|&x| !self.contains(x))
            .count() as u64
    }
}

/// Goppa-type bound on `d_m`: `n - k + m - g`, exact as `n - k + m` once `m > g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoppaBound {
    pub value: i64,
    pub exact: bool,
}

pub fn goppa_ghw_bound(n: i64, k: i64, g: i64, m: i64) -> GoppaBound {
    if m > g {
        GoppaBound {
            value: n - k + m,
            exact: true,
        }
    } else {
        GoppaBound {
            value: n - k + m - g,
            exact: false,
        }
    }
}

/// A bitset over an integer window `[lo, lo + len)`.
#[derive(Clone)]
struct WindowSet {
    words: Vec<u64>,
}

impl WindowSet {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_count(a: &[u64], b: &[u64]) -> u32 {
        a.iter().zip(b).map(|(x, y)| (x | y).count_ones()).sum()
    }

    fn or_into(dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
    }
}

/// Minimum of `#(S_{i_1} ∪ … ∪ S_{i_r})` over strictly increasing r-tuples
/// drawn from `sets`, by DFS with pruning on the running union size.
fn min_union(sets: &[WindowSet], r: usize) -> usize {
    let words = sets.first().map_or(1, |s| s.words.len());
    if r == 0 {
        return 0;
    }
    fn dfs(sets: &[WindowSet], start: usize, left: usize, acc: &mut Vec<u64>, best: &mut usize) {
        let size: u32 = acc.iter().map(|w| w.count_ones()).sum();
        if size as usize >= *best {
            return;
        }
        if left == 0 {
            *best = size as usize;
            return;
        }
        for i in start..=(sets.len() - left) {
            if WindowSet::union_count(acc, &sets[i].words) as usize >= *best {
                continue;
            }
            let saved = acc.clone();
            WindowSet::or_into(acc, &sets[i].words);
            dfs(sets, i + 1, left - 1, acc, best);
            *acc = saved;
        }
    }
    (0..=(sets.len() - r))
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![0u64; words];
            WindowSet::or_into(&mut acc, &sets[first].words);
            let mut best = usize::MAX;
            dfs(sets, first + 1, r - 1, &mut acc, &mut best);
            best
        })
        .min()
        .unwrap_or(0)
}

fn tuple_budget_check(choices: usize, r: usize, budget: u64) -> Result<(), SemigroupError> {
    let count = crate::counting::binomial(choices as u64, r as u64);
    if count > budget.into() {
        return Err(TooLarge::new(count, budget).into());
    }
    Ok(())
}

fn check_mus(mu1: i64, mu2: i64, m: usize) -> Result<(), SemigroupError> {
    if !(-1 <= mu2 && mu2 < mu1) {
        return Err(SemigroupError::Precondition(format!(
            "need -1 <= mu2 < mu1, got mu1={mu1} mu2={mu2}"
        )));
    }
    if m == 0 {
        return Err(SemigroupError::Precondition("need m >= 1".into()));
    }
    Ok(())
}

/// Lower bound on `M_m(C1, C2)` for `C_i = C_L(D, μ_i Q)`:
/// `n - μ1 + min #{α ∈ ∪_s (i_s + H) : α ∉ H}` over
/// `-(μ1-μ2)+1 <= i_1 < … < i_{m-1} <= -1`.
pub fn theorem44_primary_bound(
    h: &NumericalSemigroup,
    mu1: i64,
    mu2: i64,
    n: i64,
    m: usize,
    budget: u64,
) -> Result<i64, SemigroupError> {
    check_mus(mu1, mu2, m)?;
    if mu1 >= n {
        return Err(SemigroupError::Precondition(format!(
            "need mu1 < n, got mu1={mu1} n={n}"
        )));
    }
    let lo = -(mu1 - mu2) + 1;
    let indices: Vec<i64> = (lo..=-1).collect();
    if m - 1 > indices.len() {
        return Err(SemigroupError::Precondition(format!(
            "no {}-tuples in [{lo}, -1]",
            m - 1
        )));
    }
    tuple_budget_check(indices.len(), m - 1, budget)?;
    // Every element of i + H is >= i >= lo, and everything >= c lies in H,
    // so the non-members of the union all sit in [lo, c - 1].
    let c = h.conductor() as i64;
    let len = (c - lo).max(0) as usize;
    let sets: Vec<WindowSet> = indices
        .iter()
        .map(|&i| {
            let mut s = WindowSet::new(len);
            for alpha in lo..c {
                if !h.contains(alpha) && h.contains(alpha - i) {
                    s.insert((alpha - lo) as usize);
                }
            }
            s
        })
        .collect();
    Ok(n - mu1 + min_union(&sets, m - 1) as i64)
}

/// Lower bound on `M_m(C2⊥, C1⊥)`: `min #{α ∈ ∪_s (i_s + (μ1 - H)) : α ∈ H}`
/// over `-(μ1-μ2)+1 <= i_1 < … < i_m <= 0`.
pub fn theorem44_dual_bound(
    h: &NumericalSemigroup,
    mu1: i64,
    mu2: i64,
    m: usize,
    budget: u64,
) -> Result<i64, SemigroupError> {
    check_mus(mu1, mu2, m)?;
    let lo = -(mu1 - mu2) + 1;
    let indices: Vec<i64> = (lo..=0).collect();
    if m > indices.len() {
        return Err(SemigroupError::Precondition(format!(
            "no {m}-tuples in [{lo}, 0]"
        )));
    }
    tuple_budget_check(indices.len(), m, budget)?;
    // Elements of i + μ1 - H are <= μ1 and members of H are >= 0.
    let len = (mu1 + 1) as usize;
    let sets: Vec<WindowSet> = indices
        .iter()
        .map(|&i| {
            let mut s = WindowSet::new(len);
            for alpha in 0..=mu1 {
                if h.contains(alpha) && h.contains(mu1 + i - alpha) {
                    s.insert(alpha as usize);
                }
            }
            s
        })
        .collect();
    Ok(min_union(&sets, m) as i64)
}

/// `d_m(C_L(D, μQ)) >= n - k + 2m - c + h_{c-m}` for `μ < n`, `1 <= m <= min{k, g}`.
pub fn prop45_bound(
    h: &NumericalSemigroup,
    n: i64,
    k: i64,
    mu: i64,
    m: i64,
) -> Result<i64, SemigroupError> {
    let g = h.genus() as i64;
    let c = h.conductor() as i64;
    if !(mu < n && 1 <= m && m <= k.min(g)) {
        return Err(SemigroupError::Precondition(format!(
            "need mu < n and 1 <= m <= min(k, g), got mu={mu} n={n} m={m} k={k} g={g}"
        )));
    }
    let sharp = n - k + 2 * m - c + h.h(c - m) as i64;
    Ok(sharp.max(n - k + 2 * m - c))
}

/// `d_m(C_L(D, μQ)⊥) >= n - k⊥ + 2m - c + h′_{μ-c+m+1}` for `μ > 2g - 2`,
/// `1 <= m <= min{k⊥, g}`.
///
/// The h′ index is one past `μ - c + m`: `[0, γ]` holds `g - h′_{γ+1}` gaps,
/// not `g - h′_γ`. With index `μ - c + m` the bound overshoots, e.g. on the
/// Hermitian [8, 2] code over GF(4) whose dual has `d_1 = 2`.
pub fn prop46_bound(
    h: &NumericalSemigroup,
    n: i64,
    k_perp: i64,
    mu: i64,
    m: i64,
) -> Result<i64, SemigroupError> {
    let g = h.genus() as i64;
    let c = h.conductor() as i64;
    if !(mu > 2 * g - 2 && 1 <= m && m <= k_perp.min(g)) {
        return Err(SemigroupError::Precondition(format!(
            "need mu > 2g - 2 and 1 <= m <= min(k_perp, g), got mu={mu} m={m} k_perp={k_perp} g={g}"
        )));
    }
    Ok(n - k_perp + 2 * m - c + h.h_prime(mu - c + m + 1) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    Goppa,
    Semigroup,
}

/// The larger of the Goppa bound and the semigroup bound, with the winner.
/// Ties go to the Goppa bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TaggedBound {
    pub value: i64,
    pub exact: bool,
    pub source: BoundSource,
}

fn best_of(goppa: GoppaBound, semigroup: Option<i64>) -> TaggedBound {
    match semigroup {
        Some(v) if v > goppa.value && !goppa.exact => TaggedBound {
            value: v,
            exact: false,
            source: BoundSource::Semigroup,
        },
        _ => TaggedBound {
            value: goppa.value,
            exact: goppa.exact,
            source: BoundSource::Goppa,
        },
    }
}

/// Best available bound on `d_m(C_L(D, μQ))` with `k = dim`.
pub fn best_primary_bound(h: &NumericalSemigroup, n: i64, k: i64, mu: i64, m: i64) -> TaggedBound {
    let goppa = goppa_ghw_bound(n, k, h.genus() as i64, m);
    best_of(goppa, prop45_bound(h, n, k, mu, m).ok())
}

/// Best available bound on `d_m(C_L(D, μQ)⊥)` with `k⊥ = dim` of the dual.
pub fn best_dual_bound(
    h: &NumericalSemigroup,
    n: i64,
    k_perp: i64,
    mu: i64,
    m: i64,
) -> TaggedBound {
    let goppa = goppa_ghw_bound(n, k_perp, h.genus() as i64, m);
    best_of(goppa, prop46_bound(h, n, k_perp, mu, m).ok())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionKind {
    Exact,
    AtLeast,
    AtMost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionInfo {
    pub bound: i64,
    pub kind: DimensionKind,
    /// The code is all of `F_q^n`.
    pub full_space: bool,
}

/// Dimension of `C_L(D, μQ)` from the Riemann-Roch regimes.
pub fn lemma43_dimension(mu: i64, g: i64, n: i64) -> DimensionInfo {
    let info = |bound, kind| DimensionInfo {
        bound,
        kind,
        full_space: false,
    };
    if mu < 0 {
        info(0, DimensionKind::Exact)
    } else if mu >= n + 2 * g - 1 {
        DimensionInfo {
            bound: n,
            kind: DimensionKind::Exact,
            full_space: true,
        }
    } else if 2 * g - 2 < mu && mu < n {
        info(mu + 1 - g, DimensionKind::Exact)
    } else if mu >= n {
        info(mu + 1 - g, DimensionKind::AtMost)
    } else {
        info(mu + 1 - g, DimensionKind::AtLeast)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapBound {
    /// `M_m = d_m` on both the primary and the dual side.
    Equal,
    /// `M_m - d_m <= value`.
    AtMost(i64),
}

pub fn prop47_gap_bound(ell: i64, c: i64, m: i64, g: i64) -> GapBound {
    if ell >= c || m > g {
        GapBound::Equal
    } else {
        GapBound::AtMost(c - ell)
    }
}

/// All strictly increasing r-tuples of `lo..=hi`; used by tests and the CLI
/// to report witnesses.
pub fn index_tuples(lo: i64, hi: i64, r: usize) -> Vec<Vec<i64>> {
    let width = (hi - lo + 1).max(0) as usize;
    combinations(width, r)
        .into_iter()
        .map(|t| t.into_iter().map(|i| lo + i as i64).collect())
        .collect()
}
