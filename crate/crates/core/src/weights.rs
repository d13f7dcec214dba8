//! Ground-truth weight computations: supports, generalized Hamming weights
//! (GHW), relative generalized Hamming weights (RGHW), the relative
//! dimension/length profile (RDLP), Wei duality and the `d_1`-based GHW
//! lower bound.
//!
//! Two independent routes compute RGHWs. [`rghw_bruteforce`] enumerates
//! subspaces through their canonical RREF coefficient matrices and takes the
//! minimum support; [`rghw_via_rdlp`] scans coordinate sets and reads the
//! weight off the RDLP as `M_m = min { d : K_d >= m }`.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::gaussian_binomial;
use crate::field::{Elem, FieldSpec, LinearCode, Matrix, NestedCodePair};
use crate::TooLarge;

/// Largest length handled by the bitmask enumerators.
pub const MAX_MASK_LENGTH: usize = 64;
/// Largest length for which the RDLP scans all coordinate subsets.
pub const MAX_RDLP_LENGTH: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error("{name} = {value} out of range 1..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        max: usize,
    },
}

fn check_index(name: &'static str, value: usize, max: usize) -> Result<(), WeightError> {
    if value == 0 || value > max {
        Err(WeightError::OutOfRange { name, value, max })
    } else {
        Ok(())
    }
}

/// A GHW or RGHW hierarchy; `values[m - 1]` is the m-th weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightHierarchy {
    pub values: Vec<usize>,
}

impl WeightHierarchy {
    pub fn get(&self, m: usize) -> usize {
        self.values[m - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// Number of coordinates where some vector in the span is nonzero.
pub fn support_size(vectors: &[Vec<Elem>]) -> usize {
    let n = vectors.first().map_or(0, Vec::len);
    (0..n)
        .filter(|&c| vectors.iter().any(|v| v[c] != 0))
        .count()
}

fn mask_of(v: &[Elem]) -> u64 {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

fn add_scaled(f: &FieldSpec, acc: &[Elem], a: Elem, v: &[Elem]) -> Vec<Elem> {
    acc.iter()
        .zip(v)
        .map(|(&x, &y)| f.add(x, f.mul(a, y)))
        .collect()
}

/// Exhaustive enumeration of m-dimensional subspaces of `span(basis)` via
/// their RREF coefficient matrices, restricted to pivots in `0..pivot_limit`.
///
/// With the basis ordered `[W; G2]` and `pivot_limit = ell`, the enumerated
/// subspaces are exactly those meeting `span(G2)` trivially: a pivot in the
/// `G2` block would make that RREF row a nonzero element of `C2`, while
/// pivots confined to the `W` block give a coefficient matrix whose `W` part
/// has full rank m, which is the `rank([D; G2]) = m + k2` condition.
struct SubspaceSpace<'a> {
    basis: &'a Matrix,
    pivot_limit: usize,
    m: usize,
}

impl<'a> SubspaceSpace<'a> {
    fn count(&self) -> BigUint {
        let k = self.basis.rows();
        let q = self.basis.field().order() as u64;
        gaussian_binomial(self.pivot_limit as u64, self.m as u64, q)
            * BigUint::from(q).pow((self.m * (k - self.pivot_limit)) as u32)
    }

    fn check_budget(&self, budget: u64) -> Result<(), TooLarge> {
        let c = self.count();
        if c > BigUint::from(budget) {
            Err(TooLarge::new(c, budget))
        } else {
            Ok(())
        }
    }

    fn pivot_sets(&self) -> Vec<Vec<usize>> {
        combinations(self.pivot_limit, self.m)
    }

    /// All codeword-space vectors of one RREF row with pivot `p`.
    fn row_choices(&self, pivots: &[usize], row: usize) -> Vec<Vec<Elem>> {
        let f = self.basis.field();
        let p = pivots[row];
        let mut out = vec![self.basis.row(p).to_vec()];
        for j in (p + 1)..self.basis.rows() {
            if pivots.contains(&j) {
                continue;
            }
            let bj = self.basis.row(j);
            out = out
                .iter()
                .flat_map(|v| f.elements().map(move |a| add_scaled(f, v, a, bj)))
                .collect();
        }
        out
    }

    fn min_support(&self) -> usize {
        let best = AtomicUsize::new(self.basis.cols() + 1);
        self.pivot_sets().par_iter().for_each(|pivots| {
            let masks: Vec<Vec<u64>> = (0..self.m)
                .map(|r| {
                    self.row_choices(pivots, r)
                        .iter()
                        .map(|v| mask_of(v))
                        .collect()
                })
                .collect();
            dfs_min(&masks, 0, 0, &best);
        });
        best.into_inner()
    }

    fn for_each(&self, f: &mut dyn FnMut(&[Vec<Elem>])) {
        for pivots in self.pivot_sets() {
            let choices: Vec<Vec<Vec<Elem>>> =
                (0..self.m).map(|r| self.row_choices(&pivots, r)).collect();
            let mut idx = vec![0usize; self.m];
            loop {
                let rows: Vec<Vec<Elem>> = idx
                    .iter()
                    .enumerate()
                    .map(|(r, &i)| choices[r][i].clone())
                    .collect();
                f(&rows);
                let mut r = 0;
                loop {
                    if r == self.m {
                        break;
                    }
                    idx[r] += 1;
                    if idx[r] < choices[r].len() {
                        break;
                    }
                    idx[r] = 0;
                    r += 1;
                }
                if r == self.m {
                    break;
                }
            }
        }
    }
}

fn dfs_min(masks: &[Vec<u64>], row: usize, acc: u64, best: &AtomicUsize) {
    if row == masks.len() {
        best.fetch_min(acc.count_ones() as usize, Ordering::Relaxed);
        return;
    }
    for &m in &masks[row] {
        let next = acc | m;
        // supports only grow as rows are added
        if (next.count_ones() as usize) < best.load(Ordering::Relaxed) {
            dfs_min(masks, row + 1, next, best);
        }
    }
}

/// All `m`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

fn pair_basis(pair: &NestedCodePair) -> Matrix {
    pair.complement().stack(pair.c2().generator())
}

fn check_mask_length(n: usize, budget: u64) -> Result<(), WeightError> {
    if n > MAX_MASK_LENGTH {
        return Err(TooLarge::new(format!("length {n}"), budget).into());
    }
    Ok(())
}

/// `d_m(C)`: minimum support over all m-dimensional subcodes.
pub fn ghw_bruteforce(code: &LinearCode, m: usize, budget: u64) -> Result<usize, WeightError> {
    check_index("m", m, code.dimension())?;
    check_mask_length(code.length(), budget)?;
    let space = SubspaceSpace {
        basis: code.generator(),
        pivot_limit: code.dimension(),
        m,
    };
    space.check_budget(budget)?;
    Ok(space.min_support())
}

/// `M_m(C1, C2)`: minimum support over m-dimensional `D ⊆ C1` with `D ∩ C2 = {0}`.
pub fn rghw_bruteforce(pair: &NestedCodePair, m: usize, budget: u64) -> Result<usize, WeightError> {
    check_index("m", m, pair.ell())?;
    check_mask_length(pair.length(), budget)?;
    let basis = pair_basis(pair);
    let space = SubspaceSpace {
        basis: &basis,
        pivot_limit: pair.ell(),
        m,
    };
    space.check_budget(budget)?;
    Ok(space.min_support())
}

pub fn ghw_hierarchy(code: &LinearCode, budget: u64) -> Result<WeightHierarchy, WeightError> {
    let values = (1..=code.dimension())
        .map(|m| ghw_bruteforce(code, m, budget))
        .collect::<Result<_, _>>()?;
    Ok(WeightHierarchy { values })
}

pub fn rghw_hierarchy(pair: &NestedCodePair, budget: u64) -> Result<WeightHierarchy, WeightError> {
    let values = (1..=pair.ell())
        .map(|m| rghw_bruteforce(pair, m, budget))
        .collect::<Result<_, _>>()?;
    Ok(WeightHierarchy { values })
}

/// Calls `f` with a basis (rows in `F_q^n`) of every m-dimensional
/// `D ⊆ C1` meeting `C2` trivially, once per subspace.
pub fn for_each_relative_subspace(
    pair: &NestedCodePair,
    m: usize,
    budget: u64,
    f: &mut dyn FnMut(&[Vec<Elem>]),
) -> Result<(), WeightError> {
    check_index("m", m, pair.ell())?;
    let basis = pair_basis(pair);
    let space = SubspaceSpace {
        basis: &basis,
        pivot_limit: pair.ell(),
        m,
    };
    space.check_budget(budget)?;
    space.for_each(f);
    Ok(())
}

/// Calls `f` with a basis of every m-dimensional subcode of `code`.
pub fn for_each_subspace(
    code: &LinearCode,
    m: usize,
    budget: u64,
    f: &mut dyn FnMut(&[Vec<Elem>]),
) -> Result<(), WeightError> {
    check_index("m", m, code.dimension())?;
    let space = SubspaceSpace {
        basis: code.generator(),
        pivot_limit: code.dimension(),
        m,
    };
    space.check_budget(budget)?;
    space.for_each(f);
    Ok(())
}

fn rank_of_columns(g: &Matrix, mask: u32, n: usize) -> usize {
    if g.rows() == 0 {
        return 0;
    }
    let cols: Vec<usize> = (0..n).filter(|c| mask & (1 << c) != 0).collect();
    g.select_columns(&cols).rank()
}

/// The full RDLP `(K_1, .., K_n)` of the pair.
pub fn rdlp_profile(pair: &NestedCodePair, budget: u64) -> Result<Vec<usize>, WeightError> {
    let n = pair.length();
    if n > MAX_RDLP_LENGTH || (1u64 << n) > budget {
        return Err(TooLarge::new(format!("2^{n} coordinate sets"), budget).into());
    }
    let k1 = pair.c1().dimension();
    let k2 = pair.c2().dimension();
    let g1 = pair.c1().generator();
    let g2 = pair.c2().generator();
    let full = (1u32 << n) - 1;
    let best: Vec<AtomicUsize> = (0..=n).map(|_| AtomicUsize::new(0)).collect();
    (0u32..(1u32 << n)).into_par_iter().for_each(|mask| {
        let outside = full & !mask;
        let diff = (k1 - rank_of_columns(g1, outside, n)) - (k2 - rank_of_columns(g2, outside, n));
        best[mask.count_ones() as usize].fetch_max(diff, Ordering::Relaxed);
    });
    Ok(best[1..]
        .iter()
        .map(|a| a.load(Ordering::Relaxed))
        .collect())
}

/// `K_d(C1, C2)` for one `d`.
pub fn rdlp(pair: &NestedCodePair, d: usize, budget: u64) -> Result<usize, WeightError> {
    check_index("d", d, pair.length())?;
    Ok(rdlp_profile(pair, budget)?[d - 1])
}

/// `M_m(C1, C2) = min { d : K_d(C1, C2) >= m }`.
pub fn rghw_via_rdlp(pair: &NestedCodePair, m: usize, budget: u64) -> Result<usize, WeightError> {
    check_index("m", m, pair.ell())?;
    let profile = rdlp_profile(pair, budget)?;
    Ok(first_reaching(&profile, m))
}

fn first_reaching(profile: &[usize], m: usize) -> usize {
    profile
        .iter()
        .position(|&k| k >= m)
        .map(|i| i + 1)
        .expect("K_n equals ell")
}

pub fn rghw_hierarchy_via_rdlp(
    pair: &NestedCodePair,
    budget: u64,
) -> Result<WeightHierarchy, WeightError> {
    let profile = rdlp_profile(pair, budget)?;
    Ok(WeightHierarchy {
        values: (1..=pair.ell())
            .map(|m| first_reaching(&profile, m))
            .collect(),
    })
}

/// GHW hierarchy through the RDLP of `(C, {0})`.
pub fn ghw_hierarchy_via_rdlp(
    code: &LinearCode,
    budget: u64,
) -> Result<WeightHierarchy, WeightError> {
    if code.dimension() == 0 {
        return Ok(WeightHierarchy { values: vec![] });
    }
    let pair = NestedCodePair::new(code.clone(), LinearCode::zero(code.field(), code.length()))
        .expect("zero code is strictly inside a nonzero code");
    rghw_hierarchy_via_rdlp(&pair, budget)
}

/// Wei duality: `{d_r(C)} ∪ {n + 1 - d_s(C^⊥)}` partitions `{1, .., n}`.
pub fn wei_duality_check(code: &LinearCode, budget: u64) -> Result<bool, WeightError> {
    let n = code.length();
    let primal = ghw_hierarchy(code, budget)?;
    let dual = ghw_hierarchy(&code.dual(), budget)?;
    let mut seen = vec![false; n + 1];
    let all = primal
        .values
        .iter()
        .copied()
        .chain(dual.values.iter().map(|&d| n + 1 - d));
    for v in all {
        if v == 0 || v > n || seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok(seen[1..].iter().all(|&s| s))
}

/// Lower bound `d_m >= d_1 (q^m - 1) / (q^m - q^{m-1})`, as an exact rational.
pub fn cor2_bound(d1: u64, m: u32, q: u64) -> BigRational {
    assert!(m >= 1 && q >= 2);
    let qm = BigUint::from(q).pow(m);
    let num = BigUint::from(d1) * (&qm - BigUint::one());
    let den = &qm - BigUint::from(q).pow(m - 1);
    BigRational::new(num.into(), den.into())
}

/// `cor2_bound` as a float, for reporting.
pub fn cor2_bound_f64(d1: u64, m: u32, q: u64) -> f64 {
    let r = cor2_bound(d1, m, q);
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    pub(crate) fn rs(q: usize, points: &[u8], k: usize) -> LinearCode {
        let f = FieldSpec::new(q).unwrap();
        let rows: Vec<Vec<u8>> = (0..k)
            .map(|j| points.iter().map(|&x| f.pow(x, j as u64)).collect())
            .collect();
        LinearCode::from_rows(&f, points.len(), &rows).unwrap()
    }

    const B: u64 = crate::DEFAULT_BUDGET;

    /// Independent oracle: enumerate every m-tuple of codewords, keep the
    /// ones of rank m, and minimize the support of their span.
    fn ghw_by_tuples(code: &LinearCode, m: usize) -> usize {
        let q = code.field().order();
        let k = code.dimension();
        let words: Vec<Vec<u8>> = (0..q.pow(k as u32))
            .map(|mut x| {
                let msg: Vec<u8> = (0..k)
                    .map(|_| {
                        let d = (x % q) as u8;
                        x /= q;
                        d
                    })
                    .collect();
                code.encode(&msg)
            })
            .collect();
        let mut best = usize::MAX;
        let mut idx = vec![0usize; m];
        loop {
            let rows: Vec<Vec<u8>> = idx.iter().map(|&i| words[i].clone()).collect();
            let mat = Matrix::from_rows(code.field(), code.length(), &rows).unwrap();
            if mat.rank() == m {
                best = best.min(support_size(&rows));
            }
            let mut r = 0;
            while r < m {
                idx[r] += 1;
                if idx[r] < words.len() {
                    break;
                }
                idx[r] = 0;
                r += 1;
            }
            if r == m {
                return best;
            }
        }
    }

    #[test]
    fn support_size_examples() {
        assert_eq!(support_size(&[vec![1, 1, 0], vec![0, 1, 1]]), 3);
        assert_eq!(support_size(&[vec![0, 0, 0]]), 0);
        assert_eq!(support_size(&[vec![1, 1, 1, 1]]), 4);
        assert_eq!(support_size(&[]), 0);
    }

    #[test]
    fn repetition_code_ghw() {
        let f = FieldSpec::new(2).unwrap();
        let rep = LinearCode::from_rows(&f, 3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(ghw_bruteforce(&rep, 1, B).unwrap(), 3);
    }

    #[test]
    fn reed_solomon_ghw_is_mds() {
        let c = rs(5, &[1, 2, 3, 4], 2);
        assert_eq!(ghw_hierarchy(&c, B).unwrap().values, vec![3, 4]);
    }

    #[test]
    fn enumeration_matches_tuple_oracle() {
        let f2 = FieldSpec::new(2).unwrap();
        let codes = vec![
            rs(5, &[1, 2, 3, 4], 2),
            rs(4, &[0, 1, 2, 3], 2),
            LinearCode::from_rows(
                &f2,
                5,
                &[
                    vec![1, 1, 0, 0, 0],
                    vec![0, 1, 1, 1, 0],
                    vec![1, 0, 0, 1, 1],
                ],
            )
            .unwrap(),
        ];
        for c in codes {
            for m in 1..=c.dimension() {
                assert_eq!(
                    ghw_bruteforce(&c, m, B).unwrap(),
                    ghw_by_tuples(&c, m),
                    "{c:?} m={m}"
                );
            }
        }
    }

    #[test]
    fn rghw_of_zero_inner_code_is_ghw() {
        let c = rs(5, &[1, 2, 3, 4], 3);
        let pair = NestedCodePair::new(c.clone(), LinearCode::zero(c.field(), 4)).unwrap();
        for m in 1..=3 {
            assert_eq!(
                rghw_bruteforce(&pair, m, B).unwrap(),
                ghw_bruteforce(&c, m, B).unwrap()
            );
        }
    }

    #[test]
    fn rs_pair_rghw() {
        let pts = [1, 2, 3, 4];
        let pair = NestedCodePair::new(rs(5, &pts, 3), rs(5, &pts, 1)).unwrap();
        assert_eq!(rghw_bruteforce(&pair, 1, B).unwrap(), 2);
        assert_eq!(rghw_via_rdlp(&pair, 1, B).unwrap(), 2);
        assert_eq!(
            rghw_bruteforce(&pair, 2, B).unwrap(),
            rghw_via_rdlp(&pair, 2, B).unwrap()
        );
    }

    #[test]
    fn relative_enumeration_visits_exactly_the_trivially_meeting_subspaces() {
        let pts = [1, 2, 3, 4];
        let pair = NestedCodePair::new(rs(5, &pts, 3), rs(5, &pts, 1)).unwrap();
        // 2-dim subspaces of a 3-dim space meeting a fixed line trivially:
        // N2(3, 1, 2) = (125 - 5)(125 - 25) / ((25 - 1)(25 - 5)) = 25
        let mut count = 0;
        for_each_relative_subspace(&pair, 2, B, &mut |rows| {
            let d = Matrix::from_rows(pair.field(), 4, rows).unwrap();
            assert_eq!(d.stack(pair.c2().generator()).rank(), 3);
            count += 1;
        })
        .unwrap();
        assert_eq!(count, 25);
    }

    #[test]
    fn rdlp_examples() {
        let pts = [1, 2, 3, 4];
        let pair = NestedCodePair::new(rs(5, &pts, 2), rs(5, &pts, 1)).unwrap();
        assert_eq!(rdlp(&pair, 2, B).unwrap(), 0);
        assert_eq!(rdlp(&pair, 4, B).unwrap(), pair.ell());
        let profile = rdlp_profile(&pair, B).unwrap();
        assert!(profile.windows(2).all(|w| w[0] <= w[1]));

        // GF(2)^2 over the line spanned by (1,0): I={0} gives 1-1 = 0, I={1} gives 1-0 = 1
        let f = FieldSpec::new(2).unwrap();
        let pair = NestedCodePair::new(
            LinearCode::full(&f, 2),
            LinearCode::from_rows(&f, 2, &[vec![1, 0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(rdlp(&pair, 1, B).unwrap(), 1);
    }

    #[test]
    fn wei_duality_examples() {
        let f = FieldSpec::new(2).unwrap();
        let rep = LinearCode::from_rows(&f, 3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(ghw_hierarchy(&rep.dual(), B).unwrap().values, vec![2, 3]);
        assert!(wei_duality_check(&rep, B).unwrap());
        assert!(wei_duality_check(&rs(5, &[1, 2, 3, 4], 2), B).unwrap());
        assert!(wei_duality_check(&LinearCode::full(&f, 2), B).unwrap());
    }

    #[test]
    fn cor2_examples() {
        assert_eq!(cor2_bound(3, 1, 2), BigRational::from_integer(3.into()));
        assert_eq!(cor2_bound(4, 2, 2), BigRational::from_integer(6.into()));
    }

    #[test]
    fn budget_is_enforced() {
        let c = rs(7, &[1, 2, 3, 4, 5, 6], 5);
        assert!(matches!(
            ghw_bruteforce(&c, 2, 10),
            Err(WeightError::TooLarge(_))
        ));
        assert!(matches!(
            ghw_bruteforce(&c, 0, B),
            Err(WeightError::OutOfRange { .. })
        ));
        assert!(matches!(
            ghw_bruteforce(&c, 6, B),
            Err(WeightError::OutOfRange { .. })
        ));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
