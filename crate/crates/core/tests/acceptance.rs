//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rampw_core::ag::{gs_tower_params, hermitian_code, one_point_pair, reed_solomon, OnePointCode};
use rampw_core::asymptotic::{
    a_of, bound_thm510, bound_thm59, comparison_prop61, comparison_prop62, final_params, ihara,
    parse_grid, prop61_length, prop62_min_length, sweep, BoundTag, FinalQuery, FinalTheorem,
};
use rampw_core::counting::{n1, n4, random_witness_search, ryu3_check, ExistenceQuery};
use rampw_core::field::{LinearCode, NestedCodePair};
use rampw_core::scheme::{
    appendix_a_bound_check, build_scheme, entropy_table, thresholds, thresholds_by_definition,
    verify_thresholds, SchemeError,
};
use rampw_core::semigroup::{
    goppa_ghw_bound, prop45_bound, prop46_bound, prop47_gap_bound, GapBound,
};
use rampw_core::weights::{
    ghw_bruteforce, ghw_hierarchy, rghw_bruteforce, rghw_via_rdlp, wei_duality_check,
};
use rampw_core::DEFAULT_BUDGET;

/// Distance from an integer tolerated in measured mutual information, in q-bits.
const INTEGRALITY_TOL: f64 = 1e-9;
/// Tolerance for comparisons against closed forms evaluated in f64.
const REAL_TOL: f64 = 1e-12;
/// Grid step of the asymptotic sweep.
const SWEEP_STEP: f64 = 0.01;
const BUDGET: u64 = DEFAULT_BUDGET;

const LIMIT_MDS: Duration = Duration::from_secs(10);
const LIMIT_HERMITIAN: Duration = Duration::from_secs(120);
const LIMIT_COUNTING: Duration = Duration::from_secs(300);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let took = start.elapsed();
    (
        took < limit,
        format!("{:.2}s of {}s", took.as_secs_f64(), limit.as_secs()),
    )
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Hermitian codes over GF(4) for μ = -1..=9, one per distinct code.
fn hermitian_family() -> Vec<OnePointCode> {
    let mut out: Vec<OnePointCode> = Vec::new();
    for mu in -1..=9 {
        let c = hermitian_code(2, mu).unwrap();
        if out.last().is_none_or(|p| p.dimension() != c.dimension()) {
            out.push(c);
        }
    }
    out
}

fn hermitian_pairs() -> Vec<(i64, i64, NestedCodePair)> {
    let fam = hermitian_family();
    let mut out = Vec::new();
    for (j, c1) in fam.iter().enumerate() {
        for c2 in &fam[..j] {
            out.push((c1.mu, c2.mu, one_point_pair(c1, c2).unwrap()));
        }
    }
    out
}

fn mds_exactness() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 1..=5 {
        let code = reed_solomon(7, 6, k, &[0, 1, 2, 3, 4, 5]).unwrap().code;
        for m in 1..=k {
            checked += 1;
            let d = ghw_bruteforce(&code, m, BUDGET).unwrap();
            if d != 6 - k + m {
                bad.push(format!("k={k} m={m} d={d}"));
            }
        }
    }
    let (fast, t) = within(LIMIT_MDS, start);
    outcome(
        bad.is_empty() && fast,
        format!(
            "{checked} weights equal n-k+m, {} mismatches {bad:?}, {t}",
            bad.len()
        ),
    )
}

fn hermitian_ground_truth() -> Outcome {
    let start = Instant::now();
    let n = 8i64;
    let mut violations = Vec::new();
    let (mut n45, mut n46) = (0, 0);
    for mu in 2..=7 {
        let hc = hermitian_code(2, mu).unwrap();
        let (h, g, k) = (&hc.semigroup, hc.genus() as i64, hc.dimension() as i64);
        let primal = ghw_hierarchy(&hc.code, BUDGET).unwrap();
        for m in 1..=k {
            let d = primal.get(m as usize) as i64;
            let gb = goppa_ghw_bound(n, k, g, m);
            if d < gb.value || (m >= 2 && d != n - k + m) {
                violations.push(format!("goppa mu={mu} m={m} d={d}"));
            }
            if let Ok(b) = prop45_bound(h, n, k, mu, m) {
                n45 += 1;
                if b > d {
                    violations.push(format!("prop45 mu={mu} m={m} bound={b} d={d}"));
                }
            }
        }
        let dual = ghw_hierarchy(&hc.code.dual(), BUDGET).unwrap();
        let k_perp = n - k;
        for m in 1..=k_perp {
            if let Ok(b) = prop46_bound(h, n, k_perp, mu, m) {
                n46 += 1;
                let d = dual.get(m as usize) as i64;
                if b > d {
                    violations.push(format!("prop46 mu={mu} m={m} bound={b} d={d}"));
                }
            }
        }
    }
    let d1 = common::min_distance(&hermitian_code(2, 4).unwrap().code);
    let (fast, t) = within(LIMIT_HERMITIAN, start);
    outcome(
        violations.is_empty() && d1 == 4 && fast && n45 > 0 && n46 > 0,
        format!(
            "{n45} primary and {n46} dual closed-form bounds checked, violations {violations:?}, d_1(mu=4)={d1}, {t}"
        ),
    )
}

fn wei_duality() -> Outcome {
    let corpus = common::load_corpus();
    let mut bad = Vec::new();
    for (name, code) in &corpus {
        let n = code.length();
        let a = ghw_hierarchy(code, BUDGET).unwrap().values;
        let b: Vec<usize> = ghw_hierarchy(&code.dual(), BUDGET)
            .unwrap()
            .values
            .iter()
            .map(|d| n + 1 - d)
            .collect();
        let sa: BTreeSet<usize> = a.iter().copied().collect();
        let sb: BTreeSet<usize> = b.iter().copied().collect();
        let union: BTreeSet<usize> = sa.union(&sb).copied().collect();
        let partition = sa.is_disjoint(&sb) && union == (1..=n).collect() && a.len() + b.len() == n;
        if !partition || !wei_duality_check(code, BUDGET).unwrap() {
            bad.push(name.clone());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} corpus codes, failures {bad:?}", corpus.len()),
    )
}

fn threshold_equivalence() -> Outcome {
    let mut pairs: Vec<(String, NestedCodePair)> = Vec::new();
    for n in 2..=5usize {
        let points: Vec<u8> = (0..n as u8).collect();
        for k1 in 1..=n {
            for k2 in 0..k1 {
                let c1 = reed_solomon(5, n, k1, &points).unwrap();
                let c2 = reed_solomon(5, n, k2, &points).unwrap();
                pairs.push((
                    format!("RS n={n} k1={k1} k2={k2}"),
                    one_point_pair(&c1, &c2).unwrap(),
                ));
            }
        }
    }
    for (mu1, mu2, pair) in hermitian_pairs() {
        pairs.push((format!("Hermitian mu1={mu1} mu2={mu2}"), pair));
    }
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (name, pair) in &pairs {
        let v = verify_thresholds(&build_scheme(pair.clone()), BUDGET).unwrap();
        worst = worst.max(v.max_integrality_error);
        if !v.agree() || v.max_integrality_error > INTEGRALITY_TOL {
            bad.push(name.clone());
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} pairs, max integrality error {worst:.1e}, mismatches {bad:?}",
            pairs.len()
        ),
    )
}

fn gap_bound() -> Outcome {
    let mut violations = Vec::new();
    let (mut checked, mut via_profile) = (0, 0);
    for (mu1, mu2, pair) in hermitian_pairs() {
        let fam = hermitian_code(2, mu1).unwrap();
        let (g, c) = (fam.genus() as i64, fam.conductor() as i64);
        let ell = pair.ell() as i64;
        let dual = pair.dual();
        for m in 1..=pair.ell() {
            let sides = [("primary", &pair, pair.c1()), ("dual", &dual, dual.c1())];
            for (side, p, code) in sides {
                checked += 1;
                let (big_m, d) = match (
                    rghw_bruteforce(p, m, BUDGET),
                    ghw_bruteforce(code, m, BUDGET),
                ) {
                    (Ok(a), Ok(b)) => (a as i64, b as i64),
                    _ => {
                        via_profile += 1;
                        let zero = LinearCode::zero(code.field(), code.length());
                        let alone = NestedCodePair::new(code.clone(), zero).unwrap();
                        (
                            rghw_via_rdlp(p, m, BUDGET).unwrap() as i64,
                            rghw_via_rdlp(&alone, m, BUDGET).unwrap() as i64,
                        )
                    }
                };
                let ok = match prop47_gap_bound(ell, c, m as i64, g) {
                    GapBound::Equal => big_m == d,
                    GapBound::AtMost(b) => big_m - d <= b,
                } && big_m - d <= (c - ell).max(0);
                if !ok {
                    violations.push(format!("{side} mu1={mu1} mu2={mu2} m={m} M={big_m} d={d}"));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{checked} (pair, m, side) cases, {via_profile} beyond the subspace budget checked through the RDLP, violations {violations:?}"
        ),
    )
}

/// The n = 10 query over GF(2) where the existence inequality holds with the
/// largest excess `(d - s) + (d⊥ - s⊥)` over the trivial `M_s >= s`.
fn positive_query() -> Option<ExistenceQuery> {
    let n = 10u64;
    let mut best: Option<(u64, ExistenceQuery)> = None;
    for k1 in 2..n {
        for k2 in 1..k1 {
            for d in 1..=n {
                for d_perp in 1..=n {
                    for s in 1..=d.min(k1 - k2) {
                        for s_perp in 1..=d_perp.min(k1 - k2) {
                            let query = ExistenceQuery {
                                n,
                                k1,
                                k2,
                                d,
                                d_perp,
                                s,
                                s_perp,
                                q: 2,
                            };
                            let c = ryu3_check(&query).unwrap();
                            let excess = (d - s) + (d_perp - s_perp);
                            if c.holds && best.as_ref().is_none_or(|(score, _)| excess > *score) {
                                best = Some((excess, query));
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, q)| q)
}

fn counting() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let n1_ok =
        n1(4, 2, 2).unwrap() == BigUint::from(35u32) && common::count_subspaces_gf2(4, 2) == 35;
    if !n1_ok {
        notes.push("n1(4,2,2)".to_string());
    }
    let mut census = 0;
    for q in [2u64, 3] {
        for n in 1..=6i64 {
            for k1 in 1..=n {
                for k2 in 0..k1 {
                    for d in 0..=n {
                        census += 1;
                        let total: BigUint = (0..=d.min(k1 - k2))
                            .map(|s| n4(n, k1, k2, d, s, q).unwrap())
                            .sum();
                        let pairs = n1(n, k2, q).unwrap() * n1(n - k2, k1 - k2, q).unwrap();
                        if total != pairs {
                            notes.push(format!("census q={q} n={n} k1={k1} k2={k2} d={d}"));
                        }
                    }
                }
            }
        }
    }
    let witness_ok = match positive_query() {
        None => {
            notes.push("no positive query at n=10".into());
            false
        }
        Some(query) => match random_witness_search(&query, 10_000, 1, BUDGET).unwrap() {
            None => {
                notes.push(format!("no witness for {query:?}"));
                false
            }
            Some(w) => {
                let m_s = rghw_bruteforce(&w.pair, query.s as usize, BUDGET).unwrap();
                let m_sp = rghw_bruteforce(&w.pair.dual(), query.s_perp as usize, BUDGET).unwrap();
                notes.push(format!(
                    "query n={} k1={} k2={} d={} d_perp={} s={} s_perp={}: witness after {} trials with M_s={m_s}, M_s_perp={m_sp}",
                    query.n, query.k1, query.k2, query.d, query.d_perp, query.s, query.s_perp, w.trials
                ));
                m_s > query.d as usize && m_sp > query.d_perp as usize
            }
        },
    };
    let (fast, t) = within(LIMIT_COUNTING, start);
    outcome(
        n1_ok && witness_ok && fast && !notes.iter().any(|s| s.starts_with("census")),
        format!(
            "n1(4,2,2)=35 by enumeration, {census} census identities, {}, {t}",
            notes.join("; ")
        ),
    )
}

fn constants() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |what: &str, got: BigRational, want: BigRational| {
        if got != want {
            bad.push(format!("{what}: {got} != {want}"));
        }
    };
    expect("rho interval q=9", prop61_length(9).unwrap(), rat(1, 2));
    expect("rho interval q=16", prop61_length(16).unwrap(), rat(14, 45));
    expect(
        "rho interval q=9 at R=1/5",
        comparison_prop61(9, &rat(1, 5)).unwrap().length(),
        rat(1, 2),
    );
    expect(
        "rho interval q=16 at R=1/2",
        comparison_prop61(16, &rat(1, 2)).unwrap().length(),
        rat(14, 45),
    );
    expect("V minimum q=9", prop62_min_length(9).unwrap(), rat(7, 16));
    expect(
        "V minimum q=16",
        prop62_min_length(16).unwrap(),
        rat(13, 45),
    );
    for q in [9u64, 16] {
        let top = BigRational::from_integer(1.into()) - a_of(q).unwrap();
        for j in 0..=100 {
            let r = &top * rat(j, 100);
            let len = comparison_prop62(q, &r).unwrap().length();
            if len < prop62_min_length(q).unwrap() {
                bad.push(format!("V interval q={q} R={r} shorter than the minimum"));
            }
        }
    }
    let t = gs_tower_params(16, 3).unwrap();
    if (
        t.genus.clone(),
        t.conductor.clone(),
        t.places_exceed.clone(),
    ) != (
        BigUint::from(45u32),
        BigUint::from(48u32),
        BigUint::from(192u32),
    ) {
        bad.push(format!("GS(16,3) = {t:?}"));
    }
    let query = FinalQuery {
        theorem: FinalTheorem::SemigroupDouble,
        q: 16,
        r1: rat(3, 5),
        r2: rat(2, 5),
        eps1: rat(1, 2),
        eps2: rat(1, 2),
        v: None,
        ihara_override: None,
    };
    let p = final_params(&query).unwrap();
    if p.lambda1 != rat(2, 15) || p.lambda2 != rat(2, 15) {
        bad.push(format!("deficiency {} {}", p.lambda1, p.lambda2));
    }
    outcome(
        bad.is_empty(),
        format!("1/2, 14/45, 7/16, 13/45, g=45 c=48 N>192, 2/15; mismatches {bad:?}"),
    )
}

fn asymptotic_consistency() -> Outcome {
    let q = 16u64;
    let a = 1.0 / 3.0;
    let mut bad = Vec::new();
    let grid = parse_grid("0:1:0.01").unwrap();
    // the sixth-order bound meets the Singleton line at ρ = a
    for &r in grid.iter().filter(|&&r| r >= a && r <= 1.0 - a) {
        let b = bound_thm59(r, a, q).unwrap();
        if !b.applicable || (b.raw - (1.0 - r + a)).abs() > REAL_TOL {
            bad.push(format!("thm59 at R={r}"));
        }
    }
    let mut on_region = 0;
    for &r in &grid {
        for &rho in grid.iter().filter(|&&x| x <= r) {
            let b = bound_thm510(r, rho, 0.0, q).unwrap();
            if b.applicable {
                on_region += 1;
                if (b.raw - (1.0 - r + rho)).abs() > REAL_TOL {
                    bad.push(format!("thm510 V=0 at R={r} rho={rho}"));
                }
            }
        }
    }
    let iv = ihara(q, None).unwrap();
    let rows = sweep(q, &iv, &grid, &grid, &[0.0]);
    let mut boundaries = 0;
    for &r in grid.iter().filter(|&&r| r <= 1.0 - a + REAL_TOL) {
        let won: Vec<f64> = rows
            .iter()
            .filter(|row| row.r == r && row.best.tag == BoundTag::Thm59)
            .map(|row| row.rho)
            .collect();
        let interval = comparison_prop61(q, &BigRational::from_float(r).unwrap()).unwrap();
        let lo = interval.lo.to_f64().unwrap().max(0.0);
        let hi = interval.hi.to_f64().unwrap().min(r).min(a);
        if hi - lo < SWEEP_STEP {
            continue;
        }
        boundaries += 1;
        match (won.first(), won.last()) {
            (Some(&first), Some(&last)) => {
                if (first - lo).abs() > SWEEP_STEP + REAL_TOL
                    || (last - hi).abs() > SWEEP_STEP + REAL_TOL
                {
                    bad.push(format!(
                        "R={r}: won on [{first}, {last}], interval ({lo}, {hi})"
                    ));
                }
            }
            _ => bad.push(format!("R={r}: never best, interval ({lo}, {hi})")),
        }
    }
    outcome(
        bad.is_empty() && on_region > 0 && boundaries > 0,
        format!(
            "{} sweep rows, {on_region} V=0 region points, {boundaries} boundary rows; mismatches {bad:?}",
            rows.len()
        ),
    )
}

fn appendix_a() -> Outcome {
    let corpus = common::load_corpus();
    let mut bad = Vec::new();
    let (mut schemes, mut skipped) = (0, 0);
    for (name, code) in &corpus {
        for pair in common::prefix_pairs(code) {
            let scheme = build_scheme(pair);
            let table = match entropy_table(&scheme, BUDGET) {
                Ok(t) => t,
                Err(SchemeError::TooLarge(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => panic!("{name}: {e}"),
            };
            schemes += 1;
            let (ell, k2) = (scheme.ell(), scheme.k2());
            let full = 1u32 << table.n;
            let lemma = (0..full).all(|mask| {
                table.mutual_information(mask) + INTEGRALITY_TOL
                    >= table.h_subset[mask as usize] - table.h_shares_given_secret
            });
            let mu = (0..full)
                .filter(|&mask| {
                    (table.h_subset[mask as usize] - table.h_shares).abs() <= INTEGRALITY_TOL
                })
                .map(|mask| mask.count_ones() as usize)
                .min()
                .unwrap();
            let by_def = thresholds_by_definition(&table, ell).unwrap();
            let via_rghw = thresholds(&scheme, BUDGET).unwrap();
            let bound = by_def
                .t
                .iter()
                .enumerate()
                .all(|(i, &t)| t + ell < mu + i + 1);
            let report = appendix_a_bound_check(&scheme, BUDGET).unwrap();
            let consistent =
                report.mu == mu && report.lemma_holds && report.bound_holds && by_def == via_rghw;
            if !lemma || mu != ell + k2 || !bound || !consistent {
                bad.push(format!("{name} k2={k2}"));
            }
        }
    }
    outcome(
        bad.is_empty() && schemes > 0,
        format!("{schemes} schemes ({skipped} beyond budget), failures {bad:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("MDS exactness", mds_exactness),
        ("Hermitian ground truth", hermitian_ground_truth),
        ("Wei duality", wei_duality),
        ("threshold equivalence", threshold_equivalence),
        ("gap bound", gap_bound),
        ("counting", counting),
        ("constants", constants),
        ("asymptotic consistency", asymptotic_consistency),
        ("information bound", appendix_a),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {} ({name}) [{:.2}s]: {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
