use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use rampw_core::ag::{gs_tower_params, hermitian_code, reed_solomon, OnePointCode};
use rampw_core::asymptotic::{
    comparison_prop61, comparison_prop62, final_params, fmt_rational, fmt_real, ihara, parse_grid,
    parse_rational, prop62_min_length, prop62_rho_interval, sweep, sweep_csv, FinalQuery,
    FinalTheorem, Interval,
};
use rampw_core::counting::{
    n1, n2, n3, n4, random_witness_search, ryu3_check, theorem37_feasible, ExistenceQuery,
    RateQuery,
};
use rampw_core::field::{Elem, LinearCode, NestedCodePair};
use rampw_core::scheme::{
    build_scheme, mutual_information_exhaustive, thresholds, verify_thresholds, RampScheme,
    Reconstruction, INTEGRALITY_TOL,
};
use rampw_core::semigroup::{theorem44_dual_bound, theorem44_primary_bound, NumericalSemigroup};
use rampw_core::weights::{
    ghw_bruteforce, ghw_hierarchy, rdlp_profile, rghw_bruteforce, rghw_hierarchy,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::{usage, Command, CountsCommand};

type Out = Result<String, CliError>;

fn read_code(path: &Path) -> Result<LinearCode, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::bad_file(&shown, e))?;
    LinearCode::parse(&text).map_err(|e| CliError::bad_file(&shown, e))
}

fn read_pair(pair: &crate::PairArgs) -> Result<NestedCodePair, CliError> {
    let c1 = read_code(&pair.c1)?;
    let c2 = read_code(&pair.c2)?;
    NestedCodePair::new(c1, c2).map_err(|e| CliError::bad_file(&pair.c2.display().to_string(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::bad_file(&path.display().to_string(), e))
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn parse_elems(text: &str, scheme: &RampScheme, what: &str) -> Result<Vec<Elem>, CliError> {
    text.split_whitespace()
        .map(|t| {
            let v: u64 = t
                .parse()
                .map_err(|_| usage(format!("{what}: `{t}` is not a nonnegative integer")))?;
            scheme
                .field()
                .check(v)
                .map_err(|e| usage(format!("{what}: {e}")))
        })
        .collect()
}

fn join(v: &[Elem]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn zero_based(indices: &[u64], n: usize) -> Result<Vec<usize>, CliError> {
    indices
        .iter()
        .map(|&i| {
            if i as usize > n {
                Err(usage(format!("share index {i} exceeds n = {n}")))
            } else {
                Ok(i as usize - 1)
            }
        })
        .collect()
}

fn check_orders(values: &[u64], max: usize, name: &str) -> Result<(), CliError> {
    match values.iter().find(|&&m| m as usize > max) {
        Some(m) => Err(usage(format!("--{name} {m} exceeds {max}"))),
        None => Ok(()),
    }
}

fn code_summary(c: &OnePointCode) -> String {
    format!(
        "n={} k={} g={} c={}\n",
        c.length(),
        c.dimension(),
        c.genus(),
        c.conductor()
    )
}

fn emit_code(c: &OnePointCode, out: Option<&Path>) -> Out {
    match out {
        Some(path) => {
            write_file(path, &c.code.to_text())?;
            Ok(code_summary(c))
        }
        None => Ok(c.code.to_text()),
    }
}

fn interval(name: &str, i: &Interval) -> String {
    format!(
        "{name} ({}, {}) length={}\n",
        fmt_rational(&i.lo),
        fmt_rational(&i.hi),
        fmt_rational(&i.length())
    )
}

fn rational_arg(text: &str, flag: &str) -> Result<BigRational, CliError> {
    parse_rational(text).map_err(|_| usage(format!("--{flag}: `{text}` is not a number")))
}

/// Budget used when neither `--budget` nor `RAMPW_BUDGET` is given.
pub fn default_budget(command: &Command) -> u64 {
    match command {
        Command::Mi { .. } | Command::Thresholds { verify: true, .. } => {
            rampw_core::scheme::MI_BUDGET
        }
        Command::SemigroupBound { .. } => rampw_core::semigroup::TUPLE_BUDGET,
        _ => rampw_core::DEFAULT_BUDGET,
    }
}

pub fn run(command: Command, budget: u64) -> Out {
    match command {
        Command::Ghw { code, m } => {
            let code = read_code(&code)?;
            if m.is_empty() {
                return Ok(lines(ghw_hierarchy(&code, budget)?.values));
            }
            check_orders(&m, code.dimension(), "m")?;
            let vals = m
                .iter()
                .map(|&m| ghw_bruteforce(&code, m as usize, budget))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(lines(vals))
        }
        Command::Rghw { pair, m } => {
            let pair = read_pair(&pair)?;
            if m.is_empty() {
                return Ok(lines(rghw_hierarchy(&pair, budget)?.values));
            }
            check_orders(&m, pair.ell(), "m")?;
            let vals = m
                .iter()
                .map(|&m| rghw_bruteforce(&pair, m as usize, budget))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(lines(vals))
        }
        Command::Rdlp { pair, d } => {
            let pair = read_pair(&pair)?;
            check_orders(&d, pair.length(), "d")?;
            let profile = rdlp_profile(&pair, budget)?;
            if d.is_empty() {
                return Ok(lines(profile));
            }
            Ok(lines(d.iter().map(|&d| profile[d as usize - 1])))
        }
        Command::Thresholds { pair, verify } => {
            let scheme = build_scheme(read_pair(&pair)?);
            let profile = thresholds(&scheme, budget)?;
            let mut out = String::from("m t r\n");
            for (i, (t, r)) in profile.t.iter().zip(&profile.r).enumerate() {
                let _ = writeln!(out, "{} {t} {r}", i + 1);
            }
            if verify {
                let check = verify_thresholds(&scheme, budget)?;
                if !check.agree() {
                    return Err(CliError::Rejected(format!(
                        "thresholds disagree: weights give {:?}, mutual information gives {:?}",
                        check.via_rghw, check.by_definition
                    )));
                }
                out.push_str("verified\n");
            }
            Ok(out)
        }
        Command::Mi { pair, set } => {
            let scheme = build_scheme(read_pair(&pair)?);
            let idx = zero_based(&set, scheme.length())?;
            let mi = mutual_information_exhaustive(&scheme, &idx, budget)?;
            if (mi - mi.round()).abs() <= INTEGRALITY_TOL {
                return Ok(format!("{}\n", mi.round() as i64));
            }
            Ok(format!("{}\n", fmt_real(mi)))
        }
        Command::Share {
            pair,
            secret,
            randomness,
            seed,
        } => {
            let scheme = build_scheme(read_pair(&pair)?);
            let s = parse_elems(&secret, &scheme, "--secret")?;
            let shares = match randomness {
                Some(r) => {
                    let r = parse_elems(&r, &scheme, "--randomness")?;
                    scheme.share_with_randomness(&s, &r)?
                }
                None => scheme.share_random(&s, &mut ChaCha8Rng::seed_from_u64(seed))?,
            };
            Ok(format!("{}\n", join(&shares)))
        }
        Command::Reconstruct {
            pair,
            indices,
            shares,
        } => {
            let scheme = build_scheme(read_pair(&pair)?);
            let idx = zero_based(&indices, scheme.length())?;
            let values = parse_elems(&shares, &scheme, "--shares")?;
            if values.len() != idx.len() {
                return Err(usage(format!(
                    "{} indices but {} share values",
                    idx.len(),
                    values.len()
                )));
            }
            match scheme.reconstruct(&idx, &values)? {
                Reconstruction::Exact(s) => Ok(format!("{}\n", join(&s))),
                Reconstruction::Underdetermined {
                    particular,
                    directions,
                    known_qbits,
                } => {
                    let mut out = format!("underdetermined known_qbits={known_qbits}\n");
                    let _ = writeln!(out, "particular {}", join(&particular));
                    for d in &directions {
                        let _ = writeln!(out, "direction {}", join(d));
                    }
                    Ok(out)
                }
            }
        }
        Command::SemigroupBound {
            gens,
            mu1,
            mu2,
            n,
            m,
            dual,
        } => {
            let h = NumericalSemigroup::from_generators(&gens)?;
            let value = if dual {
                theorem44_dual_bound(&h, mu1, mu2, m as usize, budget)?
            } else {
                let n = n.ok_or_else(|| usage("--n is required for the primary bound"))?;
                theorem44_primary_bound(&h, mu1, mu2, n, m as usize, budget)?
            };
            Ok(format!("{value}\n"))
        }
        Command::Hermitian { q0, mu, out } => emit_code(&hermitian_code(q0, mu)?, out.as_deref()),
        Command::Rs {
            q,
            n,
            k,
            points,
            out,
        } => {
            let points: Vec<Elem> = if points.is_empty() {
                (0..n).map(|x| x as Elem).collect()
            } else {
                points
            };
            emit_code(&reed_solomon(q, n, k, &points)?, out.as_deref())
        }
        Command::GsParams { q, i } => {
            let t = gs_tower_params(q, i)?;
            Ok(format!(
                "g={} c={} N>{}\n",
                t.genus, t.conductor, t.places_exceed
            ))
        }
        Command::Counts { which } => {
            let v = match which {
                CountsCommand::N1 { w, u, q } => n1(w, u, q)?,
                CountsCommand::N2 { w, u, v, q } => n2(w, u, v, q)?,
                CountsCommand::N3 { w, u, v, a, q } => n3(w, u, v, a, q)?,
                CountsCommand::N4 { n, k1, k2, d, s, q } => n4(n, k1, k2, d, s, q)?,
            };
            Ok(format!("{v}\n"))
        }
        Command::Existence {
            query,
            check,
            witness,
            trials,
            seed,
            out,
        } => {
            let query = ExistenceQuery {
                n: query.n,
                k1: query.k1,
                k2: query.k2,
                d: query.d,
                d_perp: query.d_perp,
                s: query.s,
                s_perp: query.s_perp,
                q: query.q,
            };
            let mut text = String::new();
            if check || !witness {
                let c = ryu3_check(&query)?;
                let _ = writeln!(text, "holds={}\nlhs={}\nrhs={}", c.holds, c.lhs, c.rhs);
            }
            if witness {
                match random_witness_search(&query, trials, seed, budget)? {
                    Some(w) => {
                        let _ = writeln!(
                            text,
                            "witness trials={} M_s={} M_s_perp={}",
                            w.trials, w.m_s, w.m_s_perp
                        );
                        if let Some(prefix) = out {
                            let base = prefix.display().to_string();
                            write_file(
                                Path::new(&format!("{base}.c1.txt")),
                                &w.pair.c1().to_text(),
                            )?;
                            write_file(
                                Path::new(&format!("{base}.c2.txt")),
                                &w.pair.c2().to_text(),
                            )?;
                        }
                    }
                    None => {
                        let _ = writeln!(text, "no witness in {trials} trials");
                    }
                }
            }
            Ok(text)
        }
        Command::Feasible {
            r1,
            r2,
            delta,
            delta_perp,
            tau,
            tau_perp,
            q,
            nmax,
        } => {
            let rates = RateQuery {
                r1,
                r2,
                delta,
                delta_perp,
                tau,
                tau_perp,
            };
            let f = theorem37_feasible(&rates, q, nmax)?;
            let n = f.smallest_n.map_or("none".to_string(), |n| n.to_string());
            Ok(format!("conditions={} smallest_n={n}\n", f.conditions_hold))
        }
        Command::AsymptoticSweep {
            q,
            r,
            rho,
            v,
            ihara: a,
            out,
        } => {
            let a = ihara(q, a)?;
            let rows = sweep(
                q,
                &a,
                &parse_grid(&r)?,
                &parse_grid(&rho)?,
                &parse_grid(&v)?,
            );
            let csv = sweep_csv(&rows);
            match out {
                Some(path) => {
                    write_file(&path, &csv)?;
                    Ok(format!("rows={}\n", rows.len()))
                }
                None => Ok(csv),
            }
        }
        Command::CompareRegions { q, r, v } => {
            let r = rational_arg(&r, "r")?;
            let mut out = interval("rho", &comparison_prop61(q, &r)?);
            out += &interval("V", &comparison_prop62(q, &r)?);
            let _ = writeln!(out, "V_min_length={}", fmt_rational(&prop62_min_length(q)?));
            if let Some(v) = v {
                let v = rational_arg(&v, "v")?;
                out += &interval("rho_given_V", &prop62_rho_interval(q, &r, &v)?);
            }
            Ok(out)
        }
        Command::FinalParams {
            theorem,
            q,
            r1,
            r2,
            eps,
            eps1,
            eps2,
            v,
            ihara: a,
        } => {
            let (e1, e2) = match (eps, eps1, eps2) {
                (Some(e), None, None) => (e.clone(), e),
                (None, Some(e1), Some(e2)) => (e1, e2),
                _ => return Err(usage("give --eps, or both --eps1 and --eps2")),
            };
            let query = FinalQuery {
                theorem: FinalTheorem::from_index(theorem).expect("range checked by the parser"),
                q,
                r1: rational_arg(&r1, "r1")?,
                r2: rational_arg(&r2, "r2")?,
                eps1: rational_arg(&e1, "eps1")?,
                eps2: rational_arg(&e2, "eps2")?,
                v: v.map(|v| rational_arg(&v, "v")).transpose()?,
                ihara_override: a,
            };
            let p = final_params(&query)?;
            Ok(format!(
                "lambda1={} lambda2={} floor_ok={}\n",
                fmt_rational(&p.lambda1),
                fmt_rational(&p.lambda2),
                p.floor_ok
            ))
        }
    }
}
