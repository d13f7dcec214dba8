#![allow(dead_code)]

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use rampw_core::field::{Elem, FieldSpec, LinearCode, Matrix, NestedCodePair};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus")
}

/// Every code file in the fixture corpus, sorted by name.
pub fn load_corpus() -> Vec<(String, LinearCode)> {
    let mut entries: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let code = LinearCode::parse(&fs::read_to_string(&p).unwrap())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, code)
        })
        .collect()
}

/// Nested pairs `C ⊋ span(first j RREF rows)` for `j = 0..k`.
pub fn prefix_pairs(code: &LinearCode) -> Vec<NestedCodePair> {
    let rows = code.generator().row_vecs();
    (0..code.dimension())
        .map(|j| {
            let c2 = LinearCode::from_rows(code.field(), code.length(), &rows[..j]).unwrap();
            NestedCodePair::new(code.clone(), c2).unwrap()
        })
        .collect()
}

/// All `q^k` codewords, by running through every message.
pub fn all_codewords(code: &LinearCode) -> Vec<Vec<Elem>> {
    let f = code.field();
    let q = f.order();
    let k = code.dimension();
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let msg: Vec<Elem> = (0..k)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    d as Elem
                })
                .collect();
            code.encode(&msg)
        })
        .collect()
}

/// Minimum Hamming weight over the nonzero codewords.
pub fn min_distance(code: &LinearCode) -> usize {
    all_codewords(code)
        .iter()
        .map(|c| c.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
        .unwrap()
}

/// Number of u-dimensional subspaces of GF(2)^w, by collecting the distinct
/// spans of all u-tuples of vectors.
pub fn count_subspaces_gf2(w: usize, u: usize) -> usize {
    fn span(vs: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32];
        for &v in vs {
            let more: Vec<u32> = out.iter().map(|&x| x ^ v).collect();
            out.extend(more);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
    fn rec(w: usize, u: usize, start: u32, chosen: &mut Vec<u32>, seen: &mut HashSet<Vec<u32>>) {
        if chosen.len() == u {
            let s = span(chosen);
            if s.len() == 1 << u {
                seen.insert(s);
            }
            return;
        }
        for v in start..(1u32 << w) {
            chosen.push(v);
            rec(w, u, v + 1, chosen, seen);
            chosen.pop();
        }
    }
    let mut seen = HashSet::new();
    rec(w, u, 1, &mut Vec::new(), &mut seen);
    seen.len()
}

/// A random k x n matrix of rank k.
pub fn random_full_rank<R: FnMut(usize) -> usize>(
    field: &FieldSpec,
    k: usize,
    n: usize,
    rand: &mut R,
) -> Matrix {
    loop {
        let rows: Vec<Vec<Elem>> = (0..k)
            .map(|_| (0..n).map(|_| rand(field.order()) as Elem).collect())
            .collect();
        let m = Matrix::from_rows(field, n, &rows).unwrap();
        if m.rank() == k {
            return m;
        }
    }
}
