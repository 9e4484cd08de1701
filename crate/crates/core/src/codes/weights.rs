//! Exhaustive weight enumeration.
//!
//! The message space GF(q)^k is viewed as GF(p)^{k*e} (q = p^e) with basis
//! rows b X^i g(X) for b running over the polynomial basis of GF(q). Words are
//! kept as digit vectors over GF(p) and visited in odometer order, so each
//! step adds one basis row. The space is split on the leading digits into
//! chunks that run in parallel; histograms are summed, so the result does not
//! depend on the number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::CyclicCode;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::poly::Poly;

/// Default bound on enumerated codewords.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 26;

/// Enumerations above this size log progress.
pub const PROGRESS_THRESHOLD: u128 = 1 << 20;

/// Target number of parallel chunks.
const CHUNKS: u128 = 256;

pub(super) fn weight_distribution(code: &CyclicCode, bound: u128) -> Result<Vec<u64>> {
    weight_distribution_with(code, bound, |_, _| {})
}

/// Like [`CyclicCode::weight_distribution`], reporting (chunks done, chunks total).
pub fn weight_distribution_with(
    code: &CyclicCode,
    bound: u128,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<Vec<u64>> {
    let field = code.field();
    let n = code.n() as usize;
    let p = field.characteristic() as u32;
    let e = field.degree() as usize;
    let k = code.dimension();
    let size = (field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { what: "codeword enumeration", size, bound });
    }
    let mut dist = vec![0u64; n + 1];
    if k == 0 {
        dist[0] = 1;
        return Ok(dist);
    }

    // basis rows as GF(p) digit vectors of length n * e
    let g = code.gen_poly();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(k * e);
    for i in 0..k {
        for b in 0..e {
            let scalar = Elem(p.pow(b as u32));
            let row = Poly::monomial(field, scalar, i).mul(g)?.reduce_cyclic(n as u64).to_vec(n);
            rows.push(row.iter().flat_map(|&c| field.coeffs(c)).collect());
        }
    }
    let digits = rows.len();

    // leading digits fix the chunk; the rest are enumerated inside it
    let mut lead = 0usize;
    let mut chunks = 1u128;
    while lead < digits && chunks < CHUNKS {
        chunks *= p as u128;
        lead += 1;
    }
    let (inner_rows, lead_rows) = rows.split_at(digits - lead);
    let chunk_count = chunks as usize;
    let report = size > PROGRESS_THRESHOLD;
    let done = AtomicUsize::new(0);

    let partials: Vec<Vec<u64>> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let mut word = vec![0u32; n * e];
            let mut c = chunk as u32;
            for row in lead_rows {
                let d = c % p;
                c /= p;
                for (w, &r) in word.iter_mut().zip(row) {
                    *w = ((*w as u64 + d as u64 * r as u64) % p as u64) as u32;
                }
            }
            let hist = enumerate_chunk(word, inner_rows, p, e, n);
            if report {
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                progress(finished, chunk_count);
                if finished.is_multiple_of((chunk_count / 8).max(1)) {
                    log::info!("weight enumeration: {finished}/{chunk_count} chunks");
                }
            }
            hist
        })
        .collect();
    for part in partials {
        for (a, b) in dist.iter_mut().zip(part) {
            *a += b;
        }
    }
    Ok(dist)
}

fn enumerate_chunk(mut word: Vec<u32>, rows: &[Vec<u32>], p: u32, e: usize, n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut digits = vec![0u32; rows.len()];
    let weight = |w: &[u32]| -> usize {
        if e == 1 {
            w.iter().filter(|&&x| x != 0).count()
        } else {
            w.chunks_exact(e).filter(|c| c.iter().any(|&x| x != 0)).count()
        }
    };
    loop {
        hist[weight(&word)] += 1;
        let mut j = 0;
        loop {
            if j == rows.len() {
                return hist;
            }
            for (w, &r) in word.iter_mut().zip(&rows[j]) {
                let s = *w + r;
                *w = if s >= p { s - p } else { s };
            }
            digits[j] += 1;
            if digits[j] < p {
                break;
            }
            // p additions of a row cancel out
            digits[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::codes::CyclicCode;
    use crate::gf::{Field, RootOfUnity};

    /// Direct enumeration: every message vector times the generator polynomial.
    fn naive(code: &CyclicCode) -> Vec<u64> {
        let field = code.field();
        let k = code.dimension();
        let q = field.order();
        let mut dist = vec![0u64; code.n() as usize + 1];
        for idx in 0..q.pow(k as u32) {
            let mut m = Vec::with_capacity(k);
            let mut x = idx;
            for _ in 0..k {
                m.push(crate::gf::Elem((x % q) as u32));
                x /= q;
            }
            dist[code.encode(&m).unwrap().weight()] += 1;
        }
        dist
    }

    #[test]
    fn matches_naive_enumeration() {
        for (q, n, support) in [
            (5u64, 8u64, vec![0u64, 1, 4, 5]),
            (3, 10, vec![0, 1, 3, 7, 9]),
            (5, 6, vec![0, 1, 5]),
            (9, 8, vec![0, 1, 3, 4]),
            (4, 5, vec![0, 1, 4]),
            (2, 7, vec![0, 1, 2, 4]),
        ] {
            let root = RootOfUnity::new(&Field::of_order(q).unwrap(), n, None).unwrap();
            let Ok(code) = CyclicCode::from_support(&support, &root) else {
                panic!("q={q} n={n} {support:?} not invariant");
            };
            let dist = code.weight_distribution(1 << 20).unwrap();
            assert_eq!(dist, naive(&code), "q={q} n={n}");
            assert_eq!(dist.iter().sum::<u64>(), q.pow(support.len() as u32));
            assert_eq!(dist[0], 1);
        }
    }
}
