//! Brute-force reference decoders for the integration tests.
//!
//! These work directly from an explicit codebook and never touch the
//! transform-based decoders they are compared against.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use rmprod::RmCode;

/// Codebook of `code` as `(info bits, codeword)` pairs, entry `j` holding the
/// MSB-first expansion of `j`. Encoded here by summing generator rows.
pub fn codebook(code: &RmCode) -> Vec<(Vec<u8>, Vec<u8>)> {
    let g = code.generator();
    (0..1usize << code.k())
        .map(|j| {
            let info: Vec<u8> = (0..code.k())
                .map(|i| ((j >> (code.k() - 1 - i)) & 1) as u8)
                .collect();
            let mut c = vec![0u8; code.n()];
            for (i, _) in info.iter().enumerate().filter(|(_, &b)| b == 1) {
                for (x, cx) in c.iter_mut().enumerate() {
                    *cx ^= g.get(i, x);
                }
            }
            (info, c)
        })
        .collect()
}

/// `⟨l, 1 - 2c⟩`.
pub fn correlation(l: &[f64], c: &[u8]) -> f64 {
    l.iter()
        .zip(c)
        .map(|(&x, &b)| x * (1.0 - 2.0 * f64::from(b)))
        .sum()
}

/// Exhaustive ML decision; `None` when the best correlation is not unique
/// by at least `margin`.
pub fn ml_unique(l: &[f64], book: &[(Vec<u8>, Vec<u8>)], margin: f64) -> Option<usize> {
    let corr: Vec<f64> = book.iter().map(|(_, c)| correlation(l, c)).collect();
    let best = (0..corr.len()).fold(0, |b, j| if corr[j] > corr[b] { j } else { b });
    let runner_up = corr
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != best)
        .map(|(_, &c)| c)
        .fold(f64::NEG_INFINITY, f64::max);
    (corr[best] - runner_up > margin).then_some(best)
}

/// Max-log information-bit LLRs by exhaustive search.
pub fn max_log_info(l: &[f64], book: &[(Vec<u8>, Vec<u8>)]) -> Vec<f64> {
    let k = book[0].0.len();
    (0..k)
        .map(|i| {
            let mut best = [f64::NEG_INFINITY; 2];
            for (u, c) in book {
                let v = correlation(l, c);
                let slot = &mut best[u[i] as usize];
                *slot = slot.max(v);
            }
            best[0] - best[1]
        })
        .collect()
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, len: usize, scale: f64) -> Vec<f64> {
    (0..len)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
