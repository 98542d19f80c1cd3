//! Fast Walsh–Hadamard transform and hard-output ML decoding of RM(m, 1).
//!
//! The transform uses the Sylvester matrix `H = [[1,1],[1,-1]]^{⊗m}`, applied
//! as `m` butterfly stages. Under the canonical generator ordering, row `a`
//! of `H` is the ±1 image of the first-order codeword whose information word
//! is `0‖bin(a)`, and `-H` covers the codewords with the leading bit set.

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::ops::{tree_depth, OpCount};
use crate::soft_fht::FirstOrderTables;

/// Counters reported by one transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FhtStats {
    /// Additions plus subtractions; always `n·log2(n)`.
    pub add_sub: u64,
    /// Number of butterfly stages, the dependency depth of the transform.
    pub stages: u32,
}

/// Replaces `v` by `v·H` in place.
pub fn fht_in_place(v: &mut [f64]) -> Result<FhtStats> {
    let n = v.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "transform length {n} is not a power of two"
        )));
    }
    let mut add_sub = 0u64;
    let mut stages = 0u32;
    let mut half = 1;
    while half < n {
        for block in v.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        add_sub += n as u64;
        stages += 1;
        half *= 2;
    }
    Ok(FhtStats { add_sub, stages })
}

/// Entry `(a, x)` of the Sylvester Hadamard matrix.
#[inline]
pub fn hadamard_entry(a: usize, x: usize) -> f64 {
    if (a & x).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Explicit `2^m × 2^m` Sylvester matrix, row-major.
pub fn sylvester_matrix(m: usize) -> Vec<Vec<f64>> {
    let n = 1usize << m;
    (0..n)
        .map(|a| (0..n).map(|x| hadamard_entry(a, x)).collect())
        .collect()
}

/// Hard decision of a first-order ML decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlDecision {
    pub codeword: BitVector,
    /// `m + 1` information bits, leading bit first.
    pub info: BitVector,
    /// Hadamard column index of the winning correlation.
    pub index: usize,
    /// Whether the correlation at `index` was negative.
    pub negated: bool,
}

/// Index of the largest `|v[i]|`; ties go to the smallest index.
pub(crate) fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    let mut best_val = v[0].abs();
    for (i, x) in v.iter().enumerate().skip(1) {
        if x.abs() > best_val {
            best = i;
            best_val = x.abs();
        }
    }
    best
}

/// ML decoding of RM(m, 1) from channel LLRs via the transform.
pub fn fht_ml_decode(l: &[f64], tables: &FirstOrderTables) -> Result<MlDecision> {
    let mut work = l.to_vec();
    let mut ops = OpCount::default();
    decode_transformed(&mut work, tables, &mut ops)
}

/// Shared by the hard component decoder: transforms `work` in place, then
/// picks the Hadamard peak.
pub(crate) fn decode_transformed(
    work: &mut [f64],
    tables: &FirstOrderTables,
    ops: &mut OpCount,
) -> Result<MlDecision> {
    let n = tables.n();
    if work.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: work.len(),
        });
    }
    let stats = fht_in_place(work)?;
    ops.add_sub += stats.add_sub;
    ops.compare += (n - 1) as u64;
    let index = argmax_abs(work);
    let negated = work[index] < 0.0;
    let codeword: Vec<u8> = (0..n)
        .map(|x| (((index & x).count_ones() & 1) as u8) ^ negated as u8)
        .collect();
    let mut info = tables.info_word(index).clone().into_inner();
    info[0] = negated as u8;
    Ok(MlDecision {
        codeword: BitVector::from_bits(codeword)?,
        info: BitVector::from_bits(info)?,
        index,
        negated,
    })
}

/// Dependency depth of hard FHT decoding: transform stages plus the peak
/// search tree.
pub fn ml_decode_depth(m: usize) -> u64 {
    m as u64 + tree_depth(1 << m)
}
