//! Soft-input soft-output decoding of first-order RM codes.
//!
//! [`soft_fht_decode`] runs the transform, extracts max-log information-bit
//! LLRs from the Hadamard spectrum, and maps them back to coded-bit LLRs with
//! min-sum. [`BruteForceMap`] computes the exact max-log quantities by
//! correlating against every codeword; it serves as the reference for the
//! fast path and as the component decoder for small higher-order codes.

use crate::error::{Error, Result};
use crate::fht::fht_in_place;
use crate::gf2::BitVector;
use crate::ops::{tree_depth, OpCount};
use crate::rm::{RmCode, MAX_M};

/// Largest dimension accepted by the brute-force soft-MAP decoder.
pub const MAX_BRUTE_FORCE_K: usize = 16;

#[inline]
fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Index sets for RM(m, 1), fixed for the lifetime of a decoder.
///
/// Information bits are numbered `0..=m`, bit 0 being the coefficient of the
/// all-one generator row. Hadamard index `a` corresponds to the codeword with
/// information word `0‖bin(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderTables {
    m: usize,
    n: usize,
    /// `zero_sets[i - 1]`: Hadamard indices whose information bit `i` is 0.
    zero_sets: Vec<Vec<usize>>,
    one_sets: Vec<Vec<usize>>,
    /// Generator rows with a 1 in each column.
    column_supports: Vec<Vec<usize>>,
    index_to_info: Vec<BitVector>,
}

impl FirstOrderTables {
    /// Precomputes the tables by enumerating the first `n` information words
    /// in binary counting order.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter(
                "first-order tables need m >= 1".to_string(),
            ));
        }
        if m > MAX_M {
            return Err(Error::SizeLimit {
                what: "m",
                value: m,
                max: MAX_M,
            });
        }
        let code = RmCode::new(m, 1)?;
        let n = code.n();
        let index_to_info: Vec<BitVector> = (0..n as u64)
            .map(|j| BitVector::from_integer(j, m + 1))
            .collect();
        let mut zero_sets = vec![Vec::with_capacity(n / 2); m];
        let mut one_sets = vec![Vec::with_capacity(n / 2); m];
        for (a, info) in index_to_info.iter().enumerate() {
            for i in 1..=m {
                if info.as_slice()[i] == 0 {
                    zero_sets[i - 1].push(a);
                } else {
                    one_sets[i - 1].push(a);
                }
            }
        }
        let column_supports = (0..n).map(|j| code.generator().column_support(j)).collect();
        Ok(Self {
            m,
            n,
            zero_sets,
            one_sets,
            column_supports,
            index_to_info,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hadamard indices with information bit `i` equal to 0, for `1 ≤ i ≤ m`.
    pub fn zero_set(&self, i: usize) -> &[usize] {
        &self.zero_sets[i - 1]
    }

    pub fn one_set(&self, i: usize) -> &[usize] {
        &self.one_sets[i - 1]
    }

    pub fn column_support(&self, j: usize) -> &[usize] {
        &self.column_supports[j]
    }

    /// Information word of the codeword at Hadamard index `a` (leading bit 0).
    pub fn info_word(&self, a: usize) -> &BitVector {
        &self.index_to_info[a]
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}

/// Information-bit LLRs from a Hadamard spectrum.
pub fn info_bit_llrs(l_wh: &[f64], tables: &FirstOrderTables) -> Result<Vec<f64>> {
    check_len(tables.n, l_wh.len())?;
    let mut out = vec![0.0; tables.m + 1];
    info_bit_llrs_into(l_wh, tables, &mut out, &mut OpCount::default());
    Ok(out)
}

fn info_bit_llrs_into(l_wh: &[f64], t: &FirstOrderTables, out: &mut [f64], ops: &mut OpCount) {
    let n = t.n as u64;
    // max(l_wh) - max(-l_wh)
    let hi = l_wh.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = l_wh.iter().copied().fold(f64::INFINITY, f64::min);
    out[0] = hi + lo;
    ops.compare += 2 * (n - 1);
    ops.add_sub += 1;

    let max_abs = |set: &[usize]| set.iter().map(|&a| l_wh[a].abs()).fold(0.0, f64::max);
    for (i, o) in out.iter_mut().enumerate().take(t.m + 1).skip(1) {
        *o = max_abs(t.zero_set(i)) - max_abs(t.one_set(i));
    }
    ops.compare += t.m as u64 * (n - 2);
    ops.add_sub += t.m as u64;
}

/// Coded-bit LLRs by min-sum over each column support.
pub fn encoded_bit_llrs(l_inf: &[f64], tables: &FirstOrderTables) -> Result<Vec<f64>> {
    check_len(tables.m + 1, l_inf.len())?;
    let mut out = vec![0.0; tables.n];
    encoded_bit_llrs_into(l_inf, tables, &mut out, &mut OpCount::default());
    Ok(out)
}

fn encoded_bit_llrs_into(l_inf: &[f64], t: &FirstOrderTables, out: &mut [f64], ops: &mut OpCount) {
    for (o, support) in out.iter_mut().zip(&t.column_supports) {
        let mut s = 1.0;
        let mut mag = f64::INFINITY;
        for &i in support {
            s *= sign(l_inf[i]);
            mag = mag.min(l_inf[i].abs());
        }
        *o = s * mag;
        // min selection and sign folding, one each per extra element
        ops.compare += 2 * (support.len() as u64 - 1);
    }
}

/// Full soft-FHT pipeline: transform, information-bit LLRs, coded-bit LLRs.
pub fn soft_fht_decode(l: &[f64], tables: &FirstOrderTables) -> Result<Vec<f64>> {
    let mut out = l.to_vec();
    soft_fht_in_place(&mut out, tables, &mut OpCount::default())?;
    Ok(out)
}

/// In-place variant; `io` holds channel LLRs on entry and coded-bit LLRs on
/// return.
pub fn soft_fht_in_place(
    io: &mut [f64],
    tables: &FirstOrderTables,
    ops: &mut OpCount,
) -> Result<()> {
    check_len(tables.n, io.len())?;
    let stats = fht_in_place(io)?;
    ops.add_sub += stats.add_sub;
    let mut l_inf = vec![0.0; tables.m + 1];
    info_bit_llrs_into(io, tables, &mut l_inf, ops);
    encoded_bit_llrs_into(&l_inf, tables, io, ops);
    Ok(())
}

/// Dependency depth of soft-FHT: transform stages, the max trees over the
/// spectrum, one subtraction and the min tree over a column support.
pub fn soft_fht_depth(m: usize) -> u64 {
    m as u64 + tree_depth(1 << m) + 1 + tree_depth(m + 1)
}

/// Output of exhaustive max-log decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftMapOutput {
    pub l_inf: Vec<f64>,
    pub l_enc: Vec<f64>,
}

/// Exhaustive max-log soft decoder over an explicit codebook.
#[derive(Debug, Clone)]
pub struct BruteForceMap {
    n: usize,
    k: usize,
    /// Codewords in enumeration order (entry `j` encodes `bin_k(j)`).
    codewords: Vec<BitVector>,
}

impl BruteForceMap {
    pub fn new(code: &RmCode) -> Result<Self> {
        if code.k() > MAX_BRUTE_FORCE_K {
            return Err(Error::SizeLimit {
                what: "k",
                value: code.k(),
                max: MAX_BRUTE_FORCE_K,
            });
        }
        Ok(Self {
            n: code.n(),
            k: code.k(),
            codewords: code.enumerate_codewords()?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Correlations `⟨l, 1 - 2c⟩` for every codeword.
    pub fn correlations(&self, l: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, l.len())?;
        Ok(self.correlate(l, &mut OpCount::default()))
    }

    fn correlate(&self, l: &[f64], ops: &mut OpCount) -> Vec<f64> {
        ops.add_sub += self.codewords.len() as u64 * (self.n as u64 - 1);
        self.codewords
            .iter()
            .map(|c| {
                c.as_slice()
                    .iter()
                    .zip(l)
                    .map(|(&b, &x)| if b == 0 { x } else { -x })
                    .sum()
            })
            .collect()
    }

    /// Max-log LLR of every information bit and every coded bit.
    pub fn decode(&self, l: &[f64]) -> Result<SoftMapOutput> {
        check_len(self.n, l.len())?;
        Ok(self.decode_counted(l, &mut OpCount::default()))
    }

    fn decode_counted(&self, l: &[f64], ops: &mut OpCount) -> SoftMapOutput {
        let corr = self.correlate(l, ops);
        let k = self.k;
        let l_inf = (0..k)
            .map(|i| max_log_split(&corr, |j| (j >> (k - 1 - i)) & 1 == 1, ops))
            .collect();
        let l_enc = (0..self.n)
            .map(|pos| max_log_split(&corr, |j| self.codewords[j].as_slice()[pos] == 1, ops))
            .collect();
        SoftMapOutput { l_inf, l_enc }
    }

    /// Coded-bit LLRs written over `io`.
    pub fn decode_in_place(&self, io: &mut [f64], ops: &mut OpCount) -> Result<()> {
        check_len(self.n, io.len())?;
        let corr = self.correlate(io, ops);
        for (pos, o) in io.iter_mut().enumerate() {
            *o = max_log_split(&corr, |j| self.codewords[j].as_slice()[pos] == 1, ops);
        }
        Ok(())
    }

    /// Index of the best-correlated codeword; ties go to the smallest index.
    pub fn ml_index(&self, l: &[f64], ops: &mut OpCount) -> Result<usize> {
        check_len(self.n, l.len())?;
        let corr = self.correlate(l, ops);
        ops.compare += corr.len() as u64 - 1;
        let mut best = 0;
        for (j, &c) in corr.iter().enumerate().skip(1) {
            if c > corr[best] {
                best = j;
            }
        }
        Ok(best)
    }

    pub fn codeword(&self, j: usize) -> &BitVector {
        &self.codewords[j]
    }

    /// Correlation tree, max tree over half the codebook, one subtraction.
    pub fn depth(&self) -> u64 {
        tree_depth(self.n) + tree_depth(self.codewords.len() / 2) + 1
    }
}

/// `max_{one(j) false} corr[j] - max_{one(j) true} corr[j]`.
fn max_log_split(corr: &[f64], one: impl Fn(usize) -> bool, ops: &mut OpCount) -> f64 {
    let mut best0 = f64::NEG_INFINITY;
    let mut best1 = f64::NEG_INFINITY;
    for (j, &c) in corr.iter().enumerate() {
        if one(j) {
            best1 = best1.max(c);
        } else {
            best0 = best0.max(c);
        }
    }
    ops.compare += corr.len() as u64 - 2;
    ops.add_sub += 1;
    best0 - best1
}

/// Exhaustive max-log decoding of `l` over `code`.
pub fn brute_force_soft_map(l: &[f64], code: &RmCode) -> Result<SoftMapOutput> {
    BruteForceMap::new(code)?.decode(l)
}
