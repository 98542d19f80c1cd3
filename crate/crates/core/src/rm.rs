//! Reed–Muller codes RM(m, r) in their canonical generator form.
//!
//! The generator is laid out block by block: the all-one row, then the `m`
//! degree-one rows (column `x` of that block is the binary expansion of `x`,
//! most significant bit in the first row), then for each degree `i ≤ r` the
//! element-wise products of the `i`-subsets of degree-one rows, subsets in
//! lexicographic order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest `m` for which dense `2^m`-column matrices are built.
pub const MAX_M: usize = 16;
/// Largest dimension for exhaustive codeword enumeration.
pub const MAX_ENUMERATION_K: usize = 20;

/// `[[1,0],[1,1]]^{⊗m}`, a `2^m × 2^m` lower-triangular matrix.
///
/// Entry `(i, j)` is one exactly when the bits of `j` are a subset of the
/// bits of `i`.
pub fn polarization_matrix(m: usize) -> Result<BitMatrix> {
    if m > MAX_M {
        return Err(Error::SizeLimit {
            what: "m",
            value: m,
            max: MAX_M,
        });
    }
    let n = 1usize << m;
    let mut p = BitMatrix::zeros(n, n)?;
    for i in 0..n {
        for j in 0..n {
            if j & !i == 0 {
                p.set(i, j, 1);
            }
        }
    }
    Ok(p)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of RM(m, r): `Σ_{i=0}^{r} C(m, i)`.
pub fn rm_dimension(m: usize, r: usize) -> usize {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

/// All `size`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            go(v + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, size, &mut Vec::new(), &mut out);
    out
}

/// A Reed–Muller code with its canonical generator matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RmCode {
    m: usize,
    r: usize,
    n: usize,
    k: usize,
    generator: BitMatrix,
    weight_profile: Vec<usize>,
}

impl RmCode {
    /// Builds RM(m, r) with the canonical row order.
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if r > m {
            return Err(Error::Parameter(format!(
                "RM order r={r} must lie in [0, m={m}]"
            )));
        }
        if m > MAX_M {
            return Err(Error::SizeLimit {
                what: "m",
                value: m,
                max: MAX_M,
            });
        }
        let n = 1usize << m;
        let k = rm_dimension(m, r);
        let mut generator = BitMatrix::zeros(k, n)?;
        let mut row = 0;
        for degree in 0..=r {
            for subset in subsets(m, degree) {
                for x in 0..n {
                    // product of degree-one rows t: bit (m-1-t) of x
                    let bit = subset.iter().all(|&t| (x >> (m - 1 - t)) & 1 == 1);
                    generator.set(row, x, bit as u8);
                }
                row += 1;
            }
        }
        let weight_profile = (0..k).map(|i| generator.row_weight(i)).collect();
        Ok(Self {
            m,
            r,
            n,
            k,
            generator,
            weight_profile,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Blocklength `2^m`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Designed minimum distance `2^{m-r}`.
    pub fn d(&self) -> usize {
        1 << (self.m - self.r)
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Hamming weight of each generator row, in row order.
    pub fn weight_profile(&self) -> &[usize] {
        &self.weight_profile
    }

    /// `c = u·G` over GF(2).
    pub fn encode(&self, u: &BitVector) -> Result<BitVector> {
        self.generator.left_mul(u.as_slice())
    }

    /// Encodes into a caller-provided slice; `u` holds `k` bits.
    pub(crate) fn encode_into(&self, u: &[u8], out: &mut [u8]) -> Result<()> {
        let c = self.generator.left_mul(u)?;
        out.copy_from_slice(c.as_slice());
        Ok(())
    }

    /// All `2^k` codewords; entry `j` encodes the k-bit expansion of `j`,
    /// most significant bit first.
    pub fn enumerate_codewords(&self) -> Result<Vec<BitVector>> {
        if self.k > MAX_ENUMERATION_K {
            return Err(Error::SizeLimit {
                what: "k",
                value: self.k,
                max: MAX_ENUMERATION_K,
            });
        }
        (0..1u64 << self.k)
            .map(|j| self.encode(&BitVector::from_integer(j, self.k)))
            .collect()
    }

    /// Minimum nonzero codeword weight by exhaustive enumeration.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        self.generator.min_distance_bruteforce(MAX_ENUMERATION_K)
    }
}

impl fmt::Display for RmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rm({},{})", self.m, self.r)
    }
}

impl fmt::Debug for RmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RmCode(m={}, r={}, n={}, k={})",
            self.m, self.r, self.n, self.k
        )
    }
}

/// Parses `rm(m,r)`, case-insensitively, with optional whitespace.
impl FromStr for RmCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        let inner = compact
            .strip_prefix("rm(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| parse_err("expected the form rm(m,r)"))?;
        let (m, r) = inner
            .split_once(',')
            .ok_or_else(|| parse_err("expected two comma-separated parameters"))?;
        let m: i64 = m.parse().map_err(|_| parse_err("m is not an integer"))?;
        let r: i64 = r.parse().map_err(|_| parse_err("r is not an integer"))?;
        if m < 0 || r < 0 || r > m {
            return Err(Error::Parameter(format!(
                "RM order r={r} must lie in [0, m={m}] with m >= 0"
            )));
        }
        RmCode::new(m as usize, r as usize)
    }
}
