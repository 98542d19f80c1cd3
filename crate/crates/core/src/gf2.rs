//! Dense GF(2) vectors and matrices.
//!
//! Matrix rows are packed into `u64` words; bit `j` of a row lives in word
//! `j / 64` at position `j % 64`.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A vector of bits, one `u8` per entry (always 0 or 1).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    /// All-zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Builds a vector from values that must all be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parameter(format!("bit value {b} is not 0 or 1")));
        }
        Ok(Self(bits))
    }

    /// Bits of `value`, most significant first, in `width` positions.
    pub fn from_integer(value: u64, width: usize) -> Self {
        Self(
            (0..width)
                .map(|i| ((value >> (width - 1 - i)) & 1) as u8)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(BitVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    fn pack(&self) -> Vec<u64> {
        let mut words = vec![0u64; words_for(self.len())];
        for (j, &b) in self.0.iter().enumerate() {
            if b == 1 {
                words[j / WORD] |= 1 << (j % WORD);
            }
        }
        words
    }
}

impl From<BitVector> for Vec<u8> {
    fn from(v: BitVector) -> Self {
        v.0
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over GF(2) with word-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl BitMatrix {
    /// All-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Parameter(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        Ok(Self {
            rows,
            cols,
            data: vec![vec![0; words_for(cols)]; rows],
        })
    }

    /// Builds a matrix from explicit rows of equal length.
    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
            m.data[i] = r.pack();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        ((self.data[i][j / WORD] >> (j % WORD)) & 1) as u8
    }

    pub fn set(&mut self, i: usize, j: usize, bit: u8) {
        let mask = 1u64 << (j % WORD);
        if bit & 1 == 1 {
            self.data[i][j / WORD] |= mask;
        } else {
            self.data[i][j / WORD] &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector((0..self.cols).map(|j| self.get(i, j)).collect())
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.data[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the rows with a 1 in column `j`.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j) == 1).collect()
    }

    /// Row-vector product `u · self` over GF(2).
    pub fn left_mul(&self, u: &[u8]) -> Result<BitVector> {
        if u.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                got: u.len(),
            });
        }
        let mut acc = vec![0u64; words_for(self.cols)];
        for (row, _) in self.data.iter().zip(u).filter(|(_, &b)| b == 1) {
            for (a, w) in acc.iter_mut().zip(row) {
                *a ^= w;
            }
        }
        Ok(self.unpack(&acc))
    }

    /// Matrix keeping only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<BitMatrix> {
        let mut out = BitMatrix::zeros(self.rows, cols.len())?;
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &BitMatrix) -> Result<BitMatrix> {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols)?;
        for i in 0..self.rows {
            for j in (0..self.cols).filter(|&j| self.get(i, j) == 1) {
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.set(i * other.rows + p, j * other.cols + q, other.get(p, q));
                    }
                }
            }
        }
        Ok(out)
    }

    fn unpack(&self, words: &[u64]) -> BitVector {
        BitVector(
            (0..self.cols)
                .map(|j| ((words[j / WORD] >> (j % WORD)) & 1) as u8)
                .collect(),
        )
    }

    fn echelon(&self) -> Echelon {
        Echelon::new(self.data.clone(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Whether `v` lies in the row space of this matrix.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        v.len() == self.cols && self.echelon().reduces_to_zero(v.pack())
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_includes(&self, other: &BitMatrix) -> bool {
        if other.cols != self.cols {
            return false;
        }
        let e = self.echelon();
        other.data.iter().all(|r| e.reduces_to_zero(r.clone()))
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.row_space_includes(other) && other.row_space_includes(self)
    }

    /// Lexicographically first set of `rank` linearly independent columns.
    pub fn information_set(&self) -> Vec<usize> {
        self.transpose().echelon().pivot_rows
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![vec![0; words_for(self.rows)]; self.cols],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) == 1 {
                    t.set(j, i, 1);
                }
            }
        }
        t
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = BitMatrix::zeros(n, n).ok()?;
        for i in 0..n {
            inv.set(i, i, 1);
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) == 1)?;
            a.data.swap(col, pivot);
            inv.data.swap(col, pivot);
            for r in 0..n {
                if r != col && a.get(r, col) == 1 {
                    let (src_a, src_i) = (a.data[col].clone(), inv.data[col].clone());
                    xor_into(&mut a.data[r], &src_a);
                    xor_into(&mut inv.data[r], &src_i);
                }
            }
        }
        Some(inv)
    }

    /// Minimum Hamming weight over all nonzero vectors of the row space.
    ///
    /// Rows must be linearly independent; enumeration visits `2^rows`
    /// combinations in Gray-code order.
    pub fn min_distance_bruteforce(&self, max_rows: usize) -> Result<usize> {
        if self.rows > max_rows {
            return Err(Error::SizeLimit {
                what: "code dimension",
                value: self.rows,
                max: max_rows,
            });
        }
        let mut acc = vec![0u64; words_for(self.cols)];
        let mut best = usize::MAX;
        for step in 1u64..(1u64 << self.rows) {
            let flip = step.trailing_zeros() as usize;
            xor_into(&mut acc, &self.data[flip]);
            let w: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
            best = best.min(w);
        }
        Ok(best)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Reduced row set with one pivot column per row.
struct Echelon {
    pivots: Vec<(usize, Vec<u64>)>,
    /// Original row index that contributed each pivot.
    pivot_rows: Vec<usize>,
}

impl Echelon {
    fn new(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut pivot_rows = Vec::new();
        for (idx, mut r) in rows.into_iter().enumerate() {
            for (p, pr) in &pivots {
                if (r[p / WORD] >> (p % WORD)) & 1 == 1 {
                    xor_into(&mut r, pr);
                }
            }
            if let Some(p) = (0..cols).find(|&j| (r[j / WORD] >> (j % WORD)) & 1 == 1) {
                pivots.push((p, r));
                pivot_rows.push(idx);
            }
        }
        Self { pivots, pivot_rows }
    }

    fn reduces_to_zero(&self, mut v: Vec<u64>) -> bool {
        for (p, pr) in &self.pivots {
            if (v[p / WORD] >> (p % WORD)) & 1 == 1 {
                xor_into(&mut v, pr);
            }
        }
        v.iter().all(|&w| w == 0)
    }
}
