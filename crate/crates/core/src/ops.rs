//! Arithmetic operation tallies used for complexity accounting.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Counted real-valued operations of a decoding run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    /// Additions and subtractions.
    pub add_sub: u64,
    /// Comparisons (max/min selection, sign tests folded into products).
    pub compare: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.add_sub + self.compare
    }
}

impl Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount {
            add_sub: self.add_sub + rhs.add_sub,
            compare: self.compare + rhs.compare,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = *self + rhs;
    }
}

impl Sum for OpCount {
    fn sum<I: Iterator<Item = OpCount>>(iter: I) -> OpCount {
        iter.fold(OpCount::default(), Add::add)
    }
}

/// Levels of a balanced reduction tree over `len` values.
pub fn tree_depth(len: usize) -> u64 {
    if len <= 1 {
        0
    } else {
        (usize::BITS - (len - 1).leading_zeros()) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_depths() {
        assert_eq!(tree_depth(1), 0);
        assert_eq!(tree_depth(2), 1);
        assert_eq!(tree_depth(3), 2);
        assert_eq!(tree_depth(8), 3);
        assert_eq!(tree_depth(9), 4);
    }
}
