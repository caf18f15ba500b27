//! Space-time multi-indices with the parabolic weighting (time counts twice).

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct MultiIndex {
    pub k1: u32,
    pub k2: u32,
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { k1: 0, k2: 0 };

    pub fn new(k1: u32, k2: u32) -> Self {
        MultiIndex { k1, k2 }
    }

    pub fn parabolic_degree(&self) -> u32 {
        2 * self.k1 + self.k2
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.k1 <= other.k1 && self.k2 <= other.k2
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if other.le(self) {
            Some(MultiIndex::new(self.k1 - other.k1, self.k2 - other.k2))
        } else {
            None
        }
    }

    /// All multi-indices with parabolic degree `< bound`.
    pub fn below_degree(bound: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for k1 in 0..=bound / 2 {
            for k2 in 0..=bound {
                let k = MultiIndex::new(k1, k2);
                if k.parabolic_degree() < bound {
                    out.push(k);
                }
            }
        }
        out.sort();
        out
    }

    /// All componentwise-sub-indices of `self` (inclusive bounds).
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(((self.k1 + 1) * (self.k2 + 1)) as usize);
        for a in 0..=self.k1 {
            for b in 0..=self.k2 {
                out.push(MultiIndex::new(a, b));
            }
        }
        out
    }
}

impl Add for MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: MultiIndex) -> MultiIndex {
        MultiIndex::new(self.k1 + rhs.k1, self.k2 + rhs.k2)
    }
}

impl Sub for MultiIndex {
    type Output = MultiIndex;
    fn sub(self, rhs: MultiIndex) -> MultiIndex {
        self.checked_sub(&rhs).expect("multi-index underflow")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k1, self.k2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_is_additive() {
        let a = MultiIndex::new(1, 2);
        let b = MultiIndex::new(0, 3);
        assert_eq!(
            (a + b).parabolic_degree(),
            a.parabolic_degree() + b.parabolic_degree()
        );
        assert_eq!(a.parabolic_degree(), 4);
    }

    #[test]
    fn below_degree_counts() {
        // degree < 2: (0,0) and (0,1)
        assert_eq!(
            MultiIndex::below_degree(2),
            vec![MultiIndex::new(0, 0), MultiIndex::new(0, 1)]
        );
    }
}
