//! Integer-lattice algebra: weights, normal forms and closed subgroups of
//! the torus described by their character lattices.

mod matrix;
mod subgroup;

pub use matrix::{hermite_rows, in_row_lattice, smith_normal_form, IntMatrix, SmithForm};
pub use subgroup::TorusSubgroup;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{GkmError, Result};

/// A character of the torus `T^r`, i.e. an element of the weight lattice `Z^r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(Vec<BigInt>);

impl Weight {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Weight(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Weight(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector of `Z^rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = BigInt::from(1);
        w
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(GkmError::RankMismatch {
                expected: rank,
                found: self.rank(),
            })
        }
    }

    /// True when the first nonzero entry is positive (or the weight is zero).
    pub fn is_lex_positive(&self) -> bool {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .is_none_or(|x| x.is_positive())
    }

    /// The representative of `{w, -w}` whose first nonzero entry is positive.
    pub fn canonical(&self) -> Weight {
        if self.is_lex_positive() {
            self.clone()
        } else {
            -self
        }
    }

    /// Whether `self` and `other` are linearly dependent over the rationals.
    pub fn is_parallel(&self, other: &Weight) -> bool {
        let n = self.rank().min(other.rank());
        for i in 0..n {
            for j in i + 1..n {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        true
    }

    /// If `self == c * other` for an integer `c`, returns `c`.
    pub fn integer_multiple_of(&self, other: &Weight) -> Option<BigInt> {
        let k = other.0.iter().position(|x| !x.is_zero())?;
        let (c, r) = num_integer::Integer::div_rem(&self.0[k], &other.0[k]);
        if !r.is_zero() {
            return None;
        }
        (&(other * &c) == self).then_some(c)
    }

    pub fn dot(&self, other: &Weight) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&BigInt> for &Weight {
    type Output = Weight;
    fn mul(self, c: &BigInt) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }
}

/// Applies an `r x r` integer matrix to a weight (as a column vector).
pub fn apply_matrix(m: &IntMatrix, w: &Weight) -> Weight {
    Weight(
        (0..m.nrows())
            .map(|i| m.row(i).iter().zip(w.entries()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// Smith normal form of an integer matrix (re-exported operation).
pub fn snf(a: &IntMatrix) -> SmithForm {
    smith_normal_form(a)
}

/// The closed subgroup `{t : chi_w(t) = 1 for all w in weights}` of `T^rank`.
pub fn kernel_of_weights<'a>(
    weights: impl IntoIterator<Item = &'a Weight>,
    rank: usize,
) -> Result<TorusSubgroup> {
    let rows = weights
        .into_iter()
        .map(|w| w.check_rank(rank).map(|_| w.entries().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TorusSubgroup::from_characters(rank, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representative() {
        let w = Weight::from_i64s(&[0, -1, 2]);
        assert_eq!(w.canonical(), Weight::from_i64s(&[0, 1, -2]));
        assert_eq!(w.canonical(), (-&w).canonical());
        assert!(Weight::from_i64s(&[1, -1, -1]).is_lex_positive());
    }

    #[test]
    fn parallel_and_multiples() {
        let a = Weight::from_i64s(&[1, 0, 0]);
        let b = Weight::from_i64s(&[2, 0, 0]);
        assert!(a.is_parallel(&b));
        assert_eq!(b.integer_multiple_of(&a), Some(BigInt::from(2)));
        assert_eq!(a.integer_multiple_of(&b), None);
        assert!(!a.is_parallel(&Weight::from_i64s(&[1, 1, 0])));
    }

    #[test]
    fn kernel_rank_mismatch() {
        let w = Weight::from_i64s(&[1, 0]);
        assert!(matches!(
            kernel_of_weights([&w], 3),
            Err(GkmError::RankMismatch { .. })
        ));
    }
}
