use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::matrix::{hermite_rows, in_row_lattice, smith_normal_form, IntMatrix};
use super::Weight;
use crate::error::{GkmError, Result};

/// A closed subgroup of `T^r`, stored as the lattice of characters that
/// vanish on it.
///
/// Closed subgroups of `T^r` correspond bijectively to sublattices of
/// `Z^r` (the annihilator of the subgroup), so the Hermite basis of that
/// lattice is a canonical form and structural equality is subgroup equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct TorusSubgroup {
    rank: usize,
    #[serde(serialize_with = "serialize_matrix")]
    char_matrix: Vec<Vec<BigInt>>,
    dim_identity_component: usize,
    #[serde(serialize_with = "serialize_ints")]
    torsion_invariants: Vec<BigInt>,
}

fn serialize_matrix<S: serde::Serializer>(
    m: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    rows.serialize(s)
}

fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = v.iter().map(ToString::to_string).collect();
    v.serialize(s)
}

impl TorusSubgroup {
    /// Subgroup annihilated by the lattice spanned by `rows`.
    pub fn from_characters(rank: usize, rows: &[Vec<BigInt>]) -> Self {
        let char_matrix = hermite_rows(rows, rank);
        let (dim, torsion) = if char_matrix.is_empty() {
            (rank, Vec::new())
        } else {
            let snf = smith_normal_form(&IntMatrix::from_rows(&char_matrix, rank));
            let factors = snf.invariant_factors();
            let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
            (rank - factors.len(), torsion)
        };
        TorusSubgroup {
            rank,
            char_matrix,
            dim_identity_component: dim,
            torsion_invariants: torsion,
        }
    }

    pub fn full(rank: usize) -> Self {
        Self::from_characters(rank, &[])
    }

    pub fn trivial(rank: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..rank).map(|i| Weight::unit(rank, i).0).collect();
        Self::from_characters(rank, &rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Canonical (Hermite) basis of the annihilating character lattice.
    pub fn char_matrix(&self) -> &[Vec<BigInt>] {
        &self.char_matrix
    }

    pub fn dim_identity_component(&self) -> usize {
        self.dim_identity_component
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.torsion_invariants
    }

    pub fn is_connected(&self) -> bool {
        self.torsion_invariants.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim_identity_component == 0 && self.torsion_invariants.is_empty()
    }

    /// Order of the component group.
    pub fn component_count(&self) -> BigInt {
        self.torsion_invariants.iter().product()
    }

    fn check(&self, rank: usize) -> Result<()> {
        if self.rank == rank {
            Ok(())
        } else {
            Err(GkmError::RankMismatch {
                expected: self.rank,
                found: rank,
            })
        }
    }

    /// Whether the character `w` is trivial on this subgroup.
    pub fn vanishes_on(&self, w: &Weight) -> Result<bool> {
        self.check(w.rank())?;
        Ok(in_row_lattice(&self.char_matrix, w.entries()))
    }

    pub fn intersect(&self, other: &TorusSubgroup) -> Result<TorusSubgroup> {
        self.check(other.rank)?;
        let mut rows = self.char_matrix.clone();
        rows.extend(other.char_matrix.iter().cloned());
        Ok(Self::from_characters(self.rank, &rows))
    }

    /// True iff `other` is a subgroup of `self`.
    pub fn contains(&self, other: &TorusSubgroup) -> Result<bool> {
        self.check(other.rank)?;
        Ok(self
            .char_matrix
            .iter()
            .all(|row| in_row_lattice(&other.char_matrix, row)))
    }

    /// The connected component of the identity: its character lattice is
    /// the rational saturation of ours.
    pub fn identity_component(&self) -> TorusSubgroup {
        if self.char_matrix.is_empty() {
            return self.clone();
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&self.char_matrix, self.rank));
        // rowspace(A) = rowspace(D * V^-1); saturation keeps the rows of V^-1
        // belonging to nonzero invariant factors.
        let k = snf.rank();
        let rows: Vec<Vec<BigInt>> = (0..k).map(|i| snf.v_inv.row(i).to_vec()).collect();
        Self::from_characters(self.rank, &rows)
    }
}

impl fmt::Display for TorusSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.char_matrix.is_empty() {
            return write!(f, "T^{}", self.rank);
        }
        write!(f, "ker[")?;
        for (i, row) in self.char_matrix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Weight(row.clone()))?;
        }
        write!(f, "] (dim {}", self.dim_identity_component)?;
        if !self.torsion_invariants.is_empty() {
            let t: Vec<String> = self.torsion_invariants.iter().map(|d| format!("Z{d}")).collect();
            write!(f, ", torsion {}", t.join("+"))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_of_weights;

    fn w(x: &[i64]) -> Weight {
        Weight::from_i64s(x)
    }

    fn ker(ws: &[&[i64]], r: usize) -> TorusSubgroup {
        let ws: Vec<Weight> = ws.iter().map(|x| w(x)).collect();
        kernel_of_weights(&ws, r).unwrap()
    }

    #[test]
    fn coordinate_kernels() {
        let h = ker(&[&[1, 0, 0]], 3);
        assert_eq!(h.dim_identity_component(), 2);
        assert!(h.torsion_invariants().is_empty());
        let h2 = ker(&[&[1, 0, 0], &[0, 1, 0]], 3);
        assert_eq!(h2.dim_identity_component(), 1);
        assert!(h.contains(&h2).unwrap());
    }

    #[test]
    fn empty_set_is_full_torus() {
        assert_eq!(ker(&[], 3), TorusSubgroup::full(3));
        assert_eq!(TorusSubgroup::full(3).dim_identity_component(), 3);
    }

    #[test]
    fn even_weight_kernel_is_order_two() {
        // chi_2(t) = t^2 on T^1 has kernel {1, -1}.
        let h = ker(&[&[2]], 1);
        assert_eq!(h.dim_identity_component(), 0);
        assert_eq!(h.torsion_invariants(), &[BigInt::from(2)]);
        assert!(h.vanishes_on(&w(&[2])).unwrap());
        assert!(!h.vanishes_on(&w(&[1])).unwrap());
        assert!(h.vanishes_on(&w(&[4])).unwrap());
    }

    #[test]
    fn intersections() {
        let a = ker(&[&[1, 0, 0]], 3);
        let b = ker(&[&[0, 1, 0]], 3);
        assert_eq!(a.intersect(&b).unwrap(), ker(&[&[1, 0, 0], &[0, 1, 0]], 3));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&TorusSubgroup::full(3)).unwrap(), a);
        // ker(1,-1,-1) ∩ ker(1,0,0) = {(1, t, t^-1)}: s = 1 and t u = 1.
        let c = ker(&[&[1, -1, -1]], 3).intersect(&ker(&[&[1, 0, 0]], 3)).unwrap();
        assert_eq!(c.dim_identity_component(), 1);
        assert!(c.is_connected());
        assert_eq!(
            c.char_matrix(),
            &[
                vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)]
            ]
        );
    }

    #[test]
    fn vanishing() {
        let h = ker(&[&[0, 1, 0], &[0, 0, 1]], 3); // {(s,1,1)}
        assert!(h.vanishes_on(&w(&[0, 1, 0])).unwrap());
        assert!(!h.vanishes_on(&w(&[1, -1, -1])).unwrap());
        assert!(matches!(
            h.vanishes_on(&w(&[1, 0])),
            Err(GkmError::RankMismatch { .. })
        ));
    }

    #[test]
    fn identity_component_saturates() {
        let h = ker(&[&[2, 0]], 2);
        assert_eq!(h.identity_component(), ker(&[&[1, 0]], 2));
        let full = TorusSubgroup::full(2);
        assert_eq!(full.identity_component(), full);
        let conn = ker(&[&[1, -1, -1]], 3);
        assert_eq!(conn.identity_component(), conn);
        // Finite subgroup: rational span is all of Q^2.
        let m = ker(&[&[2, 2], &[0, 3]], 2);
        assert_eq!(m.dim_identity_component(), 0);
        assert_eq!(m.identity_component(), TorusSubgroup::trivial(2));
    }

    #[test]
    fn containment() {
        assert!(TorusSubgroup::full(3).contains(&ker(&[&[1, 2, 3]], 3)).unwrap());
        assert!(!ker(&[&[1, 0, 0]], 3).contains(&ker(&[&[0, 1, 0]], 3)).unwrap());
        assert!(ker(&[&[1]], 1).contains(&TorusSubgroup::trivial(1)).unwrap());
    }
}
