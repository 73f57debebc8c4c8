//! Equivariant cohomology of a GKM graph: tuples of polynomials indexed by
//! vertices whose differences across each edge are divisible by the label.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{GkmError, Result};
use crate::graph::GkmGraph;
use crate::lattice::Weight;
use crate::linalg::{int_to_rat, Rational, SparseEchelon};
use crate::poly::{kernel_substitution, monomials, Exponent, Poly};

/// A homogeneous polynomial of degree `degree` at every vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantClass {
    degree: u32,
    rank: usize,
    values: Vec<Poly>,
}

impl EquivariantClass {
    /// Builds a class candidate; every value must be homogeneous of one
    /// common degree (zero values adopt it).
    pub fn new(rank: usize, values: Vec<Poly>) -> Result<Self> {
        let mut degree = None;
        for (v, p) in values.iter().enumerate() {
            if p.nvars() != rank {
                return Err(GkmError::RankMismatch {
                    expected: rank,
                    found: p.nvars(),
                });
            }
            match p.homogeneous_degree() {
                None => {
                    return Err(GkmError::NonHomogeneous(format!("value at vertex #{v} is {p}")))
                }
                Some(None) => {}
                Some(Some(d)) => match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => {
                        return Err(GkmError::NonHomogeneous(format!(
                            "degrees {e} and {d} at different vertices"
                        )))
                    }
                    Some(_) => {}
                },
            }
        }
        Ok(EquivariantClass {
            degree: degree.unwrap_or(0),
            rank,
            values,
        })
    }

    pub fn constant(g: &GkmGraph, c: Rational) -> Self {
        EquivariantClass {
            degree: 0,
            rank: g.rank(),
            values: vec![Poly::constant(g.rank(), c); g.vertex_count()],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[Poly] {
        &self.values
    }

    fn check_shape(&self, g: &GkmGraph) -> Result<()> {
        if self.values.len() != g.vertex_count() || self.rank != g.rank() {
            return Err(GkmError::GraphMismatch);
        }
        Ok(())
    }
}

/// Whether the candidate satisfies the edge congruences, tested by
/// restricting each difference to the hyperplane where the label vanishes.
pub fn is_class(g: &GkmGraph, c: &EquivariantClass) -> Result<bool> {
    c.check_shape(g)?;
    Ok(g.edges().iter().all(|e| {
        let diff = &c.values[e.ends.0] - &c.values[e.ends.1];
        diff.restrict_to_kernel(&e.label).is_zero()
    }))
}

/// Same test as [`is_class`] via exact division by the label.
pub fn is_class_by_division(g: &GkmGraph, c: &EquivariantClass) -> Result<bool> {
    c.check_shape(g)?;
    Ok(g.edges().iter().all(|e| {
        let diff = &c.values[e.ends.0] - &c.values[e.ends.1];
        diff.div_linear(&e.label).is_some()
    }))
}

pub fn multiply(a: &EquivariantClass, b: &EquivariantClass) -> Result<EquivariantClass> {
    if a.values.len() != b.values.len() || a.rank != b.rank {
        return Err(GkmError::GraphMismatch);
    }
    Ok(EquivariantClass {
        degree: a.degree + b.degree,
        rank: a.rank,
        values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect(),
    })
}

/// For each basis monomial, its restriction to `label = 0` scaled to have
/// integer coefficients.
fn restricted_basis(label: &Weight, basis: &[Exponent], d: u32) -> Vec<Vec<(Exponent, BigInt)>> {
    let images = kernel_substitution(label);
    let lead = label
        .entries()
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero label");
    let scale = int_to_rat(&num_traits::pow(lead.clone(), d as usize));
    basis
        .iter()
        .map(|m| {
            let p = Poly::monomial(m.clone(), Rational::one()).compose(&images);
            p.terms()
                .iter()
                .map(|(e, c)| {
                    let v = c * &scale;
                    debug_assert!(v.is_integer());
                    (e.clone(), v.to_integer())
                })
                .collect()
        })
        .collect()
}

/// Dimension over the rationals of the degree-`d` classes.
pub fn graded_rank(g: &GkmGraph, d: u32) -> usize {
    let basis = monomials(g.rank(), d);
    let b = basis.len();
    let unknowns = g.vertex_count() * b;
    let mut cache: HashMap<Weight, Vec<Vec<(Exponent, BigInt)>>> = HashMap::new();
    let mut echelon = SparseEchelon::new();
    for e in g.edges() {
        let (p, q) = e.ends;
        if p == q || e.label.is_zero() {
            continue;
        }
        let restricted = cache
            .entry(e.label.clone())
            .or_insert_with(|| restricted_basis(&e.label, &basis, d));
        let mut rows: HashMap<&Exponent, Vec<(usize, BigInt)>> = HashMap::new();
        for (i, terms) in restricted.iter().enumerate() {
            for (t, c) in terms {
                let row = rows.entry(t).or_default();
                row.push((p * b + i, c.clone()));
                row.push((q * b + i, -c.clone()));
            }
        }
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort();
        for k in keys {
            echelon.insert(rows.remove(k).expect("key present"));
        }
    }
    unknowns - echelon.rank()
}

/// Betti numbers `b_0, b_2, ..., b_2n` read off from the graded ranks
/// through the Hilbert series of a free module over `Q[x_1..x_r]`.
pub fn betti_numbers(g: &GkmGraph) -> Result<Vec<usize>> {
    let n = g.valence();
    let r = g.rank();
    let ranks: Vec<usize> = (0..=n as u32).map(|d| graded_rank(g, d)).collect();
    let betti = betti_from_ranks(&ranks, r)?;
    check_betti(&betti, g.vertex_count())?;
    Ok(betti)
}

fn free_module_dim(k: usize, r: usize) -> BigInt {
    if r == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binomial(BigInt::from(k + r - 1), BigInt::from(r - 1))
}

/// Inverts `rank_k = sum_j b_j * dim P_{k-j}`.
pub fn betti_from_ranks(ranks: &[usize], r: usize) -> Result<Vec<usize>> {
    let mut betti: Vec<usize> = Vec::with_capacity(ranks.len());
    for (k, &rk) in ranks.iter().enumerate() {
        let mut b = BigInt::from(rk);
        for (j, &bj) in betti.iter().enumerate() {
            b -= BigInt::from(bj) * free_module_dim(k - j, r);
        }
        let b = usize::try_from(b).map_err(|_| {
            GkmError::Inconsistent(format!("negative Betti number in degree {}", 2 * k))
        })?;
        betti.push(b);
    }
    Ok(betti)
}

/// Graded ranks predicted by a Betti vector: `sum_j b_j * dim P_{d-j}`.
pub fn ranks_from_betti(betti: &[usize], r: usize, d: usize) -> BigInt {
    betti
        .iter()
        .enumerate()
        .filter(|(j, _)| *j <= d)
        .map(|(j, &b)| BigInt::from(b) * free_module_dim(d - j, r))
        .sum()
}

fn check_betti(betti: &[usize], vertices: usize) -> Result<()> {
    let total: usize = betti.iter().sum();
    if total != vertices {
        return Err(GkmError::Inconsistent(format!(
            "Betti numbers sum to {total}, graph has {vertices} vertices"
        )));
    }
    if betti.iter().ne(betti.iter().rev()) {
        return Err(GkmError::Inconsistent(format!(
            "Betti vector {betti:?} is not palindromic"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::linalg::rat;

    #[test]
    fn classes_on_a_sphere() {
        let g = catalog("cp(1)").unwrap().graph;
        let x = Poly::var(1, 0);
        let c = EquivariantClass::new(1, vec![Poly::zero(1), x.clone()]).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(is_class(&g, &c).unwrap());
        let bad = EquivariantClass::new(1, vec![Poly::zero(1), Poly::one(1)]).unwrap();
        assert!(!is_class(&g, &bad).unwrap());
        assert!(is_class(&g, &EquivariantClass::constant(&g, rat(5))).unwrap());
        let sq = multiply(&c, &c).unwrap();
        assert_eq!(sq.values()[1], &x * &x);
        assert!(is_class(&g, &sq).unwrap());
    }

    #[test]
    fn mixed_degrees_rejected() {
        let x = Poly::var(1, 0);
        let err = EquivariantClass::new(1, vec![Poly::one(1), x]).unwrap_err();
        assert!(matches!(err, GkmError::NonHomogeneous(_)));
    }

    #[test]
    fn small_graded_ranks() {
        let g = catalog("cp(1)").unwrap().graph;
        assert_eq!(graded_rank(&g, 0), 1);
        assert_eq!(graded_rank(&g, 1), 2);
        let x8 = catalog("example8").unwrap().graph;
        assert_eq!(graded_rank(&x8, 0), 1);
        assert_eq!(graded_rank(&x8, 1), 4);
    }

    #[test]
    fn betti_vectors() {
        let cases: [(&str, &[usize]); 3] = [
            ("example8", &[1, 1, 0, 1, 1]),
            ("cp(3)", &[1, 1, 1, 1]),
            ("cp1xcp3", &[1, 2, 2, 2, 1]),
        ];
        for (name, expected) in cases {
            let g = catalog(name).unwrap().graph;
            assert_eq!(betti_numbers(&g).unwrap(), expected, "{name}");
        }
    }

    #[test]
    fn inconsistent_betti_reported() {
        assert!(matches!(check_betti(&[1, 2], 3), Err(GkmError::Inconsistent(_))));
        assert!(matches!(check_betti(&[1, 1], 3), Err(GkmError::Inconsistent(_))));
        assert!(matches!(betti_from_ranks(&[1, 0], 2), Err(GkmError::Inconsistent(_))));
    }
}
