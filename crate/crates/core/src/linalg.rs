//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use std::collections::HashMap;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn int_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn rat_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let (a, b) = if i < r {
                let (top, bottom) = m.split_at_mut(r);
                (&mut top[i], &bottom[0])
            } else {
                let (top, bottom) = m.split_at_mut(i);
                (&mut bottom[0], &top[r])
            };
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug, n);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let piv = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in piv.iter().enumerate() {
                x[p] = -m[row][f].clone();
            }
            x
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn int_rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in c + 1..ncols {
                let v = &m[i][j] * &m[rank][c] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Incrementally built integer row echelon basis over sparse rows.
///
/// Rows are `(column, value)` lists sorted by column with no zero values.
/// Each stored row is primitive (content 1) with a positive leading entry.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: HashMap<usize, Vec<(usize, BigInt)>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut row: Vec<(usize, BigInt)>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        loop {
            let Some((lead_col, lead)) = row.first().cloned() else {
                return false;
            };
            let Some(p) = self.pivots.get(&lead_col) else {
                normalize(&mut row);
                self.pivots.insert(lead_col, row);
                return true;
            };
            let g = lead.gcd(&p[0].1);
            let a = &p[0].1 / &g;
            let b = &lead / &g;
            row = combine(&row, &a, p, &b);
            normalize(&mut row);
        }
    }
}

/// `a * x - b * y` for sparse rows.
fn combine(x: &[(usize, BigInt)], a: &BigInt, y: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut [(usize, BigInt)]) {
    let Some(first) = row.first() else { return };
    let mut g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}
