//! Exact Fourier–Motzkin elimination for systems `a . t >= b`.
//!
//! Every derived inequality remembers the nonnegative combination of the
//! input inequalities it came from, so an infeasible system yields its own
//! Farkas multipliers.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::linalg::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    /// Multipliers over the original inequalities, all nonnegative.
    pub origin: Vec<Rational>,
}

impl Inequality {
    fn combine(p: &Inequality, a: &Rational, q: &Inequality, b: &Rational) -> Inequality {
        Inequality {
            coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * a + y * b).collect(),
            rhs: &p.rhs * a + &q.rhs * b,
            origin: p.origin.iter().zip(&q.origin).map(|(x, y)| x * a + y * b).collect(),
        }
    }

    fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && self.rhs.is_positive()
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) && !self.rhs.is_positive()
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Inequality {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for x in self.coeffs.iter_mut() {
                *x /= &c;
            }
            self.rhs /= &c;
            for x in self.origin.iter_mut() {
                *x /= &c;
            }
        }
        self
    }
}

/// Builds the system from rows `(coeffs, rhs)`; the origin of row `i` is
/// the `i`-th unit vector.
pub fn system(rows: Vec<(Vec<Rational>, Rational)>) -> Vec<Inequality> {
    let n = rows.len();
    rows.into_iter()
        .enumerate()
        .map(|(i, (coeffs, rhs))| {
            let mut origin = vec![Rational::zero(); n];
            origin[i] = Rational::from_integer(1.into());
            Inequality { coeffs, rhs, origin }
        })
        .collect()
}

/// Removes variable `k`, keeping only inequalities implied by the input.
pub fn eliminate(ineqs: &[Inequality], k: usize) -> Vec<Inequality> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for q in ineqs {
        if q.coeffs[k].is_positive() {
            pos.push(q);
        } else if q.coeffs[k].is_negative() {
            neg.push(q);
        } else {
            out.push(q.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let a = q.coeffs[k].abs();
            let b = p.coeffs[k].clone();
            let mut c = Inequality::combine(p, &a, q, &b);
            c.coeffs[k] = Rational::zero();
            out.push(c);
        }
    }
    dedup(out)
}

/// Normalizes, drops trivial rows and keeps the strongest row per
/// coefficient vector. A contradiction, if present, is kept first.
fn dedup(ineqs: Vec<Inequality>) -> Vec<Inequality> {
    let mut best: HashMap<Vec<Rational>, Inequality> = HashMap::new();
    let mut order = Vec::new();
    for q in ineqs {
        let q = q.normalized();
        if q.is_contradiction() {
            return vec![q];
        }
        if q.is_trivial() {
            continue;
        }
        match best.get_mut(&q.coeffs) {
            Some(old) => {
                if q.rhs > old.rhs {
                    *old = q;
                }
            }
            None => {
                order.push(q.coeffs.clone());
                best.insert(q.coeffs.clone(), q);
            }
        }
    }
    order.into_iter().map(|k| best.remove(&k).expect("present")).collect()
}

/// Eliminates every variable. Returns the contradiction if the system is
/// infeasible.
pub fn find_contradiction(ineqs: &[Inequality]) -> Option<Inequality> {
    let nvars = ineqs.first().map_or(0, |q| q.coeffs.len());
    let mut cur = dedup(ineqs.to_vec());
    for k in 0..nvars {
        if let Some(c) = cur.iter().find(|q| q.is_contradiction()) {
            return Some(c.clone());
        }
        cur = eliminate(&cur, k);
    }
    cur.into_iter().find(Inequality::is_contradiction)
}

/// Minimum of `f . t` over a feasible system, or `None` if unbounded below.
pub fn minimize(ineqs: &[Inequality], f: &[Rational]) -> Option<Rational> {
    let n = f.len();
    // Variables t_0..t_{n-1} and z; rows encode z = f . t.
    let widen = |q: &Inequality, z: Rational| Inequality {
        coeffs: q.coeffs.iter().cloned().chain([z]).collect(),
        rhs: q.rhs.clone(),
        origin: Vec::new(),
    };
    let mut rows: Vec<Inequality> = ineqs.iter().map(|q| widen(q, Rational::zero())).collect();
    let one = Rational::from_integer(1.into());
    let up = Inequality {
        coeffs: f.iter().map(|x| -x).chain([one.clone()]).collect(),
        rhs: Rational::zero(),
        origin: Vec::new(),
    };
    let down = Inequality {
        coeffs: f.iter().cloned().chain([-one]).collect(),
        rhs: Rational::zero(),
        origin: Vec::new(),
    };
    rows.push(up);
    rows.push(down);
    let mut cur = dedup(rows);
    for k in 0..n {
        cur = eliminate(&cur, k);
    }
    cur.iter()
        .filter(|q| q.coeffs[n].is_positive())
        .map(|q| &q.rhs / &q.coeffs[n])
        .max()
}
