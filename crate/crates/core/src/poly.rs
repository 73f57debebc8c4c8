//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::lattice::Weight;
use crate::linalg::{int_to_rat, Rational};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The linear form `sum w_i x_i`.
    pub fn linear(w: &Weight) -> Self {
        let n = w.rank();
        let mut p = Self::zero(n);
        for (i, c) in w.entries().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, int_to_rat(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Homogeneous of degree `d` (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|x| x == d).then_some(Some(d)),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x_i -> images[i]` for every variable.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(self.nvars, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Restriction to the hyperplane `w = 0`, written in the remaining
    /// variables: the first variable `k` with `w_k != 0` is replaced by
    /// `-(sum_{j != k} w_j x_j) / w_k`.
    pub fn restrict_to_kernel(&self, w: &Weight) -> Poly {
        let images = kernel_substitution(w);
        self.compose(&images)
    }

    /// Exact quotient by the linear form `w`, or `None` if `w` does not divide.
    pub fn div_linear(&self, w: &Weight) -> Option<Poly> {
        let k = w.entries().iter().position(|x| !x.is_zero())?;
        let lead = int_to_rat(&w.entries()[k]);
        let divisor = Poly::linear(w);
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        // Each step cancels one term of highest x_k-degree and only adds
        // terms of strictly lower x_k-degree.
        while let Some((e, c)) = rem
            .terms
            .iter()
            .filter(|(e, _)| e[k] > 0)
            .max_by_key(|(e, _)| e[k])
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            let mut qe = e;
            qe[k] -= 1;
            let t = Poly::monomial(qe, c / &lead);
            rem = &rem - &(&t * &divisor);
            quot = &quot + &t;
        }
        rem.is_zero().then_some(quot)
    }
}

/// Images of the variables under the substitution that parametrises the
/// hyperplane `w = 0`.
pub fn kernel_substitution(w: &Weight) -> Vec<Poly> {
    let n = w.rank();
    let k = w
        .entries()
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero linear form");
    let lead = int_to_rat(&w.entries()[k]);
    (0..n)
        .map(|i| {
            if i != k {
                return Poly::var(n, i);
            }
            let mut p = Poly::zero(n);
            for (j, c) in w.entries().iter().enumerate() {
                if j != k {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    p.add_term(e, -int_to_rat(c) / &lead);
                }
            }
            p
        })
        .collect()
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// decreasing lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// `[e_0, e_1, ..., e_m]` of the given polynomials.
pub fn elementary_symmetric(nvars: usize, xs: &[Poly]) -> Vec<Poly> {
    let mut e = vec![Poly::zero(nvars); xs.len() + 1];
    e[0] = Poly::one(nvars);
    for (i, x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = &e[k] + &(&e[k - 1] * x);
        }
    }
    e
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Exponent = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars.max(rhs.nvars),
            terms: acc,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = if neg { -c.clone() } else { c.clone() };
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("x{j}") } else { format!("x{j}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", crate::linalg::rat_string(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", crate::linalg::rat_string(&a))?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn w(x: &[i64]) -> Weight {
        Weight::from_i64s(x)
    }

    #[test]
    fn division_by_linear_forms() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) - &(&y * &y);
        let q = p.div_linear(&w(&[1, -1])).unwrap();
        assert_eq!(q, &x + &y);
        assert!(p.div_linear(&w(&[1, 0])).is_none());
        assert!(Poly::zero(2).div_linear(&w(&[0, 3])).unwrap().is_zero());
    }

    #[test]
    fn restriction_matches_division() {
        let x = Poly::var(3, 0);
        let z = Poly::var(3, 2);
        let p = &(&x * &z) - &(&z * &z);
        assert!(p.restrict_to_kernel(&w(&[1, 0, -1])).is_zero());
        assert!(!p.restrict_to_kernel(&w(&[1, 1, 0])).is_zero());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 4), vec![vec![4]]);
        assert_eq!(monomials(2, 0), vec![vec![0, 0]]);
        assert_eq!(monomials(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn symmetric_functions() {
        let xs = [Poly::var(2, 0), Poly::var(2, 1)];
        let e = elementary_symmetric(2, &xs);
        assert_eq!(e[1], &xs[0] + &xs[1]);
        assert_eq!(e[2], &xs[0] * &xs[1]);
        assert_eq!(Poly::constant(2, rat(3)).as_constant(), Some(rat(3)));
    }
}
