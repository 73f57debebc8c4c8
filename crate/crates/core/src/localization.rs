//! Characteristic numbers by fixed-point localization.
//!
//! At a vertex with weights `a_1..a_n`, `c_k` evaluates to `e_k(a)`, `p_k`
//! to `e_k(a_1^2..a_n^2)` and `eu` to `a_1 * .. * a_n`; the number is the
//! sum over vertices of the evaluation divided by the product of the
//! weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{GkmError, Result};
use crate::graph::{GkmGraph, SignedStructure};
use crate::lattice::Weight;
use crate::linalg::{int_to_rat, rat_string, Rational};
use crate::poly::{elementary_symmetric, Poly};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    Chern(u32),
    Pontryagin(u32),
    Euler,
}

impl Symbol {
    /// Weighted degree in a manifold of complex dimension `n`.
    pub fn degree(self, n: u32) -> u32 {
        match self {
            Symbol::Chern(i) => i,
            Symbol::Pontryagin(i) => 2 * i,
            Symbol::Euler => n,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Chern(i) => write!(f, "c{i}"),
            Symbol::Pontryagin(i) => write!(f, "p{i}"),
            Symbol::Euler => write!(f, "eu"),
        }
    }
}

/// Product of symbol powers; an empty monomial is the constant 1.
pub type Monomial = BTreeMap<Symbol, u32>;

/// Integer polynomial in characteristic-class symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CharClassExpr {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CharClassExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::new(), c);
        e
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::from([(s, 1)]), BigInt::one());
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let m: Monomial = m.into_iter().filter(|(_, k)| *k > 0).collect();
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CharClassExpr) -> CharClassExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &CharClassExpr) -> CharClassExpr {
        let mut out = CharClassExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (s, k) in m2 {
                    *m.entry(*s).or_insert(0) += k;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.keys().flat_map(|m| m.keys().copied())
    }

    /// Weighted degree of each monomial, in term order.
    pub fn monomial_degrees(&self, n: u32) -> Vec<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(s, k)| s.degree(n) * k).sum())
            .collect()
    }

    /// Common weighted degree; the zero expression has degree 0.
    pub fn degree(&self, n: u32) -> Result<u32> {
        let degs = self.monomial_degrees(n);
        match degs.first() {
            None => Ok(0),
            Some(&d) if degs.iter().all(|&x| x == d) => Ok(d),
            Some(_) => Err(GkmError::NonHomogeneous(format!(
                "monomial degrees {degs:?} in `{self}`"
            ))),
        }
    }

    /// Value at a vertex whose weights are the given linear forms.
    fn evaluate(&self, nvars: usize, weights: &[Poly], euler: &Poly) -> Poly {
        let chern = elementary_symmetric(nvars, weights);
        let squares: Vec<Poly> = weights.iter().map(|a| a * a).collect();
        let pont = elementary_symmetric(nvars, &squares);
        let zero = Poly::zero(nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nvars, int_to_rat(c));
            for (s, k) in m {
                let base = match s {
                    Symbol::Chern(i) => chern.get(*i as usize).unwrap_or(&zero),
                    Symbol::Pontryagin(i) => pont.get(*i as usize).unwrap_or(&zero),
                    Symbol::Euler => euler,
                };
                t = &t * &base.pow(*k);
            }
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for CharClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .iter()
                .map(|(s, k)| if *k == 1 { s.to_string() } else { format!("{s}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A weight written as `c * l` with `l` primitive and lexicographically positive.
fn primitive_part(w: &Weight) -> (BigInt, Weight) {
    let g = w.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut c = g.clone();
    if !w.is_lex_positive() {
        c = -c;
    }
    let l = Weight::new(w.entries().iter().map(|x| x / &c).collect());
    (c, l)
}

/// One localization contribution: `numerator / denominator`, where the
/// denominator is the product of the listed weights.
struct Term {
    numerator: Poly,
    weights: Vec<Weight>,
}

/// Sums `numerator_v / prod(weights_v)` exactly and requires the result to
/// be the constant of degree `degree - n` (zero when `degree < n`).
fn localize(nvars: usize, terms: &[Term], degree: u32, n: u32) -> Result<Rational> {
    let mut max_mult: BTreeMap<Weight, u32> = BTreeMap::new();
    let mut parts = Vec::with_capacity(terms.len());
    for (v, t) in terms.iter().enumerate() {
        let mut scalar = BigInt::one();
        let mut mult: HashMap<Weight, u32> = HashMap::new();
        for w in &t.weights {
            if w.is_zero() {
                return Err(GkmError::Inconsistent(format!("zero weight at vertex #{v}")));
            }
            let (c, l) = primitive_part(w);
            scalar *= c;
            *mult.entry(l).or_insert(0) += 1;
        }
        for (l, &k) in &mult {
            let slot = max_mult.entry(l.clone()).or_insert(0);
            *slot = (*slot).max(k);
        }
        parts.push((scalar, mult));
    }
    let mut denominator = Poly::one(nvars);
    for (l, &k) in &max_mult {
        denominator = &denominator * &Poly::linear(l).pow(k);
    }
    let mut total = Poly::zero(nvars);
    for (t, (scalar, mult)) in terms.iter().zip(&parts) {
        if t.numerator.is_zero() {
            continue;
        }
        let mut cofactor = Poly::constant(nvars, Rational::one() / int_to_rat(scalar));
        for (l, &k) in &max_mult {
            let missing = k - mult.get(l).copied().unwrap_or(0);
            if missing > 0 {
                cofactor = &cofactor * &Poly::linear(l).pow(missing);
            }
        }
        total = &total + &(&t.numerator * &cofactor);
    }
    if degree < n {
        return if total.is_zero() {
            Ok(Rational::zero())
        } else {
            Err(GkmError::NonConstantSum(format!(
                "degree {degree} < {n} but the sum is nonzero"
            )))
        };
    }
    let (lead_exp, lead) = denominator
        .terms()
        .iter()
        .next_back()
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("product of linear forms is nonzero");
    let value = total.coeff(&lead_exp) / lead;
    if total != denominator.scale(&value) {
        return Err(GkmError::NonConstantSum(format!(
            "numerator is not a constant multiple of the common denominator (degree {degree})"
        )));
    }
    Ok(value)
}

fn check_degree(expr: &CharClassExpr, n: u32) -> Result<u32> {
    let d = expr.degree(n)?;
    if d > n {
        return Err(GkmError::DegreeTooLarge { degree: d, valence: n });
    }
    Ok(d)
}

/// Localization integral of `expr` over the signed graph.
pub fn integrate(g: &GkmGraph, s: &SignedStructure, expr: &CharClassExpr) -> Result<Rational> {
    s.check_against(g)?;
    let n = g.valence() as u32;
    let d = check_degree(expr, n)?;
    let r = g.rank();
    let terms: Vec<Term> = (0..g.vertex_count())
        .map(|v| {
            let weights = s.weights_at(g, v);
            let forms: Vec<Poly> = weights.iter().map(Poly::linear).collect();
            let euler = forms.iter().fold(Poly::one(r), |acc, a| &acc * a);
            Term {
                numerator: expr.evaluate(r, &forms, &euler),
                weights,
            }
        })
        .collect();
    localize(r, &terms, d, n)
}

/// Signature from the fixed-point count of the chi_y genus at `y = 1`:
/// each vertex contributes `(-1)^k`, `k` the number of its weights that are
/// negative on a generic vector.
pub fn signature(g: &GkmGraph, s: &SignedStructure) -> Result<i64> {
    s.check_against(g)?;
    let weights: Vec<Vec<Weight>> = (0..g.vertex_count()).map(|v| s.weights_at(g, v)).collect();
    let generic = (2i64..)
        .map(|k| {
            let mut x = BigInt::one();
            let v: Vec<BigInt> = (0..g.rank())
                .map(|_| {
                    let cur = x.clone();
                    x *= k;
                    cur
                })
                .collect();
            Weight::new(v)
        })
        .find(|xi| weights.iter().flatten().all(|w| !w.dot(xi).is_zero()))
        .expect("nonzero weights miss some point of the moment curve");
    Ok(weights
        .iter()
        .map(|ws| {
            let k = ws.iter().filter(|w| w.dot(&generic).is_negative()).count();
            if k % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum())
}

/// `+1` or `-1` per vertex: the sign of the tangent orientation relative to
/// the product of the canonical labels.
pub type Orientation = Vec<i8>;

/// Orientation induced by a signed structure: `(-1)^k` where `k` counts the
/// weights at the vertex that are negatives of their canonical labels.
pub fn orientation_from_signed(g: &GkmGraph, s: &SignedStructure) -> Orientation {
    (0..g.vertex_count())
        .map(|v| {
            let neg = s
                .weights_at(g, v)
                .iter()
                .filter(|w| !w.is_lex_positive())
                .count();
            if neg % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

fn check_orientation(g: &GkmGraph, o: &[i8]) -> Result<()> {
    if o.len() != g.vertex_count() || o.iter().any(|&x| x != 1 && x != -1) {
        return Err(GkmError::Unsupported(format!(
            "orientation must assign +1 or -1 to each of the {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Localization integral of an expression in Pontryagin classes and the
/// Euler class, which needs only an orientation, not a signed structure.
pub fn integrate_oriented(g: &GkmGraph, orientation: &[i8], expr: &CharClassExpr) -> Result<Rational> {
    check_orientation(g, orientation)?;
    if let Some(s) = expr.symbols().find(|s| matches!(s, Symbol::Chern(_))) {
        return Err(GkmError::Unsupported(format!(
            "{s} depends on a signed structure; only p_k and eu are available with an orientation"
        )));
    }
    let n = g.valence() as u32;
    let d = check_degree(expr, n)?;
    let r = g.rank();
    let terms: Vec<Term> = (0..g.vertex_count())
        .map(|v| {
            let labels: Vec<Weight> = g.star(v).iter().map(|&e| g.edge(e).label.clone()).collect();
            let forms: Vec<Poly> = labels.iter().map(Poly::linear).collect();
            let sign = Rational::from_integer(BigInt::from(orientation[v]));
            let euler = forms.iter().fold(Poly::constant(r, sign), |acc, a| &acc * a);
            let mut weights = labels;
            if orientation[v] < 0 {
                if let Some(first) = weights.first_mut() {
                    *first = -&*first;
                }
            }
            Term {
                numerator: expr.evaluate(r, &forms, &euler),
                weights,
            }
        })
        .collect();
    localize(r, &terms, d, n)
}

/// The Pontryagin number `p_{i_1} * .. * p_{i_k}` for the given partition.
pub fn pontryagin_number(g: &GkmGraph, orientation: &[i8], partition: &[u32]) -> Result<Rational> {
    let n = g.valence() as u32;
    let degree: u32 = partition.iter().map(|i| 2 * i).sum();
    if degree != n {
        return Err(GkmError::DegreeMismatch { degree, valence: n });
    }
    let expr = partition
        .iter()
        .fold(CharClassExpr::constant(BigInt::one()), |acc, &i| {
            acc.mul(&CharClassExpr::symbol(Symbol::Pontryagin(i)))
        });
    integrate_oriented(g, orientation, &expr)
}

/// Renders an integral value as `"p/q"`, or `"p"` when integral.
pub fn format_value(q: &Rational) -> String {
    rat_string(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::linalg::rat;

    fn c(i: u32) -> CharClassExpr {
        CharClassExpr::symbol(Symbol::Chern(i))
    }

    fn value(name: &str, e: &CharClassExpr) -> Rational {
        let b = catalog(name).unwrap();
        integrate(&b.graph, b.signed.as_ref().unwrap(), e).unwrap()
    }

    #[test]
    fn projective_space_numbers() {
        assert_eq!(value("cp(1)", &c(1)), rat(2));
        assert_eq!(value("cp(2)", &c(1).mul(&c(1))), rat(9));
        assert_eq!(value("cp(3)", &c(1).mul(&c(1)).mul(&c(1))), rat(64));
        assert_eq!(value("cp(3)", &CharClassExpr::symbol(Symbol::Euler)), rat(4));
        assert_eq!(value("cp(2)", &c(2)), rat(3));
    }

    #[test]
    fn low_degree_vanishes() {
        let one = CharClassExpr::constant(BigInt::one());
        assert_eq!(value("cp(3)", &one), rat(0));
        assert_eq!(value("cp(3)", &c(2)), rat(0));
    }

    #[test]
    fn degree_errors() {
        let b = catalog("cp(1)").unwrap();
        let s = b.signed.unwrap();
        assert!(matches!(
            integrate(&b.graph, &s, &c(2)),
            Err(GkmError::DegreeTooLarge { .. })
        ));
        let mixed = c(1).add(&CharClassExpr::constant(BigInt::one()));
        assert!(matches!(
            integrate(&b.graph, &s, &mixed),
            Err(GkmError::NonHomogeneous(_))
        ));
    }

    #[test]
    fn broken_signs_give_nonconstant_sum() {
        let b = catalog("cp(2)").unwrap();
        let mut signs = b.signed.unwrap().signs();
        signs[0] = !signs[0];
        let s = SignedStructure::from_signs(&b.graph, &signs).unwrap();
        let r = integrate(&b.graph, &s, &c(1).mul(&c(1)));
        assert!(matches!(r, Err(GkmError::NonConstantSum(_))), "{r:?}");
    }

    #[test]
    fn pontryagin_numbers() {
        let b = catalog("cp(2)").unwrap();
        let o = orientation_from_signed(&b.graph, b.signed.as_ref().unwrap());
        assert_eq!(pontryagin_number(&b.graph, &o, &[1]).unwrap(), rat(3));
        let p = catalog("cp1xcp3").unwrap();
        let o = orientation_from_signed(&p.graph, p.signed.as_ref().unwrap());
        assert_eq!(pontryagin_number(&p.graph, &o, &[1, 1]).unwrap(), rat(0));
        assert_eq!(pontryagin_number(&p.graph, &o, &[2]).unwrap(), rat(0));
        assert!(matches!(
            pontryagin_number(&p.graph, &o, &[1]),
            Err(GkmError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn signatures() {
        for (name, sig) in [("cp(1)", 0), ("cp(2)", 1), ("cp(3)", 0), ("cp(4)", 1), ("cp1xcp3", 0)] {
            let b = catalog(name).unwrap();
            assert_eq!(signature(&b.graph, b.signed.as_ref().unwrap()).unwrap(), sig, "{name}");
        }
    }

    #[test]
    fn display_forms() {
        let e = c(1).mul(&c(1)).add(&CharClassExpr::symbol(Symbol::Pontryagin(1)));
        assert_eq!(e.to_string(), "c1^2 + p1");
        let neg = CharClassExpr::constant(BigInt::from(-2)).mul(&CharClassExpr::symbol(Symbol::Euler));
        assert_eq!(neg.to_string(), "-2*eu");
    }
}
