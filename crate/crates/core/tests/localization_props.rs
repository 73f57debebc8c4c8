use std::collections::BTreeMap;

use gkm_core::graph::{catalog, catalog_names, SignedStructure};
use gkm_core::linalg::rat;
use gkm_core::localization::{
    integrate, integrate_oriented, orientation_from_signed, CharClassExpr, Monomial, Symbol,
};
use gkm_core::moment::cycle_basis;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Every monomial in the symbols valid for valence `n` of weighted degree `d`.
fn monomials_of_degree(n: u32, d: u32) -> Vec<Monomial> {
    let mut symbols: Vec<Symbol> = (1..=n).map(Symbol::Chern).collect();
    symbols.extend((1..=n / 2).map(Symbol::Pontryagin));
    symbols.push(Symbol::Euler);
    fn rec(symbols: &[Symbol], n: u32, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((&s, rest)) = symbols.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let deg = s.degree(n);
        let mut k = 0;
        loop {
            if k > 0 {
                cur.insert(s, k);
            }
            rec(rest, n, left - k * deg, cur, out);
            cur.remove(&s);
            k += 1;
            if k * deg > left {
                break;
            }
        }
    }
    let mut out = Vec::new();
    rec(&symbols, n, d, &mut BTreeMap::new(), &mut out);
    out
}

fn expr(m: &Monomial) -> CharClassExpr {
    let mut e = CharClassExpr::zero();
    e.add_term(m.clone(), BigInt::from(1));
    e
}

#[test]
fn low_degree_integrals_vanish() {
    for name in catalog_names() {
        let b = catalog(&name).unwrap();
        let Some(s) = b.signed else { continue };
        let n = b.graph.valence() as u32;
        for d in 0..n {
            for m in monomials_of_degree(n, d) {
                let v = integrate(&b.graph, &s, &expr(&m)).unwrap();
                assert_eq!(v, rat(0), "{name}: {}", expr(&m));
            }
        }
        let eu = CharClassExpr::symbol(Symbol::Euler);
        assert_eq!(integrate(&b.graph, &s, &eu).unwrap(), rat(b.graph.vertex_count() as i64));
        for m in monomials_of_degree(n, n) {
            let v = integrate(&b.graph, &s, &expr(&m)).unwrap();
            assert!(v.is_integer(), "{name}: {} = {v}", expr(&m));
        }
    }
}

#[test]
fn monomial_enumeration_counts() {
    // c1^2, c2, p1, eu in complex dimension two.
    assert_eq!(monomials_of_degree(2, 2).len(), 4);
    assert_eq!(monomials_of_degree(3, 0).len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Flipping the signs along a union of cycles keeps every vertex's
    /// orientation, so Pontryagin numbers must not move.
    #[test]
    fn pontryagin_numbers_ignore_orientation_preserving_resigning(
        name in prop::sample::select(vec!["cp(2)", "cp(4)", "cp1xcp3", "y_graph"]),
        pick in prop::collection::vec(any::<bool>(), 32),
    ) {
        let b = catalog(name).unwrap();
        let g = &b.graph;
        let s = b.signed.unwrap();
        let all: Vec<usize> = (0..g.edges().len()).collect();
        let mut flip = vec![false; g.edges().len()];
        for (cycle, &on) in cycle_basis(g, &all).iter().zip(&pick) {
            if on {
                for &(e, _) in cycle {
                    flip[e] ^= true;
                }
            }
        }
        let labels = s
            .labels()
            .iter()
            .zip(&flip)
            .map(|(l, &f)| if f { -l } else { l.clone() })
            .collect();
        let t = SignedStructure::from_labels(g, labels).unwrap();
        prop_assert_eq!(orientation_from_signed(g, &s), orientation_from_signed(g, &t));
        let n = g.valence() as u32;
        let o = orientation_from_signed(g, &s);
        for m in monomials_of_degree(n, n) {
            if m.keys().any(|k| matches!(k, Symbol::Chern(_))) {
                continue;
            }
            let e = expr(&m);
            let a = integrate(g, &s, &e).unwrap();
            prop_assert_eq!(&a, &integrate(g, &t, &e).unwrap());
            prop_assert_eq!(&a, &integrate_oriented(g, &o, &e).unwrap());
        }
    }
}
