use std::collections::BTreeMap;

use gkm_core::graph::{catalog, catalog_names};
use gkm_core::localization::{CharClassExpr, Monomial, Symbol};
use gkm_core::parse::{parse_expr, parse_graph, write_graph};
use gkm_core::GkmError;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Monomials of weighted degree `d` in the symbols the parser accepts for valence `n`.
fn monomials_of_degree(n: u32, d: u32) -> Vec<Monomial> {
    let mut symbols: Vec<Symbol> = (1..=n.min(9)).map(Symbol::Chern).collect();
    symbols.extend((1..=(n / 2).min(4)).map(Symbol::Pontryagin));
    symbols.push(Symbol::Euler);
    let mut out = vec![(BTreeMap::new(), d)];
    for s in symbols {
        let deg = s.degree(n);
        out = out
            .into_iter()
            .flat_map(|(m, left): (Monomial, u32)| {
                (0..=left / deg).map(move |k| {
                    let mut m = m.clone();
                    if k > 0 {
                        m.insert(s, k);
                    }
                    (m, left - k * deg)
                })
            })
            .collect();
    }
    out.into_iter().filter(|(_, left)| *left == 0).map(|(m, _)| m).collect()
}

fn expression() -> impl Strategy<Value = (u32, CharClassExpr)> {
    (1u32..=6)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, d)| {
            let mons = monomials_of_degree(n, d);
            let k = mons.len();
            (
                Just(n),
                Just(mons),
                prop::collection::vec((0..k, -1000i64..=1000, any::<bool>()), 1..5),
            )
        })
        .prop_map(|(n, mons, picks)| {
            let mut e = CharClassExpr::zero();
            for (i, c, big) in picks {
                let mut c = BigInt::from(c);
                if big {
                    c *= BigInt::from(10u32).pow(30);
                }
                e.add_term(mons[i].clone(), c);
            }
            (n, e)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn expressions_round_trip((n, e) in expression()) {
        let text = e.to_string();
        let back = parse_expr(&text, n as usize).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn whitespace_is_ignored((n, e) in expression()) {
        let text = e.to_string();
        let compact = text.replace(' ', "");
        let padded = text
            .replace('*', " * ")
            .replace('^', " ^ ")
            .replace(" + ", "\t+\t");
        prop_assert_eq!(parse_expr(&compact, n as usize).unwrap(), e.clone());
        prop_assert_eq!(parse_expr(&format!("  {padded}  "), n as usize).unwrap(), e);
    }

    #[test]
    fn garbage_never_panics(text in "[cpeu0-9+*^ -]{0,20}", n in 1usize..=6) {
        match parse_expr(&text, n) {
            Ok(e) => prop_assert!(e.degree(n as u32).is_ok()),
            Err(GkmError::Parse { line, column, .. }) => {
                prop_assert_eq!(line, 1);
                prop_assert!(column >= 1 && column <= text.chars().count() + 1);
            }
            Err(GkmError::NonHomogeneous(_)) => {}
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }
}

#[test]
fn catalog_files_round_trip() {
    for name in catalog_names() {
        let b = catalog(&name).unwrap();
        for signed in [None, b.signed.as_ref()] {
            let text = write_graph(&b.graph, signed).unwrap();
            let f = parse_graph(&text).unwrap();
            assert_eq!(f.graph, b.graph, "{name}");
            assert_eq!(f.signed.as_ref(), signed, "{name}");
            assert_eq!(write_graph(&f.graph, f.signed.as_ref()).unwrap(), text);
        }
    }
}
