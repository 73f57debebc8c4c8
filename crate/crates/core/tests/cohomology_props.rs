use gkm_core::cohomology::{
    betti_numbers, graded_rank, is_class, is_class_by_division, multiply, ranks_from_betti,
    EquivariantClass,
};
use gkm_core::graph::{catalog, catalog_names, GkmGraph};
use gkm_core::lattice::Weight;
use gkm_core::linalg::{rat, Rational};
use gkm_core::moment::realize;
use gkm_core::poly::{monomials, Poly};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn betti_vectors_of_the_catalog() {
    for name in catalog_names() {
        let g = catalog(&name).unwrap().graph;
        let b = betti_numbers(&g).unwrap();
        assert_eq!(b.iter().sum::<usize>(), g.vertex_count(), "{name}");
        assert!(b.iter().eq(b.iter().rev()), "{name}: {b:?}");
        if g.vertex_count() <= 8 {
            for d in 0..=g.valence() {
                assert_eq!(
                    ranks_from_betti(&b, g.rank(), d),
                    BigInt::from(graded_rank(&g, d as u32)),
                    "{name} degree {d}"
                );
            }
        }
    }
}

fn poly(n: usize, max_degree: u32) -> impl Strategy<Value = Poly> {
    (0..=max_degree).prop_flat_map(move |d| {
        let mons = monomials(n, d);
        prop::collection::vec(-4i64..=4, mons.len()).prop_map(move |cs| {
            let mut p = Poly::zero(n);
            for (m, c) in mons.iter().zip(cs) {
                p.add_term(m.clone(), rat(c));
            }
            p
        })
    })
}

fn nonzero_weight(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-3i64..=3, n)
        .prop_filter("nonzero", |w| w.iter().any(|&x| x != 0))
        .prop_map(|w| Weight::from_i64s(&w))
}

/// Degree-one class from the momentum image of a realization.
fn position_class(g: &GkmGraph, positions: &[Vec<Rational>], shift: &[i64]) -> EquivariantClass {
    let r = g.rank();
    let values = positions
        .iter()
        .map(|p| {
            let mut f = Poly::zero(r);
            for (k, x) in p.iter().enumerate() {
                let mut e = vec![0; r];
                e[k] = 1;
                f.add_term(e, x + rat(shift[k]));
            }
            f
        })
        .collect();
    EquivariantClass::new(r, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_agrees_with_hyperplane_restriction(
        (w, q, noise) in (1usize..=3).prop_flat_map(|n| (nonzero_weight(n), poly(n, 2), poly(n, 3)))
    ) {
        let product = &q * &Poly::linear(&w);
        let quotient = product.div_linear(&w);
        prop_assert_eq!(quotient.as_ref(), Some(&q));
        prop_assert!(product.restrict_to_kernel(&w).is_zero());
        let p = &product + &noise;
        let divides = p.div_linear(&w);
        prop_assert_eq!(divides.is_some(), p.restrict_to_kernel(&w).is_zero());
        if let Some(d) = divides {
            prop_assert_eq!(&d * &Poly::linear(&w), p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_of_classes_are_classes(
        name in prop::sample::select(vec!["cp(2)", "cp(3)", "cp1xcp3", "y_graph"]),
        shifts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=3),
        c in -5i64..=5,
    ) {
        let b = catalog(name).unwrap();
        let g = b.graph;
        let m = realize(&g, b.signed.as_ref().unwrap()).unwrap();
        let m = m.realization().unwrap();
        let mut acc = EquivariantClass::constant(&g, rat(c));
        for s in &shifts {
            let s: Vec<i64> = s.iter().copied().cycle().take(g.rank()).collect();
            let f = position_class(&g, &m.positions, &s);
            prop_assert!(is_class(&g, &f).unwrap());
            acc = multiply(&acc, &f).unwrap();
            prop_assert!(is_class(&g, &acc).unwrap());
            prop_assert!(is_class_by_division(&g, &acc).unwrap());
        }
    }

    #[test]
    fn congruence_tests_agree_on_arbitrary_tuples(
        values in prop::collection::vec(poly(3, 2), 4),
    ) {
        let g = catalog("cp(3)").unwrap().graph;
        let d = values.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let homogeneous: Vec<Poly> = values
            .iter()
            .map(|p| {
                let mut h = Poly::zero(3);
                for (e, c) in p.terms() {
                    if e.iter().sum::<u32>() == d {
                        h.add_term(e.clone(), c.clone());
                    }
                }
                h
            })
            .collect();
        let c = EquivariantClass::new(3, homogeneous).unwrap();
        prop_assert_eq!(is_class(&g, &c).unwrap(), is_class_by_division(&g, &c).unwrap());
    }
}
