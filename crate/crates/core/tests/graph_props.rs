use gkm_core::graph::{
    catalog, catalog_names, isomorphic_strict, isomorphic_up_to_lattice_aut, validate, GkmGraph,
};
use gkm_core::lattice::{apply_matrix, IntMatrix};
use num_traits::Signed;
use proptest::prelude::*;

const SMALL: [&str; 6] = ["example8", "product_s2s6", "cp(2)", "cp(3)", "cp1xcp3", "y_graph"];

fn graph_and_order() -> impl Strategy<Value = (GkmGraph, Vec<usize>)> {
    prop::sample::select(SMALL.to_vec()).prop_flat_map(|name| {
        let g = catalog(name).unwrap().graph;
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        (Just(g), Just(order).prop_shuffle())
    })
}

/// Product of elementary row operations, hence unimodular.
fn unimodular(rank: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..rank, 0..rank, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(rank);
        for (i, j, k, swap) in ops {
            let mut e = IntMatrix::identity(rank);
            if swap {
                e[(i, i)] = 0.into();
                e[(j, j)] = 0.into();
                e[(i, j)] = 1.into();
                e[(j, i)] = 1.into();
                if i == j {
                    e[(i, i)] = (-1).into();
                }
            } else if i != j {
                e[(i, j)] = k.into();
            }
            m = &e * &m;
        }
        m
    })
}

#[test]
fn catalog_graphs_are_valid() {
    for name in catalog_names() {
        let g = catalog(&name).unwrap().graph;
        let report = validate(&g);
        assert!(report.is_valid(), "{name}: {:?}", report.violations);
        assert!(g.complexity() >= 0, "{name}");
        assert!(g.label_span_rank() <= g.rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_isomorphism_sees_through_renaming((g, order) in graph_and_order()) {
        let h = g.permute_vertices(&order);
        let iso = isomorphic_strict(&g, &h).expect("renamed copy is isomorphic");
        prop_assert!(iso.verify(&g, &h));
        let back = isomorphic_strict(&h, &g).expect("symmetric");
        prop_assert!(back.verify(&h, &g));
        prop_assert!(iso.inverse().verify(&h, &g));
        let id = isomorphic_strict(&g, &g).expect("reflexive");
        prop_assert!(id.verify(&g, &g));
    }

    #[test]
    fn lattice_isomorphism_recovers_a_change_of_basis(
        (g, order) in graph_and_order(),
        m in unimodular(3),
    ) {
        prop_assume!(g.rank() == 3);
        let h = g.transform_labels(&m).permute_vertices(&order);
        let found = isomorphic_up_to_lattice_aut(&g, &h).expect("transformed copy matches");
        prop_assert!(found.matrix.determinant().abs() == 1.into());
        prop_assert!(found.iso.verify_with(&g, &h, |w| apply_matrix(&found.matrix, w)));
    }
}

#[test]
fn scaled_labels_are_not_lattice_isomorphic() {
    let g = catalog("cp(3)").unwrap().graph;
    let two = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
    assert!(isomorphic_up_to_lattice_aut(&g, &g.transform_labels(&two)).is_none());
    assert!(isomorphic_strict(&g, &catalog("example8").unwrap().graph).is_none());
}
