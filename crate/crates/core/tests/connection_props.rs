use gkm_core::connection::{
    check_connection, check_unsigned_connection, enumerate_unsigned_connections,
    exists_signed_structure_with_connection, signed_connections, Connection,
};
use gkm_core::graph::{catalog, GkmGraph, SignedStructure};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["example8", "cp(2)", "cp(3)", "cp1xcp3", "y_graph"];

fn graph() -> impl Strategy<Value = GkmGraph> {
    prop::sample::select(NAMES.to_vec()).prop_map(|n| catalog(n).unwrap().graph)
}

fn graph_and_signs() -> impl Strategy<Value = (GkmGraph, Vec<bool>)> {
    graph().prop_flat_map(|g| {
        let m = g.edges().len();
        (Just(g), prop::collection::vec(any::<bool>(), m))
    })
}

fn reverse_is_inverse(g: &GkmGraph, nabla: &Connection) -> bool {
    g.edges().iter().enumerate().all(|(e, edge)| {
        let (p, q) = edge.ends;
        g.star(p).iter().all(|&x| {
            let y = nabla.transport(g, e, p, x).unwrap();
            g.star(q).contains(&y) && nabla.transport(g, e, q, y) == Some(x)
        }) && nabla.transport(g, e, p, e) == Some(e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unsigned_counts_survive_renaming(
        (g, order) in graph().prop_flat_map(|g| {
            let o: Vec<usize> = (0..g.vertex_count()).collect();
            (Just(g), Just(o).prop_shuffle())
        }),
        sigma_plus in any::<bool>(),
    ) {
        let h = g.permute_vertices(&order);
        let a = enumerate_unsigned_connections(&g, sigma_plus);
        let b = enumerate_unsigned_connections(&h, sigma_plus);
        prop_assert_eq!(a.count(), b.count());
        if let Some(c) = a.first() {
            prop_assert!(check_unsigned_connection(&g, &c, sigma_plus).unwrap());
            prop_assert!(reverse_is_inverse(&g, &c));
        }
    }

    #[test]
    fn signed_connections_are_valid_and_negation_blind((g, signs) in graph_and_signs()) {
        let s = SignedStructure::from_signs(&g, &signs).unwrap();
        let set = signed_connections(&g, &s);
        let neg = signed_connections(&g, &s.negated());
        prop_assert_eq!(set.is_empty(), neg.is_empty());
        prop_assert_eq!(set.count(), neg.count());
        for c in set.iter().take(4) {
            prop_assert!(check_connection(&g, &s, &c).unwrap());
            prop_assert!(reverse_is_inverse(&g, &c));
        }
    }
}

#[test]
fn example8_obstruction() {
    let g = catalog("example8").unwrap().graph;
    assert!(enumerate_unsigned_connections(&g, false).count() >= 1u32.into());
    let search = exists_signed_structure_with_connection(&g);
    assert!(search.witness.is_none());
    for name in ["cp(3)", "cp1xcp3"] {
        let g = catalog(name).unwrap().graph;
        let (s, c) = exists_signed_structure_with_connection(&g).witness.unwrap();
        assert!(check_connection(&g, &s, &c).unwrap());
        assert!(!signed_connections(&g, &s.negated()).is_empty());
    }
}
