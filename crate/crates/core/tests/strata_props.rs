use std::collections::BTreeSet;

use gkm_core::graph::{catalog, catalog_names, validate, Violation};
use gkm_core::lattice::{kernel_of_weights, TorusSubgroup};
use gkm_core::strata::{candidate_subgroups, fixed_subgraph, orbit_poset};

const SMALL: [&str; 7] = ["example8", "product_s2s6", "cp(2)", "cp(3)", "cp(4)", "cp1xcp3", "y_graph"];

#[test]
fn fixed_subgraphs_shrink_as_the_subgroup_grows() {
    for name in SMALL {
        let g = catalog(name).unwrap().graph;
        let cands = candidate_subgroups(&g).unwrap();
        let fixed: Vec<BTreeSet<usize>> = cands
            .iter()
            .map(|h| fixed_subgraph(&g, h).unwrap().edges.into_iter().collect())
            .collect();
        for (i, h1) in cands.iter().enumerate() {
            for (j, h2) in cands.iter().enumerate() {
                if h2.contains(h1).unwrap() {
                    assert!(fixed[i].is_superset(&fixed[j]), "{name}: {i} vs {j}");
                }
            }
        }
    }
}

#[test]
fn extreme_elements_carry_the_expected_isotropy() {
    for name in catalog_names() {
        let g = catalog(&name).unwrap().graph;
        let p = orbit_poset(&g).unwrap();
        let top = p.maximum().expect("the whole graph is an element");
        let labels: Vec<_> = g.edges().iter().map(|e| e.label.clone()).collect();
        assert_eq!(p.elements[top].component.vertices.len(), g.vertex_count());
        assert_eq!(
            p.elements[top].principal_isotropy,
            kernel_of_weights(&labels, g.rank()).unwrap(),
            "{name}"
        );
        let singles: Vec<_> = p
            .elements
            .iter()
            .filter(|e| e.component.vertices.len() == 1)
            .collect();
        assert_eq!(singles.len(), g.vertex_count(), "{name}");
        for e in singles {
            assert_eq!(e.principal_isotropy, TorusSubgroup::full(g.rank()));
        }
        for i in 0..p.len() {
            assert!(p.le[i][i]);
            assert!(p.le[i][top]);
        }
    }
}

#[test]
fn components_with_edges_are_gkm_graphs() {
    for name in catalog_names() {
        let g = catalog(&name).unwrap().graph;
        let p = orbit_poset(&g).unwrap();
        for el in &p.elements {
            let c = &el.component;
            if c.edges.is_empty() {
                continue;
            }
            let sub = g.subgraph(&c.vertices, &c.edges);
            // The component carries an action of a quotient torus, so only
            // the graph axioms are checked, not the rank bound.
            let violations: Vec<_> = validate(&sub)
                .violations
                .into_iter()
                .filter(|v| !matches!(v, Violation::NegativeComplexity { .. }))
                .collect();
            assert!(violations.is_empty(), "{name}: {:?} {violations:?}", c.vertices);
        }
    }
}

#[test]
fn twin_graphs_have_isomorphic_posets() {
    use gkm_core::strata::poset_isomorphic_with_labels;
    let p1 = orbit_poset(&catalog("example8").unwrap().graph).unwrap();
    let p2 = orbit_poset(&catalog("product_s2s6").unwrap().graph).unwrap();
    let map = poset_isomorphic_with_labels(&p1, &p2).unwrap();
    for i in 0..p1.len() {
        for j in 0..p1.len() {
            assert_eq!(p1.le[i][j], p2.le[map[i]][map[j]]);
        }
    }
    let cp3 = orbit_poset(&catalog("cp(3)").unwrap().graph).unwrap();
    assert!(poset_isomorphic_with_labels(&p1, &cp3).is_none());
}
