//! Built-in graphs.
//!
//! * `example8` – the 8-dimensional complexity-one example: vertices
//!   `a,b,c,d`, triple edges `a-b` and `c-d` labelled by the coordinate
//!   weights, and two edges labelled `(1,-1,-1)`.
//! * `product_s2s6` – the same graph assembled as the product of the
//!   two-vertex graphs of `S^2` and `S^6`.
//! * `cp(n)` – standard `T^n` action on `CP^n`.
//! * `cp1xcp3` – product of `CP^1` (weight `(1,-1,-1)`) and `CP^3`.
//! * `y_graph` – two copies of the `CP^3` graph joined fibrewise by four
//!   edges labelled `(1,-1,-1)`, with fibre-interleaved vertex order.

use crate::error::{GkmError, Result};
use crate::lattice::Weight;

use super::{GkmGraph, SignedStructure};

/// A catalog graph together with its signed structure, if it has one.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: String,
    pub graph: GkmGraph,
    pub signed: Option<SignedStructure>,
}

pub const MAX_CP: usize = 6;

/// Canonical names of every catalog entry.
pub fn catalog_names() -> Vec<String> {
    let mut names = vec!["example8".to_string(), "product_s2s6".to_string()];
    names.extend((1..=MAX_CP).map(|n| format!("cp({n})")));
    names.push("cp1xcp3".to_string());
    names.push("y_graph".to_string());
    names
}

fn parse_cp(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("cp")?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    digits.parse().ok()
}

pub fn catalog(name: &str) -> Result<Builtin> {
    let name = name.trim();
    let (graph, signed) = match name {
        "example8" | "x_graph" => (example8(), None),
        "product_s2s6" => (product_s2s6(), None),
        "cp1xcp3" => {
            let (g, s) = cp1xcp3();
            (g, Some(s))
        }
        "y_graph" => {
            let (g, s) = y_graph();
            (g, Some(s))
        }
        _ => match parse_cp(name) {
            Some(n) if (1..=MAX_CP).contains(&n) => {
                let (g, s) = cp(n);
                (g, Some(s))
            }
            _ => return Err(GkmError::UnknownCatalogEntry(name.to_string())),
        },
    };
    let canonical = match parse_cp(name) {
        Some(n) if name != "cp1xcp3" => format!("cp({n})"),
        _ if name == "x_graph" => "example8".to_string(),
        _ => name.to_string(),
    };
    Ok(Builtin {
        name: canonical,
        graph,
        signed,
    })
}

fn w(x: &[i64]) -> Weight {
    Weight::from_i64s(x)
}

fn example8() -> GkmGraph {
    let mut g = GkmGraph::new(3, 4);
    for v in ["a", "b", "c", "d"] {
        g.add_vertex(v).expect("fresh name");
    }
    for (p, q) in [("a", "b"), ("c", "d")] {
        for l in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            g.add_edge_by_name(p, q, w(&l)).expect("valid edge");
        }
    }
    g.add_edge_by_name("c", "a", w(&[1, -1, -1])).expect("valid edge");
    g.add_edge_by_name("d", "b", w(&[1, -1, -1])).expect("valid edge");
    g
}

/// Two fixed points joined by one edge per weight.
fn suspension(rank: usize, names: [&str; 2], weights: &[Weight]) -> (GkmGraph, SignedStructure) {
    let mut g = GkmGraph::new(rank, weights.len());
    g.add_vertex(names[0]).expect("fresh name");
    g.add_vertex(names[1]).expect("fresh name");
    for l in weights {
        g.add_edge(0, 1, l.clone()).expect("valid edge");
    }
    let s = SignedStructure::from_labels(&g, weights.to_vec()).expect("labels match");
    (g, s)
}

fn product_s2s6() -> GkmGraph {
    let (s2, s2_signs) = suspension(3, ["N", "S"], &[w(&[1, -1, -1])]);
    let (s6, s6_signs) = suspension(
        3,
        ["n", "s"],
        &[w(&[1, 0, 0]), w(&[0, 1, 0]), w(&[0, 0, 1])],
    );
    let (mut g, _) = product(&s2, &s2_signs, &s6, &s6_signs);
    for (i, n) in ["a", "b", "c", "d"].iter().enumerate() {
        g.names[i] = n.to_string();
    }
    g
}

/// Standard action on `CP^n`: `eps_0..eps_{n-1}` are the basis of `Z^n`,
/// `eps_n = 0`, and the oriented edge `v_i -> v_j` carries `eps_j - eps_i`.
pub(crate) fn cp(n: usize) -> (GkmGraph, SignedStructure) {
    let eps = |i: usize| if i < n { Weight::unit(n, i) } else { Weight::zero(n) };
    cp_with_basis(n, n, "v", eps)
}

fn cp_with_basis(
    n: usize,
    rank: usize,
    prefix: &str,
    eps: impl Fn(usize) -> Weight,
) -> (GkmGraph, SignedStructure) {
    let mut g = GkmGraph::new(rank, n);
    for i in 0..=n {
        g.add_vertex(format!("{prefix}{i}")).expect("fresh name");
    }
    let mut signed = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let alpha = &eps(j) - &eps(i);
            g.add_edge(i, j, alpha.clone()).expect("valid edge");
            signed.push(alpha);
        }
    }
    let s = SignedStructure::from_labels(&g, signed).expect("labels match");
    (g, s)
}

fn cp3_in_rank3(prefix: &str) -> (GkmGraph, SignedStructure) {
    let eps = |i: usize| if i < 3 { Weight::unit(3, i) } else { Weight::zero(3) };
    cp_with_basis(3, 3, prefix, eps)
}

/// Product of two signed graphs of the same rank. Vertex `(u, v)` is named
/// `u_v`; horizontal copies of the second factor come first, then the
/// edges of the first factor at every vertex of the second.
pub fn product(
    g1: &GkmGraph,
    s1: &SignedStructure,
    g2: &GkmGraph,
    s2: &SignedStructure,
) -> (GkmGraph, SignedStructure) {
    assert_eq!(g1.rank(), g2.rank(), "factors must have equal rank");
    let n2 = g2.vertex_count();
    let mut g = GkmGraph::new(g1.rank(), g1.valence() + g2.valence());
    for u in g1.vertex_names() {
        for v in g2.vertex_names() {
            g.add_vertex(format!("{u}_{v}")).expect("product names are unique");
        }
    }
    let mut labels = Vec::new();
    for u in 0..g1.vertex_count() {
        for (e, edge) in g2.edges().iter().enumerate() {
            g.add_edge(u * n2 + edge.ends.0, u * n2 + edge.ends.1, edge.label.clone())
                .expect("valid edge");
            labels.push(s2.labels()[e].clone());
        }
    }
    for (e, edge) in g1.edges().iter().enumerate() {
        for v in 0..n2 {
            g.add_edge(edge.ends.0 * n2 + v, edge.ends.1 * n2 + v, edge.label.clone())
                .expect("valid edge");
            labels.push(s1.labels()[e].clone());
        }
    }
    let s = SignedStructure::from_labels(&g, labels).expect("labels match");
    (g, s)
}

fn cp1xcp3() -> (GkmGraph, SignedStructure) {
    let (cp1, cp1_signs) = suspension(3, ["n", "s"], &[w(&[1, -1, -1])]);
    let (cp3, cp3_signs) = cp3_in_rank3("v");
    product(&cp1, &cp1_signs, &cp3, &cp3_signs)
}

fn y_graph() -> (GkmGraph, SignedStructure) {
    let (cp3, cp3_signs) = cp3_in_rank3("v");
    let mut g = GkmGraph::new(3, 4);
    for i in 0..4 {
        g.add_vertex(format!("y{i}+")).expect("fresh name");
        g.add_vertex(format!("y{i}-")).expect("fresh name");
    }
    let mut labels = Vec::new();
    for sheet in 0..2 {
        for (e, edge) in cp3.edges().iter().enumerate() {
            g.add_edge(2 * edge.ends.0 + sheet, 2 * edge.ends.1 + sheet, edge.label.clone())
                .expect("valid edge");
            labels.push(cp3_signs.labels()[e].clone());
        }
    }
    let vertical = w(&[1, -1, -1]);
    for i in 0..4 {
        g.add_edge(2 * i, 2 * i + 1, vertical.clone()).expect("valid edge");
        labels.push(vertical.clone());
    }
    let s = SignedStructure::from_labels(&g, labels).expect("labels match");
    (g, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn every_entry_validates() {
        for name in catalog_names() {
            let b = catalog(&name).unwrap();
            let r = b.graph.validate();
            assert!(r.is_valid(), "{name}: {:?}", r.violations);
            assert!(r.warnings.is_empty(), "{name}: {:?}", r.warnings);
            if let Some(s) = &b.signed {
                s.check_against(&b.graph).unwrap();
            }
        }
    }

    #[test]
    fn example8_labels() {
        let g = catalog("example8").unwrap().graph;
        let labels: BTreeSet<Weight> = g.edges().iter().map(|e| e.label.clone()).collect();
        let expected: BTreeSet<Weight> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, -1]]
            .iter()
            .map(|l| w(l))
            .collect();
        assert_eq!(labels, expected);
        assert_eq!(g.euler_characteristic(), 4);
        assert_eq!(g.complexity(), 1);
    }

    #[test]
    fn cp_shapes() {
        let g = catalog("cp(1)").unwrap().graph;
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edge(0).label, w(&[1]));
        let g3 = catalog("cp3").unwrap().graph;
        assert_eq!(g3.euler_characteristic(), 4);
        assert_eq!(g3.complexity(), 0);
        let p = catalog("cp1xcp3").unwrap().graph;
        assert_eq!(p.euler_characteristic(), 8);
        assert_eq!(p.complexity(), 1);
        assert!(catalog("cp(7)").is_err());
        assert!(matches!(catalog("nope"), Err(GkmError::UnknownCatalogEntry(_))));
    }

    #[test]
    fn cp1xcp3_vertical_label() {
        let b = catalog("cp1xcp3").unwrap();
        let verticals: Vec<_> = b.graph.edges()[12..].iter().map(|e| e.label.clone()).collect();
        assert_eq!(verticals, vec![w(&[1, -1, -1]); 4]);
    }
}
