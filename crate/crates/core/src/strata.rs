//! The orbit-type stratification as seen by the graph: connected
//! components of the fixed subgraphs `G^H`, ordered by inclusion and
//! labelled by their principal isotropy groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{GkmError, Result};
use crate::graph::{components_of, EdgeId, GkmGraph, VertexId};
use crate::lattice::{in_row_lattice, kernel_of_weights, TorusSubgroup, Weight};

/// Cap on the number of distinct vanishing patterns explored.
pub const MAX_CANDIDATES: usize = 1 << 12;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// `G^H`: every vertex, and the edges whose labels vanish on `H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedSubgraph {
    pub edges: Vec<EdgeId>,
    pub components: Vec<Component>,
}

pub fn fixed_subgraph(g: &GkmGraph, h: &TorusSubgroup) -> Result<FixedSubgraph> {
    let mut edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if h.vanishes_on(&e.label)? {
            edges.push(i);
        }
    }
    Ok(FixedSubgraph {
        components: split_components(g, &edges),
        edges,
    })
}

fn split_components(g: &GkmGraph, edges: &[EdgeId]) -> Vec<Component> {
    let comps = components_of(g.vertex_count(), edges.iter().map(|&e| g.edge(e).ends));
    comps
        .into_iter()
        .map(|vertices| {
            let set: HashSet<VertexId> = vertices.iter().copied().collect();
            let edges = edges
                .iter()
                .copied()
                .filter(|&e| set.contains(&g.edge(e).ends.0))
                .collect();
            Component { vertices, edges }
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StratElement {
    pub component: Component,
    /// Kernel of the labels of the component's edges.
    pub generating_subgroup: TorusSubgroup,
    /// Kernel of the component's labels at its first vertex.
    pub principal_isotropy: TorusSubgroup,
    /// Whether every vertex of the component gives the same isotropy.
    pub isotropy_vertex_independent: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratPoset {
    pub elements: Vec<StratElement>,
    /// `le[i][j]` iff element `i` is contained in element `j`.
    pub le: Vec<Vec<bool>>,
}

impl StratPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the greatest element, if there is one.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&j| (0..self.len()).all(|i| self.le[i][j]))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| i == j || !self.le[i][j]))
            .collect()
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.le[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.le[i][k] && self.le[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self, g: &GkmGraph) -> Value {
        let elements: Vec<Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, el)| {
                json!({
                    "index": i,
                    "vertices": el.component.vertices.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    "edges": el.component.edges,
                    "generating_subgroup": el.generating_subgroup,
                    "principal_isotropy": el.principal_isotropy,
                    "isotropy_vertex_independent": el.isotropy_vertex_independent,
                })
            })
            .collect();
        let covers: Vec<[usize; 2]> = self.covers().into_iter().map(|(a, b)| [a, b]).collect();
        json!({ "elements": elements, "covers": covers })
    }
}

/// Label sets closed under "vanishes on the kernel", starting from the
/// empty set and adding one label at a time. Each closed set is the set of
/// labels vanishing on its own kernel, so the kernels of closed sets give
/// every distinct fixed subgraph.
pub fn candidate_subgroups(g: &GkmGraph) -> Result<Vec<TorusSubgroup>> {
    let labels = g.distinct_labels();
    let r = g.rank();
    let closure = |set: &BTreeSet<usize>| -> Result<(BTreeSet<usize>, TorusSubgroup)> {
        let h = kernel_of_weights(set.iter().map(|&i| &labels[i]), r)?;
        let closed = (0..labels.len())
            .filter(|&i| in_row_lattice(h.char_matrix(), labels[i].entries()))
            .collect();
        Ok((closed, h))
    };
    let (start, h0) = closure(&BTreeSet::new())?;
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::from([start.clone()]);
    let mut out = vec![h0];
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        for i in 0..labels.len() {
            if set.contains(&i) {
                continue;
            }
            let mut bigger = set.clone();
            bigger.insert(i);
            let (closed, h) = closure(&bigger)?;
            if seen.insert(closed.clone()) {
                if seen.len() > MAX_CANDIDATES {
                    return Err(GkmError::SearchTooLarge(format!(
                        "more than {MAX_CANDIDATES} vanishing patterns among {} labels",
                        labels.len()
                    )));
                }
                out.push(h);
                queue.push_back(closed);
            }
        }
    }
    let trivial = TorusSubgroup::trivial(r);
    if !out.contains(&trivial) {
        out.push(trivial);
    }
    Ok(out)
}

fn element_for(g: &GkmGraph, component: Component) -> Result<StratElement> {
    let r = g.rank();
    let generating =
        kernel_of_weights(component.edges.iter().map(|&e| &g.edge(e).label), r)?;
    let at = |v: VertexId| -> Result<TorusSubgroup> {
        let labels: Vec<&Weight> = component
            .edges
            .iter()
            .map(|&e| g.edge(e))
            .filter(|e| e.ends.0 == v || e.ends.1 == v)
            .map(|e| &e.label)
            .collect();
        kernel_of_weights(labels, r)
    };
    let principal = at(component.vertices[0])?;
    let mut independent = true;
    for &v in &component.vertices[1..] {
        if at(v)? != principal {
            independent = false;
        }
    }
    Ok(StratElement {
        component,
        generating_subgroup: generating,
        principal_isotropy: principal,
        isotropy_vertex_independent: independent,
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let b: HashSet<_> = b.iter().collect();
    a.iter().all(|x| b.contains(x))
}

pub fn orbit_poset(g: &GkmGraph) -> Result<StratPoset> {
    let mut components: BTreeSet<(Vec<VertexId>, usize, Vec<EdgeId>)> = BTreeSet::new();
    for h in candidate_subgroups(g)? {
        for c in fixed_subgraph(g, &h)?.components {
            let mut edges = c.edges;
            edges.sort_unstable();
            components.insert((c.vertices, edges.len(), edges));
        }
    }
    let elements = components
        .into_iter()
        .map(|(vertices, _, edges)| element_for(g, Component { vertices, edges }))
        .collect::<Result<Vec<_>>>()?;
    let le = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    is_subset(&a.component.vertices, &b.component.vertices)
                        && is_subset(&a.component.edges, &b.component.edges)
                })
                .collect()
        })
        .collect();
    Ok(StratPoset { elements, le })
}

/// An order isomorphism `P1 -> P2` matching principal isotropy groups.
pub fn poset_isomorphic_with_labels(p1: &StratPoset, p2: &StratPoset) -> Option<Vec<usize>> {
    let k1: Vec<_> = p1.elements.iter().map(|e| e.principal_isotropy.clone()).collect();
    let k2: Vec<_> = p2.elements.iter().map(|e| e.principal_isotropy.clone()).collect();
    labelled_poset_isomorphism(p1, &k1, p2, &k2)
}

/// An order isomorphism `P1 -> P2` sending each element to one with an
/// equal key. Elements with the fewest candidates are placed first.
pub fn labelled_poset_isomorphism<K: Ord + Clone>(
    p1: &StratPoset,
    keys1: &[K],
    p2: &StratPoset,
    keys2: &[K],
) -> Option<Vec<usize>> {
    let n = p1.len();
    if n != p2.len() || keys1.len() != n || keys2.len() != n {
        return None;
    }
    let signature = |p: &StratPoset, keys: &[K], i: usize| {
        let below = (0..p.len()).filter(|&j| p.le[j][i]).count();
        let above = (0..p.len()).filter(|&j| p.le[i][j]).count();
        (below, above, keys[i].clone())
    };
    let sig1: Vec<_> = (0..n).map(|i| signature(p1, keys1, i)).collect();
    let sig2: Vec<_> = (0..n).map(|i| signature(p2, keys2, i)).collect();
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| sig2.iter().filter(|s| **s == sig1[i]).count());
    let mut search = PosetSearch {
        p1,
        p2,
        candidates: order
            .iter()
            .map(|&i| (0..n).filter(|&j| sig1[i] == sig2[j]).collect())
            .collect(),
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.run(0).then_some(search.map)
}

struct PosetSearch<'a> {
    p1: &'a StratPoset,
    p2: &'a StratPoset,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl PosetSearch<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let i = self.order[k];
        for c in 0..self.candidates[k].len() {
            let j = self.candidates[k][c];
            if self.used[j] {
                continue;
            }
            let consistent = self.order[..k].iter().all(|&a| {
                let b = self.map[a];
                self.p1.le[a][i] == self.p2.le[b][j] && self.p1.le[i][a] == self.p2.le[j][b]
            });
            if !consistent {
                continue;
            }
            self.map[i] = j;
            self.used[j] = true;
            if self.run(k + 1) {
                return true;
            }
            self.used[j] = false;
            self.map[i] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn w(x: &[i64]) -> Weight {
        Weight::from_i64s(x)
    }

    #[test]
    fn fixed_subgraphs_of_example8() {
        let g = catalog("example8").unwrap().graph;
        let h = kernel_of_weights(&[w(&[0, 1, 0]), w(&[0, 0, 1])], 3).unwrap();
        let f = fixed_subgraph(&g, &h).unwrap();
        let labels: BTreeSet<Weight> = f.edges.iter().map(|&e| g.edge(e).label.clone()).collect();
        assert_eq!(labels, BTreeSet::from([w(&[0, 1, 0]), w(&[0, 0, 1])]));
        let vs: Vec<Vec<usize>> = f.components.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(vs, vec![vec![0, 1], vec![2, 3]]);
        let full = fixed_subgraph(&g, &TorusSubgroup::full(3)).unwrap();
        assert!(full.edges.is_empty());
        assert_eq!(full.components.len(), 4);
        let all = fixed_subgraph(&g, &TorusSubgroup::trivial(3)).unwrap();
        assert_eq!(all.edges.len(), 8);
    }

    #[test]
    fn sphere_poset() {
        let g = catalog("cp(1)").unwrap().graph;
        let p = orbit_poset(&g).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.minimal_elements().len(), 2);
        let top = p.maximum().unwrap();
        assert!(p.elements[top].principal_isotropy.is_trivial());
    }

    #[test]
    fn example8_poset_size() {
        // 4 vertices, 8 single-label pieces (3 labels x 2 pairs + 2 verticals),
        // 6 two-label pieces, 3 four-cycles, the whole graph.
        let g = catalog("example8").unwrap().graph;
        let p = orbit_poset(&g).unwrap();
        assert_eq!(p.len(), 22);
        let cycle = p
            .elements
            .iter()
            .find(|e| {
                let ls: BTreeSet<Weight> =
                    e.component.edges.iter().map(|&i| g.edge(i).label.clone()).collect();
                ls == BTreeSet::from([w(&[1, 0, 0]), w(&[1, -1, -1])])
            })
            .unwrap();
        assert_eq!(cycle.component.vertices.len(), 4);
        assert!(p.elements.iter().all(|e| e.isotropy_vertex_independent));
    }

    #[test]
    fn poset_comparisons() {
        let x = orbit_poset(&catalog("example8").unwrap().graph).unwrap();
        let y = orbit_poset(&catalog("product_s2s6").unwrap().graph).unwrap();
        assert!(poset_isomorphic_with_labels(&x, &x).is_some());
        assert!(poset_isomorphic_with_labels(&x, &y).is_some());
        let c1 = orbit_poset(&catalog("cp(1)").unwrap().graph).unwrap();
        let c2 = orbit_poset(&catalog("cp(2)").unwrap().graph).unwrap();
        assert!(poset_isomorphic_with_labels(&c2, &c1).is_none());
    }

    #[test]
    fn simplex_faces() {
        let g = catalog("cp(3)").unwrap().graph;
        assert_eq!(orbit_poset(&g).unwrap().len(), 15);
    }
}
