//! Isomorphism of labelled multigraphs by backtracking.
//!
//! Graphs here have at most a few dozen vertices, so a plain search with
//! label-multiset pruning is enough.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{EdgeId, GkmGraph, VertexId};
use crate::lattice::{IntMatrix, Weight};
use crate::linalg::{int_rank, int_to_rat, inverse, Rational};

/// Vertex and edge bijection from the first graph onto the second.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GraphIsomorphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

impl GraphIsomorphism {
    pub fn inverse(&self) -> GraphIsomorphism {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (a, &b) in self.vertex_map.iter().enumerate() {
            vertex_map[b] = a;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (a, &b) in self.edge_map.iter().enumerate() {
            edge_map[b] = a;
        }
        GraphIsomorphism { vertex_map, edge_map }
    }

    /// Checks that the maps are bijections preserving incidence and labels
    /// after applying `transform` to the labels of `g1`.
    pub fn verify_with(
        &self,
        g1: &GkmGraph,
        g2: &GkmGraph,
        transform: impl Fn(&Weight) -> Weight,
    ) -> bool {
        let n = g1.vertex_count();
        if n != g2.vertex_count() || g1.edges().len() != g2.edges().len() {
            return false;
        }
        if self.vertex_map.len() != n || self.edge_map.len() != g1.edges().len() {
            return false;
        }
        let vs: HashSet<_> = self.vertex_map.iter().collect();
        let es: HashSet<_> = self.edge_map.iter().collect();
        if vs.len() != n || es.len() != g1.edges().len() {
            return false;
        }
        g1.edges().iter().enumerate().all(|(i, e)| {
            let Some(f) = g2.edges().get(self.edge_map[i]) else {
                return false;
            };
            let a = self.vertex_map[e.ends.0];
            let b = self.vertex_map[e.ends.1];
            let ends_match = (f.ends == (a, b)) || (f.ends == (b, a));
            ends_match && transform(&e.label).canonical() == f.label
        })
    }

    pub fn verify(&self, g1: &GkmGraph, g2: &GkmGraph) -> bool {
        self.verify_with(g1, g2, Weight::clone)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LatticeIsomorphism {
    pub iso: GraphIsomorphism,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: IntMatrix,
}

fn serialize_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    rows.serialize(s)
}

type PairLabels = HashMap<(VertexId, VertexId), Vec<Weight>>;

fn pair_labels(g: &GkmGraph) -> PairLabels {
    let mut m: PairLabels = HashMap::new();
    for e in g.edges() {
        m.entry(e.key()).or_default().push(e.label.clone());
    }
    for v in m.values_mut() {
        v.sort();
    }
    m
}

fn vertex_signature(g: &GkmGraph, v: VertexId) -> Vec<Weight> {
    let mut s: Vec<Weight> = g.star(v).iter().map(|&e| g.edge(e).label.clone()).collect();
    s.sort();
    s
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

/// BFS order from vertex 0 (then any unreached vertices), so that each
/// vertex after the first tends to have an already-mapped neighbour.
fn search_order(g: &GkmGraph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &e in g.star(v) {
                let u = g.edge(e).other(v);
                if !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
    }
    order
}

struct StrictSearch<'a> {
    g1: &'a GkmGraph,
    g2: &'a GkmGraph,
    p1: PairLabels,
    p2: PairLabels,
    sig1: Vec<Vec<Weight>>,
    sig2: Vec<Vec<Weight>>,
    order: Vec<VertexId>,
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
}

impl StrictSearch<'_> {
    fn consistent(&self, v: VertexId, w: VertexId) -> bool {
        if self.sig1[v] != self.sig2[w] {
            return false;
        }
        let empty = Vec::new();
        for (u, m) in self.map.iter().enumerate() {
            let Some(mu) = *m else { continue };
            let a = self.p1.get(&key(v, u)).unwrap_or(&empty);
            let b = self.p2.get(&key(w, mu)).unwrap_or(&empty);
            if a != b {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.g2.vertex_count() {
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.map[v] = None;
            self.used[w] = false;
        }
        false
    }
}

fn edge_map_for(g1: &GkmGraph, g2: &GkmGraph, vmap: &[VertexId]) -> Vec<EdgeId> {
    let mut by_pair2: HashMap<((VertexId, VertexId), Weight), Vec<EdgeId>> = HashMap::new();
    for (i, e) in g2.edges().iter().enumerate() {
        by_pair2.entry((e.key(), e.label.clone())).or_default().push(i);
    }
    for v in by_pair2.values_mut() {
        v.reverse();
    }
    g1.edges()
        .iter()
        .map(|e| {
            let k = key(vmap[e.ends.0], vmap[e.ends.1]);
            by_pair2
                .get_mut(&(k, e.label.clone()))
                .and_then(Vec::pop)
                .expect("vertex map preserves pair label multisets")
        })
        .collect()
}

/// Label-preserving isomorphism, or `None`.
///
/// Deterministic: vertices of `g1` are assigned in BFS order from vertex 0,
/// candidates in `g2` are tried in index order, and the first complete
/// assignment is returned.
pub fn isomorphic_strict(g1: &GkmGraph, g2: &GkmGraph) -> Option<GraphIsomorphism> {
    if g1.rank() != g2.rank()
        || g1.vertex_count() != g2.vertex_count()
        || g1.edges().len() != g2.edges().len()
    {
        return None;
    }
    let mut l1: Vec<_> = g1.edges().iter().map(|e| &e.label).collect();
    let mut l2: Vec<_> = g2.edges().iter().map(|e| &e.label).collect();
    l1.sort();
    l2.sort();
    if l1 != l2 {
        return None;
    }
    let n = g1.vertex_count();
    let mut search = StrictSearch {
        g1,
        g2,
        p1: pair_labels(g1),
        p2: pair_labels(g2),
        sig1: (0..n).map(|v| vertex_signature(g1, v)).collect(),
        sig2: (0..n).map(|v| vertex_signature(g2, v)).collect(),
        order: search_order(g1),
        map: vec![None; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return None;
    }
    let vertex_map: Vec<VertexId> = search.map.iter().map(|m| m.expect("complete")).collect();
    let edge_map = edge_map_for(search.g1, search.g2, &vertex_map);
    Some(GraphIsomorphism { vertex_map, edge_map })
}

/// Greedy choice of label-carrying edges whose labels are linearly independent.
fn independent_edges(g: &GkmGraph, candidates: &[EdgeId]) -> Vec<EdgeId> {
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for &e in candidates {
        rows.push(g.edge(e).label.entries().to_vec());
        if int_rank(&rows, g.rank()) == rows.len() {
            chosen.push(e);
        } else {
            rows.pop();
        }
        if chosen.len() == g.rank() {
            break;
        }
    }
    chosen
}

/// Solves `M * b_i = c_i` for integral unimodular `M`, given the basis rows
/// `b` and image rows `c`.
fn unimodular_solution(b_inv: &[Vec<Rational>], images: &[&Weight]) -> Option<IntMatrix> {
    // M B^T = C^T, so M = C^T (B^{-1})^T.
    let r = images.len();
    let mut m = IntMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let mut acc = Rational::from_integer(BigInt::from(0));
            for (k, c) in images.iter().enumerate() {
                acc += int_to_rat(&c.entries()[i]) * &b_inv[j][k];
            }
            if !acc.is_integer() {
                return None;
            }
            m[(i, j)] = acc.to_integer();
        }
    }
    m.determinant().abs().is_one().then_some(m)
}

fn label_multiset(g: &GkmGraph) -> Vec<Weight> {
    let mut l: Vec<Weight> = g.edges().iter().map(|e| e.label.clone()).collect();
    l.sort();
    l
}

/// Isomorphism up to an automorphism of the weight lattice: a bijection
/// plus `M` in `GL(r, Z)` with `M * label = ±(matched label)`.
///
/// `M` is pinned down by where a spanning set of labels goes. If the star
/// of the first vertex spans, candidates are injections of that spanning
/// subset into stars of `g2`; otherwise spanning sets of distinct labels
/// are matched against distinct labels of `g2`. Both enumerations are
/// exhaustive.
pub fn isomorphic_up_to_lattice_aut(g1: &GkmGraph, g2: &GkmGraph) -> Option<LatticeIsomorphism> {
    let r = g1.rank();
    if r != g2.rank()
        || g1.valence() != g2.valence()
        || g1.vertex_count() != g2.vertex_count()
        || g1.edges().len() != g2.edges().len()
        || g1.vertex_count() == 0
    {
        return None;
    }
    if g1.label_span_rank() < r {
        // M is not determined by the labels; only the identity is tried.
        return isomorphic_strict(g1, g2).map(|iso| LatticeIsomorphism {
            iso,
            matrix: IntMatrix::identity(r),
        });
    }
    let target_labels = label_multiset(g2);

    let star_basis = independent_edges(g1, g1.star(0));
    let (basis, image_pools): (Vec<EdgeId>, Vec<Vec<Weight>>) = if star_basis.len() == r {
        let pools = (0..g2.vertex_count())
            .map(|w| g2.star(w).iter().map(|&e| g2.edge(e).label.clone()).collect())
            .collect();
        (star_basis, pools)
    } else {
        let all: Vec<EdgeId> = (0..g1.edges().len()).collect();
        (independent_edges(g1, &all), vec![g2.distinct_labels()])
    };
    let b_rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&e| g1.edge(e).label.entries().iter().map(int_to_rat).collect())
        .collect();
    let b_inv = inverse(&b_rows).expect("basis labels are independent");

    let mut tried: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
    for pool in &image_pools {
        let mut picks: Vec<usize> = Vec::new();
        let mut found = None;
        choose(pool.len(), r, &mut picks, &mut |picks| {
            // Fix the sign of the first image: M and -M are equivalent.
            for mask in 0..(1u32 << (r - 1)) {
                let images: Vec<Weight> = picks
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| {
                        if k > 0 && mask & (1 << (k - 1)) != 0 {
                            -&pool[p]
                        } else {
                            pool[p].clone()
                        }
                    })
                    .collect();
                let refs: Vec<&Weight> = images.iter().collect();
                let Some(m) = unimodular_solution(&b_inv, &refs) else {
                    continue;
                };
                if !tried.insert(m.to_rows()) {
                    continue;
                }
                let moved = g1.transform_labels(&m);
                if label_multiset(&moved) != target_labels {
                    continue;
                }
                if let Some(iso) = isomorphic_strict(&moved, g2) {
                    found = Some(LatticeIsomorphism { iso, matrix: m });
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Visits injective sequences of length `k` from `0..n` in lexicographic
/// order until the callback returns `true`.
fn choose(n: usize, k: usize, picks: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if picks.len() == k {
        return f(picks);
    }
    for i in 0..n {
        if picks.contains(&i) {
            continue;
        }
        picks.push(i);
        if choose(n, k, picks, f) {
            return true;
        }
        picks.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::lattice::apply_matrix;

    #[test]
    fn x_graph_matches_product() {
        let x = catalog("example8").unwrap().graph;
        let p = catalog("product_s2s6").unwrap().graph;
        let iso = isomorphic_strict(&x, &p).expect("isomorphic");
        assert!(iso.verify(&x, &p));
        assert!(iso.inverse().verify(&p, &x));
    }

    #[test]
    fn self_isomorphism_is_identity() {
        for name in ["example8", "cp(3)", "cp1xcp3"] {
            let g = catalog(name).unwrap().graph;
            let iso = isomorphic_strict(&g, &g).unwrap();
            assert_eq!(iso.vertex_map, (0..g.vertex_count()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn different_sizes_not_isomorphic() {
        let x = catalog("example8").unwrap().graph;
        let c = catalog("cp(3)").unwrap().graph;
        assert!(isomorphic_strict(&x, &c).is_none());
    }

    #[test]
    fn lattice_variant_recovers_matrix() {
        let g = catalog("cp(3)").unwrap().graph;
        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let h = g.transform_labels(&m);
        let found = isomorphic_up_to_lattice_aut(&g, &h).unwrap();
        assert!(found
            .iso
            .verify_with(&g, &h, |w| apply_matrix(&found.matrix, w)));
    }

    #[test]
    fn lattice_variant_identity_on_product() {
        let x = catalog("example8").unwrap().graph;
        let p = catalog("product_s2s6").unwrap().graph;
        let found = isomorphic_up_to_lattice_aut(&x, &p).unwrap();
        assert_eq!(found.matrix, IntMatrix::identity(3));
    }

    #[test]
    fn scaled_labels_are_not_lattice_equivalent() {
        let g = catalog("cp(3)").unwrap().graph;
        let two = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert!(isomorphic_up_to_lattice_aut(&g, &g.transform_labels(&two)).is_none());
    }
}
