//! GKM graphs: one vertex per fixed point, one edge per invariant 2-sphere,
//! edges labelled by weights up to sign.

mod catalog;
mod iso;

pub use catalog::{catalog, catalog_names, product, Builtin};
pub use iso::{isomorphic_strict, isomorphic_up_to_lattice_aut, GraphIsomorphism, LatticeIsomorphism};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{GkmError, Result};
use crate::lattice::{apply_matrix, IntMatrix, Weight};
use crate::linalg::int_rank;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub ends: (VertexId, VertexId),
    /// Lexicographically positive representative of the unsigned label.
    pub label: Weight,
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// Endpoints as an ordered pair `(min, max)`.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.ends.0.min(self.ends.1), self.ends.0.max(self.ends.1))
    }
}

/// A finite labelled multigraph. Parallel edges keep their own identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkmGraph {
    rank: usize,
    valence: usize,
    names: Vec<String>,
    edges: Vec<Edge>,
    stars: Vec<Vec<EdgeId>>,
}

impl GkmGraph {
    pub fn new(rank: usize, valence: usize) -> Self {
        GkmGraph {
            rank,
            valence,
            names: Vec::new(),
            edges: Vec::new(),
            stars: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(GkmError::DuplicateVertex(name));
        }
        self.names.push(name);
        self.stars.push(Vec::new());
        Ok(self.names.len() - 1)
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId, label: Weight) -> Result<EdgeId> {
        label.check_rank(self.rank)?;
        for v in [a, b] {
            if v >= self.names.len() {
                return Err(GkmError::UnknownVertex(format!("#{v}")));
            }
        }
        let id = self.edges.len();
        self.edges.push(Edge {
            ends: (a, b),
            label: label.canonical(),
        });
        self.stars[a].push(id);
        if a != b {
            self.stars[b].push(id);
        }
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str, label: Weight) -> Result<EdgeId> {
        let a = self.vertex_id(a)?;
        let b = self.vertex_id(b)?;
        self.add_edge(a, b, label)
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GkmError::UnknownVertex(name.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Edges incident to `v`, in insertion order.
    pub fn star(&self, v: VertexId) -> &[EdgeId] {
        &self.stars[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.stars[v].len()
    }

    /// Deduplicated unsigned labels, sorted.
    pub fn distinct_labels(&self) -> Vec<Weight> {
        self.edges
            .iter()
            .map(|e| e.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Rational rank of the span of all labels.
    pub fn label_span_rank(&self) -> usize {
        let rows: Vec<_> = self.edges.iter().map(|e| e.label.entries().to_vec()).collect();
        int_rank(&rows, self.rank)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        components_of(self.vertex_count(), self.edges.iter().map(|e| e.ends))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Number of fixed points.
    pub fn euler_characteristic(&self) -> usize {
        self.vertex_count()
    }

    /// `valence - rank`; negative values cannot come from an effective action.
    pub fn complexity(&self) -> i64 {
        self.valence as i64 - self.rank as i64
    }

    /// Copy of the graph with every label replaced by `m * label`.
    pub fn transform_labels(&self, m: &IntMatrix) -> GkmGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.label = apply_matrix(m, &e.label).canonical();
        }
        g
    }

    /// Copy of the graph with vertices reordered: new vertex `i` is old
    /// vertex `order[i]`. Edge order is preserved.
    pub fn permute_vertices(&self, order: &[VertexId]) -> GkmGraph {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let mut g = GkmGraph::new(self.rank, self.valence);
        for &old in order {
            g.add_vertex(self.names[old].clone()).expect("names are unique");
        }
        for e in &self.edges {
            g.add_edge(inverse[e.ends.0], inverse[e.ends.1], e.label.clone())
                .expect("edge is well formed");
        }
        g
    }

    /// Subgraph on all vertices keeping only the listed edges.
    pub fn spanning_subgraph(&self, keep: &[EdgeId]) -> GkmGraph {
        let mut g = GkmGraph::new(self.rank, self.valence);
        for n in &self.names {
            g.add_vertex(n.clone()).expect("names are unique");
        }
        for &e in keep {
            let edge = &self.edges[e];
            g.add_edge(edge.ends.0, edge.ends.1, edge.label.clone())
                .expect("edge is well formed");
        }
        g
    }

    /// Induced graph on a vertex subset with the given edges; valence is
    /// taken from the first vertex.
    pub fn subgraph(&self, vertices: &[VertexId], edges: &[EdgeId]) -> GkmGraph {
        let index: HashMap<VertexId, VertexId> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let valence = vertices
            .first()
            .map_or(0, |&v| edges.iter().filter(|&&e| {
                let ed = &self.edges[e];
                ed.ends.0 == v || ed.ends.1 == v
            }).count());
        let mut g = GkmGraph::new(self.rank, valence);
        for &v in vertices {
            g.add_vertex(self.names[v].clone()).expect("names are unique");
        }
        for &e in edges {
            let edge = &self.edges[e];
            g.add_edge(index[&edge.ends.0], index[&edge.ends.1], edge.label.clone())
                .expect("edge endpoints lie in the vertex subset");
        }
        g
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

pub(crate) fn components_of(
    n: usize,
    edges: impl Iterator<Item = (VertexId, VertexId)>,
) -> Vec<Vec<VertexId>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let i = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[i].push(v);
    }
    groups
}

/// A lift of every unsigned label to an honest weight.
///
/// `labels[e]` is the weight of the oriented edge `ends.0 -> ends.1`; the
/// reverse orientation carries the negated vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedStructure {
    labels: Vec<Weight>,
}

impl SignedStructure {
    pub fn from_labels(g: &GkmGraph, labels: Vec<Weight>) -> Result<Self> {
        if labels.len() != g.edges().len() {
            return Err(GkmError::IncompleteSignedStructure {
                expected: g.edges().len(),
                found: labels.len(),
            });
        }
        for (i, (l, e)) in labels.iter().zip(g.edges()).enumerate() {
            l.check_rank(g.rank())?;
            if l.canonical() != e.label {
                return Err(GkmError::SignMismatch {
                    edge: i,
                    signed: l.to_string(),
                    unsigned: e.label.to_string(),
                });
            }
        }
        Ok(SignedStructure { labels })
    }

    /// `signs[e] == true` orients edge `e` by its canonical label.
    pub fn from_signs(g: &GkmGraph, signs: &[bool]) -> Result<Self> {
        if signs.len() != g.edges().len() {
            return Err(GkmError::IncompleteSignedStructure {
                expected: g.edges().len(),
                found: signs.len(),
            });
        }
        let labels = g
            .edges()
            .iter()
            .zip(signs)
            .map(|(e, &s)| if s { e.label.clone() } else { -&e.label })
            .collect();
        Ok(SignedStructure { labels })
    }

    pub fn labels(&self) -> &[Weight] {
        &self.labels
    }

    pub fn signs(&self) -> Vec<bool> {
        self.labels.iter().map(Weight::is_lex_positive).collect()
    }

    /// Weight of edge `e` oriented away from `from`.
    pub fn alpha(&self, g: &GkmGraph, e: EdgeId, from: VertexId) -> Weight {
        if g.edge(e).ends.0 == from {
            self.labels[e].clone()
        } else {
            -&self.labels[e]
        }
    }

    /// Signed weights at `v`, in star order.
    pub fn weights_at(&self, g: &GkmGraph, v: VertexId) -> Vec<Weight> {
        g.star(v).iter().map(|&e| self.alpha(g, e, v)).collect()
    }

    pub fn negated(&self) -> SignedStructure {
        SignedStructure {
            labels: self.labels.iter().map(|l| -l).collect(),
        }
    }

    /// Checks that every signed label reduces to the unsigned label of `g`.
    pub fn check_against(&self, g: &GkmGraph) -> Result<()> {
        Self::from_labels(g, self.labels.clone()).map(|_| ())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyGraph,
    SelfLoop { edge: EdgeId },
    ZeroLabel { edge: EdgeId },
    NonRegularValence { vertex: String, degree: usize, expected: usize },
    CollinearWeights { vertex: String, edges: (EdgeId, EdgeId) },
    Disconnected { components: usize },
    NegativeComplexity { valence: usize, rank: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "empty graph"),
            Violation::SelfLoop { edge } => write!(f, "self-loop on edge {edge}"),
            Violation::ZeroLabel { edge } => write!(f, "zero label on edge {edge}"),
            Violation::NonRegularValence { vertex, degree, expected } => write!(
                f,
                "non-regular valence at vertex {vertex}: degree {degree}, expected {expected}"
            ),
            Violation::CollinearWeights { vertex, edges } => write!(
                f,
                "collinear weights at vertex {vertex}: edges {} and {}",
                edges.0, edges.1
            ),
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::NegativeComplexity { valence, rank } => write!(
                f,
                "negative complexity: valence {valence} < rank {rank}, action cannot be effective"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Labels do not span the weight lattice rationally.
    NotEffective { span_rank: usize, rank: usize },
    SearchSpace { edges: usize, limit: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NotEffective { span_rank, rank } => write!(
                f,
                "labels span a rank-{span_rank} sublattice of Z^{rank}; action is not effective"
            ),
            Warning::SearchSpace { edges, limit } => write!(
                f,
                "{edges} edges exceed the exhaustive-search guard of {limit}"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(g: &GkmGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    if g.vertex_count() == 0 {
        report.violations.push(Violation::EmptyGraph);
        return report;
    }
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            report.violations.push(Violation::SelfLoop { edge: i });
        }
        if e.label.is_zero() {
            report.violations.push(Violation::ZeroLabel { edge: i });
        }
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) != g.valence() {
            report.violations.push(Violation::NonRegularValence {
                vertex: g.vertex_name(v).to_string(),
                degree: g.degree(v),
                expected: g.valence(),
            });
        }
        let star = g.star(v);
        'pairs: for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                let (la, lb) = (&g.edge(a).label, &g.edge(b).label);
                if !la.is_zero() && !lb.is_zero() && la.is_parallel(lb) {
                    report.violations.push(Violation::CollinearWeights {
                        vertex: g.vertex_name(v).to_string(),
                        edges: (a, b),
                    });
                    break 'pairs;
                }
            }
        }
    }
    let comps = g.components().len();
    if comps > 1 {
        report.violations.push(Violation::Disconnected { components: comps });
    }
    if g.complexity() < 0 {
        report.violations.push(Violation::NegativeComplexity {
            valence: g.valence(),
            rank: g.rank(),
        });
    }
    let span = g.label_span_rank();
    if span < g.rank() {
        report.warnings.push(Warning::NotEffective {
            span_rank: span,
            rank: g.rank(),
        });
    }
    report
}
