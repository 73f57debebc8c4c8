//! Momentum-graph realizations: vertex positions and positive edge lengths
//! with `pos(q) - pos(p) = length(e) * alpha(e)` for every oriented edge.
//!
//! Positions are eliminated through a cycle basis, leaving a homogeneous
//! system `A l = 0` in the lengths together with `l >= 1` and any extra
//! length constraints. Feasibility and the lexicographically smallest
//! length vector are found by Fourier–Motzkin elimination.

pub mod fm;
mod xray;

pub use xray::{xray, xray_equal, XRay, XRayMode};

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};

use crate::error::{GkmError, Result};
use crate::graph::{EdgeId, GkmGraph, SignedStructure, VertexId};
use crate::lattice::Weight;
use crate::linalg::{int_to_rat, nullspace, rat_string, rref, Rational};

/// Guard on the number of edges for the sign search.
pub const SIGN_SEARCH_LIMIT: usize = 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentumRealization {
    pub positions: Vec<Vec<Rational>>,
    pub lengths: Vec<Rational>,
}

impl MomentumRealization {
    /// Checks every edge equation exactly and that all lengths are positive.
    pub fn check(&self, g: &GkmGraph, s: &SignedStructure) -> Result<()> {
        if self.positions.len() != g.vertex_count() || self.lengths.len() != g.edges().len() {
            return Err(GkmError::InvalidRealization(
                "realization does not match the graph".to_string(),
            ));
        }
        for (e, edge) in g.edges().iter().enumerate() {
            if !self.lengths[e].is_positive() {
                return Err(GkmError::InvalidRealization(format!(
                    "edge {e} has non-positive length {}",
                    rat_string(&self.lengths[e])
                )));
            }
            let (p, q) = edge.ends;
            let alpha = &s.labels()[e];
            for k in 0..g.rank() {
                let lhs = &self.positions[q][k] - &self.positions[p][k];
                if lhs != &self.lengths[e] * int_to_rat(&alpha.entries()[k]) {
                    return Err(GkmError::InvalidRealization(format!(
                        "edge {e} ({} -> {}) violates its equation in coordinate {k}",
                        g.vertex_name(p),
                        g.vertex_name(q)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn translated(&self, v: &[Rational]) -> MomentumRealization {
        MomentumRealization {
            positions: self
                .positions
                .iter()
                .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
                .collect(),
            lengths: self.lengths.clone(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> MomentumRealization {
        MomentumRealization {
            positions: self
                .positions
                .iter()
                .map(|p| p.iter().map(|a| a * c).collect())
                .collect(),
            lengths: self.lengths.iter().map(|l| l * c).collect(),
        }
    }

    /// Rescales so the shortest edge has length one.
    pub fn renormalized(&self) -> MomentumRealization {
        match self.lengths.iter().min() {
            Some(m) if m.is_positive() => self.scaled(&m.recip()),
            _ => self.clone(),
        }
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let positions: serde_json::Map<String, serde_json::Value> = self
            .positions
            .iter()
            .enumerate()
            .map(|(v, p)| {
                (
                    g.vertex_name(v).to_string(),
                    p.iter().map(rat_string).collect::<Vec<_>>().into(),
                )
            })
            .collect();
        serde_json::json!({
            "positions": positions,
            "lengths": self.lengths.iter().map(rat_string).collect::<Vec<_>>(),
        })
    }
}

/// `sum coeffs[e] * length(e) >= rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LengthConstraint {
    pub coeffs: Vec<(EdgeId, Rational)>,
    pub rhs: Rational,
}

impl LengthConstraint {
    /// `length(a) >= length(b) + gap`.
    pub fn at_least_longer(a: EdgeId, b: EdgeId, gap: Rational) -> Self {
        LengthConstraint {
            coeffs: vec![(a, Rational::one()), (b, -Rational::one())],
            rhs: gap,
        }
    }
}

/// Oriented cycle as `(edge, +1 if traversed ends.0 -> ends.1)`.
pub type Cycle = Vec<(EdgeId, i8)>;

/// Fundamental cycles of a spanning forest grown by BFS from the last
/// vertex, using only the listed edges.
pub fn cycle_basis(g: &GkmGraph, edges: &[EdgeId]) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in edges {
        let (p, q) = g.edge(e).ends;
        adj[p].push(e);
        if p != q {
            adj[q].push(e);
        }
    }
    let (parent, tree) = spanning_forest(g, &adj);
    let mut cycles = Vec::new();
    for &e in edges {
        if tree.contains(&e) {
            continue;
        }
        let (p, q) = g.edge(e).ends;
        // e goes p -> q; close it with the tree path q -> p.
        let mut cycle = vec![(e, 1i8)];
        let path_q = root_path(&parent, q);
        let path_p = root_path(&parent, p);
        let common = path_q
            .iter()
            .rev()
            .zip(path_p.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        // Up from q to the meeting point, then down to p.
        for &(edge, child) in &path_q[..path_q.len() - common] {
            cycle.push((edge, if g.edge(edge).ends.0 == child { 1 } else { -1 }));
        }
        for &(edge, child) in path_p[..path_p.len() - common].iter().rev() {
            cycle.push((edge, if g.edge(edge).ends.0 == child { -1 } else { 1 }));
        }
        cycles.push(cycle);
    }
    cycles
}

type Parents = Vec<Option<(EdgeId, VertexId)>>;

fn spanning_forest(g: &GkmGraph, adj: &[Vec<EdgeId>]) -> (Parents, Vec<EdgeId>) {
    let n = g.vertex_count();
    let mut parent: Parents = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    for root in (0..n).rev() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                let u = g.edge(e).other(v);
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((e, v));
                    tree.push(e);
                    queue.push_back(u);
                }
            }
        }
    }
    (parent, tree)
}

/// Tree edges from `v` up to its root, as `(edge, child endpoint)`.
fn root_path(parent: &Parents, mut v: VertexId) -> Vec<(EdgeId, VertexId)> {
    let mut path = Vec::new();
    while let Some((e, p)) = parent[v] {
        path.push((e, v));
        v = p;
    }
    path
}

/// Rows `sum_e sign * alpha(e)_k * length(e) = 0`, one per cycle and coordinate.
fn cycle_equations(g: &GkmGraph, s: &SignedStructure, cycles: &[Cycle]) -> Vec<Vec<Rational>> {
    let m = g.edges().len();
    let mut rows = Vec::new();
    for c in cycles {
        for k in 0..g.rank() {
            let mut row = vec![Rational::zero(); m];
            for &(e, sign) in c {
                let a = int_to_rat(&s.labels()[e].entries()[k]);
                row[e] += if sign > 0 { a } else { -a };
            }
            rows.push(row);
        }
    }
    rows
}

/// One equation of an infeasibility certificate: coordinate `coordinate`
/// of the closure condition around `cycle`, with its multiplier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleTerm {
    pub cycle: Cycle,
    pub coordinate: usize,
    pub multiplier: Rational,
}

/// Farkas certificate: `sum y_i (cycle equation i) + sum lambda_j
/// (inequality j)` has zero length coefficients and positive right-hand
/// side, with every `lambda_j >= 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InfeasibilityCertificate {
    pub cycle_terms: Vec<CycleTerm>,
    /// Multipliers of `length(e) >= 1`, indexed by edge.
    pub length_multipliers: Vec<Rational>,
    /// Multipliers of the extra constraints, in order.
    pub extra_multipliers: Vec<Rational>,
}

impl InfeasibilityCertificate {
    /// Recomputes the combination and checks it is `0 >= c` with `c > 0`.
    pub fn verify(&self, problem: &MomentumProblem) -> bool {
        let g = problem.graph;
        let m = g.edges().len();
        if self.length_multipliers.len() != m || self.extra_multipliers.len() != problem.extra.len() {
            return false;
        }
        let mut total = vec![Rational::zero(); m];
        let mut rhs = Rational::zero();
        for t in &self.cycle_terms {
            for &(e, sign) in &t.cycle {
                let a = int_to_rat(&problem.signs.labels()[e].entries()[t.coordinate]) * &t.multiplier;
                total[e] += if sign > 0 { a } else { -a };
            }
        }
        for (e, l) in self.length_multipliers.iter().enumerate() {
            if l.is_negative() {
                return false;
            }
            total[e] += l;
            rhs += l;
        }
        for (c, l) in problem.extra.iter().zip(&self.extra_multipliers) {
            if l.is_negative() {
                return false;
            }
            for (e, a) in &c.coeffs {
                total[*e] += a * l;
            }
            rhs += &c.rhs * l;
        }
        total.iter().all(Zero::is_zero) && rhs.is_positive()
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .cycle_terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "cycle": t.cycle.iter().map(|&(e, sign)| {
                        let (p, q) = g.edge(e).ends;
                        let (a, b) = if sign > 0 { (p, q) } else { (q, p) };
                        format!("{}->{}", g.vertex_name(a), g.vertex_name(b))
                    }).collect::<Vec<_>>(),
                    "coordinate": t.coordinate,
                    "multiplier": rat_string(&t.multiplier),
                })
            })
            .collect();
        serde_json::json!({
            "cycle_terms": terms,
            "length_multipliers": self.length_multipliers.iter().map(rat_string).collect::<Vec<_>>(),
            "extra_multipliers": self.extra_multipliers.iter().map(rat_string).collect::<Vec<_>>(),
        })
    }

    /// Human-readable summary naming the cycles involved.
    pub fn describe(&self, g: &GkmGraph) -> String {
        let mut parts = Vec::new();
        for t in &self.cycle_terms {
            let edges: Vec<String> = t
                .cycle
                .iter()
                .map(|&(e, sign)| {
                    let (p, q) = g.edge(e).ends;
                    let (a, b) = if sign > 0 { (p, q) } else { (q, p) };
                    format!("{}->{}", g.vertex_name(a), g.vertex_name(b))
                })
                .collect();
            parts.push(format!(
                "{} x coordinate {} of cycle [{}]",
                rat_string(&t.multiplier),
                t.coordinate,
                edges.join(", ")
            ));
        }
        format!("inconsistent closure: {}", parts.join("; "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Realizability {
    Feasible(MomentumRealization),
    Infeasible(InfeasibilityCertificate),
}

impl Realizability {
    pub fn realization(&self) -> Option<&MomentumRealization> {
        match self {
            Realizability::Feasible(m) => Some(m),
            Realizability::Infeasible(_) => None,
        }
    }
}

/// A signed graph with optional extra constraints on edge lengths.
#[derive(Clone, Debug)]
pub struct MomentumProblem<'a> {
    pub graph: &'a GkmGraph,
    pub signs: &'a SignedStructure,
    pub extra: Vec<LengthConstraint>,
}

impl<'a> MomentumProblem<'a> {
    pub fn new(graph: &'a GkmGraph, signs: &'a SignedStructure) -> Self {
        MomentumProblem {
            graph,
            signs,
            extra: Vec::new(),
        }
    }

    pub fn with_constraint(mut self, c: LengthConstraint) -> Self {
        self.extra.push(c);
        self
    }

    /// Solves the problem. The returned realization pins the last vertex at
    /// the origin and has the lexicographically smallest length vector.
    pub fn solve(&self) -> Result<Realizability> {
        let g = self.graph;
        self.signs.check_against(g)?;
        if !g.is_connected() {
            return Err(GkmError::Unsupported(
                "momentum realizations need a connected graph".to_string(),
            ));
        }
        let all: Vec<EdgeId> = (0..g.edges().len()).collect();
        match self.solve_lengths(&all)? {
            Ok(lengths) => Ok(Realizability::Feasible(self.positions_from(lengths))),
            Err(cert) => Ok(Realizability::Infeasible(cert)),
        }
    }

    /// Feasibility of the closure conditions on a subset of edges, with
    /// `length >= 1` on those edges only.
    fn feasible_on(&self, edges: &[EdgeId]) -> bool {
        let cycles = cycle_basis(self.graph, edges);
        let eqs = cycle_equations(self.graph, self.signs, &cycles);
        let basis = nullspace(&eqs, self.graph.edges().len());
        let rows: Vec<(Vec<Rational>, Rational)> = edges
            .iter()
            .map(|&e| (basis.iter().map(|v| v[e].clone()).collect(), Rational::one()))
            .collect();
        if basis.is_empty() {
            return rows.is_empty();
        }
        fm::find_contradiction(&fm::system(rows)).is_none()
    }

    fn inequality_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        let m = self.graph.edges().len();
        let mut rows: Vec<(Vec<Rational>, Rational)> = (0..m)
            .map(|e| {
                let mut c = vec![Rational::zero(); m];
                c[e] = Rational::one();
                (c, Rational::one())
            })
            .collect();
        for x in &self.extra {
            let mut c = vec![Rational::zero(); m];
            for (e, a) in &x.coeffs {
                c[*e] += a;
            }
            rows.push((c, x.rhs.clone()));
        }
        rows
    }

    fn solve_lengths(
        &self,
        edges: &[EdgeId],
    ) -> Result<std::result::Result<Vec<Rational>, InfeasibilityCertificate>> {
        let g = self.graph;
        let m = g.edges().len();
        let cycles = cycle_basis(g, edges);
        let eqs = cycle_equations(g, self.signs, &cycles);
        // lengths = N t with the columns of N spanning the solutions of A l = 0.
        let basis = nullspace(&eqs, m);
        let dim = basis.len();
        let ineq_rows = self.inequality_rows();
        let param_rows: Vec<(Vec<Rational>, Rational)> = ineq_rows
            .iter()
            .map(|(c, b)| {
                let coeffs = (0..dim)
                    .map(|j| c.iter().zip(&basis[j]).map(|(x, y)| x * y).sum())
                    .collect();
                (coeffs, b.clone())
            })
            .collect();
        let system = fm::system(param_rows);
        if let Some(contra) = fm::find_contradiction(&system) {
            return Ok(Err(self.certificate(&cycles, &eqs, &ineq_rows, &contra.origin)?));
        }
        // Lexicographic minimization, fixing one length at a time.
        let mut offset = vec![Rational::zero(); m];
        let mut param: Vec<Vec<Rational>> = (0..m)
            .map(|e| (0..dim).map(|j| basis[j][e].clone()).collect())
            .collect();
        let mut ineqs = system;
        for e in 0..m {
            let f = param[e].clone();
            let Some(k) = f.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let min = fm::minimize(&ineqs, &f).ok_or_else(|| {
                GkmError::Inconsistent(format!("length of edge {e} is unbounded below"))
            })?;
            let target = min;
            // t_k = (target - sum_{j != k} f_j t_j) / f_k
            let fk = f[k].clone();
            let sub = |coeffs: &mut Vec<Rational>, constant: &mut Rational, sign: bool| {
                let ck = coeffs[k].clone();
                if ck.is_zero() {
                    return;
                }
                for j in 0..coeffs.len() {
                    if j != k {
                        let d = &ck * &f[j] / &fk;
                        coeffs[j] -= d;
                    }
                }
                let shift = &ck * &target / &fk;
                if sign {
                    *constant += shift;
                } else {
                    *constant -= shift;
                }
                coeffs[k] = Rational::zero();
            };
            for (i, row) in param.iter_mut().enumerate() {
                sub(row, &mut offset[i], true);
            }
            for q in ineqs.iter_mut() {
                sub(&mut q.coeffs, &mut q.rhs, false);
            }
        }
        Ok(Ok(offset))
    }

    fn certificate(
        &self,
        cycles: &[Cycle],
        eqs: &[Vec<Rational>],
        ineq_rows: &[(Vec<Rational>, Rational)],
        lambda: &[Rational],
    ) -> Result<InfeasibilityCertificate> {
        let m = self.graph.edges().len();
        // Need y with y^T A = -lambda^T C, i.e. A^T y = -C^T lambda.
        let mut target = vec![Rational::zero(); m];
        for (l, (c, _)) in lambda.iter().zip(ineq_rows) {
            for (t, x) in target.iter_mut().zip(c) {
                *t -= l * x;
            }
        }
        let y = solve_transposed(eqs, &target, m).ok_or_else(|| {
            GkmError::Inconsistent("Farkas multipliers do not lie in the cycle row space".into())
        })?;
        let r = self.graph.rank();
        let cycle_terms = y
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| CycleTerm {
                cycle: cycles[i / r].clone(),
                coordinate: i % r,
                multiplier: v,
            })
            .collect();
        let cert = InfeasibilityCertificate {
            cycle_terms,
            length_multipliers: lambda[..m].to_vec(),
            extra_multipliers: lambda[m..].to_vec(),
        };
        if !cert.verify(self) {
            return Err(GkmError::Inconsistent("infeasibility certificate failed to verify".into()));
        }
        Ok(cert)
    }

    fn positions_from(&self, lengths: Vec<Rational>) -> MomentumRealization {
        let g = self.graph;
        let n = g.vertex_count();
        let r = g.rank();
        let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for (e, edge) in g.edges().iter().enumerate() {
            adj[edge.ends.0].push(e);
            adj[edge.ends.1].push(e);
        }
        let (parent, _) = spanning_forest(g, &adj);
        let mut positions: Vec<Option<Vec<Rational>>> = vec![None; n];
        positions[n - 1] = Some(vec![Rational::zero(); r]);
        fn place(
            v: VertexId,
            g: &GkmGraph,
            s: &SignedStructure,
            lengths: &[Rational],
            parent: &Parents,
            positions: &mut Vec<Option<Vec<Rational>>>,
        ) -> Vec<Rational> {
            if let Some(p) = &positions[v] {
                return p.clone();
            }
            let (e, p) = parent[v].expect("connected graph");
            let base = place(p, g, s, lengths, parent, positions);
            let alpha: &Weight = &s.labels()[e];
            let sign = if g.edge(e).ends.0 == p { Rational::one() } else { -Rational::one() };
            let pos: Vec<Rational> = base
                .iter()
                .zip(alpha.entries())
                .map(|(b, a)| b + &sign * &lengths[e] * int_to_rat(a))
                .collect();
            positions[v] = Some(pos.clone());
            pos
        }
        for v in 0..n {
            place(v, g, self.signs, &lengths, &parent, &mut positions);
        }
        MomentumRealization {
            positions: positions.into_iter().map(|p| p.expect("placed")).collect(),
            lengths,
        }
    }
}

/// Some `y` with `A^T y = b`, where `A` has `m` columns.
fn solve_transposed(a: &[Vec<Rational>], b: &[Rational], m: usize) -> Option<Vec<Rational>> {
    let rows = a.len();
    // Augmented system: m equations in `rows` unknowns.
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|j| {
            let mut r: Vec<Rational> = a.iter().map(|row| row[j].clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let piv = rref(&mut aug, rows + 1);
    if piv.contains(&rows) {
        return None;
    }
    let mut y = vec![Rational::zero(); rows];
    for (i, &p) in piv.iter().enumerate() {
        y[p] = aug[i][rows].clone();
    }
    Some(y)
}

pub fn realize(g: &GkmGraph, s: &SignedStructure) -> Result<Realizability> {
    MomentumProblem::new(g, s).solve()
}

/// Sum of `length * alpha` around every basis cycle; all must vanish.
pub fn cycle_closure_holds(g: &GkmGraph, s: &SignedStructure, m: &MomentumRealization) -> bool {
    let all: Vec<EdgeId> = (0..g.edges().len()).collect();
    cycle_basis(g, &all).iter().all(|c| {
        (0..g.rank()).all(|k| {
            let total: Rational = c
                .iter()
                .map(|&(e, sign)| {
                    let v = &m.lengths[e] * int_to_rat(&s.labels()[e].entries()[k]);
                    if sign > 0 {
                        v
                    } else {
                        -v
                    }
                })
                .sum();
            total.is_zero()
        })
    })
}

#[derive(Clone, Debug)]
pub struct SignSearchResult {
    pub found: Option<(SignedStructure, MomentumRealization)>,
    /// Partial sign assignments visited.
    pub nodes_visited: u64,
}

/// Tries sign structures modulo global negation (first edge positive), in
/// lexicographic order with `+` before `-`, and returns the first one that
/// is realizable. Partial assignments are pruned whenever an edge closes a
/// cycle among the edges signed so far.
pub fn realize_any_signs(g: &GkmGraph) -> Result<SignSearchResult> {
    let m = g.edges().len();
    if m > SIGN_SEARCH_LIMIT {
        return Err(GkmError::SearchTooLarge(format!(
            "{m} edges exceed the sign-search guard of {SIGN_SEARCH_LIMIT}"
        )));
    }
    if !g.is_connected() {
        return Err(GkmError::Unsupported(
            "momentum realizations need a connected graph".to_string(),
        ));
    }
    let mut search = AnySigns {
        g,
        signs: vec![true; m],
        nodes: 0,
        found: None,
    };
    search.run(0)?;
    Ok(SignSearchResult {
        found: search.found,
        nodes_visited: search.nodes,
    })
}

struct AnySigns<'a> {
    g: &'a GkmGraph,
    signs: Vec<bool>,
    nodes: u64,
    found: Option<(SignedStructure, MomentumRealization)>,
}

impl AnySigns<'_> {
    fn closes_cycle(&self, k: usize) -> bool {
        let (p, q) = self.g.edge(k).ends;
        let comps = crate::graph::components_of(
            self.g.vertex_count(),
            (0..k).map(|e| self.g.edge(e).ends),
        );
        p == q || comps.iter().any(|c| c.contains(&p) && c.contains(&q))
    }

    fn run(&mut self, k: usize) -> Result<bool> {
        self.nodes += 1;
        let m = self.g.edges().len();
        if k == m {
            let s = SignedStructure::from_signs(self.g, &self.signs)?;
            if let Realizability::Feasible(r) = realize(self.g, &s)? {
                self.found = Some((s, r));
                return Ok(true);
            }
            return Ok(false);
        }
        let check = self.closes_cycle(k);
        let choices: &[bool] = if k == 0 { &[true] } else { &[true, false] };
        for &sign in choices {
            self.signs[k] = sign;
            if check {
                let s = SignedStructure::from_signs(self.g, &self.signs)?;
                let prefix: Vec<EdgeId> = (0..=k).collect();
                if !MomentumProblem::new(self.g, &s).feasible_on(&prefix) {
                    continue;
                }
            }
            if self.run(k + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::linalg::rat;

    #[test]
    fn sphere_realization() {
        let b = catalog("cp(1)").unwrap();
        let s = b.signed.unwrap();
        let m = realize(&b.graph, &s).unwrap();
        let m = m.realization().unwrap();
        assert_eq!(m.positions, vec![vec![rat(1)], vec![rat(0)]]);
        assert_eq!(m.lengths, vec![rat(1)]);
        m.check(&b.graph, &s).unwrap();
    }

    #[test]
    fn example8_is_never_realizable() {
        let g = catalog("example8").unwrap().graph;
        let s = SignedStructure::from_signs(&g, &vec![true; g.edges().len()]).unwrap();
        let problem = MomentumProblem::new(&g, &s);
        match problem.solve().unwrap() {
            Realizability::Infeasible(cert) => assert!(cert.verify(&problem)),
            Realizability::Feasible(_) => panic!("example8 realized"),
        }
        assert!(realize_any_signs(&g).unwrap().found.is_none());
    }

    #[test]
    fn product_is_realizable_with_rigid_verticals() {
        let b = catalog("cp1xcp3").unwrap();
        let s = b.signed.unwrap();
        let m = realize(&b.graph, &s).unwrap().realization().cloned().unwrap();
        m.check(&b.graph, &s).unwrap();
        assert!(cycle_closure_holds(&b.graph, &s, &m));
        assert!(m.lengths.iter().all(|l| l == &rat(1)));
        for a in 12..16 {
            for c in 12..16 {
                if a == c {
                    continue;
                }
                let p = MomentumProblem::new(&b.graph, &s)
                    .with_constraint(LengthConstraint::at_least_longer(a, c, rat(1)));
                match p.solve().unwrap() {
                    Realizability::Infeasible(cert) => assert!(cert.verify(&p)),
                    Realizability::Feasible(_) => panic!("verticals {a} and {c} differ"),
                }
            }
        }
    }

    #[test]
    fn lexicographic_minimum_respects_extra_constraints() {
        let b = catalog("cp1xcp3").unwrap();
        let s = b.signed.unwrap();
        let p = MomentumProblem::new(&b.graph, &s)
            .with_constraint(LengthConstraint::at_least_longer(12, 0, rat(2)));
        let m = p.solve().unwrap().realization().cloned().unwrap();
        assert_eq!(m.lengths[0], rat(1));
        assert_eq!(m.lengths[12], rat(3));
    }

    #[test]
    fn sign_search_finds_simplices() {
        for name in ["cp(1)", "cp(2)", "cp(3)", "cp(4)", "cp1xcp3"] {
            let g = catalog(name).unwrap().graph;
            let (s, m) = realize_any_signs(&g).unwrap().found.unwrap();
            m.check(&g, &s).unwrap();
        }
    }
}
