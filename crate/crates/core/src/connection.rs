//! Connections on GKM graphs: for every edge `e: p -> q` a bijection from
//! the edges at `p` to the edges at `q`, sending `e` to itself and
//! compatible with the labels modulo the label of `e`.
//!
//! The reverse orientation uses the inverse bijection, and both
//! compatibility conditions below are symmetric under that inversion, so a
//! connection is the same as an independent choice of one admissible
//! bijection per unoriented edge.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{GkmError, Result};
use crate::graph::{EdgeId, GkmGraph, SignedStructure, Warning};
use crate::lattice::Weight;

/// Sign-search guard on the number of edges.
pub const SIGN_SEARCH_LIMIT: usize = 24;

/// `maps[e][i]` is the image under `nabla_e` of the `i`-th edge in the star
/// of `ends.0` of `e`; it lies in the star of `ends.1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Connection {
    pub maps: Vec<Vec<EdgeId>>,
}

impl Connection {
    /// Image of `e_prime` under transport along `e`, starting at `from`.
    pub fn transport(&self, g: &GkmGraph, e: EdgeId, from: usize, e_prime: EdgeId) -> Option<EdgeId> {
        let edge = g.edge(e);
        let map = self.maps.get(e)?;
        if from == edge.ends.0 {
            let i = g.star(edge.ends.0).iter().position(|&x| x == e_prime)?;
            map.get(i).copied()
        } else {
            let i = map.iter().position(|&x| x == e_prime)?;
            g.star(edge.ends.0).get(i).copied()
        }
    }

    /// Checks shape: one bijection per edge between the right stars,
    /// sending the edge to itself.
    pub fn check_structure(&self, g: &GkmGraph) -> Result<()> {
        if self.maps.len() != g.edges().len() {
            return Err(GkmError::IncompleteConnection(format!(
                "{} star bijections for {} edges",
                self.maps.len(),
                g.edges().len()
            )));
        }
        for (e, map) in self.maps.iter().enumerate() {
            let (p, q) = g.edge(e).ends;
            let (sp, sq) = (g.star(p), g.star(q));
            if map.len() != sp.len() || sp.len() != sq.len() {
                return Err(GkmError::IncompleteConnection(format!(
                    "edge {e}: bijection has {} entries, stars have {} and {}",
                    map.len(),
                    sp.len(),
                    sq.len()
                )));
            }
            let mut seen = vec![false; map.len()];
            for &t in map {
                let Some(j) = sq.iter().position(|&x| x == t) else {
                    return Err(GkmError::IncompleteConnection(format!(
                        "edge {e}: image {t} is not incident to the target vertex"
                    )));
                };
                if std::mem::replace(&mut seen[j], true) {
                    return Err(GkmError::IncompleteConnection(format!(
                        "edge {e}: image {t} used twice"
                    )));
                }
            }
            let i = sp.iter().position(|&x| x == e).expect("edge lies in its own star");
            if map[i] != e {
                return Err(GkmError::IncompleteConnection(format!(
                    "edge {e} is not transported to itself"
                )));
            }
        }
        Ok(())
    }
}

/// Every connection on a graph, stored as independent per-edge choices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectionSet {
    options: Vec<Vec<Vec<EdgeId>>>,
}

impl ConnectionSet {
    /// Admissible bijections for edge `e`, in lexicographic order.
    pub fn options(&self, e: EdgeId) -> &[Vec<EdgeId>] {
        &self.options[e]
    }

    pub fn count(&self) -> BigUint {
        self.options.iter().map(|o| BigUint::from(o.len())).product()
    }

    pub fn is_empty(&self) -> bool {
        self.options.iter().any(Vec::is_empty)
    }

    /// All connections, lexicographic in edge order.
    pub fn iter(&self) -> impl Iterator<Item = Connection> + '_ {
        let mut idx = vec![0usize; self.options.len()];
        let mut done = self.is_empty();
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let c = Connection {
                maps: idx
                    .iter()
                    .zip(&self.options)
                    .map(|(&i, o)| o[i].clone())
                    .collect(),
            };
            done = true;
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < self.options[k].len() {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            Some(c)
        })
    }

    pub fn first(&self) -> Option<Connection> {
        self.iter().next()
    }
}

fn multiple_of(diff: &Weight, label: &Weight) -> bool {
    diff.integer_multiple_of(label).is_some()
}

/// Unsigned compatibility of `a` (at the tail) with `b` (at the head) across
/// an edge labelled `l`.
fn unsigned_compatible(a: &Weight, b: &Weight, l: &Weight, sigma_plus: bool) -> bool {
    multiple_of(&(b - a), l) || (!sigma_plus && multiple_of(&(b + a), l))
}

/// All bijections `star(p) -> star(q)` fixing `e` and allowed by `ok(i, j)`,
/// in lexicographic order of the image sequence.
fn star_bijections(
    g: &GkmGraph,
    e: EdgeId,
    ok: &dyn Fn(EdgeId, EdgeId) -> bool,
    limit: Option<usize>,
) -> Vec<Vec<EdgeId>> {
    let (p, q) = g.edge(e).ends;
    let sp = g.star(p);
    let sq = g.star(q);
    if sp.len() != sq.len() {
        return Vec::new();
    }
    let allowed: Vec<Vec<usize>> = sp
        .iter()
        .map(|&a| {
            if a == e {
                vec![sq.iter().position(|&x| x == e).expect("edge in star")]
            } else {
                (0..sq.len()).filter(|&j| sq[j] != e && ok(a, sq[j])).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sp.len());
    let mut used = vec![false; sq.len()];
    fn rec(
        allowed: &[Vec<usize>],
        sq: &[EdgeId],
        current: &mut Vec<EdgeId>,
        used: &mut [bool],
        out: &mut Vec<Vec<EdgeId>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let i = current.len();
        if i == allowed.len() {
            out.push(current.clone());
            return;
        }
        for &j in &allowed[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            current.push(sq[j]);
            rec(allowed, sq, current, used, out, limit);
            current.pop();
            used[j] = false;
        }
    }
    rec(&allowed, sq, &mut current, &mut used, &mut out, limit);
    out
}

/// Connections whose transports satisfy
/// `label(nabla_e e') = sigma * label(e') + c * label(e)` with `sigma = +-1`
/// (or `sigma = +1` on canonical representatives when `sigma_plus`).
pub fn enumerate_unsigned_connections(g: &GkmGraph, sigma_plus: bool) -> ConnectionSet {
    let options = (0..g.edges().len())
        .map(|e| {
            let l = &g.edge(e).label;
            let ok = |a: EdgeId, b: EdgeId| {
                unsigned_compatible(&g.edge(a).label, &g.edge(b).label, l, sigma_plus)
            };
            star_bijections(g, e, &ok, None)
        })
        .collect();
    ConnectionSet { options }
}

fn signed_ok(g: &GkmGraph, s: &SignedStructure, e: EdgeId, a: EdgeId, b: EdgeId) -> bool {
    let (p, q) = g.edge(e).ends;
    let alpha_a = s.alpha(g, a, p);
    let alpha_b = s.alpha(g, b, q);
    multiple_of(&(&alpha_b - &alpha_a), &s.labels()[e])
}

/// Admissible bijections for one edge under `alpha(nabla_e e') = alpha(e') + c alpha(e)`.
fn signed_options(g: &GkmGraph, s: &SignedStructure, e: EdgeId, limit: Option<usize>) -> Vec<Vec<EdgeId>> {
    let ok = |a: EdgeId, b: EdgeId| signed_ok(g, s, e, a, b);
    star_bijections(g, e, &ok, limit)
}

/// All connections compatible with a fixed signed structure.
pub fn signed_connections(g: &GkmGraph, s: &SignedStructure) -> ConnectionSet {
    ConnectionSet {
        options: (0..g.edges().len()).map(|e| signed_options(g, s, e, None)).collect(),
    }
}

/// Whether `nabla` is compatible with the signed structure `s`. Structural
/// defects are errors, not `false`.
pub fn check_connection(g: &GkmGraph, s: &SignedStructure, nabla: &Connection) -> Result<bool> {
    s.check_against(g)?;
    nabla.check_structure(g)?;
    Ok(nabla.maps.iter().enumerate().all(|(e, map)| {
        let p = g.edge(e).ends.0;
        g.star(p)
            .iter()
            .zip(map)
            .all(|(&a, &b)| signed_ok(g, s, e, a, b))
    }))
}

/// Whether `nabla` satisfies the unsigned compatibility condition.
pub fn check_unsigned_connection(g: &GkmGraph, nabla: &Connection, sigma_plus: bool) -> Result<bool> {
    nabla.check_structure(g)?;
    Ok(nabla.maps.iter().enumerate().all(|(e, map)| {
        let p = g.edge(e).ends.0;
        let l = &g.edge(e).label;
        g.star(p).iter().zip(map).all(|(&a, &b)| {
            unsigned_compatible(&g.edge(a).label, &g.edge(b).label, l, sigma_plus)
        })
    }))
}

#[derive(Clone, Debug)]
pub struct SignedSearch {
    /// A signed structure and a compatible connection, if any exists.
    pub witness: Option<(SignedStructure, Connection)>,
    /// Partial sign assignments visited by the backtracking search.
    pub nodes_visited: u64,
    pub warnings: Vec<Warning>,
}

/// Searches all signed structures, modulo global negation, for one that
/// admits a connection.
///
/// Edges are signed in the order of `(endpoints, label)`; an edge's
/// bijection condition is checked as soon as every edge at both of its
/// endpoints has a sign, which prunes most of the tree.
pub fn exists_signed_structure_with_connection(g: &GkmGraph) -> SignedSearch {
    let m = g.edges().len();
    let mut warnings = Vec::new();
    if m > SIGN_SEARCH_LIMIT {
        warnings.push(Warning::SearchSpace {
            edges: m,
            limit: SIGN_SEARCH_LIMIT,
        });
    }
    let order = sign_order(g);
    let mut position = vec![0; m];
    for (k, &e) in order.iter().enumerate() {
        position[e] = k;
    }
    // ready[k]: edges whose check becomes possible once order[..=k] are signed.
    let mut ready: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
    for e in 0..m {
        let (p, q) = g.edge(e).ends;
        let last = g
            .star(p)
            .iter()
            .chain(g.star(q))
            .map(|&x| position[x])
            .max()
            .unwrap_or(0);
        ready[last].push(e);
    }
    let mut search = SignSearch {
        g,
        order,
        ready,
        signs: vec![true; m],
        nodes: 0,
    };
    let found = if m == 0 { Some(()) } else { search.run(0).then_some(()) };
    let witness = found.map(|_| {
        let s = SignedStructure::from_signs(g, &search.signs).expect("one sign per edge");
        let maps = (0..m)
            .map(|e| {
                signed_options(g, &s, e, Some(1))
                    .pop()
                    .expect("checked during search")
            })
            .collect();
        (s, Connection { maps })
    });
    SignedSearch {
        witness,
        nodes_visited: search.nodes,
        warnings,
    }
}

fn sign_order(g: &GkmGraph) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.edges().len()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (g.edge(a), g.edge(b));
        (ea.key(), &ea.label, a).cmp(&(eb.key(), &eb.label, b))
    });
    order
}

struct SignSearch<'a> {
    g: &'a GkmGraph,
    order: Vec<EdgeId>,
    ready: Vec<Vec<EdgeId>>,
    signs: Vec<bool>,
    nodes: u64,
}

impl SignSearch<'_> {
    fn run(&mut self, k: usize) -> bool {
        self.nodes += 1;
        if k == self.order.len() {
            return true;
        }
        let e = self.order[k];
        let choices: &[bool] = if k == 0 { &[true] } else { &[true, false] };
        for &sign in choices {
            self.signs[e] = sign;
            let s = SignedStructure::from_signs(self.g, &self.signs).expect("one sign per edge");
            let feasible = self.ready[k]
                .iter()
                .all(|&f| !signed_options(self.g, &s, f, Some(1)).is_empty());
            if feasible && self.run(k + 1) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use num_traits::One;

    #[test]
    fn sphere_has_one_connection() {
        let b = catalog("cp(1)").unwrap();
        let set = enumerate_unsigned_connections(&b.graph, false);
        assert_eq!(set.count(), BigUint::one());
        let c = set.first().unwrap();
        let s = b.signed.unwrap();
        assert!(check_connection(&b.graph, &s, &c).unwrap());
        assert!(check_connection(&b.graph, &s.negated(), &c).unwrap());
    }

    #[test]
    fn example8_unsigned_but_not_signed() {
        let g = catalog("example8").unwrap().graph;
        let set = enumerate_unsigned_connections(&g, false);
        assert_eq!(set.count(), BigUint::one());
        let c = set.first().unwrap();
        assert!(check_unsigned_connection(&g, &c, false).unwrap());
        let search = exists_signed_structure_with_connection(&g);
        assert!(search.witness.is_none());
        assert!(search.warnings.is_empty());
        // The unique unsigned connection fails for every sign choice.
        for bits in 0u32..(1 << g.edges().len()) {
            let signs: Vec<bool> = (0..g.edges().len()).map(|i| bits >> i & 1 == 1).collect();
            let s = SignedStructure::from_signs(&g, &signs).unwrap();
            assert!(!check_connection(&g, &s, &c).unwrap());
        }
    }

    #[test]
    fn projective_spaces_admit_signed_connections() {
        for name in ["cp(1)", "cp(2)", "cp(3)", "cp(4)", "cp1xcp3"] {
            let g = catalog(name).unwrap().graph;
            let search = exists_signed_structure_with_connection(&g);
            let (s, c) = search.witness.unwrap_or_else(|| panic!("{name}"));
            assert!(check_connection(&g, &s, &c).unwrap(), "{name}");
        }
    }

    #[test]
    fn standard_signs_carry_a_connection() {
        let b = catalog("cp(2)").unwrap();
        let s = b.signed.unwrap();
        let set = signed_connections(&b.graph, &s);
        assert!(!set.is_empty());
        let unsigned = enumerate_unsigned_connections(&b.graph, false);
        for c in set.iter() {
            assert!(unsigned.iter().any(|u| u == c));
        }
    }

    #[test]
    fn incomplete_connection_is_an_error() {
        let b = catalog("cp(1)").unwrap();
        let s = b.signed.unwrap();
        let c = Connection { maps: vec![] };
        assert!(matches!(
            check_connection(&b.graph, &s, &c),
            Err(GkmError::IncompleteConnection(_))
        ));
    }
}
