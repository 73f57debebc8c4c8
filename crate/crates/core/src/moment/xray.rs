//! X-rays: the orbit poset together with the momentum image of the fixed
//! points of every element.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::MomentumRealization;
use crate::error::Result;
use crate::graph::{GkmGraph, SignedStructure};
use crate::linalg::{rat_string, Rational};
use crate::strata::{labelled_poset_isomorphism, orbit_poset, StratPoset};

pub type Point = Vec<Rational>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XRay {
    pub poset: StratPoset,
    /// Sorted, duplicate-free vertex images of each poset element.
    pub polytopes: Vec<Vec<Point>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum XRayMode {
    Exact,
    /// Equal after translating the lexicographically smallest image point
    /// to the origin and scaling the largest absolute coordinate to one.
    UpToTranslationAndScaling,
}

pub fn xray(g: &GkmGraph, s: &SignedStructure, m: &MomentumRealization) -> Result<XRay> {
    m.check(g, s)?;
    let poset = orbit_poset(g)?;
    let polytopes = poset
        .elements
        .iter()
        .map(|el| {
            el.component
                .vertices
                .iter()
                .map(|&v| m.positions[v].clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    Ok(XRay { poset, polytopes })
}

impl XRay {
    fn all_points(&self) -> BTreeSet<Point> {
        self.polytopes.iter().flatten().cloned().collect()
    }

    /// Translation- and scale-normalized copy.
    pub fn normalized(&self) -> XRay {
        let points = self.all_points();
        let Some(base) = points.iter().next().cloned() else {
            return self.clone();
        };
        let scale = points
            .iter()
            .flat_map(|p| p.iter().zip(&base).map(|(a, b)| (a - b).abs()))
            .max()
            .filter(|m| !m.is_zero());
        let map = |p: &Point| -> Point {
            p.iter()
                .zip(&base)
                .map(|(a, b)| {
                    let d = a - b;
                    match &scale {
                        Some(s) => d / s,
                        None => d,
                    }
                })
                .collect()
        };
        XRay {
            poset: self.poset.clone(),
            polytopes: self
                .polytopes
                .iter()
                .map(|ps| ps.iter().map(map).collect::<BTreeSet<_>>().into_iter().collect())
                .collect(),
        }
    }

    pub fn to_json(&self, g: &GkmGraph) -> Value {
        let elements: Vec<Value> = self
            .poset
            .elements
            .iter()
            .zip(&self.polytopes)
            .enumerate()
            .map(|(i, (el, pts))| {
                json!({
                    "index": i,
                    "vertices": el.component.vertices.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>(),
                    "principal_isotropy": el.principal_isotropy,
                    "points": pts
                        .iter()
                        .map(|p| p.iter().map(rat_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let covers: Vec<[usize; 2]> = self.poset.covers().into_iter().map(|(a, b)| [a, b]).collect();
        json!({ "elements": elements, "covers": covers })
    }
}

/// Whether some isotropy-preserving order isomorphism of the posets also
/// matches the polytope vertex sets.
pub fn xray_equal(x1: &XRay, x2: &XRay, mode: XRayMode) -> bool {
    let (a, b) = match mode {
        XRayMode::Exact => (x1.clone(), x2.clone()),
        XRayMode::UpToTranslationAndScaling => (x1.normalized(), x2.normalized()),
    };
    let keys = |x: &XRay| -> Vec<_> {
        x.poset
            .elements
            .iter()
            .zip(&x.polytopes)
            .map(|(el, pts)| (el.principal_isotropy.clone(), pts.clone()))
            .collect()
    };
    labelled_poset_isomorphism(&a.poset, &keys(&a), &b.poset, &keys(&b)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::lattice::Weight;
    use crate::linalg::rat;
    use crate::moment::realize;

    fn realized(name: &str) -> (GkmGraph, SignedStructure, MomentumRealization) {
        let b = catalog(name).unwrap();
        let s = b.signed.unwrap();
        let m = realize(&b.graph, &s).unwrap().realization().cloned().unwrap();
        (b.graph, s, m)
    }

    #[test]
    fn sphere_segment() {
        let (g, s, m) = realized("cp(1)");
        let x = xray(&g, &s, &m).unwrap();
        let top = x.poset.maximum().unwrap();
        assert_eq!(x.polytopes[top], vec![vec![rat(0)], vec![rat(1)]]);
    }

    #[test]
    fn translation_is_invisible_only_after_normalizing() {
        let (g, s, m) = realized("cp1xcp3");
        let x = xray(&g, &s, &m).unwrap();
        let moved = m.translated(&[rat(1), rat(2), rat(3)]);
        let y = xray(&g, &s, &moved).unwrap();
        assert!(xray_equal(&x, &x, XRayMode::Exact));
        assert!(!xray_equal(&x, &y, XRayMode::Exact));
        assert!(xray_equal(&x, &y, XRayMode::UpToTranslationAndScaling));
        let scaled = xray(&g, &s, &m.scaled(&rat(3))).unwrap();
        assert!(xray_equal(&x, &scaled, XRayMode::UpToTranslationAndScaling));
    }

    #[test]
    fn vertical_segments_are_parallel() {
        let (g, s, m) = realized("cp1xcp3");
        let x = xray(&g, &s, &m).unwrap();
        let vertical = Weight::from_i64s(&[1, -1, -1]);
        let mut count = 0;
        for (el, pts) in x.poset.elements.iter().zip(&x.polytopes) {
            let e = &el.component.edges;
            if e.len() == 1 && g.edge(e[0]).label == vertical {
                count += 1;
                let d: Vec<Rational> = pts[1].iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
                let c = &d[0];
                assert!(!c.is_zero());
                assert_eq!(d, vec![c.clone(), -c.clone(), -c.clone()]);
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn twin_graphs_share_an_xray() {
        let (g1, s1, m1) = realized("cp1xcp3");
        let (g2, s2, m2) = realized("y_graph");
        let x1 = xray(&g1, &s1, &m1).unwrap();
        let x2 = xray(&g2, &s2, &m2).unwrap();
        assert!(xray_equal(&x1, &x2, XRayMode::UpToTranslationAndScaling));
    }
}
