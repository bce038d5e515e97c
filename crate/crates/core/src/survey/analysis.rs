use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{automorphism_orbits, OrbitPartition};
use crate::graph::{Edge, Graph};
use crate::removal::{
    replaceable_edges_profiled, replaceable_vertices_profiled, DeletionProfile, ReplaceableCertificate,
};
use crate::spectrum::CharPoly;

use super::catalog::Catalog;

/// Graphs of a catalog sharing one characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CospectralClass {
    pub fingerprint: CharPoly,
    /// Catalog indices, ascending.
    pub members: Vec<usize>,
}

/// Per-graph data reused by every census: memoised deletion polynomials and
/// exact automorphism orbits.
#[derive(Debug)]
pub struct GraphAnalysis {
    pub profile: DeletionProfile,
    pub orbits: OrbitPartition,
}

impl GraphAnalysis {
    pub fn new(g: &Graph) -> GraphAnalysis {
        GraphAnalysis {
            profile: DeletionProfile::new(g.clone()),
            orbits: automorphism_orbits(g),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.profile.graph()
    }

    /// Vertices to use as the first anchor: orbit representatives when
    /// `reduce` is set, every vertex otherwise.
    pub fn anchor_vertices(&self, reduce: bool) -> Vec<usize> {
        if reduce {
            self.orbits.vertex_representatives()
        } else {
            (0..self.graph().order()).collect()
        }
    }

    pub fn anchor_edges(&self, reduce: bool) -> Vec<Edge> {
        if reduce {
            self.orbits.edge_representatives()
        } else {
            self.graph().edges()
        }
    }
}

/// A catalog together with its per-graph analyses and cospectral classes.
#[derive(Debug)]
pub struct CatalogAnalysis {
    pub catalog: Catalog,
    pub graphs: Vec<GraphAnalysis>,
    pub classes: Vec<CospectralClass>,
    class_of: Vec<usize>,
}

impl CatalogAnalysis {
    pub fn new(catalog: Catalog) -> CatalogAnalysis {
        let graphs: Vec<GraphAnalysis> = catalog.graphs().par_iter().map(GraphAnalysis::new).collect();
        let polys: Vec<CharPoly> = graphs.par_iter().map(|a| a.profile.full().clone()).collect();
        let classes = classes_from_polys(&polys);
        let mut class_of = vec![0; graphs.len()];
        for (c, class) in classes.iter().enumerate() {
            for &m in &class.members {
                class_of[m] = c;
            }
        }
        CatalogAnalysis {
            catalog,
            graphs,
            classes,
            class_of,
        }
    }

    pub fn order(&self) -> usize {
        self.catalog.order()
    }

    pub fn class_of(&self, i: usize) -> &CospectralClass {
        &self.classes[self.class_of[i]]
    }

    /// Indices of graphs cospectral with at least one other member.
    pub fn nus3(&self) -> Vec<usize> {
        nus3(&self.classes)
    }

    /// Cospectral mates of `i` (other members of its class).
    pub fn mates(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of(i).members.iter().copied().filter(move |&j| j != i)
    }
}

/// Classes keyed by exact characteristic polynomial, ordered by the
/// polynomial's byte serialization.
pub fn partition_cospectral(c: &Catalog) -> Vec<CospectralClass> {
    let polys: Vec<CharPoly> = c.graphs().par_iter().map(crate::spectrum::char_poly).collect();
    classes_from_polys(&polys)
}

fn classes_from_polys(polys: &[CharPoly]) -> Vec<CospectralClass> {
    let mut by_key: BTreeMap<Vec<u8>, CospectralClass> = BTreeMap::new();
    for (i, p) in polys.iter().enumerate() {
        by_key
            .entry(p.to_bytes())
            .or_insert_with(|| CospectralClass {
                fingerprint: p.clone(),
                members: Vec::new(),
            })
            .members
            .push(i);
    }
    by_key.into_values().collect()
}

/// Union of all classes with at least two members, ascending.
pub fn nus3(classes: &[CospectralClass]) -> Vec<usize> {
    let mut out: Vec<usize> = classes
        .iter()
        .filter(|c| c.members.len() >= 2)
        .flat_map(|c| c.members.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Vertex certificates `(u, v, g)` inside one graph with `u`, `v` in
/// different orbits. `u` ranges over orbit representatives when `reduce`.
pub fn self_vertex_certificates(a: &GraphAnalysis, reduce: bool) -> Vec<ReplaceableCertificate> {
    let n = a.graph().order();
    let mut out = Vec::new();
    for u in a.anchor_vertices(reduce) {
        for v in 0..n {
            if a.orbits.same_vertex_orbit(u, v) {
                continue;
            }
            out.extend(replaceable_vertices_profiled(&a.profile, u, &a.profile, v).expect("vertices in range"));
        }
    }
    out
}

pub fn self_edge_certificates(a: &GraphAnalysis, reduce: bool) -> Vec<ReplaceableCertificate> {
    let edges = a.graph().edges();
    let mut out = Vec::new();
    for e in a.anchor_edges(reduce) {
        for &f in &edges {
            if a.orbits.same_edge_orbit(e, f) {
                continue;
            }
            out.extend(replaceable_edges_profiled(&a.profile, e, &a.profile, f).expect("edges present"));
        }
    }
    out
}

pub fn has_self_vertex_certificate(a: &GraphAnalysis) -> bool {
    let n = a.graph().order();
    a.anchor_vertices(true).into_iter().any(|u| {
        (0..n).any(|v| {
            !a.orbits.same_vertex_orbit(u, v)
                && !replaceable_vertices_profiled(&a.profile, u, &a.profile, v)
                    .expect("vertices in range")
                    .is_empty()
        })
    })
}

pub fn has_self_edge_certificate(a: &GraphAnalysis) -> bool {
    let edges = a.graph().edges();
    a.anchor_edges(true).into_iter().any(|e| {
        edges.iter().any(|&f| {
            !a.orbits.same_edge_orbit(e, f)
                && !replaceable_edges_profiled(&a.profile, e, &a.profile, f)
                    .expect("edges present")
                    .is_empty()
        })
    })
}

/// Vertex certificates between two different graphs.
pub fn cross_vertex_certificates(a1: &GraphAnalysis, a2: &GraphAnalysis, reduce: bool) -> Vec<ReplaceableCertificate> {
    if a1.profile.full() != a2.profile.full() {
        return Vec::new();
    }
    let n2 = a2.graph().order();
    let mut out = Vec::new();
    for u in a1.anchor_vertices(reduce) {
        for v in 0..n2 {
            out.extend(replaceable_vertices_profiled(&a1.profile, u, &a2.profile, v).expect("vertices in range"));
        }
    }
    out
}

pub fn cross_edge_certificates(a1: &GraphAnalysis, a2: &GraphAnalysis, reduce: bool) -> Vec<ReplaceableCertificate> {
    if a1.profile.full() != a2.profile.full() {
        return Vec::new();
    }
    let edges2 = a2.graph().edges();
    let mut out = Vec::new();
    for e in a1.anchor_edges(reduce) {
        for &f in &edges2 {
            out.extend(replaceable_edges_profiled(&a1.profile, e, &a2.profile, f).expect("edges present"));
        }
    }
    out
}

pub fn has_cross_vertex_certificate(a1: &GraphAnalysis, a2: &GraphAnalysis) -> bool {
    if a1.profile.full() != a2.profile.full() {
        return false;
    }
    let n2 = a2.graph().order();
    a1.anchor_vertices(true).into_iter().any(|u| {
        (0..n2).any(|v| {
            !replaceable_vertices_profiled(&a1.profile, u, &a2.profile, v)
                .expect("vertices in range")
                .is_empty()
        })
    })
}

pub fn has_cross_edge_certificate(a1: &GraphAnalysis, a2: &GraphAnalysis) -> bool {
    if a1.profile.full() != a2.profile.full() {
        return false;
    }
    let edges2 = a2.graph().edges();
    a1.anchor_edges(true).into_iter().any(|e| {
        edges2.iter().any(|&f| {
            !replaceable_edges_profiled(&a1.profile, e, &a2.profile, f)
                .expect("edges present")
                .is_empty()
        })
    })
}
