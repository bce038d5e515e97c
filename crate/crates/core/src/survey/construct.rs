use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::bijection::Bijection;
use crate::canon::canonical_form;
use crate::compose::{edge_composition, vertex_composition};
use crate::graph::VertexSet;
use crate::removal::{Anchor, CertificateKind, ReplaceableCertificate};

use super::analysis::{
    cross_edge_certificates, cross_vertex_certificates, self_edge_certificates, self_vertex_certificates,
    CatalogAnalysis,
};
use super::Semantics;

/// A certified pair of anchors at one order: between two cospectral
/// catalog members, or between different orbits of one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub order: usize,
    pub left: usize,
    pub right: usize,
    pub cert: ReplaceableCertificate,
}

/// Every construction instance of `kind` in one catalog, in a fixed order:
/// cross-graph pairs class by class, then within-graph pairs.
pub fn construction_instances(a: &CatalogAnalysis, kind: CertificateKind, reduce: bool) -> Vec<Instance> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for class in &a.classes {
        for (x, &i) in class.members.iter().enumerate() {
            for &j in &class.members[x + 1..] {
                pairs.push((i, j));
            }
        }
    }
    pairs.extend((0..a.graphs.len()).map(|i| (i, i)));
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (gi, gj) = (&a.graphs[i], &a.graphs[j]);
            let certs = match (kind, i == j) {
                (CertificateKind::Vertex, false) => cross_vertex_certificates(gi, gj, reduce),
                (CertificateKind::Edge, false) => cross_edge_certificates(gi, gj, reduce),
                (CertificateKind::Vertex, true) => self_vertex_certificates(gi, reduce),
                (CertificateKind::Edge, true) => self_edge_certificates(gi, reduce),
            };
            certs
                .into_iter()
                .map(|cert| Instance {
                    order: a.order(),
                    left: i,
                    right: j,
                    cert,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// How a constructed graph was first obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: CertificateKind,
    pub left_order: usize,
    pub left: usize,
    pub right: usize,
    pub cert_left: Anchor,
    pub cert_right: Anchor,
    pub cert_map: Bijection,
    pub h_order: usize,
    pub h_index: usize,
    pub h_anchor: Anchor,
    pub seed: Bijection,
    /// The graph is the composition of the certificate's right graph
    /// (stitched by `g^-1` then the seed) rather than its left graph.
    pub from_right: bool,
    /// The canonical code of the cospectral partner output.
    pub partner: String,
}

/// Composition outputs of order `n` from every instance at lower orders,
/// keyed by canonical graph6, each with its first witness.
///
/// Under strict semantics only instances whose two outputs are
/// non-isomorphic contribute.
pub fn composition_outputs(
    n: usize,
    lower: &BTreeMap<usize, &CatalogAnalysis>,
    semantics: Semantics,
    reduce: bool,
) -> BTreeMap<String, Witness> {
    let mut jobs: Vec<(CertificateKind, usize, usize)> = Vec::new();
    for &a in lower.keys() {
        if n + 2 >= a + 4 && lower.contains_key(&(n + 2 - a)) {
            jobs.push((CertificateKind::Vertex, a, n + 2 - a));
        }
        if n >= a + 4 && lower.contains_key(&(n - a)) {
            jobs.push((CertificateKind::Edge, a, n - a));
        }
    }
    let mut tasks: Vec<(CertificateKind, Instance, usize, usize)> = Vec::new();
    for &(kind, a, b) in &jobs {
        let instances = construction_instances(lower[&a], kind, reduce);
        for inst in instances {
            for h in 0..lower[&b].graphs.len() {
                tasks.push((kind, inst.clone(), b, h));
            }
        }
    }
    let found: Vec<Vec<(String, Witness)>> = tasks
        .par_iter()
        .map(|(kind, inst, b, h)| outputs_for(*kind, lower[&inst.order], inst, lower[b], *h, semantics, reduce))
        .collect();
    let mut out: BTreeMap<String, Witness> = BTreeMap::new();
    for (code, w) in found.into_iter().flatten() {
        out.entry(code).or_insert(w);
    }
    out
}

fn outputs_for(
    kind: CertificateKind,
    la: &CatalogAnalysis,
    inst: &Instance,
    hb: &CatalogAnalysis,
    h_index: usize,
    semantics: Semantics,
    reduce: bool,
) -> Vec<(String, Witness)> {
    let g1 = la.graphs[inst.left].graph();
    let g2 = la.graphs[inst.right].graph();
    let ha = &hb.graphs[h_index];
    let h = ha.graph();
    let back = inst.cert.map().inverse();
    let anchors: Vec<Anchor> = match kind {
        CertificateKind::Vertex => ha.anchor_vertices(reduce).into_iter().map(Anchor::Vertex).collect(),
        CertificateKind::Edge => ha.anchor_edges(reduce).into_iter().map(Anchor::Edge).collect(),
    };
    let mut out = Vec::new();
    for h_anchor in anchors {
        let (s, t) = match (inst.cert.left(), h_anchor) {
            (Anchor::Vertex(u), Anchor::Vertex(x)) => {
                (g1.neighborhood(u).expect("anchor"), h.neighborhood(x).expect("anchor"))
            }
            (Anchor::Edge(e), Anchor::Edge(x)) => (VertexSet::from(e.endpoints()), VertexSet::from(x.endpoints())),
            _ => unreachable!("anchor kinds agree"),
        };
        for seed in Bijection::all_between(&s, &t) {
            let other = back.then(&seed).expect("certificate range is the partner's stitch set");
            let (o1, o2) = match (inst.cert.left(), inst.cert.right(), h_anchor) {
                (Anchor::Vertex(u), Anchor::Vertex(v), Anchor::Vertex(x)) => (
                    vertex_composition(g1, u, h, x, &seed),
                    vertex_composition(g2, v, h, x, &other),
                ),
                (Anchor::Edge(e1), Anchor::Edge(e2), Anchor::Edge(x)) => (
                    edge_composition(g1, e1, h, x, &seed),
                    edge_composition(g2, e2, h, x, &other),
                ),
                _ => unreachable!("anchor kinds agree"),
            };
            let (o1, o2) = (o1.expect("valid composition"), o2.expect("valid composition"));
            let c1 = canonical_form(&o1).canonical_graph6;
            let c2 = canonical_form(&o2).canonical_graph6;
            if semantics == Semantics::Strict && c1 == c2 {
                continue;
            }
            let witness = |partner: &String, from_right: bool| Witness {
                kind,
                left_order: inst.order,
                left: inst.left,
                right: inst.right,
                cert_left: inst.cert.left(),
                cert_right: inst.cert.right(),
                cert_map: inst.cert.map().clone(),
                h_order: hb.order(),
                h_index,
                h_anchor,
                seed: seed.clone(),
                from_right,
                partner: partner.clone(),
            };
            let w1 = witness(&c2, false);
            let w2 = witness(&c1, true);
            out.push((c1, w1));
            out.push((c2, w2));
        }
    }
    out
}

/// Members of the order-`n` NUS3 set reachable by construction.
pub fn constructed_set(
    target: &CatalogAnalysis,
    lower: &BTreeMap<usize, &CatalogAnalysis>,
    semantics: Semantics,
    reduce: bool,
) -> BTreeMap<usize, Witness> {
    let nus3: BTreeSet<usize> = target.nus3().into_iter().collect();
    composition_outputs(target.order(), lower, semantics, reduce)
        .into_iter()
        .filter_map(|(code, w)| target.catalog.index_of(&code).map(|i| (i, w)))
        .filter(|(i, _)| nus3.contains(i))
        .collect()
}
