//! Vertex and edge compositions, and batch construction of cospectral
//! families from replaceable anchors.
//!
//! Output indexing is fixed: the surviving vertices of the left graph come
//! first (in their original order), followed by those of the right graph.

use rayon::prelude::*;

use crate::bijection::Bijection;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet, MAX_ORDER};
use crate::removal::{removal_cospectral, Anchor, CertificateKind, ReplaceableCertificate};

/// One composition `((G ∘ H), u, h, f)` or `((G ◇ H), e1, e2, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSpec {
    pub left: Graph,
    pub left_anchor: Anchor,
    pub right: Graph,
    pub right_anchor: Anchor,
    pub stitch: Bijection,
}

impl CompositionSpec {
    pub fn kind(&self) -> CertificateKind {
        match self.left_anchor {
            Anchor::Vertex(_) => CertificateKind::Vertex,
            Anchor::Edge(_) => CertificateKind::Edge,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        match (self.left_anchor, self.right_anchor) {
            (Anchor::Vertex(u), Anchor::Vertex(h)) => vertex_composition(&self.left, u, &self.right, h, &self.stitch),
            (Anchor::Edge(a), Anchor::Edge(b)) => edge_composition(&self.left, a, &self.right, b, &self.stitch),
            _ => Err(Error::Validation("composition anchors must have the same kind".into())),
        }
    }
}

/// `G ∘ H`: delete `u` and `h`, then join each `x ∈ N(u)` to `f(x) ∈ N(h)`.
pub fn vertex_composition(g: &Graph, u: usize, h: &Graph, v: usize, f: &Bijection) -> Result<Graph> {
    let nu = g.neighborhood(u)?;
    let nv = h.neighborhood(v)?;
    if nu.len() != nv.len() {
        return Err(Error::DegreeMismatch(nu.len(), nv.len()));
    }
    f.check_between(&nu, &nv)?;
    let n = g.order() + h.order() - 2;
    if n > MAX_ORDER {
        return Err(Error::UnsupportedSize(n));
    }
    let left = g.delete_vertices(&VertexSet::from([u]))?;
    let right = h.delete_vertices(&VertexSet::from([v]))?;
    let mut out = left.disjoint_union(&right)?;
    let shift = left.order();
    let compact = |x: usize, removed: usize| if x > removed { x - 1 } else { x };
    for &(a, b) in f.pairs() {
        out.add_edge(compact(a, u), shift + compact(b, v))?;
    }
    Ok(out)
}

/// `G ◇ H`: delete `e1` and `e2`, then join each endpoint `x` of `e1` to
/// `f(x)`.
pub fn edge_composition(g: &Graph, e1: Edge, h: &Graph, e2: Edge, f: &Bijection) -> Result<Graph> {
    g.check_edge(e1)?;
    h.check_edge(e2)?;
    f.check_between(&VertexSet::from(e1.endpoints()), &VertexSet::from(e2.endpoints()))?;
    let mut out = g.delete_edge(e1)?.disjoint_union(&h.delete_edge(e2)?)?;
    let shift = g.order();
    for &(a, b) in f.pairs() {
        out.add_edge(a, shift + b)?;
    }
    Ok(out)
}

/// A graph with a designated anchor and a label for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub id: String,
    pub graph: Graph,
    pub anchor: Anchor,
}

impl FamilyMember {
    pub fn new(id: impl Into<String>, graph: Graph, anchor: Anchor) -> FamilyMember {
        FamilyMember {
            id: id.into(),
            graph,
            anchor,
        }
    }

    /// The set the stitch acts on: `N(u)` or the endpoints of `e`.
    pub fn stitch_set(&self) -> Result<VertexSet> {
        match self.anchor {
            Anchor::Vertex(u) => self.graph.neighborhood(u),
            Anchor::Edge(e) => {
                self.graph.check_edge(e)?;
                Ok(VertexSet::from(e.endpoints()))
            }
        }
    }
}

/// Left family `G_1..G_m` with maps `g_{i1}: S(u_i) -> S(u_1)`, right family
/// `H_1..H_n` with maps `h_{1j}: S(v_1) -> S(v_j)`, and the seed
/// `f: S(u_1) -> S(v_1)`. The first entry of each map list is the identity.
#[derive(Clone, Debug)]
pub struct FamilyConstructionPlan {
    left: Vec<(FamilyMember, Bijection)>,
    right: Vec<(FamilyMember, Bijection)>,
    seed: Bijection,
}

/// A composition output with its provenance. Provenance is metadata only.
#[derive(Clone, Debug)]
pub struct ComposedGraph {
    pub graph: Graph,
    pub left_id: String,
    pub right_id: String,
    pub left_anchor: Anchor,
    pub right_anchor: Anchor,
    pub stitch: Bijection,
}

/// Builds one side of a plan from a base member and certificates
/// `(anchor_1, anchor_i, g_{1i})` relating the base to every other member.
/// A single-member side needs no certificate.
pub fn family_from_certificates(
    base: FamilyMember,
    others: Vec<(FamilyMember, ReplaceableCertificate)>,
) -> Result<Vec<(FamilyMember, Bijection)>> {
    let base_set = base.stitch_set()?;
    let mut out = vec![(base.clone(), Bijection::identity(&base_set))];
    for (member, cert) in others {
        if cert.left() != base.anchor || cert.right() != member.anchor {
            return Err(Error::Validation(format!(
                "certificate anchors ({}, {}) do not match members {} and {}",
                cert.left(),
                cert.right(),
                base.id,
                member.id
            )));
        }
        out.push((member, cert.map().clone()));
    }
    Ok(out)
}

impl FamilyConstructionPlan {
    /// `left` holds `(G_i, g_{1i})` and `right` holds `(H_j, h_{1j})`, both
    /// maps leaving the base member. Every map is re-verified as removal
    /// cospectral and all anchors must share one kind and stitch size.
    pub fn new(
        left: Vec<(FamilyMember, Bijection)>,
        right: Vec<(FamilyMember, Bijection)>,
        seed: Bijection,
    ) -> Result<FamilyConstructionPlan> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Validation("both families need at least one member".into()));
        }
        let kind = anchor_kind(left[0].0.anchor);
        for (m, _) in left.iter().chain(right.iter()) {
            if anchor_kind(m.anchor) != kind {
                return Err(Error::Validation("all anchors must share one kind".into()));
            }
        }
        let left = Self::verify_side(left)?;
        let right = Self::verify_side(right)?;
        seed.check_between(&left[0].0.stitch_set()?, &right[0].0.stitch_set()?)?;
        // stored left maps point back to the base: g_{i1} = g_{1i}^-1
        let left = left.into_iter().map(|(m, g)| (m, g.inverse())).collect();
        Ok(FamilyConstructionPlan { left, right, seed })
    }

    fn verify_side(side: Vec<(FamilyMember, Bijection)>) -> Result<Vec<(FamilyMember, Bijection)>> {
        let base = side[0].0.clone();
        let base_set = base.stitch_set()?;
        for (i, (m, map)) in side.iter().enumerate() {
            let set = m.stitch_set()?;
            if set.len() != base_set.len() {
                return Err(Error::DegreeMismatch(base_set.len(), set.len()));
            }
            map.check_between(&base_set, &set)?;
            if i == 0 {
                if *map != Bijection::identity(&base_set) {
                    return Err(Error::InvalidBijection("base map must be the identity".into()));
                }
                continue;
            }
            if !removal_cospectral(&base.graph, &base_set, &m.graph, &set, map)? {
                return Err(Error::Validation(format!(
                    "{} and {} are not removal cospectral under {}",
                    base.id, m.id, map
                )));
            }
        }
        Ok(side)
    }

    pub fn kind(&self) -> CertificateKind {
        anchor_kind(self.left[0].0.anchor)
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn right_len(&self) -> usize {
        self.right.len()
    }

    pub fn seed(&self) -> &Bijection {
        &self.seed
    }

    /// The stitch map `h_{1j} ∘ f ∘ g_{i1}` for output `(i, j)`.
    pub fn stitch(&self, i: usize, j: usize) -> Result<Bijection> {
        self.left[i].1.then(&self.seed)?.then(&self.right[j].1)
    }

    fn spec(&self, i: usize, j: usize) -> Result<CompositionSpec> {
        let (l, _) = &self.left[i];
        let (r, _) = &self.right[j];
        Ok(CompositionSpec {
            left: l.graph.clone(),
            left_anchor: l.anchor,
            right: r.graph.clone(),
            right_anchor: r.anchor,
            stitch: self.stitch(i, j)?,
        })
    }

    /// All `m·n` outputs in row-major `(i, j)` order.
    pub fn build(&self) -> Result<Vec<ComposedGraph>> {
        let cells: Vec<(usize, usize)> = (0..self.left.len())
            .flat_map(|i| (0..self.right.len()).map(move |j| (i, j)))
            .collect();
        cells
            .par_iter()
            .map(|&(i, j)| {
                let spec = self.spec(i, j)?;
                Ok(ComposedGraph {
                    graph: spec.build()?,
                    left_id: self.left[i].0.id.clone(),
                    right_id: self.right[j].0.id.clone(),
                    left_anchor: spec.left_anchor,
                    right_anchor: spec.right_anchor,
                    stitch: spec.stitch,
                })
            })
            .collect()
    }
}

fn anchor_kind(a: Anchor) -> CertificateKind {
    match a {
        Anchor::Vertex(_) => CertificateKind::Vertex,
        Anchor::Edge(_) => CertificateKind::Edge,
    }
}

pub fn batch_vertex_construction(plan: &FamilyConstructionPlan) -> Result<Vec<ComposedGraph>> {
    if plan.kind() != CertificateKind::Vertex {
        return Err(Error::Validation("plan anchors are edges".into()));
    }
    plan.build()
}

pub fn batch_edge_construction(plan: &FamilyConstructionPlan) -> Result<Vec<ComposedGraph>> {
    if plan.kind() != CertificateKind::Edge {
        return Err(Error::Validation("plan anchors are vertices".into()));
    }
    plan.build()
}

/// Every seed bijection between the base stitch sets.
pub fn all_seeds(left_base: &FamilyMember, right_base: &FamilyMember) -> Result<Vec<Bijection>> {
    Ok(Bijection::all_between(
        &left_base.stitch_set()?,
        &right_base.stitch_set()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::spectrum::cospectral;

    #[test]
    fn k4_with_k4_is_the_prism() {
        let k4 = Graph::complete(4);
        for f in Bijection::all_between(&VertexSet::from([1, 2, 3]), &VertexSet::from([0, 1, 2])) {
            let out = vertex_composition(&k4, 0, &k4, 3, &f).unwrap();
            assert_eq!(out.order(), 6);
            assert!(out.is_k_regular(3));
            assert!(are_isomorphic(&out, &Graph::prism()));
        }
    }

    #[test]
    fn c4_with_c4_gives_c6_for_both_stitchings() {
        // each remainder is a 3-vertex path; joining two paths end to end
        // closes a single 6-cycle whichever way the ends are paired
        let c4 = Graph::cycle(4);
        let c6 = Graph::cycle(6);
        for f in Bijection::all_between(&VertexSet::from([1, 3]), &VertexSet::from([1, 3])) {
            let out = vertex_composition(&c4, 0, &c4, 0, &f).unwrap();
            assert!(out.is_k_regular(2));
            assert!(are_isomorphic(&out, &c6));
        }
    }

    #[test]
    fn exact_indexing() {
        let k4 = Graph::complete(4);
        let f = Bijection::new([(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = vertex_composition(&k4, 3, &k4, 0, &f).unwrap();
        let expected = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn vertex_composition_errors() {
        let k4 = Graph::complete(4);
        let c5 = Graph::cycle(5);
        let f = Bijection::new([(1, 1), (2, 4)]).unwrap();
        assert!(matches!(
            vertex_composition(&k4, 0, &c5, 0, &f),
            Err(Error::DegreeMismatch(3, 2))
        ));
        let wrong = Bijection::new([(1, 0), (2, 2), (3, 3)]).unwrap();
        assert!(vertex_composition(&k4, 0, &k4, 0, &wrong).is_err());
    }

    #[test]
    fn edge_compositions() {
        let k4 = Graph::complete(4);
        let e = Edge::new(0, 1).unwrap();
        for f in Bijection::all_between(&VertexSet::from([0, 1]), &VertexSet::from([0, 1])) {
            let out = edge_composition(&k4, e, &k4, e, &f).unwrap();
            assert_eq!(out.order(), 8);
            assert!(out.is_k_regular(3) && out.is_connected());
        }
        let c4 = Graph::cycle(4);
        let e03 = Edge::new(0, 3).unwrap();
        let outs: Vec<Graph> = Bijection::all_between(&VertexSet::from([0, 3]), &VertexSet::from([0, 3]))
            .iter()
            .map(|f| edge_composition(&c4, e03, &c4, e03, f).unwrap())
            .collect();
        assert!(outs.iter().any(|g| are_isomorphic(g, &Graph::cycle(8))));
        assert!(edge_composition(
            &c4,
            Edge::new(0, 2).unwrap(),
            &c4,
            e03,
            &Bijection::new([(0, 0), (2, 3)]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn singleton_plan() {
        let k4 = Graph::complete(4);
        let g = FamilyMember::new("g", k4.clone(), Anchor::Vertex(0));
        let h = FamilyMember::new("h", Graph::prism(), Anchor::Vertex(5));
        let seed = all_seeds(&g, &h).unwrap()[0].clone();
        let plan = FamilyConstructionPlan::new(
            vec![(g.clone(), Bijection::identity(&g.stitch_set().unwrap()))],
            vec![(h.clone(), Bijection::identity(&h.stitch_set().unwrap()))],
            seed,
        )
        .unwrap();
        let outs = batch_vertex_construction(&plan).unwrap();
        assert_eq!(outs.len(), 1);
        assert_eq!(outs[0].graph.order(), 8);
        assert!(batch_edge_construction(&plan).is_err());
    }

    #[test]
    fn automorphic_anchors_give_isomorphic_outputs() {
        let prism = Graph::prism();
        let base = FamilyMember::new("p0", prism.clone(), Anchor::Vertex(0));
        let other = FamilyMember::new("p4", prism.clone(), Anchor::Vertex(4));
        let cert = crate::removal::replaceable_vertices(&prism, 0, &prism, 4).unwrap()[0].clone();
        let left = family_from_certificates(base.clone(), vec![(other, cert)]).unwrap();
        let h = FamilyMember::new("k4", Graph::complete(4), Anchor::Vertex(0));
        let right = vec![(h.clone(), Bijection::identity(&h.stitch_set().unwrap()))];
        let seed = all_seeds(&base, &h).unwrap()[0].clone();
        let plan = FamilyConstructionPlan::new(left, right, seed).unwrap();
        let outs = batch_vertex_construction(&plan).unwrap();
        assert_eq!(outs.len(), 2);
        assert!(cospectral(&outs[0].graph, &outs[1].graph));
        assert!(outs.iter().all(|o| o.graph.order() == 8 && o.graph.is_k_regular(3)));
    }

    #[test]
    fn plan_rejects_uncertified_maps() {
        let p = Graph::path(4);
        // end vertex 0 vs end vertex 3 is fine; middle vertex 1 is not
        let a = FamilyMember::new("a", p.clone(), Anchor::Edge(Edge::new(0, 1).unwrap()));
        let b = FamilyMember::new("b", p.clone(), Anchor::Edge(Edge::new(1, 2).unwrap()));
        let map = Bijection::new([(0, 1), (1, 2)]).unwrap();
        let id = Bijection::identity(&a.stitch_set().unwrap());
        let h = FamilyMember::new("h", Graph::complete(4), Anchor::Edge(Edge::new(0, 1).unwrap()));
        let hid = Bijection::identity(&h.stitch_set().unwrap());
        let seed = Bijection::new([(0, 0), (1, 1)]).unwrap();
        assert!(FamilyConstructionPlan::new(vec![(a, id), (b, map)], vec![(h, hid)], seed).is_err());
    }
}
