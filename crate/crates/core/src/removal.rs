//! Removal-cospectral vertex sets and replaceable vertices/edges.
//!
//! Two sets `S ⊆ V(G1)`, `T ⊆ V(G2)` are removal cospectral under a
//! bijection `f` when `G1 \ X` and `G2 \ f(X)` are cospectral for every
//! `X ⊆ S`. It suffices to check `|X| <= 2`, which is what
//! [`removal_cospectral`] does; [`removal_cospectral_full`] walks every
//! subset and is kept as an oracle.

use std::fmt;
use std::sync::OnceLock;

use crate::bijection::Bijection;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::spectrum::{char_poly, CharPoly};

/// Lazily memoised characteristic polynomials of `G`, `G \ {i}` and
/// `G \ {i, j}`. Safe to share between threads.
pub struct DeletionProfile {
    graph: Graph,
    full: OnceLock<CharPoly>,
    singles: Vec<OnceLock<CharPoly>>,
    pairs: Vec<OnceLock<CharPoly>>,
}

impl DeletionProfile {
    pub fn new(graph: Graph) -> DeletionProfile {
        let n = graph.order();
        DeletionProfile {
            graph,
            full: OnceLock::new(),
            singles: (0..n).map(|_| OnceLock::new()).collect(),
            pairs: (0..n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn full(&self) -> &CharPoly {
        self.full.get_or_init(|| char_poly(&self.graph))
    }

    pub fn without(&self, i: usize) -> &CharPoly {
        self.singles[i].get_or_init(|| char_poly(&self.graph.delete_mask(1 << i)))
    }

    pub fn without_pair(&self, i: usize, j: usize) -> &CharPoly {
        if i == j {
            return self.without(i);
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pairs[a * self.graph.order() + b].get_or_init(|| char_poly(&self.graph.delete_mask(1 << a | 1 << b)))
    }
}

impl fmt::Debug for DeletionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeletionProfile").field("graph", &self.graph).finish()
    }
}

fn check_sets(g1: &Graph, s: &VertexSet, g2: &Graph, t: &VertexSet) -> Result<()> {
    for v in s.iter() {
        g1.check_vertex(v)?;
    }
    for v in t.iter() {
        g2.check_vertex(v)?;
    }
    Ok(())
}

/// Two-deletion criterion: `X = ∅`, every singleton and every unordered pair.
pub fn removal_cospectral(g1: &Graph, s: &VertexSet, g2: &Graph, t: &VertexSet, f: &Bijection) -> Result<bool> {
    check_sets(g1, s, g2, t)?;
    f.check_between(s, t)?;
    let p1 = DeletionProfile::new(g1.clone());
    let p2 = DeletionProfile::new(g2.clone());
    Ok(removal_cospectral_profiled(&p1, &p2, f))
}

/// [`removal_cospectral`] over memoised profiles. `f` must already be a
/// valid bijection between vertex sets of the two graphs.
pub fn removal_cospectral_profiled(p1: &DeletionProfile, p2: &DeletionProfile, f: &Bijection) -> bool {
    if p1.graph.order() != p2.graph.order() || p1.full() != p2.full() {
        return false;
    }
    let pairs = f.pairs();
    if pairs.iter().any(|&(i, fi)| p1.without(i) != p2.without(fi)) {
        return false;
    }
    for (a, &(i, fi)) in pairs.iter().enumerate() {
        for &(j, fj) in &pairs[a + 1..] {
            if p1.without_pair(i, j) != p2.without_pair(fi, fj) {
                return false;
            }
        }
    }
    true
}

/// Largest `|S|` accepted by [`removal_cospectral_full`].
pub const FULL_CHECK_MAX: usize = 12;

/// Every subset `X ⊆ S`, each deletion computed from scratch.
pub fn removal_cospectral_full(g1: &Graph, s: &VertexSet, g2: &Graph, t: &VertexSet, f: &Bijection) -> Result<bool> {
    if s.len() > FULL_CHECK_MAX {
        return Err(Error::SizeGuard {
            what: "removal set",
            got: s.len(),
            limit: FULL_CHECK_MAX,
        });
    }
    check_sets(g1, s, g2, t)?;
    f.check_between(s, t)?;
    if g1.order() != g2.order() {
        return Ok(false);
    }
    let pairs = f.pairs();
    for subset in 0u32..(1 << pairs.len()) {
        let x = VertexSet::new((0..pairs.len()).filter(|b| subset >> b & 1 == 1).map(|b| pairs[b].0));
        let fx = VertexSet::new((0..pairs.len()).filter(|b| subset >> b & 1 == 1).map(|b| pairs[b].1));
        if char_poly(&g1.delete_vertices(&x)?) != char_poly(&g2.delete_vertices(&fx)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `|S|` accepted by [`find_bijections`].
pub const FIND_MAX: usize = 8;

/// All bijections `S -> T` under which the sets are removal cospectral,
/// lexicographic in the image sequence of sorted `S`.
pub fn find_bijections(g1: &Graph, s: &VertexSet, g2: &Graph, t: &VertexSet) -> Result<Vec<Bijection>> {
    check_sets(g1, s, g2, t)?;
    let p1 = DeletionProfile::new(g1.clone());
    let p2 = DeletionProfile::new(g2.clone());
    find_bijections_profiled(&p1, s, &p2, t)
}

pub fn find_bijections_profiled(
    p1: &DeletionProfile,
    s: &VertexSet,
    p2: &DeletionProfile,
    t: &VertexSet,
) -> Result<Vec<Bijection>> {
    if s.len() != t.len() {
        return Err(Error::InvalidBijection(format!(
            "set sizes differ: {} vs {}",
            s.len(),
            t.len()
        )));
    }
    if s.len() > FIND_MAX {
        return Err(Error::SizeGuard {
            what: "removal set",
            got: s.len(),
            limit: FIND_MAX,
        });
    }
    if p1.graph.order() != p2.graph.order() || p1.full() != p2.full() {
        return Ok(Vec::new());
    }
    let src = s.as_slice();
    let tgt = t.as_slice();
    // singleton fingerprints prune the candidate images of each source
    let candidates: Vec<Vec<usize>> = src
        .iter()
        .map(|&i| {
            tgt.iter()
                .copied()
                .filter(|&x| p1.without(i) == p2.without(x))
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut image: Vec<usize> = Vec::with_capacity(src.len());
    extend_bijection(p1, p2, src, &candidates, &mut image, &mut out);
    Ok(out)
}

fn extend_bijection(
    p1: &DeletionProfile,
    p2: &DeletionProfile,
    src: &[usize],
    candidates: &[Vec<usize>],
    image: &mut Vec<usize>,
    out: &mut Vec<Bijection>,
) {
    let k = image.len();
    if k == src.len() {
        out.push(Bijection::zip(src, image).expect("distinct images"));
        return;
    }
    for &x in &candidates[k] {
        if image.contains(&x) {
            continue;
        }
        let consistent = (0..k).all(|a| p1.without_pair(src[a], src[k]) == p2.without_pair(image[a], x));
        if consistent {
            image.push(x);
            extend_bijection(p1, p2, src, candidates, image, out);
            image.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    Vertex(usize),
    Edge(Edge),
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Vertex(v) => write!(f, "{}", v),
            Anchor::Edge(e) => write!(f, "{}", e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertificateKind {
    Vertex,
    Edge,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Vertex => "vertex",
            CertificateKind::Edge => "edge",
        })
    }
}

/// A verified `(u, v, g)` or `(e1, e2, g)` tuple. For vertices, `map` acts on
/// the neighbourhoods; for edges, on the endpoint pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReplaceableCertificate {
    left: Anchor,
    right: Anchor,
    map: Bijection,
}

impl ReplaceableCertificate {
    pub fn kind(&self) -> CertificateKind {
        match self.left {
            Anchor::Vertex(_) => CertificateKind::Vertex,
            Anchor::Edge(_) => CertificateKind::Edge,
        }
    }

    pub fn left(&self) -> Anchor {
        self.left
    }

    pub fn right(&self) -> Anchor {
        self.right
    }

    pub fn map(&self) -> &Bijection {
        &self.map
    }

    /// `(v, u, g^-1)` for `(u, v, g)`.
    pub fn reversed(&self) -> ReplaceableCertificate {
        ReplaceableCertificate {
            left: self.right,
            right: self.left,
            map: self.map.inverse(),
        }
    }

    /// The sets the map is defined between.
    pub fn removal_sets(&self, g1: &Graph, g2: &Graph) -> (VertexSet, VertexSet) {
        match (self.left, self.right) {
            (Anchor::Vertex(u), Anchor::Vertex(v)) => (
                g1.neighborhood(u).expect("certified anchor"),
                g2.neighborhood(v).expect("certified anchor"),
            ),
            (Anchor::Edge(a), Anchor::Edge(b)) => (VertexSet::from(a.endpoints()), VertexSet::from(b.endpoints())),
            _ => unreachable!("anchors of one certificate share a kind"),
        }
    }

    /// Within one graph, whether an anchor touches the other anchor's
    /// removal set (e.g. adjacent replaceable vertices). Reported only.
    pub fn anchors_overlap(&self, g: &Graph) -> bool {
        let (s, t) = self.removal_sets(g, g);
        match (self.left, self.right) {
            (Anchor::Vertex(u), Anchor::Vertex(v)) => t.contains(u) || s.contains(v),
            (Anchor::Edge(a), Anchor::Edge(b)) => {
                a.endpoints().iter().any(|&x| t.contains(x)) || b.endpoints().iter().any(|&x| s.contains(x))
            }
            _ => false,
        }
    }
}

/// One certificate per removal-cospectral bijection `N(u) -> N(v)`.
pub fn replaceable_vertices(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Vec<ReplaceableCertificate>> {
    g1.check_vertex(u)?;
    g2.check_vertex(v)?;
    let p1 = DeletionProfile::new(g1.clone());
    let p2 = DeletionProfile::new(g2.clone());
    replaceable_vertices_profiled(&p1, u, &p2, v)
}

pub fn replaceable_vertices_profiled(
    p1: &DeletionProfile,
    u: usize,
    p2: &DeletionProfile,
    v: usize,
) -> Result<Vec<ReplaceableCertificate>> {
    let s = p1.graph.neighborhood(u)?;
    let t = p2.graph.neighborhood(v)?;
    if s.len() != t.len() {
        return Ok(Vec::new());
    }
    Ok(find_bijections_profiled(p1, &s, p2, &t)?
        .into_iter()
        .map(|map| ReplaceableCertificate {
            left: Anchor::Vertex(u),
            right: Anchor::Vertex(v),
            map,
        })
        .collect())
}

/// Certificates over the (at most two) endpoint bijections.
pub fn replaceable_edges(g1: &Graph, e1: Edge, g2: &Graph, e2: Edge) -> Result<Vec<ReplaceableCertificate>> {
    g1.check_edge(e1)?;
    g2.check_edge(e2)?;
    let p1 = DeletionProfile::new(g1.clone());
    let p2 = DeletionProfile::new(g2.clone());
    replaceable_edges_profiled(&p1, e1, &p2, e2)
}

pub fn replaceable_edges_profiled(
    p1: &DeletionProfile,
    e1: Edge,
    p2: &DeletionProfile,
    e2: Edge,
) -> Result<Vec<ReplaceableCertificate>> {
    p1.graph.check_edge(e1)?;
    p2.graph.check_edge(e2)?;
    let s = VertexSet::from(e1.endpoints());
    let t = VertexSet::from(e2.endpoints());
    Ok(find_bijections_profiled(p1, &s, p2, &t)?
        .into_iter()
        .map(|map| ReplaceableCertificate {
            left: Anchor::Edge(e1),
            right: Anchor::Edge(e2),
            map,
        })
        .collect())
}

/// Re-checks a certificate from scratch. Used when certificates are built
/// from external input.
pub fn verify_certificate(g1: &Graph, g2: &Graph, cert: &ReplaceableCertificate) -> Result<bool> {
    match (cert.left, cert.right) {
        (Anchor::Vertex(u), Anchor::Vertex(v)) => {
            g1.check_vertex(u)?;
            g2.check_vertex(v)?;
        }
        (Anchor::Edge(a), Anchor::Edge(b)) => {
            g1.check_edge(a)?;
            g2.check_edge(b)?;
        }
        _ => return Err(Error::Validation("anchors of different kinds".into())),
    }
    let (s, t) = cert.removal_sets(g1, g2);
    removal_cospectral(g1, &s, g2, &t, &cert.map)
}

/// Builds a certificate after checking it.
pub fn certify(g1: &Graph, left: Anchor, g2: &Graph, right: Anchor, map: Bijection) -> Result<ReplaceableCertificate> {
    let cert = ReplaceableCertificate { left, right, map };
    if verify_certificate(g1, g2, &cert)? {
        Ok(cert)
    } else {
        Err(Error::Validation(format!(
            "({}, {}, {}) is not removal cospectral",
            left, right, cert.map
        )))
    }
}

/// `N(u) ∪ {u}` and `N(v) ∪ {v}` are removal cospectral under `g` extended
/// by `u -> v`. Always true for a genuine certificate.
pub fn verify_lemma1(g1: &Graph, g2: &Graph, cert: &ReplaceableCertificate) -> Result<bool> {
    let (Anchor::Vertex(u), Anchor::Vertex(v)) = (cert.left, cert.right) else {
        return Err(Error::Validation(
            "the closed-neighbourhood check applies to vertex certificates".into(),
        ));
    };
    let (s, t) = lemma1_sets(g1, g2, cert)?;
    let f = cert.map.extended(u, v)?;
    removal_cospectral(g1, &s, g2, &t, &f)
}

/// Extended sets and map of a vertex certificate.
pub fn lemma1_sets(g1: &Graph, g2: &Graph, cert: &ReplaceableCertificate) -> Result<(VertexSet, VertexSet)> {
    let (Anchor::Vertex(u), Anchor::Vertex(v)) = (cert.left, cert.right) else {
        return Err(Error::Validation(
            "the closed-neighbourhood check applies to vertex certificates".into(),
        ));
    };
    Ok((g1.neighborhood(u)?.with(u), g2.neighborhood(v)?.with(v)))
}

/// The endpoint sets stay removal cospectral in `G1 - e1` and `G2 - e2`.
/// Always true for a genuine certificate.
pub fn verify_lemma2(g1: &Graph, g2: &Graph, cert: &ReplaceableCertificate) -> Result<bool> {
    let (Anchor::Edge(e1), Anchor::Edge(e2)) = (cert.left, cert.right) else {
        return Err(Error::Validation(
            "the edge-deletion check applies to edge certificates".into(),
        ));
    };
    let h1 = g1.delete_edge(e1)?;
    let h2 = g2.delete_edge(e2)?;
    removal_cospectral(
        &h1,
        &VertexSet::from(e1.endpoints()),
        &h2,
        &VertexSet::from(e2.endpoints()),
        &cert.map,
    )
}
