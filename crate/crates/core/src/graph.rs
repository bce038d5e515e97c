//! Simple undirected graphs on at most 62 vertices.
//!
//! Adjacency is stored as one `u64` bit row per vertex. Vertex identity is
//! positional: deleting vertices compacts the remaining indices while
//! preserving their relative order.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order (graph6 short form).
pub const MAX_ORDER: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// An undirected edge. Endpoints are stored in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Edge> {
        if a == b {
            return Err(Error::InvalidEdge(a, b));
        }
        Ok(if a < b { Edge(a, b) } else { Edge(b, a) })
    }

    pub fn lo(&self) -> usize {
        self.0
    }

    pub fn hi(&self) -> usize {
        self.1
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.0, self.1]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A sorted set of distinct vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> VertexSet {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> VertexSet {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn with(&self, v: usize) -> VertexSet {
        VertexSet::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    pub(crate) fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::new(v)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::UnsupportedSize(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Trusts `adj` to be a symmetric, loop-free bitset adjacency.
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Graph {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidEdge(a, b));
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("valid star")
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
        Graph::from_edges(a + b, &edges).expect("valid complete bipartite graph")
    }

    /// The triangular prism: triangles 0-1-2 and 3-4-5 joined by i -- i+3.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .expect("valid prism")
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::UnsupportedSize(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph { n, adj })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Adjacency bit row of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.neighbors(v).collect()))
    }

    /// All edges in increasing (lo, hi) order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for a in 0..self.n {
            for b in bits(self.adj[a] >> (a + 1) << (a + 1)) {
                out.push(Edge(a, b));
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.check_vertex(e.hi())?;
        if self.has_edge(e.lo(), e.hi()) {
            Ok(())
        } else {
            Err(Error::MissingEdge(e.lo(), e.hi()))
        }
    }

    /// `G \ X`, with surviving vertices renumbered in their original order.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<Graph> {
        for v in x.iter() {
            self.check_vertex(v)?;
        }
        Ok(self.delete_mask(x.mask()))
    }

    pub(crate) fn delete_mask(&self, removed: u64) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| removed >> v & 1 == 0).collect();
        self.induced(&keep)
    }

    /// Subgraph induced by `keep`, vertex `keep[i]` becoming `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let adj = keep
            .iter()
            .map(|&v| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.adj[v] >> w & 1 == 1)
                    .fold(0u64, |row, (i, _)| row | 1 << i)
            })
            .collect();
        Graph { n: keep.len(), adj }
    }

    /// `G - e`.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        let mut g = self.clone();
        g.adj[e.lo()] &= !(1 << e.hi());
        g.adj[e.hi()] &= !(1 << e.lo());
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b || self.has_edge(a, b) {
            return Err(Error::InvalidEdge(a, b));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    /// `perm[v]` is the new index of vertex `v`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bits(self.adj[v]).fold(0u64, |row, w| row | 1 << perm[w]);
        }
        Graph { n: self.n, adj }
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.component_mask(0).count_ones() as usize == self.n
    }

    pub(crate) fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn to_graph6(&self) -> Result<String> {
        if self.n > MAX_ORDER {
            return Err(Error::UnsupportedSize(self.n));
        }
        let mut out = String::with_capacity(1 + (self.n * self.n.saturating_sub(1) / 2).div_ceil(6));
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = (acc << 1) | (self.adj[i] >> j & 1) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(((acc << (6 - nbits)) + 63) as char);
        }
        Ok(out)
    }

    pub fn from_graph6(line: &str) -> Result<Graph> {
        let bytes = line.as_bytes();
        let err = |offset: usize, reason: &str| Error::Graph6 {
            offset,
            reason: reason.to_string(),
        };
        let first = *bytes.first().ok_or_else(|| err(0, "empty input"))?;
        if !(63..=126).contains(&first) {
            return Err(err(0, "byte out of range 63..126"));
        }
        if first == 126 {
            return Err(err(0, "long-form graph6 (n > 62) is not supported"));
        }
        let n = (first - 63) as usize;
        let nbits = n * n.saturating_sub(1) / 2;
        let expected = 1 + nbits.div_ceil(6);
        if bytes.len() != expected {
            return Err(err(
                bytes.len().min(expected),
                &format!(
                    "length {} does not match {} expected for n={}",
                    bytes.len(),
                    expected,
                    n
                ),
            ));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for (offset, &b) in bytes.iter().enumerate().skip(1) {
            if !(63..=126).contains(&b) {
                return Err(err(offset, "byte out of range 63..126"));
            }
            let group = b - 63;
            for bit in 0..6 {
                let set = group >> (5 - bit) & 1 == 1;
                if k >= nbits {
                    if set {
                        return Err(err(offset, "nonzero padding bits"));
                    }
                    continue;
                }
                if set {
                    let (i, j) = upper_triangle_index(k);
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(g)
    }
}

/// Position `k` of the column-wise upper triangle -> (row, column).
fn upper_triangle_index(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|e| e.to_string()).collect();
        write!(f, "Graph(n={}, [{}])", self.n, edges.join(" "))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_graph6() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{:?}", self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bit layout computed directly from the definition, independent of the packer.
    fn graph6_by_hand(g: &Graph) -> String {
        let mut bitstring = Vec::new();
        for j in 1..g.order() {
            for i in 0..j {
                bitstring.push(g.has_edge(i, j) as u8);
            }
        }
        while bitstring.len() % 6 != 0 {
            bitstring.push(0);
        }
        let mut s = String::new();
        s.push((g.order() as u8 + 63) as char);
        for chunk in bitstring.chunks(6) {
            let v = chunk.iter().fold(0u8, |acc, b| acc * 2 + b);
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(Graph::complete(4).to_graph6().unwrap(), "C~");
        assert_eq!(Graph::from_graph6("C~").unwrap(), Graph::complete(4));
        let two = Graph::from_graph6("A?").unwrap();
        assert_eq!((two.order(), two.size()), (2, 0));
        assert_eq!(Graph::empty(3).unwrap().to_graph6().unwrap(), "B?");
        let p3 = Graph::path(3);
        assert_eq!(p3.to_graph6().unwrap(), graph6_by_hand(&p3));
        assert_eq!(p3.to_graph6().unwrap(), "Bg");
        let g = Graph::from_graph6("DQc").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.to_graph6().unwrap(), "DQc");
    }

    #[test]
    fn graph6_matches_hand_layout() {
        for g in [
            Graph::cycle(7),
            Graph::prism(),
            Graph::star(5),
            Graph::complete_bipartite(3, 3),
        ] {
            assert_eq!(g.to_graph6().unwrap(), graph6_by_hand(&g));
        }
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(Graph::from_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(Graph::from_graph6("C"), Err(Error::Graph6 { .. })));
        assert!(matches!(Graph::from_graph6("C~~"), Err(Error::Graph6 { .. })));
        // byte 0x20 is below 63
        assert!(matches!(Graph::from_graph6("C "), Err(Error::Graph6 { offset: 1, .. })));
        // n=2 has a single data bit; "A@" sets a padding bit
        assert!(matches!(Graph::from_graph6("A@"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(
            Graph::from_graph6("~??"),
            Err(Error::Graph6 { offset: 0, .. })
        ));
    }

    #[test]
    fn deletion_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.delete_vertices(&VertexSet::from([0])).unwrap(), Graph::complete(3));
        assert_eq!(
            Graph::cycle(5).delete_vertices(&VertexSet::from([0])).unwrap(),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
        );
        assert_eq!(k4.delete_vertices(&VertexSet::empty()).unwrap(), k4);
        assert!(k4.delete_vertices(&VertexSet::from([4])).is_err());

        let k4e = k4.delete_edge(Edge::new(0, 1).unwrap()).unwrap();
        let mut degs = k4e.degree_sequence();
        degs.sort();
        assert_eq!(degs, vec![2, 2, 3, 3]);
        let p = Graph::cycle(4).delete_edge(Edge::new(3, 0).unwrap()).unwrap();
        assert_eq!(p, Graph::path(4));
        let tri = Graph::complete(3).delete_edge(Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(tri, Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap());
        assert!(tri.delete_edge(Edge::new(0, 1).unwrap()).is_err());
        assert!(Edge::new(2, 2).is_err());
    }

    #[test]
    fn neighborhoods_and_predicates() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.neighborhood(2).unwrap(), VertexSet::from([0, 1, 3]));
        assert_eq!(Graph::star(3).neighborhood(0).unwrap(), VertexSet::from([1, 2, 3]));
        assert_eq!(Graph::cycle(5).neighborhood(0).unwrap(), VertexSet::from([1, 4]));
        assert!(k4.neighborhood(9).is_err());

        assert!(k4.is_connected() && k4.is_k_regular(3));
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3)).unwrap();
        assert!(!two_triangles.is_connected());
        let c5 = Graph::cycle(5);
        assert!(c5.is_k_regular(2) && !c5.is_k_regular(3));
        assert!(!Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn upper_triangle_order() {
        let expected = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4)];
        for (k, &e) in expected.iter().enumerate() {
            assert_eq!(upper_triangle_index(k), e);
        }
    }
}
