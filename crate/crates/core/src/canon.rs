//! Canonical labeling, isomorphism and automorphism orbits.
//!
//! Individualization-refinement over ordered equitable partitions. Every leaf
//! of the search tree is explored except those pruned by automorphisms
//! already found, so the generators collected along the way generate the
//! full automorphism group and the reported orbits are exact.
//!
//! The canonical form is the lexicographically smallest graph6 string among
//! the leaves visited.

use crate::graph::{bits, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub canonical_graph6: String,
    /// `relabeling[v]` is the canonical index of original vertex `v`.
    pub relabeling: Vec<usize>,
}

/// Exact orbits of the automorphism group on vertices and on edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit id (smallest member) of each vertex.
    vertex_orbit: Vec<usize>,
    edges: Vec<Edge>,
    /// Orbit id (index into `edges` of the smallest member) of each edge.
    edge_orbit: Vec<usize>,
}

impl OrbitPartition {
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        group_by_id(&self.vertex_orbit)
    }

    pub fn edge_orbits(&self) -> Vec<Vec<Edge>> {
        group_by_id(&self.edge_orbit)
            .into_iter()
            .map(|part| part.into_iter().map(|i| self.edges[i]).collect())
            .collect()
    }

    pub fn vertex_orbit_id(&self, v: usize) -> usize {
        self.vertex_orbit[v]
    }

    pub fn edge_orbit_id(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok().map(|i| self.edge_orbit[i])
    }

    pub fn same_vertex_orbit(&self, u: usize, v: usize) -> bool {
        self.vertex_orbit[u] == self.vertex_orbit[v]
    }

    pub fn same_edge_orbit(&self, a: Edge, b: Edge) -> bool {
        match (self.edge_orbit_id(a), self.edge_orbit_id(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// Smallest vertex of each orbit.
    pub fn vertex_representatives(&self) -> Vec<usize> {
        self.vertex_orbits().into_iter().map(|o| o[0]).collect()
    }

    pub fn edge_representatives(&self) -> Vec<Edge> {
        self.edge_orbits().into_iter().map(|o| o[0]).collect()
    }
}

fn group_by_id(ids: &[usize]) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; ids.len()];
    for (x, &id) in ids.iter().enumerate() {
        if slot[id] == usize::MAX {
            slot[id] = parts.len();
            parts.push(Vec::new());
        }
        parts[slot[id]].push(x);
    }
    parts
}

/// Everything one search produces.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub form: CanonicalForm,
    /// Automorphisms as vertex maps; they generate the full group.
    pub generators: Vec<Vec<usize>>,
    pub orbits: OrbitPartition,
}

impl Symmetry {
    /// Group order by enumerating the closure of the generators. Small
    /// groups only.
    pub fn group_order_by_closure(&self) -> usize {
        let n = self.form.relabeling.len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for gen in &self.generators {
                let q: Vec<usize> = p.iter().map(|&x| gen[x]).collect();
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    analyze(g).form
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    g1.order() == g2.order()
        && g1.size() == g2.size()
        && canonical_form(g1).canonical_graph6 == canonical_form(g2).canonical_graph6
}

pub fn automorphism_orbits(g: &Graph) -> OrbitPartition {
    analyze(g).orbits
}

/// The canonically relabeled graph.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permute(&canonical_form(g).relabeling)
}

pub fn analyze(g: &Graph) -> Symmetry {
    let n = g.order();
    let mut search = Search {
        g,
        first: None,
        best: None,
        first_path: Vec::new(),
        generators: Vec::new(),
    };
    let mut root = vec![(0..n).collect::<Vec<_>>()];
    root.retain(|c| !c.is_empty());
    refine(g, &mut root);
    let mut prefix = Vec::new();
    search.visit(root, &mut prefix);

    let (canonical_graph6, relabeling) = search.best.unwrap_or_else(|| ("?".to_string(), Vec::new()));
    let orbits = orbits_from_generators(g, &search.generators);
    Symmetry {
        form: CanonicalForm {
            canonical_graph6,
            relabeling,
        },
        generators: search.generators,
        orbits,
    }
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(String, Vec<usize>)>,
    best: Option<(String, Vec<usize>)>,
    first_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth of the first-path node to resume at when an
    /// automorphism equivalent to the first leaf has been found.
    fn visit(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) -> Option<usize> {
        let depth = prefix.len();
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut done: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !done.is_empty() {
                let uf = stabilizer_orbits(self.g.order(), &self.generators, prefix);
                if done.iter().any(|&w| uf.find(w) == uf.find(v)) {
                    done.push(v);
                    continue;
                }
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            refine(self.g, &mut child);
            prefix.push(v);
            let jump = self.visit(child, prefix);
            prefix.pop();
            done.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], prefix: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let mut perm = vec![0; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let code = self.g.permute(&perm).to_graph6().expect("order already bounded");
        let Some((first_code, first_perm)) = &self.first else {
            self.first = Some((code.clone(), perm.clone()));
            self.best = Some((code, perm));
            self.first_path = prefix.to_vec();
            return None;
        };
        if code == *first_code {
            let gamma = automorphism(first_perm, &perm);
            self.push_generator(gamma);
            let level = prefix.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
            return Some(level);
        }
        let (best_code, best_perm) = self.best.as_ref().expect("set with first leaf");
        match code.cmp(best_code) {
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(best_perm, &perm);
                self.push_generator(gamma);
            }
            std::cmp::Ordering::Less => self.best = Some((code, perm)),
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    fn push_generator(&mut self, gamma: Vec<usize>) {
        if gamma.iter().enumerate().any(|(i, &x)| i != x) {
            self.generators.push(gamma);
        }
    }
}

/// Maps each vertex to the vertex receiving the same label in `other`.
fn automorphism(labels: &[usize], other: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; other.len()];
    for (v, &l) in other.iter().enumerate() {
        inv[l] = v;
    }
    labels.iter().map(|&l| inv[l]).collect()
}

/// Splits cells by neighbour counts into each splitter cell until the
/// partition is equitable. Sub-cells are ordered by increasing count, so the
/// result depends only on the graph structure and the incoming cell order.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | 1 << v);
            let mut i = 0;
            while i < cells.len() {
                if cells[i].len() > 1 {
                    let mut keyed: Vec<(u32, usize)> = cells[i]
                        .iter()
                        .map(|&v| ((g.row(v) & splitter).count_ones(), v))
                        .collect();
                    keyed.sort_unstable();
                    if keyed[0].0 != keyed[keyed.len() - 1].0 {
                        let mut parts: Vec<Vec<usize>> = Vec::new();
                        let mut last = u32::MAX;
                        for (k, v) in keyed {
                            if k != last {
                                parts.push(Vec::new());
                                last = k;
                            }
                            parts.last_mut().unwrap().push(v);
                        }
                        let added = parts.len() - 1;
                        cells.splice(i..=i, parts);
                        i += added;
                        changed = true;
                    }
                }
                i += 1;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of the subgroup generated by those generators fixing `prefix`
/// pointwise.
fn stabilizer_orbits(n: usize, generators: &[Vec<usize>], prefix: &[usize]) -> UnionFind {
    let mut uf = UnionFind::new(n);
    for gen in generators {
        if prefix.iter().all(|&p| gen[p] == p) {
            for (x, &y) in gen.iter().enumerate() {
                uf.union(x, y);
            }
        }
    }
    uf
}

fn orbits_from_generators(g: &Graph, generators: &[Vec<usize>]) -> OrbitPartition {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    for gen in generators {
        for (x, &y) in gen.iter().enumerate() {
            uf.union(x, y);
        }
    }
    let vertex_orbit = (0..n).map(|v| uf.find(v)).collect();

    let edges = g.edges();
    let mut euf = UnionFind::new(edges.len());
    for gen in generators {
        for (i, e) in edges.iter().enumerate() {
            let image = Edge::new(gen[e.lo()], gen[e.hi()]).expect("automorphism maps edges to edges");
            let j = edges.binary_search(&image).expect("automorphism preserves edges");
            euf.union(i, j);
        }
    }
    let edge_orbit = (0..edges.len()).map(|i| euf.find(i)).collect();
    OrbitPartition {
        vertex_orbit,
        edges,
        edge_orbit,
    }
}

/// Is `perm` (vertex -> vertex) an automorphism of `g`?
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.order()
        && (0..g.order()).all(|v| bits(g.row(v)).fold(0u64, |m, w| m | 1 << perm[w]) == g.row(perm[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        for p in &mut parts {
            p.sort();
        }
        parts.sort();
        parts
    }

    #[test]
    fn complete_graph_is_transitive() {
        let k4 = Graph::complete(4);
        let sym = analyze(&k4);
        assert_eq!(sym.orbits.vertex_orbits(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(sym.orbits.edge_orbits().len(), 1);
        assert_eq!(sym.group_order_by_closure(), 24);
        let shuffled = k4.permute(&[2, 0, 3, 1]);
        assert_eq!(canonical_form(&shuffled).canonical_graph6, sym.form.canonical_graph6);
    }

    #[test]
    fn star_and_path_orbits() {
        let star = automorphism_orbits(&Graph::star(3));
        assert_eq!(sorted(star.vertex_orbits()), vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(star.edge_orbits().len(), 1);

        let p4 = automorphism_orbits(&Graph::path(4));
        assert_eq!(sorted(p4.vertex_orbits()), vec![vec![0, 3], vec![1, 2]]);
        let eo = p4.edge_orbits();
        assert_eq!(eo.len(), 2);
        assert!(p4.same_edge_orbit(Edge::new(0, 1).unwrap(), Edge::new(2, 3).unwrap()));
        assert!(!p4.same_edge_orbit(Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()));
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3)).unwrap();
        assert!(!are_isomorphic(&c6, &two_k3));
        let p4 = Graph::path(4);
        let other = Graph::from_edges(4, &[(3, 1), (1, 0), (0, 2)]).unwrap();
        assert!(are_isomorphic(&p4, &other));
        assert!(!are_isomorphic(&Graph::complete(4), &Graph::cycle(4)));
        assert!(!are_isomorphic(&Graph::prism(), &Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn relabeling_reproduces_canonical_graph() {
        let g = Graph::prism();
        let form = canonical_form(&g);
        assert_eq!(g.permute(&form.relabeling).to_graph6().unwrap(), form.canonical_graph6);
    }

    #[test]
    fn generators_are_automorphisms() {
        for g in [
            Graph::prism(),
            Graph::complete_bipartite(3, 3),
            Graph::cycle(7),
            Graph::empty(9).unwrap(),
        ] {
            let sym = analyze(&g);
            assert!(sym.generators.iter().all(|p| is_automorphism(&g, p)));
        }
        assert_eq!(analyze(&Graph::prism()).group_order_by_closure(), 12);
        assert_eq!(analyze(&Graph::complete_bipartite(3, 3)).group_order_by_closure(), 72);
        assert_eq!(analyze(&Graph::cycle(7)).group_order_by_closure(), 14);
    }

    #[test]
    fn degenerate_orders() {
        let f0 = canonical_form(&Graph::empty(0).unwrap());
        assert_eq!(f0.canonical_graph6, "?");
        let f1 = canonical_form(&Graph::empty(1).unwrap());
        assert_eq!(f1.canonical_graph6, "@");
        assert_eq!(automorphism_orbits(&Graph::empty(62).unwrap()).vertex_orbits().len(), 1);
    }
}
