use crate::graph::{bits, Edge, Graph};

/// Whether deleting `cut` leaves at least two components that each contain
/// a cycle (edge count at least vertex count).
pub fn is_cyclic_cut(g: &Graph, cut: &[Edge]) -> bool {
    let mut h = g.clone();
    for &e in cut {
        match h.delete_edge(e) {
            Ok(next) => h = next,
            Err(_) => return false,
        }
    }
    let mut unseen: u64 = (1u64 << h.order()) - 1;
    let mut cyclic = 0;
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let comp = h.component_mask(start);
        unseen &= !comp;
        let vertices = comp.count_ones() as usize;
        let degree_sum: usize = bits(comp).map(|v| h.degree(v)).sum();
        if degree_sum / 2 >= vertices {
            cyclic += 1;
        }
    }
    cyclic >= 2
}

/// Cyclic edge connectivity at most 3, by exhaustive search over every edge
/// subset of size 1, 2 and 3.
pub fn cyclic_edge_conn_le3(g: &Graph) -> bool {
    cyclic_edge_cut_at_most(g, 3).is_some()
}

/// A smallest cyclic edge cut of size `<= k`, if any.
pub fn cyclic_edge_cut_at_most(g: &Graph, k: usize) -> Option<Vec<Edge>> {
    let edges = g.edges();
    let mut chosen = Vec::with_capacity(k);
    (1..=k).find_map(|size| search(g, &edges, 0, size, &mut chosen))
}

fn search(g: &Graph, edges: &[Edge], from: usize, size: usize, chosen: &mut Vec<Edge>) -> Option<Vec<Edge>> {
    if chosen.len() == size {
        return is_cyclic_cut(g, chosen).then(|| chosen.clone());
    }
    for i in from..edges.len() {
        chosen.push(edges[i]);
        let found = search(g, edges, i + 1, size, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
