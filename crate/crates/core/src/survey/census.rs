use rayon::prelude::*;

use super::analysis::{
    has_cross_edge_certificate, has_cross_vertex_certificate, has_self_edge_certificate, has_self_vertex_certificate,
    CatalogAnalysis,
};
use super::Semantics;

/// Per-graph `(edge, vertex)` flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReplaceableFlags {
    pub edge: bool,
    pub vertex: bool,
}

/// Replaceable vertices/edges inside each graph, anchors in different orbits.
pub fn census_self_replaceable(a: &CatalogAnalysis) -> Vec<ReplaceableFlags> {
    a.graphs
        .par_iter()
        .map(|g| ReplaceableFlags {
            edge: has_self_edge_certificate(g),
            vertex: has_self_vertex_certificate(g),
        })
        .collect()
}

/// NUS3 graphs with replaceable vertices/edges shared with a non-isomorphic
/// cospectral mate. Under [`Semantics::Loose`] a within-graph certificate
/// across different orbits also counts.
pub fn census_mate_replaceable(
    a: &CatalogAnalysis,
    self_flags: &[ReplaceableFlags],
    semantics: Semantics,
) -> Vec<ReplaceableFlags> {
    (0..a.graphs.len())
        .into_par_iter()
        .map(|i| {
            if a.class_of(i).members.len() < 2 {
                return ReplaceableFlags::default();
            }
            let mut flags = ReplaceableFlags {
                edge: a
                    .mates(i)
                    .any(|j| has_cross_edge_certificate(&a.graphs[i], &a.graphs[j])),
                vertex: a
                    .mates(i)
                    .any(|j| has_cross_vertex_certificate(&a.graphs[i], &a.graphs[j])),
            };
            if semantics == Semantics::Loose {
                flags.edge |= self_flags[i].edge;
                flags.vertex |= self_flags[i].vertex;
            }
            flags
        })
        .collect()
}
