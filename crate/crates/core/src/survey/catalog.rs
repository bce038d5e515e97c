use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order [`generate_cubic`] accepts.
pub const GENERATE_MAX_ORDER: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSource {
    Generated,
    Ingested(PathBuf),
}

impl fmt::Display for CatalogSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSource::Generated => f.write_str("generated"),
            CatalogSource::Ingested(p) => write!(f, "ingested({})", p.display()),
        }
    }
}

/// Isomorph-free connected cubic graphs of one order. Members are stored
/// canonically labeled and sorted by canonical graph6.
#[derive(Clone, Debug)]
pub struct Catalog {
    order: usize,
    graphs: Vec<Graph>,
    codes: Vec<String>,
    source: CatalogSource,
}

impl Catalog {
    fn from_canonical(order: usize, members: BTreeMap<String, Graph>, source: CatalogSource) -> Catalog {
        let (codes, graphs) = members.into_iter().unzip();
        Catalog {
            order,
            graphs,
            codes,
            source,
        }
    }

    /// Canonicalizes and deduplicates. Intended for trusted in-memory input;
    /// members are not validated as connected cubic graphs.
    pub fn from_graphs(order: usize, graphs: Vec<Graph>, source: CatalogSource) -> Catalog {
        let members = graphs
            .par_iter()
            .map(|g| {
                let form = canonical_form(g);
                (form.canonical_graph6, g.permute(&form.relabeling))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Catalog::from_canonical(order, members, source)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    /// Canonical graph6 strings, parallel to [`Catalog::graphs`].
    pub fn codes(&self) -> &[String] {
        &self.codes
    }

    pub fn index_of(&self, canonical_graph6: &str) -> Option<usize> {
        self.codes.binary_search_by(|c| c.as_str().cmp(canonical_graph6)).ok()
    }

    pub fn source(&self) -> &CatalogSource {
        &self.source
    }

    /// One graph6 line per member, newline terminated.
    pub fn to_graph6_lines(&self) -> String {
        self.codes.iter().fold(String::new(), |mut s, c| {
            s.push_str(c);
            s.push('\n');
            s
        })
    }
}

/// Every connected cubic graph of even order `n`, `4 <= n <= 14`.
pub fn generate_cubic(n: usize) -> Result<Catalog> {
    if n % 2 == 1 || !(4..=GENERATE_MAX_ORDER).contains(&n) {
        return Err(Error::InvalidOrder(n));
    }
    generate_cubic_unbounded(n)
}

/// [`generate_cubic`] without the order envelope. Cost grows quickly past 14.
///
/// Degree-constrained backtracking: the smallest vertex with unmet degree is
/// joined to a later vertex, either one already reached or the next unused
/// index. Vertices are reached in order, so every labeled output is
/// connected; outputs are deduplicated by canonical form.
pub fn generate_cubic_unbounded(n: usize) -> Result<Catalog> {
    if n % 2 == 1 || !(4..=crate::graph::MAX_ORDER).contains(&n) {
        return Err(Error::InvalidOrder(n));
    }
    let mut search = Backtrack {
        n,
        adj: vec![0; n],
        deg: vec![0; n],
        pending: Vec::new(),
        members: BTreeMap::new(),
    };
    for w in 1..=3 {
        search.join(0, w);
    }
    search.extend(1, 2, 4);
    search.flush();
    Ok(Catalog::from_canonical(n, search.members, CatalogSource::Generated))
}

const FLUSH_AT: usize = 1 << 16;

struct Backtrack {
    n: usize,
    adj: Vec<u64>,
    deg: Vec<u8>,
    pending: Vec<Vec<u64>>,
    members: BTreeMap<String, Graph>,
}

impl Backtrack {
    fn join(&mut self, v: usize, w: usize) {
        self.adj[v] |= 1 << w;
        self.adj[w] |= 1 << v;
        self.deg[v] += 1;
        self.deg[w] += 1;
    }

    fn split(&mut self, v: usize, w: usize) {
        self.adj[v] &= !(1 << w);
        self.adj[w] &= !(1 << v);
        self.deg[v] -= 1;
        self.deg[w] -= 1;
    }

    /// `v` is the vertex being completed, `min_w` the smallest admissible
    /// new neighbour and `next` the first unreached index.
    fn extend(&mut self, mut v: usize, mut min_w: usize, next: usize) {
        while v < next && self.deg[v] == 3 {
            v += 1;
            min_w = v + 1;
        }
        if v == next {
            if next == self.n {
                self.pending.push(self.adj.clone());
                if self.pending.len() >= FLUSH_AT {
                    self.flush();
                }
            }
            return;
        }
        for w in min_w.max(v + 1)..next {
            if self.deg[w] < 3 && self.adj[v] & (1 << w) == 0 {
                self.join(v, w);
                self.extend(v, w + 1, next);
                self.split(v, w);
            }
        }
        if next < self.n {
            self.join(v, next);
            self.extend(v, next + 1, next + 1);
            self.split(v, next);
        }
    }

    fn flush(&mut self) {
        let n = self.n;
        let found: Vec<(String, Graph)> = std::mem::take(&mut self.pending)
            .into_par_iter()
            .map(|adj| {
                let g = Graph::from_rows(n, adj);
                let form = canonical_form(&g);
                let h = g.permute(&form.relabeling);
                (form.canonical_graph6, h)
            })
            .collect();
        for (code, g) in found {
            self.members.entry(code).or_insert(g);
        }
    }
}

/// Reads one graph6 string per line and validates every member as a
/// connected cubic graph of order `n`, with no two members isomorphic.
pub fn ingest_catalog(path: &Path, n: usize) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    ingest_lines(&text, n, CatalogSource::Ingested(path.to_path_buf()))
}

pub fn ingest_lines(text: &str, n: usize, source: CatalogSource) -> Result<Catalog> {
    let mut parsed = Vec::new();
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r'))) {
        if line.is_empty() {
            continue;
        }
        let g = Graph::from_graph6(line).map_err(|e| Error::Validation(format!("line {}: {}", lineno, e)))?;
        if g.order() != n {
            return Err(Error::Validation(format!(
                "line {}: order {} (expected {})",
                lineno,
                g.order(),
                n
            )));
        }
        if !g.is_k_regular(3) {
            return Err(Error::Validation(format!("line {}: graph is not 3-regular", lineno)));
        }
        if !g.is_connected() {
            return Err(Error::Validation(format!("line {}: graph is not connected", lineno)));
        }
        parsed.push((lineno, g));
    }
    let forms: Vec<_> = parsed.par_iter().map(|(_, g)| canonical_form(g)).collect();
    let mut members = BTreeMap::new();
    let mut first_line: BTreeMap<&str, usize> = BTreeMap::new();
    for ((lineno, g), form) in parsed.iter().zip(&forms) {
        if let Some(prev) = first_line.get(form.canonical_graph6.as_str()) {
            return Err(Error::Validation(format!(
                "lines {} and {} are isomorphic",
                prev, lineno
            )));
        }
        first_line.insert(&form.canonical_graph6, *lineno);
        members.insert(form.canonical_graph6.clone(), g.permute(&form.relabeling));
    }
    Ok(Catalog::from_canonical(n, members, source))
}

/// Canonical codes of a catalog, for comparing two sources of the same order.
pub fn canonical_set(c: &Catalog) -> BTreeSet<String> {
    c.codes().iter().cloned().collect()
}
