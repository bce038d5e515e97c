//! Exhaustive surveys over catalogs of connected cubic graphs: cospectral
//! classes, replaceable-structure censuses and constructed coverage.

pub mod analysis;
pub mod catalog;
pub mod census;
pub mod construct;
pub mod cyclic;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{Error, Result};

pub use analysis::{nus3, partition_cospectral, CatalogAnalysis, CospectralClass, GraphAnalysis};
pub use catalog::{generate_cubic, generate_cubic_unbounded, ingest_catalog, Catalog, CatalogSource};
pub use census::{census_mate_replaceable, census_self_replaceable, ReplaceableFlags};
pub use construct::{composition_outputs, constructed_set, construction_instances, Instance, Witness};
pub use cyclic::{cyclic_edge_conn_le3, cyclic_edge_cut_at_most};
pub use report::{ConstructedSet, GraphFlags, Ratio, SurveyReport, Table};

/// Reading of the ambiguous table criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// Mates must be non-isomorphic; construction instances must produce two
    /// non-isomorphic outputs.
    Strict,
    /// Within-graph anchors count as mates; any composition output counts.
    Loose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyOptions {
    pub mate_semantics: Semantics,
    pub construction_semantics: Semantics,
    /// Anchors up to orbit representatives. Never changes results.
    pub symmetry_reduction: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            mate_semantics: Semantics::Strict,
            construction_semantics: Semantics::Strict,
            symmetry_reduction: true,
        }
    }
}

/// Where catalogs come from: explicit files, `cubic_<N>.g6` files in a
/// corpus directory, or built-in generation up to order 14.
#[derive(Clone, Debug, Default)]
pub struct Sources {
    pub files: BTreeMap<usize, PathBuf>,
    pub corpus_dir: Option<PathBuf>,
}

impl Sources {
    pub fn with_file(mut self, order: usize, path: PathBuf) -> Sources {
        self.files.insert(order, path);
        self
    }

    pub fn with_dir(mut self, dir: PathBuf) -> Sources {
        self.corpus_dir = Some(dir);
        self
    }

    pub fn path_for(&self, order: usize) -> Option<PathBuf> {
        if let Some(p) = self.files.get(&order) {
            return Some(p.clone());
        }
        let p = self.corpus_dir.as_ref()?.join(corpus_file_name(order));
        p.exists().then_some(p)
    }

    pub fn load(&self, order: usize) -> Result<Catalog> {
        match self.path_for(order) {
            Some(p) => ingest_catalog(&p, order),
            None if order <= catalog::GENERATE_MAX_ORDER => generate_cubic(order),
            None => Err(Error::Validation(format!(
                "no catalog for order {}: supply {} (built-in generation stops at {})",
                order,
                corpus_file_name(order),
                catalog::GENERATE_MAX_ORDER
            ))),
        }
    }
}

pub fn corpus_file_name(order: usize) -> String {
    format!("cubic_{}.g6", order)
}

/// Loads and analyses catalogs on demand.
#[derive(Debug)]
pub struct Survey {
    pub options: SurveyOptions,
    sources: Sources,
    analyses: BTreeMap<usize, CatalogAnalysis>,
}

impl Survey {
    pub fn new(sources: Sources, options: SurveyOptions) -> Survey {
        Survey {
            options,
            sources,
            analyses: BTreeMap::new(),
        }
    }

    pub fn load(&mut self, order: usize) -> Result<&CatalogAnalysis> {
        if order % 2 == 1 || order < 4 {
            return Err(Error::InvalidOrder(order));
        }
        if !self.analyses.contains_key(&order) {
            let catalog = self.sources.load(order)?;
            self.analyses.insert(order, CatalogAnalysis::new(catalog));
        }
        Ok(&self.analyses[&order])
    }

    /// Loads every even order from 4 through `order`.
    fn load_through(&mut self, order: usize) -> Result<()> {
        for n in (4..=order).step_by(2) {
            self.load(n)?;
        }
        Ok(())
    }

    pub fn analysis(&self, order: usize) -> Option<&CatalogAnalysis> {
        self.analyses.get(&order)
    }

    pub fn constructed(&mut self, order: usize) -> Result<ConstructedSet> {
        self.load(order)?;
        if order >= 6 {
            self.load_through(order - 2)?;
        }
        let lower: BTreeMap<usize, &CatalogAnalysis> = self
            .analyses
            .iter()
            .filter(|(&n, _)| n < order)
            .map(|(&n, a)| (n, a))
            .collect();
        let target = &self.analyses[&order];
        let members = constructed_set(
            target,
            &lower,
            self.options.construction_semantics,
            self.options.symmetry_reduction,
        );
        Ok(ConstructedSet { order, members })
    }

    /// Every census for one order. `with_construction` also runs the
    /// (more expensive) constructed-coverage search.
    pub fn report(&mut self, order: usize, with_construction: bool) -> Result<SurveyReport> {
        let constructed = if with_construction {
            Some(self.constructed(order)?)
        } else {
            None
        };
        let options = self.options;
        let a = self.load(order)?;
        Ok(SurveyReport::build(a, options, constructed.as_ref()))
    }
}
