use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::analysis::CatalogAnalysis;
use super::census::{census_mate_replaceable, census_self_replaceable};
use super::construct::Witness;
use super::cyclic::cyclic_edge_conn_le3;
use super::{Semantics, SurveyOptions};

/// Constructed members of one order's NUS3 set, by catalog index.
#[derive(Clone, Debug)]
pub struct ConstructedSet {
    pub order: usize,
    pub members: BTreeMap<usize, Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphFlags {
    pub index: usize,
    pub graph6: String,
    pub rep_edge_self: bool,
    pub rep_vertex_self: bool,
    pub rep_edge_mate: bool,
    pub rep_vertex_mate: bool,
    pub nus3: bool,
    pub nus3c: bool,
    /// `None` when the construction search was not run.
    pub constructed: Option<bool>,
}

/// All census data for one order. Percentages are derived on demand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub order: usize,
    pub mate_semantics: Semantics,
    pub construction_semantics: Semantics,
    pub graphs: Vec<GraphFlags>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    One,
    Two,
    Three,
}

impl Table {
    pub fn from_number(n: u8) -> Option<Table> {
        match n {
            1 => Some(Table::One),
            2 => Some(Table::Two),
            3 => Some(Table::Three),
            _ => None,
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Table::One => &[
                "order",
                "graphs",
                "rep_edge",
                "rep_edge_pct",
                "rep_vertex",
                "rep_vertex_pct",
            ],
            Table::Two => &[
                "order",
                "nus3",
                "rep_edge",
                "rep_edge_pct",
                "rep_vertex",
                "rep_vertex_pct",
            ],
            Table::Three => &["order", "nus3", "nus3c", "constructed", "pct_of_nus3", "pct_of_nus3c"],
        }
    }

    pub fn needs_construction(self) -> bool {
        self == Table::Three
    }
}

/// An exact ratio; the denominator may be zero, rendered as `n/a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    /// One decimal place, round half up, with a trailing `.0` dropped.
    pub fn percent(self) -> String {
        if self.den == 0 {
            return "n/a".to_string();
        }
        let tenths = (self.num * 2000 + self.den) / (2 * self.den);
        if tenths.is_multiple_of(10) {
            format!("{}", tenths / 10)
        } else {
            format!("{}.{}", tenths / 10, tenths % 10)
        }
    }

    /// Six decimal places, round half up.
    pub fn decimal(self) -> String {
        if self.den == 0 {
            return "n/a".to_string();
        }
        let scaled = (self.num as u128 * 2_000_000 + self.den as u128) / (2 * self.den as u128);
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl SurveyReport {
    pub fn build(a: &CatalogAnalysis, options: SurveyOptions, constructed: Option<&ConstructedSet>) -> SurveyReport {
        let selfs = census_self_replaceable(a);
        let mates = census_mate_replaceable(a, &selfs, options.mate_semantics);
        let nus3: BTreeSet<usize> = a.nus3().into_iter().collect();
        let nus3c: Vec<bool> = (0..a.graphs.len())
            .into_par_iter()
            .map(|i| nus3.contains(&i) && cyclic_edge_conn_le3(a.graphs[i].graph()))
            .collect();
        let graphs = (0..a.graphs.len())
            .map(|i| GraphFlags {
                index: i,
                graph6: a.catalog.codes()[i].clone(),
                rep_edge_self: selfs[i].edge,
                rep_vertex_self: selfs[i].vertex,
                rep_edge_mate: mates[i].edge,
                rep_vertex_mate: mates[i].vertex,
                nus3: nus3.contains(&i),
                nus3c: nus3c[i],
                constructed: constructed.map(|c| c.members.contains_key(&i)),
            })
            .collect();
        SurveyReport {
            order: a.order(),
            mate_semantics: options.mate_semantics,
            construction_semantics: options.construction_semantics,
            graphs,
        }
    }

    fn count(&self, f: impl Fn(&GraphFlags) -> bool) -> usize {
        self.graphs.iter().filter(|g| f(g)).count()
    }

    pub fn total(&self) -> usize {
        self.graphs.len()
    }

    pub fn rep_edge_self(&self) -> usize {
        self.count(|g| g.rep_edge_self)
    }

    pub fn rep_vertex_self(&self) -> usize {
        self.count(|g| g.rep_vertex_self)
    }

    pub fn nus3(&self) -> usize {
        self.count(|g| g.nus3)
    }

    pub fn rep_edge_mate(&self) -> usize {
        self.count(|g| g.nus3 && g.rep_edge_mate)
    }

    pub fn rep_vertex_mate(&self) -> usize {
        self.count(|g| g.nus3 && g.rep_vertex_mate)
    }

    pub fn nus3c(&self) -> usize {
        self.count(|g| g.nus3c)
    }

    pub fn constructed(&self) -> Option<usize> {
        self.graphs
            .iter()
            .map(|g| g.constructed.map(usize::from))
            .sum::<Option<usize>>()
    }

    /// |constructed| / |NUS3|, if the construction search ran.
    pub fn conjecture_ratio(&self) -> Option<Ratio> {
        Some(Ratio {
            num: self.constructed()?,
            den: self.nus3(),
        })
    }

    /// The table row as rendered strings, in [`Table::columns`] order.
    /// Table 3 needs the construction search.
    pub fn row(&self, table: Table) -> Option<Vec<String>> {
        let pct = |num, den| Ratio { num, den }.percent();
        let row = match table {
            Table::One => {
                let (t, e, v) = (self.total(), self.rep_edge_self(), self.rep_vertex_self());
                vec![
                    self.order.to_string(),
                    t.to_string(),
                    e.to_string(),
                    pct(e, t),
                    v.to_string(),
                    pct(v, t),
                ]
            }
            Table::Two => {
                let (t, e, v) = (self.nus3(), self.rep_edge_mate(), self.rep_vertex_mate());
                vec![
                    self.order.to_string(),
                    t.to_string(),
                    e.to_string(),
                    pct(e, t),
                    v.to_string(),
                    pct(v, t),
                ]
            }
            Table::Three => {
                let (t, c, k) = (self.nus3(), self.nus3c(), self.constructed()?);
                vec![
                    self.order.to_string(),
                    t.to_string(),
                    c.to_string(),
                    k.to_string(),
                    pct(k, t),
                    pct(k, c),
                ]
            }
        };
        Some(row)
    }

    pub fn to_csv(&self, table: Table) -> Option<String> {
        let row = self.row(table)?;
        Some(format!("{}\n{}\n", table.columns().join(","), row.join(",")))
    }

    pub fn to_json(&self, table: Table) -> Option<String> {
        let row = self.row(table)?;
        let fields: serde_json::Map<String, serde_json::Value> = table
            .columns()
            .iter()
            .zip(row)
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
            .collect();
        let doc = serde_json::json!({
            "table": fields,
            "mate_semantics": self.mate_semantics,
            "construction_semantics": self.construction_semantics,
            "graphs": self.graphs,
        });
        Some(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")
    }

    /// Right-aligned columns.
    pub fn to_text(&self, table: Table) -> Option<String> {
        let row = self.row(table)?;
        let widths: Vec<usize> = table
            .columns()
            .iter()
            .zip(&row)
            .map(|(h, v)| h.len().max(v.len()))
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:>w$}", c, w = w))
                .collect::<Vec<_>>()
                .join("  ")
        };
        Some(format!(
            "{}\n{}\n",
            line(table.columns().to_vec()),
            line(row.iter().map(String::as_str).collect())
        ))
    }

    /// Per-graph flags as CSV, one line per catalog member.
    pub fn flags_csv(&self) -> String {
        let mut out = String::from(
            "index,graph6,rep_edge_self,rep_vertex_self,rep_edge_mate,rep_vertex_mate,nus3,nus3c,constructed\n",
        );
        let b = |x: bool| if x { "1" } else { "0" };
        for g in &self.graphs {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                g.index,
                g.graph6,
                b(g.rep_edge_self),
                b(g.rep_vertex_self),
                b(g.rep_edge_mate),
                b(g.rep_vertex_mate),
                b(g.nus3),
                b(g.nus3c),
                g.constructed.map_or("", b),
            ));
        }
        out
    }
}
