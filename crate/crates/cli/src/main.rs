use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use cospectral::compose::{edge_composition, vertex_composition};
use cospectral::removal::Anchor;
use cospectral::survey::{
    generate_cubic, generate_cubic_unbounded, ingest_catalog, CatalogAnalysis, Semantics, Sources, Survey,
    SurveyOptions, Table,
};
use cospectral::{Bijection, Edge, Error, Graph, VertexSet};

#[derive(Parser, Debug)]
#[command(
    name = "cospectral",
    version,
    about = "Cospectral regular graphs from replaceable vertices and edges"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Mates must be non-isomorphic; constructions must yield two non-isomorphic outputs (default).
    #[arg(long, global = true, conflicts_with = "loose_semantics")]
    strict_semantics: bool,
    /// Within-graph anchors count as mates; any composition output counts.
    #[arg(long, global = true)]
    loose_semantics: bool,
    /// Search every anchor instead of orbit representatives.
    #[arg(long = "no-symmetry-reduction", global = true, action = ArgAction::SetFalse)]
    symmetry_reduction: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory holding `cubic_<N>.g6` catalogs; orders above 14 must come from here.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Vertex,
    Edge,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every connected cubic graph of order N, one canonical graph6 per line.
    Generate {
        n: usize,
        /// Allow orders above 14 (order 16 takes minutes, 18 much longer).
        #[arg(long)]
        unbounded: bool,
    },
    /// Validate a graph6 catalog and print it in canonical form.
    Ingest {
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Cospectral classes of a catalog.
    Partition {
        #[arg(long)]
        order: usize,
        /// Catalog file (default: the corpus directory or generation).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// One row of a census table.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long)]
        order: usize,
        /// Also write the per-graph flags as CSV.
        #[arg(long)]
        flags: Option<PathBuf>,
    },
    /// Compose two graphs at given anchors.
    Compose {
        #[arg(long, value_enum)]
        kind: Kind,
        /// graph6 of the left graph.
        #[arg(long)]
        left: String,
        /// A vertex `u`, or an edge `a-b`.
        #[arg(long)]
        left_anchor: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        right_anchor: String,
        /// Stitch map `a:b,c:d`; every stitch map when omitted.
        #[arg(long)]
        stitch: Option<String>,
        /// Provenance CSV (default: `<out>.provenance.csv` when `--out` is set).
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// NUS3 graphs of order N obtainable by composition, with witnesses.
    Constructed {
        #[arg(long)]
        order: usize,
    },
    /// |constructed| / |NUS3| at order N.
    Ratio {
        #[arg(long)]
        order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match cli.global.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k as usize).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

fn options(g: &Global) -> SurveyOptions {
    let semantics = if g.loose_semantics {
        Semantics::Loose
    } else {
        Semantics::Strict
    };
    SurveyOptions {
        mate_semantics: semantics,
        construction_semantics: semantics,
        symmetry_reduction: g.symmetry_reduction,
    }
}

fn sources(g: &Global) -> Sources {
    match &g.corpus {
        Some(dir) => Sources::default().with_dir(dir.clone()),
        None => Sources::default(),
    }
}

fn emit(g: &Global, text: &str) -> Result<(), Error> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Generate { n, unbounded } => {
            let catalog = if *unbounded {
                generate_cubic_unbounded(*n)?
            } else {
                generate_cubic(*n)?
            };
            emit(g, &catalog.to_graph6_lines())
        }
        Command::Ingest { file, order } => emit(g, &ingest_catalog(file, *order)?.to_graph6_lines()),
        Command::Partition { order, input } => {
            let catalog = match input {
                Some(path) => ingest_catalog(path, *order)?,
                None => sources(g).load(*order)?,
            };
            emit(g, &render_partition(&CatalogAnalysis::new(catalog), g.format))
        }
        Command::Census { table, order, flags } => {
            let table = Table::from_number(*table).expect("range-checked by the parser");
            let mut survey = Survey::new(sources(g), options(g));
            let report = survey.report(*order, table.needs_construction())?;
            if let Some(path) = flags {
                fs::write(path, report.flags_csv())?;
            }
            let body = match g.format {
                Format::Csv => report.to_csv(table),
                Format::Json => report.to_json(table),
                Format::Text => report.to_text(table),
            };
            emit(g, &body.expect("construction ran when the table needs it"))
        }
        Command::Compose {
            kind,
            left,
            left_anchor,
            right,
            right_anchor,
            stitch,
            provenance,
        } => compose(
            g,
            *kind,
            left,
            left_anchor,
            right,
            right_anchor,
            stitch.as_deref(),
            provenance.as_ref(),
        ),
        Command::Constructed { order } => {
            let mut survey = Survey::new(sources(g), options(g));
            let set = survey.constructed(*order)?;
            let a = survey.analysis(*order).expect("loaded by constructed");
            emit(g, &render_constructed(a, &set, g.format))
        }
        Command::Ratio { order } => {
            let mut survey = Survey::new(sources(g), options(g));
            let report = survey.report(*order, true)?;
            let r = report.conjecture_ratio().expect("construction ran");
            let body = match g.format {
                Format::Csv => format!(
                    "order,constructed,nus3,ratio\n{},{},{},{}\n",
                    order,
                    r.num,
                    r.den,
                    r.decimal()
                ),
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"order": order, "constructed": r.num, "nus3": r.den, "ratio": r.decimal()})
                ),
                Format::Text => format!("{} = {}\n", r, r.decimal()),
            };
            emit(g, &body)
        }
    }
}

fn render_partition(a: &CatalogAnalysis, format: Format) -> String {
    let codes = a.catalog.codes();
    let rows: Vec<(usize, usize, String, String)> = a
        .classes
        .iter()
        .enumerate()
        .map(|(c, class)| {
            let members: Vec<&str> = class.members.iter().map(|&i| codes[i].as_str()).collect();
            (c, class.members.len(), class.fingerprint.to_text(), members.join(" "))
        })
        .collect();
    match format {
        Format::Csv => {
            let mut out = String::from("class,size,charpoly,members\n");
            for (c, size, poly, members) in rows {
                out.push_str(&format!("{},{},{},{}\n", c, size, poly, members));
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = rows
                .into_iter()
                .map(|(c, size, poly, members)| {
                    serde_json::json!({"class": c, "size": size, "charpoly": poly, "members": members.split(' ').collect::<Vec<_>>()})
                })
                .collect();
            serde_json::to_string_pretty(&items).expect("serializes") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for (c, size, _, members) in rows {
                out.push_str(&format!("{:>4}  {:>2}  {}\n", c, size, members));
            }
            out
        }
    }
}

fn render_constructed(a: &CatalogAnalysis, set: &cospectral::survey::ConstructedSet, format: Format) -> String {
    const COLUMNS: &str = "index,graph6,kind,left_order,left,right,left_anchor,right_anchor,certificate,h_order,h_index,h_anchor,seed,from_right,partner";
    let codes = a.catalog.codes();
    let rows: Vec<Vec<String>> = set
        .members
        .iter()
        .map(|(&i, w)| {
            vec![
                i.to_string(),
                codes[i].clone(),
                w.kind.to_string(),
                w.left_order.to_string(),
                w.left.to_string(),
                w.right.to_string(),
                w.cert_left.to_string(),
                w.cert_right.to_string(),
                w.cert_map.to_string(),
                w.h_order.to_string(),
                w.h_index.to_string(),
                w.h_anchor.to_string(),
                w.seed.to_string(),
                w.from_right.to_string(),
                w.partner.clone(),
            ]
        })
        .collect();
    match format {
        Format::Csv => {
            let mut out = format!("{}\n", COLUMNS);
            for r in rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .into_iter()
                .map(|r| {
                    COLUMNS
                        .split(',')
                        .zip(r)
                        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                        .collect()
                })
                .collect();
            serde_json::to_string_pretty(&items).expect("serializes") + "\n"
        }
        Format::Text => {
            let mut out = format!("{} of {} NUS3 graphs constructed\n", set.members.len(), a.nus3().len());
            for r in rows {
                out.push_str(&format!(
                    "{:>5}  {}  {} via order-{} #{}/#{}\n",
                    r[0], r[1], r[2], r[3], r[4], r[5]
                ));
            }
            out
        }
    }
}

fn parse_graph(code: &str) -> Result<Graph, Error> {
    Graph::from_graph6(code.trim())
}

fn parse_anchor(text: &str, kind: Kind) -> Result<Anchor, Error> {
    let bad = || Error::Validation(format!("bad anchor {:?}", text));
    match kind {
        Kind::Vertex => text.trim().parse().map(Anchor::Vertex).map_err(|_| bad()),
        Kind::Edge => {
            let (a, b) = text.split_once('-').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            Ok(Anchor::Edge(Edge::new(a, b)?))
        }
    }
}

fn stitch_set(g: &Graph, anchor: Anchor) -> Result<VertexSet, Error> {
    match anchor {
        Anchor::Vertex(u) => g.neighborhood(u),
        Anchor::Edge(e) => {
            g.check_edge(e)?;
            Ok(VertexSet::from(e.endpoints()))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn compose(
    g: &Global,
    kind: Kind,
    left: &str,
    left_anchor: &str,
    right: &str,
    right_anchor: &str,
    stitch: Option<&str>,
    provenance: Option<&PathBuf>,
) -> Result<(), Error> {
    let (gl, gr) = (parse_graph(left)?, parse_graph(right)?);
    let (al, ar) = (parse_anchor(left_anchor, kind)?, parse_anchor(right_anchor, kind)?);
    let (s, t) = (stitch_set(&gl, al)?, stitch_set(&gr, ar)?);
    let maps = match stitch {
        Some(text) => {
            let f: Bijection = text.parse()?;
            f.check_between(&s, &t)?;
            vec![f]
        }
        None => Bijection::all_between(&s, &t),
    };
    let mut lines = String::new();
    let mut prov = String::from("index,kind,left,left_anchor,right,right_anchor,stitch,graph6\n");
    for (i, f) in maps.iter().enumerate() {
        let out = match (al, ar) {
            (Anchor::Vertex(u), Anchor::Vertex(v)) => vertex_composition(&gl, u, &gr, v, f)?,
            (Anchor::Edge(e1), Anchor::Edge(e2)) => edge_composition(&gl, e1, &gr, e2, f)?,
            _ => unreachable!("anchors parsed with one kind"),
        };
        let code = out.to_graph6()?;
        lines.push_str(&code);
        lines.push('\n');
        prov.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            i,
            match kind {
                Kind::Vertex => "vertex",
                Kind::Edge => "edge",
            },
            left.trim(),
            al,
            right.trim(),
            ar,
            f,
            code
        ));
    }
    emit(g, &lines)?;
    let sidecar = provenance.cloned().or_else(|| {
        g.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".provenance.csv");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar {
        fs::write(path, prov)?;
    }
    Ok(())
}
