//! Command-line surface for the `superlambda` library.

pub mod io;
pub mod render;
pub mod verify;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use superlambda::dimers::{self, DoubleDimerCover};
use superlambda::polygon::{self, Arc, Triangulation};
use superlambda::snake::{self, SnakeGraph};
use superlambda::superalg::{NameTable, PositiveOrder};
use superlambda::{lattice, oracle, superfib, tpaths, Poly, Term};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid arc: {0}")]
    Arc(String),
    #[error("{0}")]
    Shape(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Arc(_) => 3,
            CliError::Shape(_) => 4,
            CliError::Verify(_) => 5,
            CliError::Other(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "superlambda", version, about = "Super λ-length expansions of arcs in triangulated polygons")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Ignore label names in the input and use the defaults x1.., th1..
    #[arg(long, global = true)]
    pub seed_labels: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct TriArc {
    /// Triangulation JSON: a path, `-` for stdin, or inline JSON.
    #[arg(long)]
    pub tri: String,
    /// Arc as `i,j`.
    #[arg(long)]
    pub arc: String,
}

#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Triangulation JSON: a path, `-` for stdin, or inline JSON.
    #[arg(long, conflicts_with = "graph")]
    pub tri: Option<String>,
    /// Arc as `i,j`.
    #[arg(long, requires = "tri")]
    pub arc: Option<String>,
    /// Snake graph JSON instead of a triangulation and arc.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dimer,
    Tpath,
    Lattice,
    Flip,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Svg,
    Tikz,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laurent expansion of the λ-length of an arc.
    Expand {
        #[command(flatten)]
        input: TriArc,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Cleared μ-invariant of the triangle created by flipping the arc in.
    Mu {
        #[command(flatten)]
        input: TriArc,
    },
    /// Snake graph of an arc.
    Snake {
        #[command(flatten)]
        input: TriArc,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Dual snake graph.
    Dual {
        #[command(flatten)]
        input: GraphSource,
    },
    /// Double dimer covers with weights.
    Dimers {
        #[arg(value_parser = ["list"], hide = true)]
        action: Option<String>,
        #[command(flatten)]
        input: GraphSource,
        /// List single dimer covers instead.
        #[arg(long)]
        single: bool,
    },
    /// T-paths of an arc with weights.
    Tpaths {
        #[arg(value_parser = ["list"], hide = true)]
        action: Option<String>,
        #[command(flatten)]
        input: TriArc,
        /// Show the untwisted T-paths.
        #[arg(long)]
        untwisted: bool,
    },
    /// Tile labelings and their lattice.
    Lattice {
        #[command(flatten)]
        input: GraphSource,
        /// Check the isomorphism with order ideals.
        #[arg(long)]
        ideals: bool,
        /// Emit the Hasse diagram in DOT.
        #[arg(long)]
        hasse_dot: bool,
    },
    /// Tile poset, its product with a 2-chain, and order ideal count.
    Poset {
        #[command(flatten)]
        input: GraphSource,
    },
    /// Cross-check all routes on one arc or on all small polygons.
    Verify {
        /// Largest polygon in the sweep, 4 to 10.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Check one triangulation instead of the sweep.
        #[arg(long, requires = "arc")]
        tri: Option<String>,
        /// Arc as `i,j`, with `--tri`.
        #[arg(long)]
        arc: Option<String>,
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
    /// Super Fibonacci tables and recurrence checks.
    Fib {
        /// Last index of the table.
        #[arg(long, default_value_t = 10)]
        upto: usize,
        /// Compare the weighted row with flips seeded by `a, b`.
        #[arg(long)]
        symbolic: bool,
        /// Emit the table as CSV.
        #[arg(long)]
        csv: bool,
        /// Exploratory even-index values.
        #[arg(long)]
        w: bool,
    },
    /// State after each flip towards the arc.
    FlipTrace {
        #[command(flatten)]
        input: TriArc,
    },
    /// Draw a snake graph, optionally with one of its double dimer covers.
    Render {
        #[command(flatten)]
        input: GraphSource,
        #[arg(long, value_enum, default_value_t = Figure::Svg)]
        style: Figure,
        /// Same as `--style svg`.
        #[arg(long, conflicts_with = "tikz")]
        svg: bool,
        /// Same as `--style tikz`.
        #[arg(long)]
        tikz: bool,
        /// Index into the sorted list of double dimer covers.
        #[arg(long, conflicts_with = "cover_json")]
        cover: Option<usize>,
        /// A cover as JSON: `{"multiplicity": {"edge": 1 or 2}}`.
        #[arg(long)]
        cover_json: Option<String>,
        /// Draw the dual graph.
        #[arg(long)]
        dual: bool,
    },
}

pub struct Loaded {
    pub t: Triangulation,
    pub arc: Arc,
}

pub fn load_tri_arc(tri: &str, arc: &str, seed: bool) -> Result<Loaded, CliError> {
    let t = io::parse_triangulation(&io::read_source(tri)?, seed)?;
    let g = io::parse_arc(arc)?;
    t.check_arc(g).map_err(|e| CliError::Arc(e.to_string()))?;
    Ok(Loaded { t, arc: g })
}

struct GraphInput {
    g: SnakeGraph,
    names: NameTable,
    order: PositiveOrder,
}

fn load_graph(src: &GraphSource, seed: bool) -> Result<GraphInput, CliError> {
    if let Some(graph) = &src.graph {
        let (g, names, order) = io::parse_graph(&io::read_source(graph)?)?;
        return Ok(GraphInput { g, names, order });
    }
    let (Some(tri), Some(arc)) = (&src.tri, &src.arc) else {
        return Err(CliError::Parse("give --graph or both --tri and --arc".into()));
    };
    let l = load_tri_arc(tri, arc, seed)?;
    if l.t.is_edge(l.arc.edge()) {
        return Err(CliError::Arc("the arc is an edge of the triangulation and has no snake graph".into()));
    }
    let (_, _, g, order) = dimers::setup(&l.t, l.arc).map_err(|e| CliError::Arc(e.to_string()))?;
    Ok(GraphInput { g, names: l.t.names.clone(), order })
}

fn poly_out(p: &Poly, names: &NameTable, format: Format) -> Value {
    match format {
        Format::Text => Value::String(p.to_text(names)),
        Format::Json => p.to_json(names),
    }
}

fn term_text(t: &Term, names: &NameTable) -> String {
    t.to_poly().to_text(names)
}

fn render_value(v: &Value, format: Format, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
        Format::Text => text,
    }
}

fn cover_json(m: &DoubleDimerCover) -> Value {
    Value::Object(m.multiplicity.iter().map(|(e, k)| (e.to_string(), json!(k))).collect())
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let f = cli.format;
    let seed = cli.seed_labels;
    match &cli.command {
        Command::Expand { input, method } => {
            let l = load_tri_arc(&input.tri, &input.arc, seed)?;
            let routes: Vec<&str> = match method {
                Method::Dimer => vec!["dimer"],
                Method::Tpath => vec!["tpath"],
                Method::Lattice => vec!["lattice"],
                Method::Flip => vec!["flip"],
                Method::All => verify::ROUTES.to_vec(),
            };
            let mut values = BTreeMap::new();
            let mut text = String::new();
            for r in &routes {
                let p = verify::expansion(&l.t, l.arc, r).map_err(CliError::Other)?;
                text.push_str(&format!("{r}: {}\n", p.to_text(&l.t.names)));
                values.insert(r.to_string(), p);
            }
            let agree = values.values().collect::<Vec<_>>().windows(2).all(|w| w[0] == w[1]);
            if routes.len() > 1 {
                text.push_str(&format!("agree: {agree}\n"));
            }
            let v = json!({
                "arc": [l.arc.from, l.arc.to],
                "expansions": values.iter().map(|(k, p)| (k.clone(), p.to_json(&l.t.names))).collect::<serde_json::Map<_, _>>(),
                "agree": agree,
            });
            let out = render_value(&v, f, text);
            if !agree {
                return Err(CliError::Verify(format!("routes disagree\n{out}")));
            }
            Ok(out)
        }
        Command::Mu { input } => {
            let l = load_tri_arc(&input.tri, &input.arc, seed)?;
            let shape = dimers::mu_shape(&l.t, l.arc).map_err(|e| CliError::Shape(e.to_string()))?;
            let formula: Poly = dimers::mu_expansion(&l.t, l.arc).map_err(|e| CliError::Shape(e.to_string()))?;
            let flips: Poly = oracle::cleared_mu_via_flips(&l.t, l.arc).map_err(|e| CliError::Other(e.to_string()))?;
            let agree = formula == flips;
            let names = &l.t.names;
            let text = format!(
                "face (i,j,k) = {:?}, fan center {}\nformula: {}\nflips:   {}\nagree: {agree}\n",
                shape.face,
                if shape.left { "left" } else { "right" },
                formula.to_text(names),
                flips.to_text(names)
            );
            let v = json!({"shape": shape, "formula": formula.to_json(names), "flips": flips.to_json(names), "agree": agree});
            let out = render_value(&v, f, text);
            if !agree {
                return Err(CliError::Verify(out));
            }
            Ok(out)
        }
        Command::Snake { input, json } => {
            let f = if *json { Format::Json } else { f };
            let src = GraphSource { tri: Some(input.tri.clone()), arc: Some(input.arc.clone()), graph: None };
            let gi = load_graph(&src, seed)?;
            Ok(graph_output(&gi.g, &gi.names, Some(&gi.order), f))
        }
        Command::Dual { input } => {
            let gi = load_graph(input, seed)?;
            Ok(graph_output(&snake::dual(&gi.g), &gi.names, Some(&gi.order), f))
        }
        Command::Dimers { input, single, .. } => {
            let gi = load_graph(input, seed)?;
            let l = gi.g.layout();
            let mut rows = Vec::new();
            let mut text = format!("word {}\n", gi.g.word_string());
            if *single {
                for (i, m) in dimers::enumerate_dimers(&gi.g).iter().enumerate() {
                    let d = DoubleDimerCover { multiplicity: m.edges.iter().map(|e| (*e, 2)).collect() };
                    let w: Term = dimers::weight(&d, &gi.g, &gi.order);
                    text.push_str(&format!("{i}: edges {:?}  weight {}\n", m.edges, term_text(&w, &gi.names)));
                    rows.push(json!({"edges": m.edges, "weight": term_text(&w, &gi.names)}));
                }
            } else {
                for (i, m) in dimers::enumerate_double_dimers(&gi.g).iter().enumerate() {
                    let w: Term = dimers::weight(m, &gi.g, &gi.order);
                    let cycles: Vec<(usize, usize)> = m.cycles(&l).iter().map(|c| (c.first_tile, c.last_tile)).collect();
                    text.push_str(&format!(
                        "{i}: {:?}  cycles {:?}  weight {}\n",
                        m.multiplicity,
                        cycles,
                        term_text(&w, &gi.names)
                    ));
                    rows.push(json!({"multiplicity": cover_json(m), "cycles": cycles, "weight": term_text(&w, &gi.names)}));
                }
            }
            text.push_str(&format!("total {}\n", rows.len()));
            Ok(render_value(&json!({"word": gi.g.word_string(), "covers": rows}), f, text))
        }
        Command::Tpaths { input, untwisted, .. } => {
            let l = load_tri_arc(&input.tri, &input.arc, seed)?;
            let aux = tpaths::build_aux(&l.t, l.arc).map_err(|e| CliError::Arc(e.to_string()))?;
            let paths = tpaths::enumerate_tpaths(&l.t, l.arc).map_err(|e| CliError::Arc(e.to_string()))?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for p in &paths {
                let p = if *untwisted { tpaths::to_untwisted(p, &aux) } else { p.clone() };
                let w: Term = tpaths::twt(&p, &aux);
                let ws = term_text(&w, &l.t.names);
                text.push_str(&format!("{}  [{}]  {}\n", p.describe(), if p.is_ordinary() { "ordinary" } else { "super" }, ws));
                rows.push(json!({"vertices": p.vertices, "steps": p.steps, "weight": ws}));
            }
            text.push_str(&format!("total {} ({} super)\n", paths.len(), paths.iter().filter(|p| !p.is_ordinary()).count()));
            Ok(render_value(&json!({"paths": rows}), f, text))
        }
        Command::Lattice { input, ideals, hasse_dot } => {
            let gi = load_graph(input, seed)?;
            let labs = lattice::labelings(&gi.g);
            let mut text = String::new();
            for a in &labs {
                text.push_str(&format!("{}\n", a.iter().map(|x| x.to_string()).collect::<String>()));
            }
            text.push_str(&format!("labelings {}\n", labs.len()));
            let mut v = json!({"labelings": labs});
            if *ideals {
                let w = lattice::iso_check(&gi.g).map_err(|e| CliError::Verify(e.to_string()))?;
                text.push_str(&format!("order ideals {} cover relations {} isomorphic true\n", w.elements, w.cover_relations));
                v["ideals"] = json!(w.map);
            }
            if *hasse_dot {
                let dot = lattice::hasse_dot(&gi.g);
                text.push_str(&dot);
                v["hasse_dot"] = json!(dot);
            }
            Ok(render_value(&v, f, text))
        }
        Command::Poset { input } => {
            let gi = load_graph(input, seed)?;
            let p = lattice::poset(&gi.g);
            let pp = lattice::product_poset(&p);
            let count = lattice::order_ideals(&pp).len();
            let text = format!(
                "tiles {}\ncovers (lower<upper, 1-based) {:?}\nproduct covers {:?}\norder ideals {count}\n",
                p.size,
                p.covers.iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>(),
                pp.covers
            );
            Ok(render_value(&json!({"poset": p, "product": pp, "order_ideals": count}), f, text))
        }
        Command::Verify { nmax, tri, arc, inject_sign_error } => {
            if let (Some(tri), Some(arc)) = (tri, arc) {
                let l = load_tri_arc(tri, arc, seed)?;
                let r = verify::verify_arc(&l.t, l.arc, *inject_sign_error);
                let text = format!(
                    "routes agree {}\nidentities {}/{}\nbijection {}\nisomorphism {}\n{}",
                    r.routes_agree,
                    r.identities.iter().filter(|c| c.holds).count(),
                    r.identities.len(),
                    r.bijection,
                    r.isomorphism,
                    r.errors.iter().map(|e| format!("error: {e}\n")).collect::<String>()
                );
                let out = render_value(&serde_json::to_value(&r).expect("report serializes"), f, text);
                return if r.passed() { Ok(out) } else { Err(CliError::Verify(out)) };
            }
            if !(4..=10).contains(nmax) {
                return Err(CliError::Parse("--nmax must lie in 4..=10".into()));
            }
            let r = verify::verify_universe(*nmax, *inject_sign_error);
            let mut text = String::new();
            for (n, (tris, arcs)) in &r.counts {
                text.push_str(&format!("n={n}: {tris} triangulations, {arcs} arcs\n"));
            }
            text.push_str(&format!(
                "total {} triangulations, {} arcs, {} identity checks, {} failures\n",
                r.triangulations,
                r.arcs,
                r.identity_checks,
                r.failures.len()
            ));
            for fl in r.failures.iter().take(10) {
                text.push_str(&format!("FAIL n={} diagonals {:?} arc {:?}\n", fl.n, fl.diagonals, fl.arc));
            }
            let out = render_value(&serde_json::to_value(&r).expect("report serializes"), f, text);
            if r.passed() {
                Ok(out)
            } else {
                Err(CliError::Verify(out))
            }
        }
        Command::Fib { upto, symbolic, csv, w } => fib(*upto, *symbolic, *csv, *w, f),
        Command::FlipTrace { input } => {
            let l = load_tri_arc(&input.tri, &input.arc, seed)?;
            let seq = polygon::crossing(&l.t, l.arc).map_err(|e| CliError::Arc(e.to_string()))?.diagonals;
            let (_, trace) = oracle::run_sequence::<superlambda::Rational>(&l.t, l.arc, &seq).map_err(|e| CliError::Other(e.to_string()))?;
            let names = &l.t.names;
            let mut text = String::new();
            let mut steps = Vec::new();
            for (k, w) in trace.windows(2).enumerate() {
                let new: Vec<_> = w[1].diagonals.difference(&w[0].diagonals).copied().collect();
                let new_faces: Vec<_> = w[1].faces().into_iter().filter(|x| !w[0].nu.contains_key(x)).collect();
                text.push_str(&format!("flip {}: {:?} -> {:?}\n", k + 1, seq[k], new[0]));
                let lam = w[1].lambda[&new[0]].reorder(&w[1].order);
                text.push_str(&format!("  lambda = {}\n", lam.to_text(names)));
                let mut nus = serde_json::Map::new();
                for fc in &new_faces {
                    let nu = w[1].nu[fc].reorder(&w[1].order);
                    text.push_str(&format!("  nu{:?} = {}\n", fc, nu.to_text(names)));
                    nus.insert(format!("{},{},{}", fc[0], fc[1], fc[2]), poly_out(&nu, names, f));
                }
                steps.push(json!({"flipped": seq[k], "new": new[0], "lambda": poly_out(&lam, names, f), "nu": nus}));
            }
            Ok(render_value(&json!({"steps": steps}), f, text))
        }
        Command::Render { input, style, svg, tikz, cover, cover_json, dual } => {
            let style = if *tikz {
                Figure::Tikz
            } else if *svg {
                Figure::Svg
            } else {
                *style
            };
            let gi = load_graph(input, seed)?;
            let g = if *dual { snake::dual(&gi.g) } else { gi.g.clone() };
            let chosen = match cover {
                Some(k) => Some(
                    dimers::enumerate_double_dimers(&g)
                        .into_iter()
                        .nth(*k)
                        .ok_or_else(|| CliError::Parse(format!("cover index {k} out of range")))?,
                ),
                None => match cover_json {
                    Some(src) => {
                        let m: DoubleDimerCover =
                            serde_json::from_str(&io::read_source(src)?).map_err(|e| CliError::Parse(e.to_string()))?;
                        if !m.is_valid(&g.layout()) {
                            return Err(CliError::Parse("not a double dimer cover of this graph".into()));
                        }
                        Some(m)
                    }
                    None => None,
                },
            };
            Ok(match style {
                Figure::Svg => render::svg(&g, chosen.as_ref(), &gi.names),
                Figure::Tikz => render::tikz(&g, chosen.as_ref(), &gi.names),
            })
        }
    }
}

fn graph_output(g: &SnakeGraph, names: &NameTable, order: Option<&PositiveOrder>, f: Format) -> String {
    let j = io::graph_to_json(g, names, order);
    let mut text = format!("word {}\n", g.word_string());
    for t in &g.tiles {
        let n = |id: u32| superlambda::superalg::GenNames::even_name(names, id);
        let o = |id: u32| superlambda::superalg::GenNames::odd_name(names, id);
        text.push_str(&format!(
            "tile {}: N={} E={} S={} W={} diagonal={} corners {}/{}{}\n",
            t.index,
            n(t.n),
            n(t.e),
            n(t.s),
            n(t.w),
            n(t.diagonal),
            o(t.corner_bl),
            o(t.corner_tr),
            if t.orientation_flipped { " (reversed)" } else { "" }
        ));
    }
    render_value(&serde_json::to_value(&j).expect("graph serializes"), f, text)
}

fn fib(upto: usize, symbolic: bool, csv: bool, w: bool, f: Format) -> Result<String, CliError> {
    if upto < 1 {
        return Err(CliError::Parse("--upto must be positive".into()));
    }
    let t = superfib::FibTables::new(upto);
    let report = superfib::recurrence_checks(upto.max(5));
    let mut text = if csv {
        t.csv()
    } else {
        let mut s = String::from("m  x_m  y_m  g_m  p_m\n");
        for m in 1..=upto {
            s.push_str(&format!("{m}  {}  {}  {}  {}\n", t.x[m], t.y[m], t.g[m], t.p[m]));
        }
        s
    };
    let mut v = json!({"tables": t, "recurrences": report});
    if !csv {
        text.push_str(&format!(
            "recurrence checks: {}/{} hold\n",
            report.checks.iter().filter(|c| c.holds).count(),
            report.checks.len()
        ));
        for c in report.failures() {
            text.push_str(&format!("FAIL {} at {}\n", c.name, c.index));
        }
    }
    if symbolic {
        let names = NameTable {
            even: BTreeMap::from([(superfib::A, "a".to_string()), (superfib::B, "b".to_string())]),
            odd: BTreeMap::from([(superfib::SIGMA, "sigma".to_string()), (superfib::THETA, "theta".to_string())]),
        };
        let top = upto.min(13);
        let mut sym = Vec::new();
        for m in 1..=top {
            let p: Poly = superfib::partition_function_symbolic(m);
            if !csv {
                text.push_str(&format!("p_{m}(a,b) = {}\n", p.to_text(&names)));
            }
            sym.push(p.to_json(&names));
        }
        v["symbolic"] = json!(sym);
    }
    if w {
        text.push_str(superfib::CONJECTURE_BANNER);
        text.push('\n');
        let mut ws = Vec::new();
        for n in 3.. {
            let Some(x) = t.w(n) else { break };
            text.push_str(&format!("w_{n} = {x}\n"));
            ws.push(json!({"n": n, "w": x}));
        }
        v["conjecture"] = json!(superfib::CONJECTURE_BANNER);
        v["w"] = json!(ws);
    }
    Ok(render_value(&v, f, text))
}
