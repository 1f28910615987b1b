//! JSON formats for triangulations and snake graphs.
//!
//! Triangulation:
//!
//! ```json
//! {"n": 5, "diagonals": [[0,2],[0,3]],
//!  "edge_labels": {"0,2": "x1"}, "triangle_labels": {"0,1,2": "th1"}}
//! ```
//!
//! Label maps are optional; missing entries keep the default `x{id}` and
//! `th{id}` names, with ids assigned to edges and triangles in
//! lexicographic order of their vertex lists.
//!
//! Snake graph:
//!
//! ```json
//! {"tiles": [{"index":1,"n":1,"s":3,"e":2,"w":4,"diagonal":5,"corner_bl":1,"corner_tr":2}],
//!  "word": "", "names": {"even": {}, "odd": {}}, "order": [1, 2]}
//! ```
//!
//! `order` lists odd generators from largest to smallest; it defaults to
//! the corner labels in order of first appearance.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use superlambda::polygon::{Arc, Triangulation};
use superlambda::snake::{Letter, SnakeGraph, Tile};
use superlambda::superalg::{NameTable, PositiveOrder};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
    #[serde(default)]
    pub edge_labels: BTreeMap<String, String>,
    #[serde(default)]
    pub triangle_labels: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub tiles: Vec<Tile>,
    pub word: String,
    #[serde(default)]
    pub names: NameTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<u32>>,
}

/// Inline JSON if it starts with `{`, standard input for `-`, else a path.
pub fn read_source(src: &str) -> Result<String, CliError> {
    if src.trim_start().starts_with('{') {
        return Ok(src.to_string());
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| CliError::Parse(format!("{src}: {e}")))
}

fn parse_list(s: &str, len: usize) -> Result<Vec<usize>, CliError> {
    let v: Vec<usize> = s
        .split([',', '-', ' '])
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse::<usize>().map_err(|e| CliError::Parse(format!("{s}: {e}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != len {
        return Err(CliError::Parse(format!("expected {len} vertices in {s:?}")));
    }
    Ok(v)
}

/// `"i,j"`.
pub fn parse_arc(s: &str) -> Result<Arc, CliError> {
    let v = parse_list(s, 2)?;
    Ok(Arc::new(v[0], v[1]))
}

pub fn parse_triangulation(text: &str, seed_labels: bool) -> Result<Triangulation, CliError> {
    let j: TriangulationJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    triangulation_from_json(&j, seed_labels)
}

pub fn triangulation_from_json(j: &TriangulationJson, seed_labels: bool) -> Result<Triangulation, CliError> {
    let diags: Vec<(usize, usize)> = j.diagonals.iter().map(|d| (d[0], d[1])).collect();
    let mut t = Triangulation::new(j.n, &diags).map_err(|e| CliError::Parse(e.to_string()))?;
    if seed_labels {
        return Ok(t);
    }
    let bad = |e: superlambda::polygon::PolygonError| CliError::Parse(e.to_string());
    let edges: Vec<((usize, usize), &String)> = j
        .edge_labels
        .iter()
        .map(|(k, v)| parse_list(k, 2).map(|p| ((p[0], p[1]), v)))
        .collect::<Result<_, _>>()?;
    let faces: Vec<([usize; 3], &String)> = j
        .triangle_labels
        .iter()
        .map(|(k, v)| parse_list(k, 3).map(|p| ([p[0], p[1], p[2]], v)))
        .collect::<Result<_, _>>()?;
    // Two passes so that swapping default names never collides.
    for (i, (e, _)) in edges.iter().enumerate() {
        t.set_edge_name(*e, &format!("\u{1}e{i}")).map_err(bad)?;
    }
    for (i, (f, _)) in faces.iter().enumerate() {
        t.set_face_name(*f, &format!("\u{1}f{i}")).map_err(bad)?;
    }
    for (e, name) in &edges {
        t.set_edge_name(*e, name).map_err(bad)?;
    }
    for (f, name) in &faces {
        t.set_face_name(*f, name).map_err(bad)?;
    }
    Ok(t)
}

pub fn triangulation_to_json(t: &Triangulation) -> TriangulationJson {
    let edge_labels = t
        .all_edges()
        .into_iter()
        .map(|e| (format!("{},{}", e.0, e.1), t.names.even.get(&t.edge_label(e)).cloned().unwrap_or_default()))
        .collect();
    let triangle_labels = t
        .faces()
        .into_iter()
        .map(|f| (format!("{},{},{}", f[0], f[1], f[2]), t.names.odd.get(&t.face_label(f)).cloned().unwrap_or_default()))
        .collect();
    TriangulationJson { n: t.n(), diagonals: t.diagonals().map(|d| [d.0, d.1]).collect(), edge_labels, triangle_labels }
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>, CliError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'R' | 'r' => Ok(Letter::R),
            'U' | 'u' => Ok(Letter::U),
            o => Err(CliError::Parse(format!("bad letter {o:?} in word"))),
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<(SnakeGraph, NameTable, PositiveOrder), CliError> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let g = SnakeGraph::new(j.tiles, parse_word(&j.word)?).map_err(|e| CliError::Parse(e.to_string()))?;
    let order = match j.order {
        Some(o) => PositiveOrder::from_sequence(o),
        None => default_graph_order(&g),
    };
    Ok((g, j.names, order))
}

/// Corner labels in order of first appearance along the graph.
pub fn default_graph_order(g: &SnakeGraph) -> PositiveOrder {
    let mut seq = Vec::new();
    for t in &g.tiles {
        for c in [t.corner_bl, t.corner_tr] {
            if !seq.contains(&c) {
                seq.push(c);
            }
        }
    }
    PositiveOrder::from_sequence(seq)
}

pub fn graph_to_json(g: &SnakeGraph, names: &NameTable, order: Option<&PositiveOrder>) -> GraphJson {
    GraphJson {
        tiles: g.tiles.clone(),
        word: g.word_string(),
        names: names.clone(),
        order: order.map(|o| o.sequence()),
    }
}
