//! Text graph files, attack scripts and JSON run reports.
//!
//! Graph file:
//!
//! ```text
//! c optional comment lines
//! p ed <n> <m>
//! l <id> <name>
//! e <u> <v>
//! ```
//!
//! Ids are 0-based. Files written by [`emit_graph_file`] are canonical:
//! comments, header, labels by id, then edges sorted with `u < v`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::{Coord, GridAttacker};
use crate::strategy::Attacker;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Comment text without the leading `c `.
    pub comments: Vec<String>,
}

impl GraphFile {
    pub fn new(graph: Graph) -> Self {
        GraphFile {
            graph,
            comments: Vec::new(),
        }
    }
}

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut comments = Vec::new();
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut edges_seen = 0usize;
    let mut last_line = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let tag = toks.next().unwrap();
        match tag {
            "c" => {
                let rest = trimmed[1..].strip_prefix(' ').unwrap_or(&trimmed[1..]);
                comments.push(rest.to_string());
            }
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                let (fmt, n, m) = (toks.next(), toks.next(), toks.next());
                if fmt != Some("ed") || toks.next().is_some() {
                    return Err(parse_err(line, "malformed header, expected `p ed <n> <m>`"));
                }
                let n = parse_id(n, line, "vertex count in header")?;
                declared_m = parse_id(m, line, "edge count in header")?;
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before header"))?;
                let u = parse_id(toks.next(), line, "edge endpoint")?;
                let v = parse_id(toks.next(), line, "edge endpoint")?;
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after edge"));
                }
                g.add_edge(u, v).map_err(|e| match e {
                    Error::VertexOutOfRange { vertex, n } => {
                        parse_err(line, format!("vertex id {vertex} out of range (n = {n})"))
                    }
                    Error::SelfLoop(v) => parse_err(line, format!("self-loop at vertex {v}")),
                    Error::DuplicateEdge(a, b) => {
                        parse_err(line, format!("duplicate edge {a}-{b}"))
                    }
                    other => parse_err(line, other.to_string()),
                })?;
                edges_seen += 1;
                if edges_seen > declared_m {
                    return Err(parse_err(
                        line,
                        format!("more edge lines than the {declared_m} declared"),
                    ));
                }
            }
            "l" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "label before header"))?;
                let id = parse_id(toks.next(), line, "label id")?;
                let name: Vec<&str> = toks.collect();
                if name.is_empty() {
                    return Err(parse_err(line, "label without a name"));
                }
                g.set_label(id, name.join(" ")).map_err(|_| {
                    parse_err(line, format!("vertex id {id} out of range (n = {})", g.n()))
                })?;
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let graph =
        graph.ok_or_else(|| parse_err(last_line.max(1), "missing header `p ed <n> <m>`"))?;
    if edges_seen != declared_m {
        return Err(parse_err(
            last_line,
            format!("header declares {declared_m} edges but {edges_seen} were given"),
        ));
    }
    Ok(GraphFile { graph, comments })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_file(text).map(|f| f.graph)
}

pub fn emit_graph_file(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    for c in &file.comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p ed {} {}", g.n(), g.m());
    for v in 0..g.n() {
        if let Some(l) = g.label(v) {
            let _ = writeln!(out, "l {v} {l}");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn emit_graph(g: &Graph) -> String {
    emit_graph_file(&GraphFile::new(g.clone()))
}

/// One attack per line, or a single generator directive. Blank lines and
/// lines starting with `#` are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackScript {
    Vertices(Vec<usize>),
    Coords(Vec<Coord>),
    Random { seed: u64, count: usize },
    Adversarial { depth: u32, count: usize },
}

impl AttackScript {
    /// Attacker for finite graphs and the number of rounds it implies.
    pub fn graph_attacker(&self) -> Result<(Attacker, usize)> {
        match self {
            AttackScript::Vertices(v) => Ok((Attacker::Script(v.clone()), v.len())),
            AttackScript::Random { seed, count } => Ok((Attacker::Random { seed: *seed }, *count)),
            AttackScript::Adversarial { depth, count } => {
                Ok((Attacker::Adversarial { depth: *depth }, *count))
            }
            AttackScript::Coords(_) => {
                Err(parse_err(1, "coordinate script used on a finite graph"))
            }
        }
    }

    pub fn grid_attacker(&self) -> Result<(GridAttacker, usize)> {
        match self {
            AttackScript::Coords(c) => Ok((GridAttacker::Script(c.clone()), c.len())),
            AttackScript::Random { seed, count } => {
                Ok((GridAttacker::Random { seed: *seed }, *count))
            }
            AttackScript::Vertices(v) if v.is_empty() => Ok((GridAttacker::Script(vec![]), 0)),
            AttackScript::Vertices(_) => Err(parse_err(1, "vertex script used on a grid")),
            AttackScript::Adversarial { .. } => Err(parse_err(
                1,
                "adversarial attacker is only available on finite graphs",
            )),
        }
    }
}

pub fn parse_attack_script(text: &str) -> Result<AttackScript> {
    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    let mut directive: Option<(usize, AttackScript)> = None;
    let mut first_explicit: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| parse_err(line, format!("invalid number `{s}`")))
        };
        match toks[0] {
            "random" | "adversarial" => {
                if directive.is_some() || first_explicit.is_some() {
                    return Err(parse_err(
                        line,
                        "a directive must be the only entry of an attack script",
                    ));
                }
                if toks.len() != 3 {
                    return Err(parse_err(
                        line,
                        format!("expected `{} <n> <count>`", toks[0]),
                    ));
                }
                let a = num(toks[1])?;
                let count = num(toks[2])? as usize;
                let script = if toks[0] == "random" {
                    AttackScript::Random { seed: a, count }
                } else {
                    AttackScript::Adversarial {
                        depth: a as u32,
                        count,
                    }
                };
                directive = Some((line, script));
            }
            _ => {
                if directive.is_some() {
                    return Err(parse_err(
                        line,
                        "a directive must be the only entry of an attack script",
                    ));
                }
                first_explicit.get_or_insert(line);
                match toks.as_slice() {
                    [v] => {
                        if !coords.is_empty() {
                            return Err(parse_err(line, "mixed vertex ids and coordinates"));
                        }
                        vertices.push(num(v)? as usize);
                    }
                    [x, y] => {
                        if !vertices.is_empty() {
                            return Err(parse_err(line, "mixed vertex ids and coordinates"));
                        }
                        let p = |s: &str| {
                            s.parse::<i64>()
                                .map_err(|_| parse_err(line, format!("invalid coordinate `{s}`")))
                        };
                        coords.push(Coord::new(p(x)?, p(y)?));
                    }
                    _ => return Err(parse_err(line, "expected a vertex id or an `x y` pair")),
                }
            }
        }
    }
    Ok(match directive {
        Some((_, d)) => d,
        None if !coords.is_empty() => AttackScript::Coords(coords),
        None => AttackScript::Vertices(vertices),
    })
}

/// Checks script vertex ids against a graph.
pub fn check_script_range(script: &AttackScript, n: usize) -> Result<()> {
    if let AttackScript::Vertices(v) = script {
        if let Some((i, &bad)) = v.iter().enumerate().find(|(_, &x)| x >= n) {
            return Err(parse_err(
                i + 1,
                format!("attack on vertex {bad} out of range (n = {n})"),
            ));
        }
    }
    Ok(())
}

pub const REPORT_SCHEMA: u32 = 1;

/// Structured record of one command run. Every map is ordered, so the JSON
/// text is a function of the content. Timings are kept apart and can be
/// left out for comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub numbers: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub transcripts: Vec<Value>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            command: command.into(),
            inputs: BTreeMap::new(),
            numbers: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            transcripts: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn number(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.numbers.insert(key.into(), to_value(value));
        self
    }

    pub fn verdict(&mut self, key: &str, ok: bool) -> &mut Self {
        self.verdicts.insert(key.into(), ok);
        self
    }

    pub fn transcript(&mut self, value: impl Serialize) -> &mut Self {
        self.transcripts.push(to_value(value));
        self
    }

    pub fn timing(&mut self, key: &str, ms: f64) -> &mut Self {
        self.timings_ms.insert(key.into(), ms);
        self
    }

    pub fn all_ok(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON without timings; equal inputs and seeds give equal text.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms.clear();
        copy.to_json()
    }
}

fn to_value(v: impl Serialize) -> Value {
    // maps in serde_json::Value are BTreeMaps without the preserve_order
    // feature, so nested objects come out sorted too
    serde_json::to_value(v).expect("value serializes")
}
