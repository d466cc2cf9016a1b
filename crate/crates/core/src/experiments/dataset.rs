use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::{CommunityAssignment, SuperimposedGraph};

/// How raw, possibly directed, edges become an undirected simple graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestOptions {
    /// `true`: keep a pair if an edge runs in either direction.
    /// `false`: keep only pairs listed in both directions.
    pub symmetrize: bool,
    /// Restrict to the largest connected component.
    pub largest_component: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            symmetrize: true,
            largest_component: false,
        }
    }
}

/// A labeled real-world graph with densely remapped vertex ids.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: String,
    pub graph: SuperimposedGraph,
    pub labels: CommunityAssignment,
    /// Original id of each remapped vertex.
    pub original_ids: Vec<i64>,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'))
}

/// Whitespace-separated integer pairs; extra columns such as weights are ignored.
pub fn read_edge_pairs(path: &Path) -> Result<Vec<(i64, i64)>> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (line, l) in data_lines(&text) {
        let mut it = l.split_whitespace();
        let mut next = |what: &str| -> Result<i64> {
            let tok = it.next().ok_or_else(|| parse_err(path, line, format!("missing {what}")))?;
            tok.parse()
                .map_err(|_| parse_err(path, line, format!("{what} {tok:?} is not an integer")))
        };
        let u = next("source vertex")?;
        let v = next("target vertex")?;
        out.push((u, v));
    }
    Ok(out)
}

/// `vertex label` per line. Label tokens are arbitrary strings.
pub fn read_label_file(path: &Path) -> Result<BTreeMap<i64, String>> {
    let text = read(path)?;
    let mut out = BTreeMap::new();
    for (line, l) in data_lines(&text) {
        let mut it = l.split_whitespace();
        let (Some(v), Some(label)) = (it.next(), it.next()) else {
            return Err(parse_err(path, line, "expected `vertex label`"));
        };
        let v: i64 = v
            .parse()
            .map_err(|_| parse_err(path, line, format!("vertex {v:?} is not an integer")))?;
        if out.insert(v, label.to_string()).is_some() {
            return Err(parse_err(path, line, format!("vertex {v} labeled twice")));
        }
    }
    Ok(out)
}

/// Maps label tokens to `0..k` in sorted token order (numeric when all tokens are integers).
pub fn encode_labels<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<(Vec<usize>, usize)> {
    let tokens: Vec<&str> = tokens.into_iter().collect();
    let numeric: Option<Vec<i64>> = tokens.iter().map(|t| t.parse().ok()).collect();
    let codes: Vec<usize> = match numeric {
        Some(nums) => {
            let distinct: BTreeSet<i64> = nums.iter().copied().collect();
            let idx: HashMap<i64, usize> = distinct.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            nums.iter().map(|v| idx[v]).collect()
        }
        None => {
            let distinct: BTreeSet<&str> = tokens.iter().copied().collect();
            let idx: HashMap<&str, usize> = distinct.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            tokens.iter().map(|v| idx[v]).collect()
        }
    };
    let k = codes.iter().max().map_or(1, |&m| m + 1);
    Ok((codes, k))
}

/// Applies symmetrization, self-loop removal, id remapping, and optionally
/// the largest-component restriction.
fn build(
    name: &str,
    raw: &[(i64, i64)],
    labels: &BTreeMap<i64, String>,
    opts: IngestOptions,
    labels_origin: &Path,
) -> Result<Dataset> {
    let directed: BTreeSet<(i64, i64)> = raw.iter().copied().filter(|(u, v)| u != v).collect();
    let pairs: BTreeSet<(i64, i64)> = directed
        .iter()
        .filter(|&&(u, v)| opts.symmetrize || directed.contains(&(v, u)))
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let mut ids: BTreeSet<i64> = labels.keys().copied().collect();
    for &(u, v) in &pairs {
        for w in [u, v] {
            if !labels.contains_key(&w) {
                return Err(Error::InvalidInput(format!(
                    "vertex {w} has no label in {}",
                    labels_origin.display()
                )));
            }
            ids.insert(w);
        }
    }
    let mut ids: Vec<i64> = ids.into_iter().collect();
    if ids.is_empty() {
        return Err(Error::InvalidInput(format!("dataset {name} has no vertices")));
    }
    let index = |ids: &[i64], v: i64| ids.binary_search(&v).expect("known vertex");
    let mut edges: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (index(&ids, u), index(&ids, v))).collect();
    if opts.largest_component {
        let keep = largest_component(ids.len(), &edges);
        let kept_ids: Vec<i64> = keep.iter().map(|&v| ids[v]).collect();
        edges = pairs
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (kept_ids.binary_search(&u).ok()?, kept_ids.binary_search(&v).ok()?);
                Some((a, b))
            })
            .collect();
        ids = kept_ids;
    }
    let (codes, k) = encode_labels(ids.iter().map(|v| labels[v].as_str()))?;
    Ok(Dataset {
        name: name.to_string(),
        graph: SuperimposedGraph::from_edges(ids.len(), edges)?,
        labels: CommunityAssignment::new(codes, k)?,
        original_ids: ids,
    })
}

/// Vertices of the largest connected component in increasing order; ties go
/// to the component holding the smallest vertex.
pub fn largest_component(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut size = vec![0usize; n];
    roots.iter().for_each(|&r| size[r] += 1);
    let best = (0..n).max_by(|&a, &b| size[a].cmp(&size[b]).then(b.cmp(&a))).unwrap_or(0);
    (0..n).filter(|&v| roots[v] == best).collect()
}

pub fn ingest_edge_list(
    name: &str,
    edges_path: &Path,
    labels_path: &Path,
    opts: IngestOptions,
) -> Result<Dataset> {
    let raw = read_edge_pairs(edges_path)?;
    let labels = read_label_file(labels_path)?;
    build(name, &raw, &labels, opts, labels_path)
}

#[derive(Debug)]
enum GmlValue {
    Scalar(String),
    List(Vec<(String, GmlValue)>),
}

fn gml_tokens(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut chars = line.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '#' {
                break;
            } else if c == '"' {
                chars.next();
                let s: String = chars.by_ref().take_while(|&c| c != '"').collect();
                out.push((ln + 1, format!("\"{s}")));
            } else if c == '[' || c == ']' {
                chars.next();
                out.push((ln + 1, c.to_string()));
            } else {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '[' || c == ']' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((ln + 1, s));
            }
        }
    }
    out
}

fn gml_list(
    path: &Path,
    toks: &[(usize, String)],
    pos: &mut usize,
    nested: bool,
) -> Result<Vec<(String, GmlValue)>> {
    let mut out = Vec::new();
    while *pos < toks.len() {
        let (line, key) = &toks[*pos];
        if key == "]" {
            if !nested {
                return Err(parse_err(path, *line, "unbalanced `]`"));
            }
            *pos += 1;
            return Ok(out);
        }
        *pos += 1;
        let Some((vline, val)) = toks.get(*pos) else {
            return Err(parse_err(path, *line, format!("key {key:?} has no value")));
        };
        *pos += 1;
        let value = if val == "[" {
            GmlValue::List(gml_list(path, toks, pos, true)?)
        } else if val == "]" {
            return Err(parse_err(path, *vline, "unexpected `]`"));
        } else {
            GmlValue::Scalar(val.trim_start_matches('"').to_string())
        };
        out.push((key.clone(), value));
    }
    if nested {
        let line = toks.last().map_or(0, |t| t.0);
        return Err(parse_err(path, line, "unterminated `[`"));
    }
    Ok(out)
}

fn gml_get<'a>(list: &'a [(String, GmlValue)], key: &str) -> Option<&'a str> {
    list.iter().find_map(|(k, v)| match v {
        GmlValue::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

/// Reads a GML graph whose nodes carry their community in attribute `label_key`.
pub fn ingest_gml(name: &str, path: &Path, label_key: &str, opts: IngestOptions) -> Result<Dataset> {
    let text = read(path)?;
    let toks = gml_tokens(&text);
    let mut pos = 0;
    let top = gml_list(path, &toks, &mut pos, false)?;
    let graph = top
        .iter()
        .find_map(|(k, v)| match v {
            GmlValue::List(l) if k == "graph" => Some(l),
            _ => None,
        })
        .ok_or_else(|| parse_err(path, 1, "no `graph [ ... ]` block"))?;
    let mut labels = BTreeMap::new();
    let mut raw = Vec::new();
    let int = |s: Option<&str>, what: &str| -> Result<i64> {
        s.and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(path, 0, format!("missing or non-integer {what}")))
    };
    for (k, v) in graph {
        let GmlValue::List(item) = v else { continue };
        match k.as_str() {
            "node" => {
                let id = int(gml_get(item, "id"), "node id")?;
                let label = gml_get(item, label_key)
                    .ok_or_else(|| parse_err(path, 0, format!("node {id} has no {label_key:?} attribute")))?;
                labels.insert(id, label.to_string());
            }
            "edge" => raw.push((
                int(gml_get(item, "source"), "edge source")?,
                int(gml_get(item, "target"), "edge target")?,
            )),
            _ => {}
        }
    }
    build(name, &raw, &labels, opts, path)
}

/// Where to find a dataset and how to preprocess it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    /// Edge list, or a `.gml` file carrying labels as node attributes.
    pub edges: PathBuf,
    #[serde(default)]
    pub labels: Option<PathBuf>,
    #[serde(default = "default_label_key")]
    pub gml_label_key: String,
    #[serde(default = "default_true")]
    pub symmetrize: bool,
    #[serde(default)]
    pub largest_component: bool,
}

fn default_label_key() -> String {
    "value".into()
}

fn default_true() -> bool {
    true
}

impl DatasetSpec {
    pub fn options(&self) -> IngestOptions {
        IngestOptions {
            symmetrize: self.symmetrize,
            largest_component: self.largest_component,
        }
    }

    /// Resolves relative paths against `base`.
    pub fn resolved(&self, base: &Path) -> Self {
        let fix = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        Self {
            edges: fix(&self.edges),
            labels: self.labels.as_deref().map(fix),
            ..self.clone()
        }
    }

    pub fn load(&self) -> Result<Dataset> {
        let is_gml = self.edges.extension().is_some_and(|e| e.eq_ignore_ascii_case("gml"));
        match (&self.labels, is_gml) {
            (Some(labels), false) => ingest_edge_list(&self.name, &self.edges, labels, self.options()),
            (None, true) => ingest_gml(&self.name, &self.edges, &self.gml_label_key, self.options()),
            (Some(_), true) => Err(Error::InvalidInput(format!(
                "dataset {}: GML input carries its own labels",
                self.name
            ))),
            (None, false) => Err(Error::InvalidInput(format!(
                "dataset {}: an edge list needs a labels file",
                self.name
            ))),
        }
    }
}
