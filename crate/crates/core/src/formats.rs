//! Text formats for instances, partitions, edge labelings, probability grids
//! and solver traces.
//!
//! Instance files:
//!
//! ```text
//! LMP 1
//! NODES 3
//! EDGE 0 1 3.0
//! EDGE 1 2 -1.0
//! LIFT 0 2 0.5
//! ```
//!
//! One record per line; blank lines and everything after `#` are ignored.
//! The first record is the magic `LMP 1`, the second `NODES <n>`. `EDGE`
//! records define the graph edges in order, `LIFT` records the lifted edges,
//! both with `u < v`. Partition files hold `<node> <block>` per line,
//! labeling files one `0` or `1` per line in global edge order.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::{EdgeLabeling, Graph, LmpInstance, ModelError, Partition, SolveReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected magic 'LMP 1'")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("expected 'NODES <n>'")]
    MissingNodes,
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("node {node} out of range (0..{node_count})")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("endpoints must satisfy u < v, got ({0}, {1})")]
    Unordered(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("lifted edge ({0}, {1}) duplicates a graph edge")]
    LiftedDuplicatesEdge(usize, usize),
    #[error("cost is not finite")]
    NonFiniteCost,
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("node {0} missing")]
    MissingNode(usize),
    #[error("value {0} outside [0, 1]")]
    ProbabilityRange(f64),
    #[error("expected {expected} values, found {found}")]
    Dimension { expected: String, found: String },
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Model(ModelError),
}

/// A parse failure with the 1-based line it occurred on (0 when it concerns
/// the whole input).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

/// Non-empty records with comments stripped, paired with their line number.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn field<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, ParseError> {
    s.parse()
        .or_else(|_| err(line, ParseErrorKind::Malformed(format!("invalid {what} '{s}'"))))
}

pub fn parse_instance(text: &str) -> Result<LmpInstance, ParseError> {
    let mut recs = records(text);
    match recs.next() {
        Some((line, f)) if f.first() == Some(&"LMP") => {
            if f.len() != 2 {
                return err(line, ParseErrorKind::BadMagic);
            }
            if f[1] != "1" {
                return err(line, ParseErrorKind::UnsupportedVersion(f[1].to_string()));
            }
        }
        Some((line, _)) => return err(line, ParseErrorKind::BadMagic),
        None => return err(0, ParseErrorKind::Empty),
    }
    let n: usize = match recs.next() {
        Some((line, f)) if f.len() == 2 && f[0] == "NODES" => field(line, f[1], "node count")?,
        Some((line, _)) => return err(line, ParseErrorKind::MissingNodes),
        None => return err(0, ParseErrorKind::MissingNodes),
    };

    let mut edges = Vec::new();
    let mut edge_costs = Vec::new();
    let mut lifted = Vec::new();
    let mut lifted_costs = Vec::new();
    // (u, v) -> (is lifted, line)
    let mut seen = std::collections::HashMap::new();
    for (line, f) in recs {
        let lift = match f[0] {
            "EDGE" => false,
            "LIFT" => true,
            other => return err(line, ParseErrorKind::Malformed(format!("unknown record '{other}'"))),
        };
        if f.len() != 4 {
            return err(line, ParseErrorKind::Malformed(format!("{} needs 3 fields", f[0])));
        }
        let u: usize = field(line, f[1], "node id")?;
        let v: usize = field(line, f[2], "node id")?;
        let c: f64 = field(line, f[3], "cost")?;
        for node in [u, v] {
            if node >= n {
                return err(line, ParseErrorKind::NodeOutOfRange { node, node_count: n });
            }
        }
        if u >= v {
            return err(line, ParseErrorKind::Unordered(u, v));
        }
        if !c.is_finite() {
            return err(line, ParseErrorKind::NonFiniteCost);
        }
        if let Some(&prev_lift) = seen.get(&(u, v)) {
            let kind = if prev_lift == lift {
                ParseErrorKind::DuplicateEdge(u, v)
            } else {
                ParseErrorKind::LiftedDuplicatesEdge(u, v)
            };
            return err(line, kind);
        }
        seen.insert((u, v), lift);
        if lift {
            lifted.push((u, v));
            lifted_costs.push(c);
        } else {
            edges.push((u, v));
            edge_costs.push(c);
        }
    }
    let model = |e: ModelError| ParseError {
        line: 0,
        kind: ParseErrorKind::Model(e),
    };
    let graph = Graph::new(n, &edges).map_err(|e| model(e.into()))?;
    edge_costs.extend(lifted_costs);
    LmpInstance::new(graph, lifted, edge_costs).map_err(model)
}

/// Serializes graph edges in edge order, then lifted edges. Costs use the
/// shortest representation that parses back to the same value.
pub fn write_instance(inst: &LmpInstance) -> String {
    let mut out = String::new();
    out.push_str("LMP 1\n");
    let _ = writeln!(out, "NODES {}", inst.node_count());
    for (e, (u, v, c)) in inst.all_edges().enumerate() {
        let tag = if inst.is_lifted(e) { "LIFT" } else { "EDGE" };
        let _ = writeln!(out, "{tag} {u} {v} {c:?}");
    }
    out
}

/// Parses `<node> <block>` lines. Nodes must be exactly `0..n` for some `n`;
/// block ids are arbitrary and get renumbered canonically.
pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let mut entries: Vec<Option<usize>> = Vec::new();
    for (line, f) in records(text) {
        if f.len() != 2 {
            return err(line, ParseErrorKind::Malformed("expected '<node> <block>'".into()));
        }
        let node: usize = field(line, f[0], "node id")?;
        let block: usize = field(line, f[1], "block id")?;
        if node >= entries.len() {
            entries.resize(node + 1, None);
        }
        if entries[node].replace(block).is_some() {
            return err(line, ParseErrorKind::DuplicateNode(node));
        }
    }
    let labels = entries
        .iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or(ParseError {
                line: 0,
                kind: ParseErrorKind::MissingNode(v),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::from_labels(&labels))
}

/// Like [`parse_partition`], additionally requiring exactly `node_count`
/// nodes.
pub fn parse_partition_for(text: &str, node_count: usize) -> Result<Partition, ParseError> {
    let p = parse_partition(text)?;
    if p.len() < node_count {
        return err(0, ParseErrorKind::MissingNode(p.len()));
    }
    if p.len() > node_count {
        return err(
            0,
            ParseErrorKind::NodeOutOfRange {
                node: p.len() - 1,
                node_count,
            },
        );
    }
    Ok(p)
}

pub fn write_partition(p: &Partition) -> String {
    let mut out = String::with_capacity(p.len() * 6);
    for (v, b) in p.labels().iter().enumerate() {
        let _ = writeln!(out, "{v} {b}");
    }
    out
}

pub fn parse_labeling(text: &str) -> Result<EdgeLabeling, ParseError> {
    let mut labels = Vec::new();
    for (line, f) in records(text) {
        match f.as_slice() {
            ["0"] => labels.push(false),
            ["1"] => labels.push(true),
            _ => return err(line, ParseErrorKind::Malformed("expected '0' or '1'".into())),
        }
    }
    Ok(EdgeLabeling(labels))
}

pub fn write_labeling(y: &EdgeLabeling) -> String {
    y.0.iter().map(|&b| if b { "1\n" } else { "0\n" }).collect()
}

/// Parses a `width × height` grid of values in `[0, 1]`: `height` rows of
/// `width` whitespace-separated values, row-major.
pub fn parse_probability_grid(text: &str, width: usize, height: usize) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::with_capacity(width * height);
    let mut rows = 0;
    for (line, f) in records(text) {
        rows += 1;
        if f.len() != width {
            return err(
                line,
                ParseErrorKind::Dimension {
                    expected: format!("{width} per row"),
                    found: f.len().to_string(),
                },
            );
        }
        for s in f {
            let p: f64 = field(line, s, "probability")?;
            if !(0.0..=1.0).contains(&p) {
                return err(line, ParseErrorKind::ProbabilityRange(p));
            }
            values.push(p);
        }
    }
    if rows != height {
        return err(
            0,
            ParseErrorKind::Dimension {
                expected: format!("{height} rows"),
                found: rows.to_string(),
            },
        );
    }
    Ok(values)
}

pub fn write_probability_grid(values: &[f64], width: usize) -> String {
    let mut out = String::new();
    for row in values.chunks(width.max(1)) {
        let line: Vec<String> = row.iter().map(|p| format!("{p:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// CSV with header `step,kind,delta`, steps numbered from 0.
pub fn write_trace(report: &SolveReport) -> String {
    let mut out = String::from("step,kind,delta\n");
    for (i, s) in report.trace.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{:?}", s.kind, s.delta);
    }
    out
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

pub fn read_file(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), FileError> {
    std::fs::write(path, contents).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, FileError> {
    let text = read_file(path)?;
    parse(&text).map_err(|source| FileError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_instance(path: &Path) -> Result<LmpInstance, FileError> {
    load(path, parse_instance)
}

pub fn read_partition(path: &Path) -> Result<Partition, FileError> {
    load(path, parse_partition)
}

pub fn read_labeling(path: &Path) -> Result<EdgeLabeling, FileError> {
    load(path, parse_labeling)
}

pub fn read_probability_grid(path: &Path, width: usize, height: usize) -> Result<Vec<f64>, FileError> {
    load(path, |t| parse_probability_grid(t, width, height))
}
