//! Reading input files and writing artifacts.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use graphmetric::graph::{graph_to_json, graph_to_text, parse_graph, GraphFormat};
use graphmetric::metric::{parse_metric, MetricFormat};
use graphmetric::{Graph, MetricError, MetricSpace};
use serde_json::Value;

/// What an input file turned out to be.
pub enum Input {
    Metric(MetricSpace),
    Graph(Graph),
}

/// Result of parsing a metric file. Axiom violations are kept apart from
/// syntax errors because they are reported, not rejected.
pub enum MetricInput {
    Valid(MetricSpace),
    Invalid { error: MetricError, labels: Vec<String> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    MetricJson,
    MetricMatrix,
    GraphJson,
    GraphText,
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn detect(text: &str) -> Result<(Kind, Option<Value>)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).context("malformed JSON")?;
        let kind = match (v.get("points").is_some(), v.get("vertices").is_some()) {
            (true, false) => Kind::MetricJson,
            (false, true) => Kind::GraphJson,
            _ => bail!("JSON input must have either a \"points\" or a \"vertices\" key"),
        };
        return Ok((kind, Some(v)));
    }
    let header = trimmed.lines().next().unwrap_or("");
    match header.split_whitespace().count() {
        1 => Ok((Kind::MetricMatrix, None)),
        2 => Ok((Kind::GraphText, None)),
        _ => bail!("cannot tell the input format from its first line {header:?}"),
    }
}

fn parse_metric_kind(text: &str, kind: Kind, json: Option<&Value>) -> Result<MetricInput> {
    let format = if kind == Kind::MetricJson { MetricFormat::Json } else { MetricFormat::Matrix };
    match parse_metric(text, format) {
        Ok(m) => Ok(MetricInput::Valid(m)),
        Err(MetricError::Parse(msg)) => bail!("invalid metric file: {msg}"),
        Err(error) => {
            let labels = json
                .and_then(|v| v.get("points"))
                .and_then(|p| serde_json::from_value(p.clone()).ok())
                .unwrap_or_default();
            Ok(MetricInput::Invalid { error, labels })
        }
    }
}

/// Parses a metric file, keeping axiom violations as data.
pub fn load_metric_lenient(path: &str) -> Result<MetricInput> {
    let text = read_source(path)?;
    let (kind, json) = detect(&text)?;
    match kind {
        Kind::MetricJson | Kind::MetricMatrix => parse_metric_kind(&text, kind, json.as_ref()),
        _ => bail!("{path}: expected a metric file, found a graph file"),
    }
}

/// Parses a metric file; violations of the metric axioms are errors.
pub fn load_metric(path: &str) -> Result<MetricSpace> {
    match load_metric_lenient(path)? {
        MetricInput::Valid(m) => Ok(m),
        MetricInput::Invalid { error, .. } => bail!("{path}: {error}"),
    }
}

pub fn load_graph(path: &str) -> Result<Graph> {
    match load_any(path)? {
        Input::Graph(g) => Ok(g),
        Input::Metric(_) => bail!("{path}: expected a graph file, found a metric file"),
    }
}

pub fn load_any(path: &str) -> Result<Input> {
    let text = read_source(path)?;
    let (kind, json) = detect(&text)?;
    match kind {
        Kind::GraphJson => Ok(Input::Graph(parse_graph(&text, GraphFormat::Json)?)),
        Kind::GraphText => Ok(Input::Graph(parse_graph(&text, GraphFormat::Text)?)),
        _ => match parse_metric_kind(&text, kind, json.as_ref())? {
            MetricInput::Valid(m) => Ok(Input::Metric(m)),
            MetricInput::Invalid { error, .. } => bail!("{path}: {error}"),
        },
    }
}

pub fn render_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => graph_to_json(g),
        GraphFormat::Text => graph_to_text(g),
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
