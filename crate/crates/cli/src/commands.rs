//! One function per subcommand. Each returns what to print and whether the
//! result is a domain-level negative.

use std::path::PathBuf;

use anyhow::{bail, Result};
use graphmetric::graph::GraphFormat;
use graphmetric::metric::{metric_to_json, metric_to_matrix_text, rational_to_json, MetricViolation};
use graphmetric::quadruples::{
    line_embed, mb_check, plq_classify, quad_inequality, search, ConjectureId, PlqKind, SearchOptions,
};
use graphmetric::realization::{pair_distances, Mismatch};
use graphmetric::{
    ceil_embed, embed, realize, verify_map, Check, GraphError, MetricError, MetricSpace, Rational, RealizationError,
    RealizationResult,
};
use serde_json::{json, Map, Value};

use crate::input::{load_any, load_graph, load_metric, load_metric_lenient, render_graph, write_file, Input, MetricInput};

pub struct Outcome {
    /// Written to standard output verbatim.
    pub stdout: String,
    /// Written to standard error.
    pub summary: String,
    pub negative: bool,
}

impl Outcome {
    fn report(report: Value, negative: bool, summary: String) -> Self {
        let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialize");
        stdout.push('\n');
        Outcome { stdout, summary, negative }
    }
}

fn violation_json(error: &MetricError, labels: &[String]) -> Value {
    let name = |i: usize| labels.get(i).cloned().unwrap_or_else(|| format!("p{i}"));
    let (axiom, idx): (&str, Vec<usize>) = match error {
        MetricError::Violation(v) => match *v {
            MetricViolation::NonzeroDiagonal { i } => ("nonzero_diagonal", vec![i]),
            MetricViolation::Asymmetry { i, j } => ("asymmetry", vec![i, j]),
            MetricViolation::NonPositive { i, j } => ("non_positive", vec![i, j]),
            MetricViolation::Triangle { i, j, k } => ("triangle", vec![i, j, k]),
        },
        _ => return json!({ "message": error.to_string() }),
    };
    json!({
        "axiom": axiom,
        "indices": idx,
        "points": idx.iter().map(|&i| name(i)).collect::<Vec<_>>(),
        "message": error.to_string(),
    })
}

pub fn validate(path: &str) -> Result<Outcome> {
    let m = match load_metric_lenient(path)? {
        MetricInput::Valid(m) => m,
        MetricInput::Invalid { error, labels } => {
            let report = json!({
                "command": "validate",
                "metric_valid": false,
                "violation": violation_json(&error, &labels),
                "integer": null,
                "kay_chartrand": null,
            });
            return Ok(Outcome::report(report, true, format!("not a metric: {error}")));
        }
    };
    let integer = m.is_integer_metric();
    let kc = match m.kay_chartrand_check() {
        Ok(Check::Pass) => json!({ "result": "pass" }),
        Ok(Check::Fail((x, z))) => json!({ "result": "fail", "witness": [x, z] }),
        Err(MetricError::NotIntegerMetric { x, y, value }) => json!({
            "result": "fail",
            "reason": "non_integer_distance",
            "witness": [x, y],
            "value": rational_to_json(value),
        }),
        Err(e) => return Err(e.into()),
    };
    let holds = kc["result"] == "pass";
    let summary = if holds {
        format!("{} points: a graph metric", m.len())
    } else {
        format!("{} points: valid metric, not a graph metric ({})", m.len(), kc["witness"])
    };
    let report = json!({
        "command": "validate",
        "points": m.len(),
        "metric_valid": true,
        "integer": integer,
        "kay_chartrand": kc,
    });
    Ok(Outcome::report(report, !holds, summary))
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Realize,
    Embed,
    CeilEmbed,
}

impl Construction {
    fn name(self) -> &'static str {
        match self {
            Construction::Realize => "realize",
            Construction::Embed => "embed",
            Construction::CeilEmbed => "ceil-embed",
        }
    }
}

pub struct ConstructionOptions {
    pub out: Option<PathBuf>,
    pub map: Option<PathBuf>,
    pub format: GraphFormat,
    pub fallback_embed: bool,
    pub require_onto: bool,
}

fn mismatch_json(m: &Mismatch) -> Value {
    match m {
        Mismatch::Distance { x, y, expected, actual } => json!({
            "kind": "distance", "pair": [x, y], "expected": rational_to_json(*expected), "actual": actual,
        }),
        Mismatch::Distortion { x, y, metric, graph } => json!({
            "kind": "distortion", "pair": [x, y], "metric": rational_to_json(*metric), "graph": graph,
        }),
        Mismatch::NotOnto { vertex } => json!({ "kind": "not_onto", "vertex": vertex }),
    }
}

/// Domain-level refusals become a report; anything else is an error.
fn refusal(mut report: Map<String, Value>, err: RealizationError) -> Result<Outcome> {
    let summary = err.to_string();
    match err {
        RealizationError::ConditionFailed(x, z) => {
            report.insert("error".into(), json!("condition_failed"));
            report.insert("witness".into(), json!([x, z]));
        }
        RealizationError::Metric(MetricError::NotIntegerMetric { x, y, value }) => {
            report.insert("error".into(), json!("non_integer_distance"));
            report.insert("witness".into(), json!([x, y]));
            report.insert("value".into(), rational_to_json(value));
        }
        RealizationError::InternalVerificationFailure(m) => {
            report.insert("error".into(), json!("internal_verification_failure"));
            report.insert("witness".into(), mismatch_json(&m));
        }
        other => bail!(other),
    }
    Ok(Outcome::report(Value::Object(report), true, summary))
}

pub fn construct(kind: Construction, path: &str, opts: &ConstructionOptions) -> Result<Outcome> {
    let m = load_metric(path)?;
    let mut report = Map::new();
    report.insert("command".into(), json!(kind.name()));
    report.insert("points".into(), json!(m.len()));

    let attempt = match kind {
        Construction::Realize => match realize(&m) {
            Err(RealizationError::ConditionFailed(x, z)) if opts.fallback_embed => {
                report.insert("fallback".into(), json!({ "method": "embed", "condition_failed": [x, z] }));
                embed(&m)
            }
            other => other,
        },
        Construction::Embed => embed(&m),
        Construction::CeilEmbed => ceil_embed(&m),
    };
    let RealizationResult { graph, map, aux_count } = match attempt {
        Ok(r) => r,
        Err(e) => return refusal(report, e),
    };

    // Maps are checked against the integer metric that was embedded.
    let target = if kind == Construction::CeilEmbed { m.ceiling_metric() } else { m.clone() };
    let check = verify_map(&target, &graph, &map, opts.require_onto)?;

    report.insert("vertices".into(), json!(graph.len()));
    report.insert("edges".into(), json!(graph.edge_count()));
    report.insert("aux_count".into(), json!(aux_count));
    report.insert("verified".into(), json!(check.is_pass()));
    if opts.require_onto {
        report.insert("onto".into(), json!(check.is_pass()));
    }
    if let Check::Fail(mm) = &check {
        report.insert("witness".into(), mismatch_json(mm));
    }
    if kind == Construction::CeilEmbed {
        let excess: Vec<Rational> = pair_distances(&m, &graph, &map)?
            .into_iter()
            .map(|p| Rational::from(p.graph) - p.metric)
            .collect();
        report.insert(
            "distortion".into(),
            json!({
                "pairs": excess.len(),
                "min_excess": excess.iter().min().map(|r| rational_to_json(*r)),
                "max_excess": excess.iter().max().map(|r| rational_to_json(*r)),
                "bound": "d <= d_G < d + 1",
            }),
        );
    }

    let map_doc = json!({ "assignment": map.assignment(), "aux_count": aux_count });
    match &opts.out {
        Some(p) => write_file(p, &render_graph(&graph, opts.format))?,
        None => {
            let doc: Value = serde_json::from_str(&render_graph(&graph, GraphFormat::Json))?;
            report.insert("graph".into(), doc);
        }
    }
    match &opts.map {
        Some(p) => write_file(p, &format!("{}\n", serde_json::to_string_pretty(&map_doc)?))?,
        None => {
            report.insert("map".into(), map_doc);
        }
    }

    let summary = format!(
        "{}: {} vertices, {} edges, {} auxiliary, verified={}",
        kind.name(),
        graph.len(),
        graph.edge_count(),
        aux_count,
        check.is_pass()
    );
    Ok(Outcome::report(Value::Object(report), !check.is_pass(), summary))
}

pub fn distances(path: &str, format: GraphFormat) -> Result<Outcome> {
    let g = load_graph(path)?;
    match g.geodesic_metric() {
        Ok(m) => {
            let stdout = match format {
                GraphFormat::Json => metric_to_json(&m),
                GraphFormat::Text => metric_to_matrix_text(&m),
            };
            let diameter = g.geodesic_distances().max_entry().unwrap_or(0);
            Ok(Outcome {
                stdout,
                summary: format!("{} vertices, diameter {diameter}", g.len()),
                negative: false,
            })
        }
        Err(GraphError::Disconnected) => {
            let dist = g.bfs_from(0);
            let unreachable = dist.iter().position(|&d| d == graphmetric::graph::INF).expect("disconnected");
            let report = json!({
                "command": "distances",
                "error": "disconnected",
                "witness": [g.label(0), g.label(unreachable)],
            });
            Ok(Outcome::report(
                report,
                true,
                format!("graph is disconnected: no path from {} to {}", g.label(0), g.label(unreachable)),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Copy)]
pub enum CheckKind {
    Mb,
    Line,
    Plq,
    QuadIneq,
}

fn check_metric(path: &str) -> Result<std::result::Result<MetricSpace, Outcome>> {
    match load_any(path)? {
        Input::Metric(m) => Ok(Ok(m)),
        Input::Graph(g) => match g.geodesic_metric() {
            Ok(m) => Ok(Ok(m)),
            Err(GraphError::Disconnected) => Ok(Err(Outcome::report(
                json!({ "command": "check", "error": "disconnected" }),
                true,
                "graph is disconnected".into(),
            ))),
            Err(e) => Err(e.into()),
        },
    }
}

/// The four labels a quadruple check applies to: the given ones, or all
/// points of a four-point space.
fn four_labels(m: &MetricSpace, labels: &[String]) -> Result<Vec<String>> {
    if labels.is_empty() {
        if m.len() != 4 {
            bail!("the space has {} points; name four of them", m.len());
        }
        return Ok(m.labels().to_vec());
    }
    Ok(labels.to_vec())
}

pub fn check(kind: CheckKind, path: &str, labels: &[String]) -> Result<Outcome> {
    let m = match check_metric(path)? {
        Ok(m) => m,
        Err(outcome) => return Ok(outcome),
    };
    let m = if labels.is_empty() || matches!(kind, CheckKind::Plq | CheckKind::QuadIneq) {
        m
    } else {
        m.subspace(labels)?
    };
    match kind {
        CheckKind::Mb => Ok(match mb_check(&m) {
            Check::Pass => Outcome::report(
                json!({ "command": "check", "check": "mb", "points": m.len(), "result": "pass" }),
                false,
                format!("{} points: every triangle is degenerate", m.len()),
            ),
            Check::Fail((x, y, z)) => Outcome::report(
                json!({ "command": "check", "check": "mb", "points": m.len(), "result": "fail", "witness": [x, y, z] }),
                true,
                format!("triangle ({x}, {y}, {z}) is not degenerate"),
            ),
        }),
        CheckKind::Line => Ok(match line_embed(&m) {
            Some(coords) => {
                let coords: Map<String, Value> = m
                    .labels()
                    .iter()
                    .zip(coords)
                    .map(|(l, c)| (l.clone(), rational_to_json(c)))
                    .collect();
                Outcome::report(
                    json!({ "command": "check", "check": "line", "points": m.len(), "result": "pass", "coordinates": coords }),
                    false,
                    format!("{} points embed in the line", m.len()),
                )
            }
            None => {
                let mut report = json!({ "command": "check", "check": "line", "points": m.len(), "result": "fail" });
                if let Check::Fail((x, y, z)) = mb_check(&m) {
                    report["witness"] = json!([x, y, z]);
                }
                Outcome::report(report, true, format!("{} points do not embed in the line", m.len()))
            }
        }),
        CheckKind::Plq => {
            let four = four_labels(&m, labels)?;
            let cls = plq_classify(&m, &four)?;
            let mut report = json!({ "command": "check", "check": "plq", "subset": four });
            match &cls.kind {
                PlqKind::Plq { s, t, ordering } => {
                    report["result"] = json!("plq");
                    report["s"] = rational_to_json(*s);
                    report["t"] = rational_to_json(*t);
                    report["ordering"] = json!(ordering);
                    report["equilateral"] = json!(cls.equilateral);
                    Ok(Outcome::report(
                        report,
                        false,
                        format!(
                            "pseudo-linear quadruple s={s} t={t}{}",
                            if cls.equilateral { " (equilateral)" } else { "" }
                        ),
                    ))
                }
                PlqKind::NotPlq => {
                    report["result"] = json!("not_plq");
                    report["equilateral"] = json!(false);
                    Ok(Outcome::report(report, true, "not a pseudo-linear quadruple".into()))
                }
            }
        }
        CheckKind::QuadIneq => {
            let ordering = four_labels(&m, labels)?;
            let q = quad_inequality(&m, &ordering)?;
            let holds = !q.slack.is_negative();
            let report = json!({
                "command": "check",
                "check": "quad-ineq",
                "ordering": ordering,
                "lhs": rational_to_json(q.lhs),
                "bound": rational_to_json(q.bound),
                "slack": rational_to_json(q.slack),
                "holds": holds,
                "equality": q.slack.is_zero(),
            });
            Ok(Outcome::report(report, !holds, format!("lhs {} <= bound {} (slack {})", q.lhs, q.bound, q.slack)))
        }
    }
}

pub fn run_search(conjecture: ConjectureId, max_n: usize, max_violations: usize, jobs: usize) -> Result<Outcome> {
    let mut opts = SearchOptions::new(conjecture, max_n, max_violations);
    opts.jobs = jobs.max(1);
    let report = search(&opts)?;
    let summary = format!(
        "{}: {} graphs checked up to n = {}, {} violations",
        conjecture.as_str(),
        report.graphs_checked,
        max_n,
        report.violation_count
    );
    Ok(Outcome::report(report.to_json(), !report.is_consistent(), summary))
}
