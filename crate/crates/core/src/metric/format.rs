//! Metric file formats.
//!
//! JSON: `{"points": ["x1", ...], "distances": [[...], ...]}` where each entry
//! is a JSON integer or a decimal string such as `"2.3"`.
//!
//! Matrix text: the first line holds `n`, followed by `n` rows of
//! whitespace-separated entries. Points are labeled `p0..p{n-1}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{MetricError, MetricSpace, RESERVED_PREFIX};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricFormat {
    Json,
    Matrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFileIn {
    points: Vec<String>,
    distances: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct MetricFileOut<'a> {
    points: &'a [String],
    distances: Vec<Vec<Value>>,
}

fn parse_entry(v: &Value) -> Result<Rational, MetricError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(MetricError::Parse(format!("distance entry {other} is not a number"))),
    };
    text.parse::<Rational>()
        .map_err(|e| MetricError::Parse(e.to_string()))
}

fn check_labels(labels: &[String]) -> Result<(), MetricError> {
    if let Some(l) = labels.iter().find(|l| l.starts_with(RESERVED_PREFIX)) {
        return Err(MetricError::Parse(format!(
            "label {l:?} uses the reserved prefix {RESERVED_PREFIX:?}"
        )));
    }
    Ok(())
}

/// Parses and validates a metric space.
pub fn parse_metric(text: &str, format: MetricFormat) -> Result<MetricSpace, MetricError> {
    match format {
        MetricFormat::Json => {
            let file: MetricFileIn =
                serde_json::from_str(text).map_err(|e| MetricError::Parse(e.to_string()))?;
            check_labels(&file.points)?;
            let n = file.points.len();
            if file.distances.len() != n || file.distances.iter().any(|r| r.len() != n) {
                return Err(MetricError::Parse(format!(
                    "distances must be a {n} x {n} table to match the points"
                )));
            }
            let dist = file
                .distances
                .iter()
                .flatten()
                .map(parse_entry)
                .collect::<Result<Vec<_>, _>>()?;
            MetricSpace::new(file.points, dist)
        }
        MetricFormat::Matrix => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let header = lines
                .next()
                .ok_or_else(|| MetricError::Parse("empty matrix file".into()))?;
            let n: usize = header
                .parse()
                .map_err(|_| MetricError::Parse(format!("bad point count {header:?}")))?;
            let mut dist = Vec::with_capacity(n * n);
            for row in 0..n {
                let line = lines
                    .next()
                    .ok_or_else(|| MetricError::Parse(format!("missing row {row}")))?;
                let before = dist.len();
                for tok in line.split_whitespace() {
                    dist.push(tok.parse::<Rational>().map_err(|e| MetricError::Parse(e.to_string()))?);
                }
                if dist.len() - before != n {
                    return Err(MetricError::Parse(format!("row {row} does not have {n} entries")));
                }
            }
            if lines.next().is_some() {
                return Err(MetricError::Parse("trailing data after matrix".into()));
            }
            MetricSpace::new((0..n).map(|i| format!("p{i}")).collect(), dist)
        }
    }
}

/// JSON integer when the value is an integer that fits in `i64`, otherwise a
/// string in [`Rational`] display form.
pub fn rational_to_json(r: Rational) -> Value {
    match r.to_integer() {
        Some(i) if i64::try_from(i).is_ok() => Value::from(i as i64),
        _ => Value::String(r.to_string()),
    }
}

/// Single-line JSON with a trailing newline.
pub fn metric_to_json(m: &MetricSpace) -> String {
    let n = m.len();
    let out = MetricFileOut {
        points: m.labels(),
        distances: (0..n).map(|i| (0..n).map(|j| rational_to_json(m.d(i, j))).collect()).collect(),
    };
    let mut s = serde_json::to_string(&out).expect("metric serializes");
    s.push('\n');
    s
}

/// Matrix text. Labels are not part of this format.
pub fn metric_to_matrix_text(m: &MetricSpace) -> String {
    let n = m.len();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| m.d(i, j).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricViolation;

    #[test]
    fn json_egyptian() {
        let m = parse_metric(
            r#"{"points": ["x1","x2","x3"], "distances": [[0,3,4],[3,0,5],[4,5,0]]}"#,
            MetricFormat::Json,
        )
        .unwrap();
        assert_eq!(m.distance("x2", "x3").unwrap(), Rational::from_integer(5));
    }

    #[test]
    fn json_decimal_strings() {
        let m = parse_metric(
            r#"{"points": ["a","b"], "distances": [[0,"2.3"],["2.3",0]]}"#,
            MetricFormat::Json,
        )
        .unwrap();
        assert_eq!(m.d(0, 1), Rational::new(23, 10));
        let back = parse_metric(&metric_to_json(&m), MetricFormat::Json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_text() {
        let m = parse_metric("1\n0\n", MetricFormat::Matrix).unwrap();
        assert_eq!(m.labels(), &["p0".to_string()]);
        let err = parse_metric("2\n0 1\n2 0\n", MetricFormat::Matrix).unwrap_err();
        assert_eq!(err, MetricError::Violation(MetricViolation::Asymmetry { i: 0, j: 1 }));
        let m = parse_metric("3\n0 3 4\n3 0 5\n4 5 0\n", MetricFormat::Matrix).unwrap();
        assert_eq!(parse_metric(&metric_to_matrix_text(&m), MetricFormat::Matrix).unwrap(), m);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            ("{", MetricFormat::Json),
            (r#"{"points": ["a"], "distances": [[0, 1]]}"#, MetricFormat::Json),
            (r#"{"points": ["a"], "distances": [[true]]}"#, MetricFormat::Json),
            (r#"{"points": ["__aux::a"], "distances": [[0]]}"#, MetricFormat::Json),
            (r#"{"points": [], "distances": []}"#, MetricFormat::Json),
            ("2\n0 1\n", MetricFormat::Matrix),
            ("2\n0 1 1\n1 0\n", MetricFormat::Matrix),
            ("x\n", MetricFormat::Matrix),
        ];
        for (text, fmt) in bad {
            assert!(
                matches!(parse_metric(text, fmt), Err(MetricError::Parse(_))),
                "{text:?} should be a parse error"
            );
        }
    }
}
