//! Canonical JSON and text renderings of evaluation results.
//!
//! The JSON form is the stable contract: keys appear in a fixed order and
//! nothing time-dependent is emitted, so identical inputs and settings give
//! byte-identical documents.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::base::LabelHistogram;
use crate::consistency::ConsistencyResult;
use crate::discretize::IntervalScheme;
use crate::pipeline::{BatchOutcome, EvaluationReport, Verdict};

pub(crate) fn ordered_counts<S: Serializer>(
    counts: &[(String, u64)],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(counts.len()))?;
    for (label, count) in counts {
        map.serialize_entry(label, count)?;
    }
    map.end()
}

pub(crate) fn histogram<S: Serializer>(
    histogram: &LabelHistogram,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(histogram.len()))?;
    for (label, count) in histogram.iter() {
        map.serialize_entry(label, &count)?;
    }
    map.end()
}

impl Serialize for IntervalScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IntervalScheme", 3)?;
        s.serialize_field("feature", self.feature())?;
        s.serialize_field("cuts", self.cuts())?;
        s.serialize_field("intervals", &self.tokens())?;
        s.end()
    }
}

impl Serialize for ConsistencyResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ConsistencyResult", 11)?;
        s.serialize_field("inconsistency", &self.inconsistency)?;
        s.serialize_field("inconsistency_exact", &self.inconsistency.exact())?;
        s.serialize_field("minority_proportion", &self.minority_proportion)?;
        s.serialize_field("minority_exact", &self.minority_proportion.exact())?;
        s.serialize_field("theoretical_max", &self.theoretical_max)?;
        s.serialize_field("ratio_to_minority", &self.ratio_to_minority())?;
        s.serialize_field("examples", &self.examples)?;
        s.serialize_field("majority_total", &self.majority_total)?;
        s.serialize_field("distinct_descriptions", &self.distinct_descriptions)?;
        s.serialize_field("descriptions", &self.descriptions)?;
        s.end()
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct BatchJson<'a> {
    reports: &'a [EvaluationReport],
    failures: Vec<FailureJson<'a>>,
}

#[derive(Serialize)]
struct FailureJson<'a> {
    name: &'a str,
    error: String,
}

pub fn batch_to_json(outcome: &BatchOutcome) -> String {
    to_json(&BatchJson {
        reports: &outcome.reports,
        failures: outcome
            .failures
            .iter()
            .map(|f| FailureJson { name: &f.name, error: f.error.to_string() })
            .collect(),
    })
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

/// Human-readable summary; informative only.
pub fn to_text(report: &EvaluationReport) -> String {
    let mut out = String::new();
    let c = &report.consistency;
    let _ = writeln!(out, "== {} ==", report.name);
    let _ = writeln!(
        out,
        "examples: {}  labels: {}  features: {}",
        report.input.examples, report.input.label_count, report.input.feature_count
    );
    let hist: Vec<String> =
        report.input.label_histogram.iter().map(|(l, n)| format!("{l}={n}")).collect();
    let _ = writeln!(out, "label counts: {}", hist.join(" "));

    let _ = writeln!(out, "candidates: {}", list(&report.selection.candidates));
    match report.selection.method {
        Some(method) => {
            let _ = writeln!(out, "selection ({method}):");
            for s in &report.selection.scores {
                let _ = writeln!(out, "  {:<24} {:>10.6}", s.feature, s.value);
            }
        }
        None => {
            let _ = writeln!(out, "selection: skipped");
        }
    }
    let _ = writeln!(out, "selected: {}", list(&report.selection.selected));

    match report.discretization.method {
        Some(method) => {
            let _ = writeln!(out, "discretization ({method}):");
            for s in &report.discretization.schemes {
                let _ = writeln!(out, "  {:<24} {}", s.feature(), s.tokens().join(" "));
            }
        }
        None => {
            let _ = writeln!(out, "discretization: skipped");
        }
    }

    let _ = writeln!(out, "distinct descriptions: {}", c.distinct_descriptions);
    let _ = writeln!(out, "inconsistency:       {:.4} ({})", c.inconsistency, c.inconsistency.exact());
    let _ = writeln!(out, "minority proportion: {:.4} ({})", c.minority_proportion, c.minority_proportion.exact());
    let _ = writeln!(out, "theoretical maximum: {:.4}", c.theoretical_max);
    let verdict = match report.verdict.outcome {
        Verdict::Adequate => "adequate",
        Verdict::NeedsMoreFeatures => "needs more features",
    };
    let _ = writeln!(out, "verdict: {verdict} (threshold {})", report.verdict.threshold);
    out
}
