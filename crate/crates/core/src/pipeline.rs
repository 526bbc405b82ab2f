//! Select, discretize, then measure inconsistency.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{ExampleBase, FeatureKind, FeatureSubset, LabelHistogram};
use crate::consistency::{inconsistency_rate, ConsistencyResult};
use crate::discretize::{apply_schemes, compute_scheme, DiscretizationMethod, IntervalScheme};
use crate::error::{Error, Result};
use crate::filters::{check_applicable, select_features, FeatureScore, ScoreMethod, SelectionPolicy};

pub const VERSION: &str = concat!("featcheck ", env!("CARGO_PKG_VERSION"));

/// Default verdict threshold. A tool convention: a base needs more features
/// when its inconsistency exceeds this fraction of the minority proportion.
pub const DEFAULT_VERDICT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationConfig {
    /// Candidate feature set; `None` means every feature of the base.
    pub features: Option<Vec<String>>,
    /// Step 1; `None` keeps every candidate.
    pub selection: Option<SelectionPolicy>,
    /// Step 2; `None` leaves numeric features raw.
    pub discretization: Option<DiscretizationMethod>,
    pub verdict_threshold: f64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            features: None,
            selection: Some(SelectionPolicy::default()),
            discretization: Some(DiscretizationMethod::Mdl),
            verdict_threshold: DEFAULT_VERDICT_THRESHOLD,
        }
    }
}

impl EvaluationConfig {
    /// Both steps disabled: the inconsistency of the base as given.
    pub fn raw() -> Self {
        EvaluationConfig { selection: None, discretization: None, ..Default::default() }
    }

    pub fn with_features<S: Into<String>>(mut self, features: impl IntoIterator<Item = S>) -> Self {
        self.features = Some(features.into_iter().map(Into::into).collect());
        self
    }

    pub fn with_selection(mut self, selection: Option<SelectionPolicy>) -> Self {
        self.selection = selection;
        self
    }

    pub fn with_discretization(mut self, method: Option<DiscretizationMethod>) -> Self {
        self.discretization = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.verdict_threshold) {
            return Err(Error::InvalidParameter("verdict threshold must lie in [0, 1]".into()));
        }
        if let Some(p) = &self.selection {
            p.validate()?;
        }
        if let Some(d) = &self.discretization {
            d.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Adequate,
    NeedsMoreFeatures,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureInfo {
    pub name: String,
    pub kind: FeatureKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputSummary {
    pub examples: usize,
    pub label_count: usize,
    #[serde(serialize_with = "crate::report::histogram")]
    pub label_histogram: LabelHistogram,
    pub feature_count: usize,
    pub features: Vec<FeatureInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionSummary {
    pub applied: bool,
    pub method: Option<ScoreMethod>,
    pub candidates: Vec<String>,
    pub scores: Vec<FeatureScore>,
    pub selected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretizationSummary {
    pub applied: bool,
    pub method: Option<DiscretizationMethod>,
    pub schemes: Vec<IntervalScheme>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictSummary {
    pub outcome: Verdict,
    pub threshold: f64,
    pub rule: &'static str,
}

/// Everything one evaluation produced. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub name: String,
    pub input: InputSummary,
    pub selection: SelectionSummary,
    pub discretization: DiscretizationSummary,
    pub consistency: ConsistencyResult,
    pub verdict: VerdictSummary,
    pub config: EvaluationConfig,
    pub version: &'static str,
}

impl EvaluationReport {
    /// Recomputes the inconsistency from `base` using only the subset and
    /// schemes recorded in this report.
    pub fn replay(&self, base: &ExampleBase) -> Result<ConsistencyResult> {
        let selected = base.project(&FeatureSubset::of(&self.selection.selected))?;
        let discretized = apply_schemes(&selected, &self.discretization.schemes)?;
        inconsistency_rate(&discretized, &FeatureSubset::all(discretized.schema()))
    }
}

pub const VERDICT_RULE: &str = "needs more features when inconsistency > threshold * minority_proportion";

pub fn verdict(consistency: &ConsistencyResult, threshold: f64) -> Verdict {
    if consistency.inconsistency.to_f64() > threshold * consistency.minority_proportion.to_f64() {
        Verdict::NeedsMoreFeatures
    } else {
        Verdict::Adequate
    }
}

pub fn evaluate(name: &str, base: &ExampleBase, config: &EvaluationConfig) -> Result<EvaluationReport> {
    config.validate()?;
    let schema = base.schema();
    let input = InputSummary {
        examples: base.card(),
        label_count: schema.label_count(),
        label_histogram: base.label_histogram(),
        feature_count: schema.features().len(),
        features: schema
            .features()
            .iter()
            .map(|f| FeatureInfo { name: f.name().to_string(), kind: f.kind() })
            .collect(),
    };

    let candidates = match &config.features {
        Some(names) => FeatureSubset::of(names),
        None => FeatureSubset::all(schema),
    };
    let working = base.project(&candidates)?;
    let candidate_names: Vec<String> = working.schema().feature_names().map(str::to_string).collect();

    let (selected, scores) = match &config.selection {
        Some(policy) => {
            check_applicable(&working, policy)?;
            let subset = select_features(&working, policy)?;
            let scores = subset.provenance().map(|p| p.scores.clone()).unwrap_or_default();
            (subset, scores)
        }
        None => (FeatureSubset::all(working.schema()), Vec::new()),
    };
    let selected_base = working.project(&selected)?;

    let mut schemes = Vec::new();
    if let Some(method) = config.discretization {
        for f in selected_base.schema().features() {
            if f.kind() == FeatureKind::Numeric {
                schemes.push(compute_scheme(&selected_base, f.name(), method)?);
            }
        }
    }
    let final_base = apply_schemes(&selected_base, &schemes)?;
    let consistency = inconsistency_rate(&final_base, &FeatureSubset::all(final_base.schema()))?;
    let outcome = verdict(&consistency, config.verdict_threshold);

    Ok(EvaluationReport {
        name: name.to_string(),
        input,
        selection: SelectionSummary {
            applied: config.selection.is_some(),
            method: config.selection.map(|p| p.method),
            candidates: candidate_names,
            scores,
            selected: selected_base.schema().feature_names().map(str::to_string).collect(),
        },
        discretization: DiscretizationSummary {
            applied: config.discretization.is_some(),
            method: config.discretization,
            schemes,
        },
        consistency,
        verdict: VerdictSummary {
            outcome,
            threshold: config.verdict_threshold,
            rule: VERDICT_RULE,
        },
        config: config.clone(),
        version: VERSION,
    })
}

/// One named evaluation in a batch.
#[derive(Debug, Clone)]
pub struct BatchItem<'a> {
    pub name: String,
    pub base: &'a ExampleBase,
    pub config: EvaluationConfig,
}

impl<'a> BatchItem<'a> {
    pub fn new(name: impl Into<String>, base: &'a ExampleBase, config: EvaluationConfig) -> Self {
        BatchItem { name: name.into(), base, config }
    }
}

#[derive(Debug)]
pub struct BatchFailure {
    pub name: String,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct BatchOutcome {
    /// Ascending by inconsistency, then by name.
    pub reports: Vec<EvaluationReport>,
    /// In input order.
    pub failures: Vec<BatchFailure>,
}

/// Evaluates every item independently; failures are collected, not fatal.
pub fn evaluate_many(items: &[BatchItem<'_>]) -> BatchOutcome {
    let results: Vec<(String, Result<EvaluationReport>)> = items
        .par_iter()
        .map(|item| (item.name.clone(), evaluate(&item.name, item.base, &item.config)))
        .collect();
    let mut outcome = BatchOutcome::default();
    for (name, result) in results {
        match result {
            Ok(report) => outcome.reports.push(report),
            Err(error) => outcome.failures.push(BatchFailure { name, error }),
        }
    }
    outcome.reports.sort_by(|a, b| {
        a.consistency
            .inconsistency
            .cmp(&b.consistency.inconsistency)
            .then_with(|| a.name.cmp(&b.name))
    });
    outcome
}
