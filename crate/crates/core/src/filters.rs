//! Supervised per-feature relevance scores and subset selection.
//!
//! Info gain and chi-squared work on nominal domains. When a numeric feature
//! is scored with either of them through [`score_features`], it is binned on
//! the fly with MDL cuts computed on that feature alone; those bins are
//! discarded afterwards. Relief handles numeric and nominal features
//! directly but needs exactly two labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{ExampleBase, FeatureSubset, Value};
use crate::discretize::{entropy, mdl_cuts, IntervalScheme};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreMethod {
    ChiSquared,
    InfoGain,
    Relief,
}

impl fmt::Display for ScoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreMethod::ChiSquared => "chi-squared",
            ScoreMethod::InfoGain => "info-gain",
            ScoreMethod::Relief => "relief",
        })
    }
}

impl std::str::FromStr for ScoreMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi2" | "chi-squared" | "chisquared" => Ok(ScoreMethod::ChiSquared),
            "infogain" | "info-gain" => Ok(ScoreMethod::InfoGain),
            "relief" => Ok(ScoreMethod::Relief),
            _ => Err(Error::InvalidParameter(format!(
                "unknown scoring method `{s}` (infogain, chi2, relief)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureScore {
    pub feature: String,
    pub method: ScoreMethod,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SelectionMode {
    /// Keep features scoring strictly above the threshold.
    Threshold { threshold: f64 },
    /// Keep the `k` best features; ties go to the earlier schema column.
    TopK { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[derive(Default)]
pub struct ReliefParams {
    /// Sampled examples; `None` samples `card(B)` times.
    pub samples: Option<usize>,
    pub seed: u64,
}


#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionPolicy {
    pub method: ScoreMethod,
    #[serde(flatten)]
    pub mode: SelectionMode,
    pub relief: ReliefParams,
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        SelectionPolicy {
            method: ScoreMethod::InfoGain,
            mode: SelectionMode::Threshold { threshold: 0.0 },
            relief: ReliefParams::default(),
        }
    }
}

impl SelectionPolicy {
    pub fn threshold(method: ScoreMethod, threshold: f64) -> Self {
        SelectionPolicy { method, mode: SelectionMode::Threshold { threshold }, ..Default::default() }
    }

    pub fn top_k(method: ScoreMethod, k: usize) -> Self {
        SelectionPolicy { method, mode: SelectionMode::TopK { k }, ..Default::default() }
    }

    pub fn with_relief(mut self, relief: ReliefParams) -> Self {
        self.relief = relief;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            SelectionMode::TopK { k: 0 } => {
                Err(Error::InvalidParameter("top-k needs k >= 1".into()))
            }
            SelectionMode::Threshold { threshold } if !threshold.is_finite() => {
                Err(Error::InvalidParameter("threshold must be finite".into()))
            }
            SelectionMode::Threshold { threshold }
                if threshold < 0.0 && self.method != ScoreMethod::Relief =>
            {
                Err(Error::InvalidParameter(format!(
                    "{} threshold must be non-negative",
                    self.method
                )))
            }
            _ if self.relief.samples == Some(0) => {
                Err(Error::InvalidParameter("relief needs at least one sample".into()))
            }
            _ => Ok(()),
        }
    }
}

/// How a [`FeatureSubset`] was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub policy: SelectionPolicy,
    pub scores: Vec<FeatureScore>,
}

/// Feature-value x label counts; rows follow the feature's value codes,
/// columns the schema's label set.
struct Contingency {
    rows: Vec<Vec<u64>>,
    labels: Vec<u64>,
    n: u64,
}

impl Contingency {
    fn new(codes: impl Iterator<Item = (usize, usize)>, n_codes: usize, n_labels: usize) -> Self {
        let mut rows = vec![vec![0u64; n_labels]; n_codes];
        let mut labels = vec![0u64; n_labels];
        let mut n = 0;
        for (code, label) in codes {
            rows[code][label] += 1;
            labels[label] += 1;
            n += 1;
        }
        Contingency { rows, labels, n }
    }

    fn info_gain(&self) -> f64 {
        let h = entropy(&self.labels, self.n);
        let conditional: Vec<(u64, f64)> = self
            .rows
            .iter()
            .map(|r| (r.iter().sum::<u64>(), r))
            .filter(|(nv, _)| *nv > 0)
            .map(|(nv, r)| (nv, entropy(r, nv)))
            .collect();
        // A weighted mean of identical terms is that term.
        let h_cond = if conditional.iter().all(|(_, hv)| hv.to_bits() == h.to_bits()) {
            h
        } else {
            conditional.iter().map(|&(nv, hv)| nv as f64 / self.n as f64 * hv).sum()
        };
        (h - h_cond).max(0.0)
    }

    fn chi_squared(&self) -> f64 {
        let n = self.n as f64;
        let mut stat = 0.0;
        for row in &self.rows {
            let nv: u64 = row.iter().sum();
            for (&observed, &nl) in row.iter().zip(&self.labels) {
                let expected = (nv * nl) as f64 / n;
                if expected > 0.0 {
                    let d = observed as f64 - expected;
                    stat += d * d / expected;
                }
            }
        }
        stat
    }
}

fn nominal_table(base: &ExampleBase, feature: &str) -> Result<Contingency> {
    let idx = base.schema().feature_index(feature)?;
    let desc = &base.schema().features()[idx];
    let Some(vocab) = desc.vocabulary() else {
        return Err(Error::NumericFeatureUnsupported(feature.to_string()));
    };
    let codes = base.examples().iter().map(|e| {
        let code = e.values()[idx].as_token().expect("nominal value") as usize;
        (code, e.label())
    });
    Ok(Contingency::new(codes, vocab.len(), base.schema().label_count()))
}

/// Table for any feature; numeric features are binned with MDL cuts first.
fn binned_table(base: &ExampleBase, feature: &str) -> Result<Contingency> {
    let idx = base.schema().feature_index(feature)?;
    match base.numeric_column(idx) {
        None => nominal_table(base, feature),
        Some(values) => {
            let labels = base.label_indices();
            let scheme = IntervalScheme::new(feature, mdl_cuts(&values, &labels)?)?;
            let codes = values.iter().map(|&v| scheme.interval_of(v)).zip(labels.iter().copied());
            Ok(Contingency::new(codes, scheme.interval_count(), base.schema().label_count()))
        }
    }
}

/// `H(L) - H(L | feature)` in bits, for a nominal feature.
pub fn info_gain(base: &ExampleBase, feature: &str) -> Result<f64> {
    Ok(nominal_table(base, feature)?.info_gain())
}

/// Pearson chi-squared statistic of the feature x label table, for a nominal
/// feature. Cells with zero expected count contribute nothing.
pub fn chi_squared(base: &ExampleBase, feature: &str) -> Result<f64> {
    Ok(nominal_table(base, feature)?.chi_squared())
}

/// Binary Relief weights of every feature, in schema order.
///
/// Draws `samples` examples with replacement; for each, finds the nearest
/// other example with the same label (hit) and with the other label (miss)
/// under the sum of per-feature differences, and adds
/// `diff(miss) - diff(hit)` per feature. Numeric differences are scaled by
/// the feature's range; nominal ones are 0 or 1. Nearest-neighbour ties go
/// to the earlier example. A sample whose class has no other member gets no
/// hit term.
pub fn relief_weights(base: &ExampleBase, samples: usize, seed: u64) -> Result<Vec<f64>> {
    let schema = base.schema();
    if schema.label_count() != 2 {
        return Err(Error::NotBinaryLabels(schema.label_count()));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("relief needs at least one sample".into()));
    }
    let hist = base.label_histogram();
    if let Some((label, _)) = hist.iter().find(|(_, c)| *c == 0) {
        return Err(Error::DegenerateBase(label.to_string()));
    }

    let nf = schema.features().len();
    let spans: Vec<f64> = (0..nf)
        .map(|f| match base.numeric_column(f) {
            Some(col) => {
                let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            }
            None => 0.0,
        })
        .collect();
    let diff = |f: usize, a: &Value, b: &Value| -> f64 {
        match (a, b) {
            (Value::Numeric(x), Value::Numeric(y)) => {
                if spans[f] > 0.0 {
                    (x - y).abs() / spans[f]
                } else {
                    0.0
                }
            }
            _ => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
        }
    };
    let examples = base.examples();
    let distance = |i: usize, j: usize| -> f64 {
        let (a, b) = (examples[i].values(), examples[j].values());
        (0..nf).map(|f| diff(f, &a[f], &b[f])).sum()
    };

    let mut rng = SeededRng::new(seed);
    let mut weights = vec![0.0; nf];
    for _ in 0..samples {
        let x = rng.below(examples.len());
        let mut hit: Option<(usize, f64)> = None;
        let mut miss: Option<(usize, f64)> = None;
        for j in 0..examples.len() {
            if j == x {
                continue;
            }
            let d = distance(x, j);
            let slot = if examples[j].label() == examples[x].label() { &mut hit } else { &mut miss };
            if slot.is_none_or(|(_, best)| d < best) {
                *slot = Some((j, d));
            }
        }
        let xv = examples[x].values();
        for (f, w) in weights.iter_mut().enumerate() {
            if let Some((h, _)) = hit {
                *w -= diff(f, &xv[f], &examples[h].values()[f]);
            }
            if let Some((m, _)) = miss {
                *w += diff(f, &xv[f], &examples[m].values()[f]);
            }
        }
    }
    for w in &mut weights {
        *w /= samples as f64;
    }
    Ok(weights)
}

pub fn relief_score(base: &ExampleBase, feature: &str, samples: usize, seed: u64) -> Result<f64> {
    let idx = base.schema().feature_index(feature)?;
    Ok(relief_weights(base, samples, seed)?[idx])
}

/// Scores every feature of `base` with `method`.
pub fn score_features(
    base: &ExampleBase,
    method: ScoreMethod,
    relief: &ReliefParams,
) -> Result<Vec<FeatureScore>> {
    let names: Vec<String> = base.schema().feature_names().map(str::to_string).collect();
    let values: Vec<f64> = match method {
        ScoreMethod::Relief => {
            relief_weights(base, relief.samples.unwrap_or(base.card()), relief.seed)?
        }
        ScoreMethod::InfoGain => names
            .iter()
            .map(|f| binned_table(base, f).map(|t| t.info_gain()))
            .collect::<Result<_>>()?,
        ScoreMethod::ChiSquared => names
            .iter()
            .map(|f| binned_table(base, f).map(|t| t.chi_squared()))
            .collect::<Result<_>>()?,
    };
    Ok(names
        .into_iter()
        .zip(values)
        .map(|(feature, value)| FeatureScore { feature, method, value })
        .collect())
}

/// Applies the selection rule to scores listed in schema order; the result
/// keeps schema order.
pub fn select_by_scores(scores: &[FeatureScore], mode: SelectionMode) -> Vec<String> {
    let keep: Vec<bool> = match mode {
        SelectionMode::Threshold { threshold } => {
            scores.iter().map(|s| s.value > threshold).collect()
        }
        SelectionMode::TopK { k } => {
            let mut order: Vec<usize> = (0..scores.len()).collect();
            order.sort_by(|&a, &b| scores[b].value.total_cmp(&scores[a].value).then(a.cmp(&b)));
            let mut keep = vec![false; scores.len()];
            for &i in order.iter().take(k) {
                keep[i] = true;
            }
            keep
        }
    };
    scores
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| s.feature.clone())
        .collect()
}

pub fn select_features(base: &ExampleBase, policy: &SelectionPolicy) -> Result<FeatureSubset> {
    policy.validate()?;
    let scores = score_features(base, policy.method, &policy.relief)?;
    let selected = select_by_scores(&scores, policy.mode);
    Ok(FeatureSubset::of(selected).with_provenance(Provenance { policy: *policy, scores }))
}

/// Rejects policies the base cannot support before any scoring runs.
pub fn check_applicable(base: &ExampleBase, policy: &SelectionPolicy) -> Result<()> {
    if policy.method == ScoreMethod::Relief && base.schema().label_count() != 2 {
        return Err(Error::ConfigIncompatible(format!(
            "relief needs exactly two labels, the base declares {}",
            base.schema().label_count()
        )));
    }
    Ok(())
}
