//! Supervised discretization of numeric features.
//!
//! An [`IntervalScheme`] with cuts `c1 < ... < cn` splits the real line into
//! the left-open, right-closed intervals `]-inf, c1]`, `]c1, c2]`, ...,
//! `]cn, +inf]`. Interval tokens follow that grammar exactly, with bounds
//! rendered as shortest round-trip decimals.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{Example, ExampleBase, FeatureDescriptor, FeatureKind, FeatureSchema, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalScheme {
    feature: String,
    cuts: Vec<f64>,
}

impl IntervalScheme {
    pub fn new(feature: impl Into<String>, cuts: Vec<f64>) -> Result<Self> {
        let feature = feature.into();
        if cuts.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite cut for `{feature}`")));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "cuts for `{feature}` are not strictly increasing"
            )));
        }
        Ok(IntervalScheme { feature, cuts })
    }

    pub fn feature(&self) -> &str {
        &self.feature
    }

    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    pub fn interval_count(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Index of the interval `]lo, hi]` containing `value`.
    pub fn interval_of(&self, value: f64) -> usize {
        self.cuts.partition_point(|&c| c < value)
    }

    pub fn token(&self, interval: usize) -> String {
        let lo = match interval {
            0 => "-inf".to_string(),
            i => format!("{}", self.cuts[i - 1]),
        };
        let hi = match self.cuts.get(interval) {
            Some(c) => format!("{c}"),
            None => "+inf".to_string(),
        };
        format!("]{lo}, {hi}]")
    }

    pub fn tokens(&self) -> Vec<String> {
        (0..self.interval_count()).map(|i| self.token(i)).collect()
    }

    pub fn token_of(&self, value: f64) -> String {
        self.token(self.interval_of(value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
#[derive(Default)]
pub enum DiscretizationMethod {
    #[default]
    Mdl,
    EqualWidth { bins: usize },
    EqualFrequency { bins: usize },
}


impl fmt::Display for DiscretizationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscretizationMethod::Mdl => f.write_str("mdl"),
            DiscretizationMethod::EqualWidth { bins } => write!(f, "equal-width:{bins}"),
            DiscretizationMethod::EqualFrequency { bins } => write!(f, "equal-frequency:{bins}"),
        }
    }
}

impl std::str::FromStr for DiscretizationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, bins) = match s.split_once(':') {
            Some((n, b)) => (
                n,
                Some(b.parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("bad bin count in `{s}`"))
                })?),
            ),
            None => (s, None),
        };
        let method = match (name, bins) {
            ("mdl", None) => DiscretizationMethod::Mdl,
            ("equal-width", Some(bins)) => DiscretizationMethod::EqualWidth { bins },
            ("equal-frequency", Some(bins)) => DiscretizationMethod::EqualFrequency { bins },
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown discretization `{s}` (mdl, equal-width:N, equal-frequency:N)"
                )))
            }
        };
        method.validate()?;
        Ok(method)
    }
}

impl DiscretizationMethod {
    pub fn validate(&self) -> Result<()> {
        match self {
            DiscretizationMethod::EqualWidth { bins: 0 }
            | DiscretizationMethod::EqualFrequency { bins: 0 } => {
                Err(Error::InvalidParameter("bin count must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Entropy in bits of a class-count vector summing to `n`.
pub(crate) fn entropy(counts: &[u64], n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// A point strictly between `a < b` that keeps `a` in the lower interval.
fn midpoint(a: f64, b: f64) -> f64 {
    let m = a / 2.0 + b / 2.0;
    if m >= b || m < a {
        a
    } else {
        m
    }
}

struct Block {
    value: f64,
    counts: Vec<u64>,
    n: u64,
}

/// Fayyad-Irani recursive entropy minimization with the MDLP stopping rule.
///
/// Candidate cuts are midpoints between adjacent distinct values whose class
/// distributions differ. At each level the candidate with the lowest weighted
/// class entropy is taken (lowest value on ties) and kept only if
///
/// ```text
/// gain > (log2(N-1) + log2(3^k - 2) - k*H(S) + k1*H(S1) + k2*H(S2)) / N
/// ```
///
/// where `k`, `k1`, `k2` count the classes present in each part.
pub fn mdl_cuts<T: Ord>(values: &[f64], labels: &[T]) -> Result<Vec<f64>> {
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch { values: values.len(), labels: labels.len() });
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite value".into()));
    }

    let mut classes: Vec<&T> = labels.iter().collect();
    classes.sort();
    classes.dedup();
    let k = classes.len();
    let class_of = |l: &T| classes.binary_search(&l).expect("known class");

    let mut pairs: Vec<(f64, usize)> =
        values.iter().zip(labels).map(|(&v, l)| (v, class_of(l))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut blocks: Vec<Block> = Vec::new();
    for (v, c) in pairs {
        match blocks.last_mut() {
            Some(b) if b.value == v => {
                b.counts[c] += 1;
                b.n += 1;
            }
            _ => {
                let mut counts = vec![0; k];
                counts[c] = 1;
                blocks.push(Block { value: v, counts, n: 1 });
            }
        }
    }

    let mut cuts = Vec::new();
    split(&blocks, k, &mut cuts);
    cuts.sort_by(f64::total_cmp);
    Ok(cuts)
}

fn same_distribution(a: &Block, b: &Block) -> bool {
    a.counts.iter().zip(&b.counts).all(|(&x, &y)| x * b.n == y * a.n)
}

fn split(blocks: &[Block], k: usize, cuts: &mut Vec<f64>) {
    if blocks.len() < 2 {
        return;
    }
    let mut total = vec![0u64; k];
    for b in blocks {
        for (t, c) in total.iter_mut().zip(&b.counts) {
            *t += c;
        }
    }
    let n: u64 = total.iter().sum();
    let ent = entropy(&total, n);
    if ent == 0.0 {
        return;
    }

    let mut left = vec![0u64; k];
    let mut nl = 0u64;
    let mut best: Option<(usize, f64, Vec<u64>)> = None;
    for i in 1..blocks.len() {
        for (l, c) in left.iter_mut().zip(&blocks[i - 1].counts) {
            *l += c;
        }
        nl += blocks[i - 1].n;
        if same_distribution(&blocks[i - 1], &blocks[i]) {
            continue;
        }
        let right: Vec<u64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
        let nr = n - nl;
        let e = (nl as f64 * entropy(&left, nl) + nr as f64 * entropy(&right, nr)) / n as f64;
        if best.as_ref().is_none_or(|(_, be, _)| e < *be) {
            best = Some((i, e, left.clone()));
        }
    }
    let Some((i, e, left)) = best else { return };

    let right: Vec<u64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
    let nl: u64 = left.iter().sum();
    let nr = n - nl;
    if mdlp_accepts(&total, n, ent, e, &left, nl, &right, nr) {
        cuts.push(midpoint(blocks[i - 1].value, blocks[i].value));
        split(&blocks[..i], k, cuts);
        split(&blocks[i..], k, cuts);
    }
}

#[allow(clippy::too_many_arguments)]
fn mdlp_accepts(
    total: &[u64],
    n: u64,
    ent: f64,
    split_ent: f64,
    left: &[u64],
    nl: u64,
    right: &[u64],
    nr: u64,
) -> bool {
    let present = |c: &[u64]| c.iter().filter(|&&x| x > 0).count() as i32;
    let (k, k1, k2) = (present(total), present(left), present(right));
    let (e1, e2) = (entropy(left, nl), entropy(right, nr));
    let gain = ent - split_ent;
    let delta = (3f64.powi(k) - 2.0).log2() - (k as f64 * ent - k1 as f64 * e1 - k2 as f64 * e2);
    let n = n as f64;
    gain > ((n - 1.0).log2() + delta) / n
}

/// `bins - 1` evenly spaced cuts between the minimum and maximum.
pub fn equal_width_cuts(values: &[f64], bins: usize) -> Result<Vec<f64>> {
    let (lo, hi) = finite_range(values)?;
    if bins == 0 {
        return Err(Error::InvalidParameter("bin count must be at least 1".into()));
    }
    if lo == hi {
        return Ok(Vec::new());
    }
    let mut cuts: Vec<f64> = (1..bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect();
    cuts.dedup();
    Ok(cuts)
}

/// Cuts at the `i/bins` quantile positions, skipped where equal values straddle them.
pub fn equal_frequency_cuts(values: &[f64], bins: usize) -> Result<Vec<f64>> {
    finite_range(values)?;
    if bins == 0 {
        return Err(Error::InvalidParameter("bin count must be at least 1".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let mut cuts: Vec<f64> = Vec::new();
    for i in 1..bins {
        let pos = i * n / bins;
        if pos == 0 || pos >= n {
            continue;
        }
        let (a, b) = (sorted[pos - 1], sorted[pos]);
        if a < b {
            let c = midpoint(a, b);
            if cuts.last().is_none_or(|&l| l < c) {
                cuts.push(c);
            }
        }
    }
    Ok(cuts)
}

fn finite_range(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite value".into()));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Computes a scheme for one numeric feature of `base`.
pub fn compute_scheme(
    base: &ExampleBase,
    feature: &str,
    method: DiscretizationMethod,
) -> Result<IntervalScheme> {
    let idx = base.schema().feature_index(feature)?;
    let values = base.numeric_column(idx).ok_or_else(|| Error::NotNumeric(feature.to_string()))?;
    let cuts = match method {
        DiscretizationMethod::Mdl => mdl_cuts(&values, &base.label_indices())?,
        DiscretizationMethod::EqualWidth { bins } => equal_width_cuts(&values, bins)?,
        DiscretizationMethod::EqualFrequency { bins } => equal_frequency_cuts(&values, bins)?,
    };
    IntervalScheme::new(feature, cuts)
}

/// Replaces each covered numeric feature by its interval tokens.
pub fn apply_schemes(base: &ExampleBase, schemes: &[IntervalScheme]) -> Result<ExampleBase> {
    let schema = base.schema();
    let mut by_column: Vec<Option<&IntervalScheme>> = vec![None; schema.features().len()];
    let mut seen = HashSet::new();
    for s in schemes {
        let idx = schema.feature_index(&s.feature)?;
        if schema.features()[idx].kind() != FeatureKind::Numeric {
            return Err(Error::NotNumeric(s.feature.clone()));
        }
        if !seen.insert(idx) {
            return Err(Error::DuplicateScheme(s.feature.clone()));
        }
        by_column[idx] = Some(s);
    }

    let features = schema
        .features()
        .iter()
        .zip(&by_column)
        .map(|(f, s)| match s {
            Some(s) => FeatureDescriptor::nominal(f.name(), s.tokens()),
            None => Ok(f.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    let new_schema = FeatureSchema::new(features, schema.label_name(), schema.labels().to_vec())?;

    let examples = base
        .examples()
        .iter()
        .map(|e| {
            let values = e
                .values()
                .iter()
                .zip(&by_column)
                .map(|(v, s)| match (s, v) {
                    (Some(s), Value::Numeric(x)) => Value::Nominal(s.interval_of(*x) as u32),
                    _ => *v,
                })
                .collect();
            Example::new(values, e.label())
        })
        .collect();
    ExampleBase::new(new_schema, examples)
}
