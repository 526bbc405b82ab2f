//! Inconsistency rate of an example base and its bounds.
//!
//! ```text
//! Inconsistency(B) = 1 - sum_{s in S_B} max_{l in L} nb_examples(s, l) / card(B)
//! ```
//!
//! All quantities are exact ratios of example counts.

use serde::Serialize;

use crate::base::{ExampleBase, FeatureSubset, LabelHistogram};
use crate::error::{Error, Result};
use crate::rate::Rate;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescriptionSummary {
    /// Rendered cell values, in schema order of the evaluated subset.
    pub values: Vec<String>,
    #[serde(serialize_with = "crate::report::ordered_counts")]
    pub label_counts: Vec<(String, u64)>,
    /// Presentational: ties resolve to the earliest label in the label set.
    pub majority_label: String,
    pub majority_count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyResult {
    pub inconsistency: Rate,
    pub minority_proportion: Rate,
    pub theoretical_max: Rate,
    pub distinct_descriptions: usize,
    pub examples: u64,
    /// Sum over descriptions of the majority label count.
    pub majority_total: u64,
    pub descriptions: Vec<DescriptionSummary>,
}

impl ConsistencyResult {
    /// Inconsistency divided by the minority proportion; `None` when the
    /// minority proportion is zero.
    pub fn ratio_to_minority(&self) -> Option<Rate> {
        self.inconsistency.checked_div(&self.minority_proportion)
    }
}

pub fn inconsistency_rate(base: &ExampleBase, subset: &FeatureSubset) -> Result<ConsistencyResult> {
    let groups = base.description_groups(subset)?;
    let labels = base.schema().labels();
    let card = base.card() as u64;

    let mut majority_total = 0u64;
    let mut descriptions = Vec::with_capacity(groups.len());
    for g in &groups {
        let (majority, count) = g.majority();
        majority_total += count;
        descriptions.push(DescriptionSummary {
            values: base.render_description(subset, &g.description)?,
            label_counts: labels.iter().cloned().zip(g.label_counts.iter().copied()).collect(),
            majority_label: labels[majority].clone(),
            majority_count: count,
        });
    }

    Ok(ConsistencyResult {
        inconsistency: Rate::new(card - majority_total, card),
        minority_proportion: minority_bound(&base.label_histogram())?,
        theoretical_max: theoretical_max(labels.len())?,
        distinct_descriptions: groups.len(),
        examples: card,
        majority_total,
        descriptions,
    })
}

/// Upper bound `1 - 1/|L|`, reached when every description carries every
/// label equally often.
pub fn theoretical_max(label_count: usize) -> Result<Rate> {
    if label_count < 2 {
        return Err(Error::TooFewLabels(label_count));
    }
    Ok(Rate::new(label_count as u64 - 1, label_count as u64))
}

/// `1 - max(count)/total`: the share of examples outside the most frequent
/// label. Equals the inconsistency rate when no feature is kept.
pub fn minority_bound(histogram: &LabelHistogram) -> Result<Rate> {
    let total = histogram.total();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    Ok(Rate::new(total - histogram.max_count(), total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InconsistencyDelta {
    pub smaller: Rate,
    pub larger: Rate,
    /// `smaller - larger`; never negative.
    pub delta: Rate,
}

/// Rates over a subset and one of its supersets.
pub fn inconsistency_delta(
    base: &ExampleBase,
    smaller: &FeatureSubset,
    larger: &FeatureSubset,
) -> Result<InconsistencyDelta> {
    if let Some(extra) = smaller.names().iter().find(|n| !larger.contains(n)) {
        return Err(Error::NotASubset(extra.clone()));
    }
    let small = inconsistency_rate(base, smaller)?.inconsistency;
    let large = inconsistency_rate(base, larger)?.inconsistency;
    let delta = small
        .checked_sub(&large)
        .expect("refining the description partition cannot raise the rate");
    Ok(InconsistencyDelta { smaller: small, larger: large, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csvio::read_csv_str;
    use crate::fixtures;

    #[test]
    fn running_example_golden_values() {
        let ex1 = fixtures::b_ex1();
        let r1 = inconsistency_rate(&ex1, &FeatureSubset::all(ex1.schema())).unwrap();
        assert_eq!(r1.inconsistency, Rate::ZERO);
        assert_eq!(r1.distinct_descriptions, 8);

        let ex2 = fixtures::b_ex2();
        let r2 = inconsistency_rate(&ex2, &FeatureSubset::all(ex2.schema())).unwrap();
        assert_eq!(r2.inconsistency, Rate::new(1, 4));
        assert_eq!(r2.majority_total, 6);
        let maxima: Vec<u64> = r2.descriptions.iter().map(|d| d.majority_count).collect();
        assert_eq!(maxima, [2, 1, 1, 1, 1]);
        assert_eq!(r2.minority_proportion, Rate::new(3, 8));
        assert_eq!(r2.theoretical_max, Rate::new(1, 2));
    }

    #[test]
    fn empty_subset_gives_minority() {
        let ex2 = fixtures::b_ex2();
        let r = inconsistency_rate(&ex2, &FeatureSubset::empty()).unwrap();
        assert_eq!(r.inconsistency, r.minority_proportion);
        assert_eq!(r.distinct_descriptions, 1);
    }

    #[test]
    fn theoretical_max_values() {
        assert_eq!(theoretical_max(2).unwrap(), Rate::new(1, 2));
        assert_eq!(theoretical_max(4).unwrap(), Rate::new(3, 4));
        assert!(matches!(theoretical_max(1), Err(Error::TooFewLabels(1))));
    }

    #[test]
    fn split_description_attains_max() {
        let b = read_csv_str("x,y\na,+\na,-\n", "y").unwrap();
        let r = inconsistency_rate(&b, &FeatureSubset::all(b.schema())).unwrap();
        assert_eq!(r.inconsistency, Rate::new(1, 2));
        assert_eq!(r.inconsistency, r.theoretical_max);
        // tie: majority label is the first declared label
        assert_eq!(r.descriptions[0].majority_label, "+");
    }

    #[test]
    fn minority_bound_values() {
        let h = LabelHistogram::from_counts([("stop", 29), ("continue", 71)]);
        assert_eq!(minority_bound(&h).unwrap(), Rate::new(29, 100));
        assert_eq!(minority_bound(&h).unwrap().to_f64(), 0.29);
        assert_eq!(minority_bound(&LabelHistogram::from_counts([("+", 8)])).unwrap(), Rate::ZERO);
        let h = LabelHistogram::from_counts([("a", 4), ("b", 4)]);
        assert_eq!(minority_bound(&h).unwrap(), Rate::new(1, 2));
        assert!(matches!(
            minority_bound(&LabelHistogram::from_counts(Vec::<(String, u64)>::new())),
            Err(Error::EmptyHistogram)
        ));
        assert!(matches!(
            minority_bound(&LabelHistogram::from_counts([("a", 0)])),
            Err(Error::EmptyHistogram)
        ));
    }

    #[test]
    fn delta() {
        let b = read_csv_str("k,noise,y\na,1,+\na,2,+\nb,1,-\nb,2,-\na,1,+\nb,2,-\n", "y").unwrap();
        let k = FeatureSubset::of(["k"]);
        let same = inconsistency_delta(&b, &k, &k).unwrap();
        assert_eq!(same.delta, Rate::ZERO);

        let d = inconsistency_delta(&b, &FeatureSubset::empty(), &k).unwrap();
        assert_eq!(d.smaller, Rate::new(1, 2));
        assert_eq!(d.larger, Rate::ZERO);
        assert_eq!(d.delta, d.smaller);

        assert!(matches!(
            inconsistency_delta(&b, &FeatureSubset::of(["noise"]), &k),
            Err(Error::NotASubset(n)) if n == "noise"
        ));
    }
}
