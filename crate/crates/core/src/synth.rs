//! Seeded synthetic example bases.
//!
//! Relevant features `rel_i` are 0/1 levels drawn with probability 1/2. The
//! label of a consistent base is a threshold on how many relevant features
//! are set: `label = floor(ones * L / (k + 1))` for `k` relevant features
//! and `L` labels. Each relevant feature is informative on its own, none is
//! sufficient on its own when `k >= 2`, and together they determine the
//! label. Irrelevant features `irr_i` are uniform on `[0, 1)` at 1e-4
//! resolution and independent of everything else.

use serde::{Deserialize, Serialize};

use crate::base::{Example, ExampleBase, FeatureDescriptor, FeatureSchema, Value};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub const LABEL_COLUMN: &str = "label";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub example_count: usize,
    pub label_count: usize,
    pub relevant_feature_count: usize,
    pub irrelevant_feature_count: usize,
    /// Fraction of examples whose label is redrawn uniformly.
    pub noise_rate: f64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            seed: 0,
            example_count: 100,
            label_count: 2,
            relevant_feature_count: 2,
            irrelevant_feature_count: 2,
            noise_rate: 0.0,
        }
    }
}

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        if self.example_count == 0 {
            return Err(Error::SpecInvalid("example_count must be positive".into()));
        }
        if self.label_count < 2 {
            return Err(Error::SpecInvalid("label_count must be at least 2".into()));
        }
        if !(0.0..=1.0).contains(&self.noise_rate) {
            return Err(Error::SpecInvalid("noise_rate must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

pub fn label_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("l{i}")).collect()
}

fn schema(relevant: usize, irrelevant: usize, labels: usize) -> Result<FeatureSchema> {
    let features = (0..relevant)
        .map(|i| FeatureDescriptor::numeric(format!("rel_{i}")))
        .chain((0..irrelevant).map(|i| FeatureDescriptor::numeric(format!("irr_{i}"))))
        .collect();
    FeatureSchema::new(features, LABEL_COLUMN, label_names(labels))
}

fn generate(spec: &GeneratorSpec, rng: &mut SeededRng) -> Result<ExampleBase> {
    let k = spec.relevant_feature_count;
    let labels = spec.label_count;
    let schema = schema(k, spec.irrelevant_feature_count, labels)?;
    let examples = (0..spec.example_count)
        .map(|_| {
            let mut values = Vec::with_capacity(k + spec.irrelevant_feature_count);
            let mut ones = 0;
            for _ in 0..k {
                let bit = rng.bernoulli(0.5);
                ones += bit as usize;
                values.push(Value::Numeric(if bit { 1.0 } else { 0.0 }));
            }
            for _ in 0..spec.irrelevant_feature_count {
                values.push(Value::Numeric(rng.below(10_000) as f64 / 10_000.0));
            }
            Example::new(values, ones * labels / (k + 1))
        })
        .collect();
    ExampleBase::new(schema, examples)
}

/// Noise-free base: the label is a function of the relevant features.
pub fn gen_consistent(spec: &GeneratorSpec) -> Result<ExampleBase> {
    spec.validate()?;
    if spec.relevant_feature_count == 0 {
        return Err(Error::SpecInvalid("a consistent base needs a relevant feature".into()));
    }
    if spec.noise_rate != 0.0 {
        return Err(Error::SpecInvalid("gen_consistent takes noise_rate 0".into()));
    }
    generate(spec, &mut SeededRng::new(spec.seed))
}

/// As [`gen_consistent`], then `round(noise_rate * N)` distinct examples get a
/// label drawn uniformly from the label set. With no relevant features every
/// label starts as `l0`, so the noise rate controls the minority share.
pub fn gen_noisy(spec: &GeneratorSpec) -> Result<ExampleBase> {
    spec.validate()?;
    let mut rng = SeededRng::new(spec.seed);
    let base = generate(spec, &mut rng)?;
    let n = base.card();
    let flips = (spec.noise_rate * n as f64).round() as usize;
    if flips == 0 {
        return Ok(base);
    }
    let mut examples = base.examples().to_vec();
    for i in rng.sample_indices(n, flips) {
        let label = rng.below(spec.label_count);
        examples[i] = Example::new(examples[i].values().to_vec(), label);
    }
    base.with_examples(examples)
}

/// Every description carries every label `copies_per_label` times, so the
/// inconsistency rate is exactly `1 - 1/label_count`.
pub fn gen_worst(
    label_count: usize,
    descriptions: usize,
    copies_per_label: usize,
) -> Result<ExampleBase> {
    if label_count < 2 || descriptions == 0 || copies_per_label == 0 {
        return Err(Error::SpecInvalid(
            "gen_worst needs label_count >= 2 and positive descriptions and copies".into(),
        ));
    }
    let feature =
        FeatureDescriptor::nominal("d", (0..descriptions).map(|i| format!("d{i}")))?;
    let schema = FeatureSchema::new(vec![feature], LABEL_COLUMN, label_names(label_count))?;
    let mut examples = Vec::with_capacity(label_count * descriptions * copies_per_label);
    for d in 0..descriptions {
        for label in 0..label_count {
            for _ in 0..copies_per_label {
                examples.push(Example::new(vec![Value::Nominal(d as u32)], label));
            }
        }
    }
    ExampleBase::new(schema, examples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::FeatureSubset;
    use crate::consistency::inconsistency_rate;
    use crate::rate::Rate;

    fn spec() -> GeneratorSpec {
        GeneratorSpec {
            seed: 1,
            example_count: 100,
            relevant_feature_count: 2,
            irrelevant_feature_count: 3,
            ..Default::default()
        }
    }

    #[test]
    fn consistent_full_set_is_zero() {
        let b = gen_consistent(&spec()).unwrap();
        assert_eq!(b.card(), 100);
        assert_eq!(b.schema().features().len(), 5);
        let r = inconsistency_rate(&b, &FeatureSubset::all(b.schema())).unwrap();
        assert_eq!(r.inconsistency, Rate::ZERO);
        let r = inconsistency_rate(&b, &FeatureSubset::of(["rel_0", "rel_1"])).unwrap();
        assert_eq!(r.inconsistency, Rate::ZERO);
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_consistent(&spec()).unwrap(), gen_consistent(&spec()).unwrap());
        let other = GeneratorSpec { seed: 2, ..spec() };
        assert_ne!(gen_consistent(&spec()).unwrap(), gen_consistent(&other).unwrap());
    }

    #[test]
    fn spec_validation() {
        assert!(gen_consistent(&GeneratorSpec { relevant_feature_count: 0, ..spec() }).is_err());
        assert!(gen_consistent(&GeneratorSpec { label_count: 1, ..spec() }).is_err());
        assert!(gen_consistent(&GeneratorSpec { example_count: 0, ..spec() }).is_err());
        assert!(gen_noisy(&GeneratorSpec { noise_rate: 1.5, ..spec() }).is_err());
        assert!(gen_worst(1, 1, 1).is_err());
        assert!(gen_worst(2, 0, 1).is_err());
    }

    #[test]
    fn worst_case_values() {
        for (l, d, c, expected) in [(2, 1, 1, Rate::new(1, 2)), (3, 4, 2, Rate::new(2, 3)), (2, 5, 10, Rate::new(1, 2))] {
            let b = gen_worst(l, d, c).unwrap();
            assert_eq!(b.card(), l * d * c);
            let r = inconsistency_rate(&b, &FeatureSubset::all(b.schema())).unwrap();
            assert_eq!(r.inconsistency, expected);
            assert_eq!(r.inconsistency, r.theoretical_max);
        }
    }

    #[test]
    fn zero_noise_matches_consistent() {
        assert_eq!(gen_noisy(&spec()).unwrap(), gen_consistent(&spec()).unwrap());
    }

    #[test]
    fn full_noise_approaches_half() {
        let s = GeneratorSpec {
            seed: 5,
            example_count: 4000,
            relevant_feature_count: 1,
            irrelevant_feature_count: 0,
            noise_rate: 1.0,
            ..Default::default()
        };
        let b = gen_noisy(&s).unwrap();
        let r = inconsistency_rate(&b, &FeatureSubset::all(b.schema())).unwrap();
        assert_eq!(r.distinct_descriptions, 2);
        // two descriptions of ~2000 fair coin flips: expected shortfall from 1/2 is ~0.009
        assert!((r.inconsistency.to_f64() - 0.5).abs() < 0.03, "{}", r.inconsistency);
        assert_eq!(gen_noisy(&s).unwrap(), b);
    }
}
