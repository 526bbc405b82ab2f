//! Compare nested candidate feature sets on one base, best first.
//!
//! The label is a majority vote over three binary features. Noise features
//! alone leave the base as inconsistent as guessing the majority label; one
//! voter helps, all three settle it.

use featcheck::{evaluate_many, gen_consistent, BatchItem, EvaluationConfig, GeneratorSpec};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GeneratorSpec {
        seed: 0,
        example_count: 200,
        relevant_feature_count: 3,
        irrelevant_feature_count: 2,
        ..Default::default()
    };
    let base = gen_consistent(&spec)?;
    let sets: [(&str, &[&str]); 4] = [
        ("noise", &["irr_0", "irr_1"]),
        ("noise+1", &["irr_0", "irr_1", "rel_0"]),
        ("noise+3", &["irr_0", "irr_1", "rel_0", "rel_1", "rel_2"]),
        ("typo", &["rel_0", "rel_9"]),
    ];
    let items: Vec<BatchItem<'_>> = sets
        .iter()
        .map(|(name, features)| {
            BatchItem::new(*name, &base, EvaluationConfig::default().with_features(features.iter().copied()))
        })
        .collect();

    let outcome = evaluate_many(&items);
    for r in &outcome.reports {
        println!(
            "{:<8} kept {:<28} inconsistency {:.3}  verdict {:?}",
            r.name,
            r.selection.selected.join(","),
            r.consistency.inconsistency,
            r.verdict.outcome
        );
    }
    for f in &outcome.failures {
        println!("{:<8} failed: {}", f.name, f.error);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
