//! Filter scores on a synthetic base with two relevant and three noise
//! features. Info gain and chi-squared bin the numeric noise columns with
//! MDL before scoring; Relief works on the raw values.

use featcheck::{
    gen_consistent, score_features, select_features, GeneratorSpec, ReliefParams, ScoreMethod,
    SelectionPolicy,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GeneratorSpec {
        seed: 7,
        example_count: 300,
        relevant_feature_count: 2,
        irrelevant_feature_count: 3,
        ..Default::default()
    };
    let base = gen_consistent(&spec)?;
    let relief = ReliefParams { samples: Some(100), seed: 1 };

    for method in [ScoreMethod::InfoGain, ScoreMethod::ChiSquared, ScoreMethod::Relief] {
        println!("{method}");
        for s in score_features(&base, method, &relief)? {
            println!("  {:<8} {:>9.4}", s.feature, s.value);
        }
    }

    let kept = select_features(&base, &SelectionPolicy::default())?;
    println!("info gain > 0 keeps {:?}", kept.names());
    let top = select_features(&base, &SelectionPolicy::top_k(ScoreMethod::Relief, 2).with_relief(relief))?;
    println!("relief top 2 keeps {:?}", top.names());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
