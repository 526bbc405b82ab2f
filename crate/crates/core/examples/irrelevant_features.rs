//! When no candidate feature is related to the label, the filter keeps
//! nothing and the inconsistency rate falls back to the minority
//! proportion.

use featcheck::{evaluate, gen_noisy, EvaluationConfig, GeneratorSpec};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (seed, noise) in [(1, 0.3), (2, 0.6), (3, 0.9)] {
        let spec = GeneratorSpec {
            seed,
            example_count: 200,
            relevant_feature_count: 0,
            irrelevant_feature_count: 3,
            noise_rate: noise,
            ..Default::default()
        };
        let base = gen_noisy(&spec)?;
        let report = evaluate("noise", &base, &EvaluationConfig::default())?;
        let c = &report.consistency;
        println!(
            "noise {noise}: kept {:?}, inconsistency {} = minority {}",
            report.selection.selected,
            c.inconsistency.exact(),
            c.minority_proportion.exact()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
