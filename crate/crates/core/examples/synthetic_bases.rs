//! The three generators and the rates they are built to produce.

use featcheck::{
    gen_consistent, gen_noisy, gen_worst, inconsistency_rate, ExampleBase, FeatureSubset,
    GeneratorSpec,
};

fn rate(base: &ExampleBase) -> featcheck::Result<String> {
    let r = inconsistency_rate(base, &FeatureSubset::all(base.schema()))?;
    Ok(format!("{:.4} of at most {:.4}", r.inconsistency, r.theoretical_max))
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GeneratorSpec { seed: 42, example_count: 500, label_count: 3, ..Default::default() };
    println!("consistent        {}", rate(&gen_consistent(&spec)?)?);
    for noise in [0.1, 0.5, 1.0] {
        let noisy = gen_noisy(&GeneratorSpec { noise_rate: noise, irrelevant_feature_count: 0, ..spec })?;
        println!("noisy {noise:<4}        {}", rate(&noisy)?);
    }
    for labels in 2..=4 {
        println!("worst, {labels} labels   {}", rate(&gen_worst(labels, 3, 2)?)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
