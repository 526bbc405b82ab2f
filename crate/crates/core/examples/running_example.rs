//! Inconsistency of the two bundled running-example bases.
//!
//! `B_ex1` describes eight building groups with three interval-coded
//! measures; every description is distinct, so the base is consistent.
//! `B_ex2` uses coarser intervals: two descriptions now cover several
//! groups with mixed labels.

use featcheck::{fixtures, inconsistency_rate, ExampleBase, FeatureSubset};

fn show(name: &str, base: &ExampleBase) -> featcheck::Result<()> {
    let r = inconsistency_rate(base, &FeatureSubset::all(base.schema()))?;
    println!("{name}: {} examples, {} distinct descriptions", r.examples, r.distinct_descriptions);
    for d in &r.descriptions {
        let counts: Vec<String> = d.label_counts.iter().map(|(l, n)| format!("{l}={n}")).collect();
        println!("  {:<40} {}", d.values.join(" "), counts.join(" "));
    }
    println!(
        "  inconsistency {} ({}), minority {}, maximum {}\n",
        r.inconsistency,
        r.inconsistency.exact(),
        r.minority_proportion,
        r.theoretical_max
    );
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    show("B_ex1", &fixtures::b_ex1())?;
    show("B_ex2", &fixtures::b_ex2())?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
