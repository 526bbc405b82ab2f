//! Load a CSV file and print what the evaluation will work with.
//!
//! ```text
//! cargo run --example inspect_csv -- path/to/base.csv label
//! ```
//!
//! Without arguments the bundled `B_ex2` base is used.

use featcheck::{fixtures, load_csv, minority_bound, theoretical_max, ExampleBase};

fn describe(base: &ExampleBase) -> featcheck::Result<()> {
    let schema = base.schema();
    println!("{} examples, label column `{}`", base.card(), schema.label_name());
    for f in schema.features() {
        match f.vocabulary() {
            Some(v) => println!("  {:<12} nominal  {} levels", f.name(), v.len()),
            None => println!("  {:<12} numeric", f.name()),
        }
    }
    let hist = base.label_histogram();
    for (label, n) in hist.iter() {
        println!("  {label:<12} {n}");
    }
    println!("minority proportion {}", minority_bound(&hist)?);
    println!("theoretical maximum {}", theoretical_max(schema.label_count())?);
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    describe(&fixtures::b_ex2())?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [] => run(),
        [path] => Ok(describe(&load_csv(path, "label", None)?)?),
        [path, label, ..] => Ok(describe(&load_csv(path, label, None)?)?),
    }
}
