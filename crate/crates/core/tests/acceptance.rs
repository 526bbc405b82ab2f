//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero when
//! any criterion fails.
//!
//! Run with `cargo test -p featcheck --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use featcheck::discretize::mdl_cuts;
use featcheck::rng::SeededRng;
use featcheck::{
    apply_schemes, evaluate, fixtures, gen_consistent, gen_noisy, gen_worst, inconsistency_rate,
    info_gain, relief_score, relief_weights, EvaluationConfig, ExampleBase, FeatureSubset,
    GeneratorSpec, IntervalScheme, Rate,
};

use common::{brute_inconsistency, columns, entropy_bits, mdl_oracle, multisets, random_base, subsets};

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const BOUND_BUDGET: Duration = Duration::from_secs(30);
const BOUND_BASES: u64 = 1000;
const IRRELEVANT_SEEDS: u64 = 50;
const MONOTONE_BASES: u64 = 200;
const ORACLE_MAX_EXAMPLES: usize = 8;
const CHAIN_SEEDS: u64 = 10;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all(base: &ExampleBase) -> FeatureSubset {
    FeatureSubset::all(base.schema())
}

fn golden_rates() -> Check {
    let start = Instant::now();
    let ex1 = fixtures::b_ex1();
    let ex2 = fixtures::b_ex2();
    let r1 = inconsistency_rate(&ex1, &all(&ex1)).map_err(|e| e.to_string())?;
    let r2 = inconsistency_rate(&ex2, &all(&ex2)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r1.inconsistency == Rate::ZERO, || format!("B_ex1 gave {}", r1.inconsistency.exact()))?;
    ensure(r2.inconsistency == Rate::new(1, 4), || format!("B_ex2 gave {}", r2.inconsistency.exact()))?;
    ensure(elapsed < GOLDEN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("B_ex1 = {}, B_ex2 = {} in {elapsed:?}", r1.inconsistency.exact(), r2.inconsistency.exact()))
}

fn bound_suite() -> Check {
    let start = Instant::now();
    let mut rng = SeededRng::new(0xB0);
    for i in 0..BOUND_BASES {
        let labels = 2 + rng.below(4);
        let features = 1 + rng.below(6);
        let examples = 1 + rng.below(200);
        let base = random_base(&mut rng, labels, features, examples);
        let r = inconsistency_rate(&base, &all(&base)).map_err(|e| e.to_string())?;
        let max = Rate::new(labels as u64 - 1, labels as u64);
        ensure(r.inconsistency <= max, || format!("base {i}: {} > {}", r.inconsistency, max))?;
        ensure(r.inconsistency <= r.minority_proportion, || {
            format!("base {i}: {} > minority {}", r.inconsistency, r.minority_proportion)
        })?;
    }
    let mut worst = 0;
    for labels in 2..=5 {
        for descriptions in 1..=6 {
            for copies in 1..=3 {
                let base = gen_worst(labels, descriptions, copies).map_err(|e| e.to_string())?;
                let r = inconsistency_rate(&base, &all(&base)).map_err(|e| e.to_string())?;
                ensure(r.inconsistency == Rate::new(labels as u64 - 1, labels as u64), || {
                    format!("gen_worst({labels},{descriptions},{copies}) gave {}", r.inconsistency.exact())
                })?;
                worst += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BOUND_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{BOUND_BASES} random bases within bounds, max attained on {worst} worst-case bases, {elapsed:?}"))
}

fn irrelevant_sets() -> Check {
    let mut minorities = Vec::new();
    let mut misses = Vec::new();
    for seed in 0..IRRELEVANT_SEEDS {
        let spec = GeneratorSpec {
            seed,
            example_count: 200,
            relevant_feature_count: 0,
            irrelevant_feature_count: 3,
            noise_rate: 0.6,
            ..Default::default()
        };
        let base = gen_noisy(&spec).map_err(|e| e.to_string())?;
        let report = evaluate("irrelevant", &base, &EvaluationConfig::default()).map_err(|e| e.to_string())?;
        let c = &report.consistency;
        if !report.selection.selected.is_empty() || c.inconsistency != c.minority_proportion {
            misses.push(format!(
                "seed {seed} kept {:?}, Inc {} vs minority {}",
                report.selection.selected,
                c.inconsistency.exact(),
                c.minority_proportion.exact()
            ));
        }
        minorities.push(c.minority_proportion.to_f64());
    }
    ensure(misses.is_empty(), || format!("{} of {IRRELEVANT_SEEDS} seeds: {}", misses.len(), misses.join("; ")))?;
    let lo = minorities.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = minorities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(format!("{IRRELEVANT_SEEDS} seeds: nothing selected, Inc = minority (range {lo:.3}..{hi:.3})"))
}

fn monotonicity() -> Check {
    let mut rng = SeededRng::new(0x30);
    let mut pairs = 0u64;
    let mut cut_pairs = 0u64;
    for i in 0..MONOTONE_BASES {
        let features = 1 + rng.below(4);
        let examples = 1 + rng.below(ORACLE_MAX_EXAMPLES);
        let labels = 2 + rng.below(2);
        let base = random_base(&mut rng, labels, features, examples);
        let names: Vec<String> = base.schema().feature_names().map(str::to_string).collect();

        let rate_of = |b: &ExampleBase, mask: u32| -> Result<Rate, String> {
            let subset = FeatureSubset::of(columns(mask).iter().map(|&c| names[c].clone()));
            let got = inconsistency_rate(b, &subset).map_err(|e| e.to_string())?.inconsistency;
            let (num, den) = brute_inconsistency(b, &columns(mask));
            ensure(got == Rate::new(num, den), || format!("base {i} mask {mask:b}: {got} vs oracle {num}/{den}"))?;
            Ok(got)
        };
        let rates: Vec<Rate> = subsets(features).map(|m| rate_of(&base, m)).collect::<Result<_, _>>()?;
        for small in subsets(features) {
            for large in subsets(features) {
                if small & large == small {
                    pairs += 1;
                    ensure(rates[large as usize] <= rates[small as usize], || {
                        format!("base {i}: {:b} -> {:b} raised {} to {}", small, large, rates[small as usize], rates[large as usize])
                    })?;
                }
            }
        }

        // nested cut sets on every numeric feature
        let numeric: Vec<usize> = (0..features).filter(|&f| base.numeric_column(f).is_some()).collect();
        if numeric.is_empty() {
            continue;
        }
        let grid = [0.5, 1.5, 2.5, 3.5, 4.5];
        let mut coarse = Vec::new();
        let mut fine = Vec::new();
        for &f in &numeric {
            let chosen: Vec<f64> = grid.iter().copied().filter(|_| rng.bernoulli(0.5)).collect();
            let more: Vec<f64> = grid.iter().copied().filter(|c| chosen.contains(c) || rng.bernoulli(0.5)).collect();
            coarse.push(IntervalScheme::new(names[f].clone(), chosen).map_err(|e| e.to_string())?);
            fine.push(IntervalScheme::new(names[f].clone(), more).map_err(|e| e.to_string())?);
        }
        let coarse_base = apply_schemes(&base, &coarse).map_err(|e| e.to_string())?;
        let fine_base = apply_schemes(&base, &fine).map_err(|e| e.to_string())?;
        for mask in subsets(features) {
            cut_pairs += 1;
            let (c, f) = (rate_of(&coarse_base, mask)?, rate_of(&fine_base, mask)?);
            ensure(f <= c, || format!("base {i} mask {mask:b}: extra cuts raised {c} to {f}"))?;
        }
    }
    Ok(format!("{MONOTONE_BASES} bases: {pairs} nested subset pairs, {cut_pairs} nested cut pairs, oracle agrees"))
}

fn mdl_discretizer() -> Check {
    let separable = mdl_cuts(&[1.0, 2.0, 3.0, 10.0, 11.0, 12.0], &["A", "A", "A", "B", "B", "B"])
        .map_err(|e| e.to_string())?;
    ensure(separable == [6.5], || format!("separable fixture gave {separable:?}"))?;

    let mut bases = 0u64;
    for classes in 2..=3 {
        let kinds = 4 * classes;
        for size in 1..=ORACLE_MAX_EXAMPLES {
            for ms in multisets(kinds, size) {
                let points: Vec<(f64, usize)> = ms.iter().map(|&i| ((1 + i % 4) as f64, i / 4)).collect();
                let values: Vec<f64> = points.iter().map(|p| p.0).collect();
                let labels: Vec<usize> = points.iter().map(|p| p.1).collect();
                let got = mdl_cuts(&values, &labels).map_err(|e| e.to_string())?;
                let want = mdl_oracle(&points, classes);
                ensure(got == want, || format!("{points:?}: got {got:?}, oracle {want:?}"))?;
                bases += 1;
            }
        }
    }

    let two = mdl_cuts(&[1.0, 2.0], &["A", "B"]).map_err(|e| e.to_string())?;
    ensure(two.is_empty(), || {
        format!("N=2 alternating labels gave {two:?}; the MDLP inequality accepts it (gain 1 > 0.4037) [oracle agreed on {bases} bases]")
    })?;
    Ok(format!("cut 6.5 on the separable fixture, none at N=2, oracle agrees on {bases} bases"))
}

fn filter_sanity() -> Check {
    let load = |t: &str| featcheck::read_csv_str(t, "y").map_err(|e| e.to_string());
    let constant = load("c,y\na,p\na,q\na,r\na,p\n")?;
    let independent = load("c,y\na,p\na,q\nb,p\nb,q\nc,p\nc,q\n")?;
    let determining = load("c,y\na,p\nb,q\nb,q\nc,r\nd,s\nd,s\nd,s\ne,p\n")?;

    let ig = |b: &ExampleBase| info_gain(b, "c").map_err(|e| e.to_string());
    ensure(ig(&constant)? == 0.0, || "constant feature has non-zero gain".into())?;
    ensure(ig(&independent)? == 0.0, || "independent feature has non-zero gain".into())?;
    let h = entropy_bits(&[2, 2, 1, 3]);
    let got = ig(&determining)?;
    ensure(got == h, || format!("determining feature: {got} vs H(L) = {h}"))?;

    let spec = GeneratorSpec { seed: 9, relevant_feature_count: 1, irrelevant_feature_count: 3, ..Default::default() };
    let base = gen_consistent(&spec).map_err(|e| e.to_string())?;
    let a = relief_weights(&base, 60, 17).map_err(|e| e.to_string())?;
    let b = relief_weights(&base, 60, 17).map_err(|e| e.to_string())?;
    ensure(a.iter().map(|w| w.to_bits()).eq(b.iter().map(|w| w.to_bits())), || "relief runs differ".into())?;
    let indicator = relief_score(&base, "rel_0", 60, 17).map_err(|e| e.to_string())?;
    ensure(indicator == 1.0, || format!("indicator relief weight {indicator}"))?;
    Ok(format!("gains 0, 0, H(L) = {h:.4}; relief repeatable, indicator weight 1"))
}

fn table_chain() -> Check {
    let mut trace = String::new();
    for seed in 0..CHAIN_SEEDS {
        let spec = GeneratorSpec {
            seed,
            example_count: 200,
            relevant_feature_count: 3,
            irrelevant_feature_count: 2,
            ..Default::default()
        };
        let base = gen_consistent(&spec).map_err(|e| e.to_string())?;
        let chain = [
            vec!["irr_0", "irr_1"],
            vec!["irr_0", "irr_1", "rel_0"],
            vec!["irr_0", "irr_1", "rel_0", "rel_1", "rel_2"],
        ];
        let mut rates = Vec::new();
        for features in &chain {
            let cfg = EvaluationConfig::default().with_features(features.iter().copied());
            rates.push(evaluate("chain", &base, &cfg).map_err(|e| e.to_string())?.consistency.inconsistency);
        }
        ensure(rates[0] > rates[1] && rates[1] > rates[2], || {
            format!("seed {seed}: not strictly decreasing: {rates:?}")
        })?;
        ensure(rates[2] == Rate::ZERO, || format!("seed {seed}: full set gave {}", rates[2]))?;
        if seed == 0 {
            trace = rates.iter().map(|r| format!("{:.3}", r.to_f64())).collect::<Vec<_>>().join(" > ");
        }
    }
    Ok(format!("{CHAIN_SEEDS} seeds strictly decreasing to 0 (seed 0: {trace})"))
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("noisy.csv");
    let spec = GeneratorSpec {
        seed: 4,
        example_count: 150,
        relevant_feature_count: 2,
        irrelevant_feature_count: 3,
        noise_rate: 0.1,
        ..Default::default()
    };
    featcheck::save_csv(&gen_noisy(&spec).map_err(|e| e.to_string())?, &input).map_err(|e| e.to_string())?;

    let runs = [
        vec!["evaluate", "--select", "infogain", "--threshold", "0", "--discretize", "mdl"],
        vec!["evaluate", "--select", "relief", "--top-k", "2", "--seed", "11", "--discretize", "equal-frequency:3"],
    ];
    for args in &runs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_featcheck"))
                .args(args)
                .arg("--input")
                .arg(&input)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr)))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{} argument sets, byte-identical JSON across runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden rates of the bundled bases", golden_rates),
        ("inconsistency bounds", bound_suite),
        ("irrelevant feature sets", irrelevant_sets),
        ("monotonicity", monotonicity),
        ("mdl discretizer", mdl_discretizer),
        ("filter sanity", filter_sanity),
        ("nested feature-set chain", table_chain),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
