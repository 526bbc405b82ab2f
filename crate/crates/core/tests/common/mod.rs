//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use featcheck::rng::SeededRng;
use featcheck::{Example, ExampleBase, FeatureDescriptor, FeatureSchema, Value};

/// Inconsistency by pairwise comparison: `(card - majority_total, card)`.
pub fn brute_inconsistency(base: &ExampleBase, columns: &[usize]) -> (u64, u64) {
    let ex = base.examples();
    let key = |v: &Value| match *v {
        Value::Numeric(x) => (0, x.to_bits()),
        Value::Nominal(t) => (1, t as u64),
    };
    let same = |a: &Example, b: &Example| {
        columns.iter().all(|&c| key(&a.values()[c]) == key(&b.values()[c]))
    };
    let mut seen = vec![false; ex.len()];
    let mut majority_total = 0u64;
    for i in 0..ex.len() {
        if seen[i] {
            continue;
        }
        let mut counts = vec![0u64; base.schema().label_count()];
        for j in i..ex.len() {
            if !seen[j] && same(&ex[i], &ex[j]) {
                seen[j] = true;
                counts[ex[j].label()] += 1;
            }
        }
        majority_total += counts.iter().max().unwrap();
    }
    (ex.len() as u64 - majority_total, ex.len() as u64)
}

/// Entropy in bits of class counts.
pub fn entropy_bits(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.log2()
        })
        .sum()
}

fn class_counts(points: &[(f64, usize)], classes: usize) -> Vec<usize> {
    let mut c = vec![0; classes];
    for &(_, l) in points {
        c[l] += 1;
    }
    c
}

/// Recursive MDLP discretization by exhaustive search: every midpoint between
/// adjacent distinct values is tried, with no candidate pruning.
pub fn mdl_oracle(points: &[(f64, usize)], classes: usize) -> Vec<f64> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cuts = Vec::new();
    oracle_split(&sorted, classes, &mut cuts);
    cuts.sort_by(f64::total_cmp);
    cuts
}

fn oracle_split(points: &[(f64, usize)], classes: usize, cuts: &mut Vec<f64>) {
    let n = points.len() as f64;
    let total = class_counts(points, classes);
    let h = entropy_bits(&total);
    let mut distinct: Vec<f64> = points.iter().map(|p| p.0).collect();
    distinct.dedup();

    let mut best: Option<(f64, f64)> = None;
    for w in distinct.windows(2) {
        let cut = w[0] / 2.0 + w[1] / 2.0;
        let (l, r): (Vec<_>, Vec<_>) = points.iter().partition(|p| p.0 <= cut);
        let e = (l.len() as f64 * entropy_bits(&class_counts(&l, classes))
            + r.len() as f64 * entropy_bits(&class_counts(&r, classes)))
            / n;
        if best.is_none_or(|(_, be)| e < be) {
            best = Some((cut, e));
        }
    }
    let Some((cut, e)) = best else { return };
    let (l, r): (Vec<_>, Vec<_>) = points.iter().partition(|p| p.0 <= cut);
    let (cl, cr) = (class_counts(&l, classes), class_counts(&r, classes));
    let present = |c: &[usize]| c.iter().filter(|&&x| x > 0).count() as f64;
    let (k, k1, k2) = (present(&total), present(&cl), present(&cr));
    let delta = (3f64.powf(k) - 2.0).log2() - (k * h - k1 * entropy_bits(&cl) - k2 * entropy_bits(&cr));
    if h - e > ((n - 1.0).log2() + delta) / n {
        cuts.push(cut);
        oracle_split(&l, classes, cuts);
        oracle_split(&r, classes, cuts);
    }
}

/// All multisets of `size` items drawn from `0..kinds`, as non-decreasing
/// index vectors.
pub fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(kinds: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..kinds {
            cur.push(i);
            go(kinds, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(kinds, size, 0, &mut Vec::new(), &mut out);
    out
}

/// A random base mixing nominal and small-integer numeric features.
pub fn random_base(rng: &mut SeededRng, labels: usize, features: usize, examples: usize) -> ExampleBase {
    let mut descriptors = Vec::new();
    let mut arity = Vec::new();
    for f in 0..features {
        let a = 1 + rng.below(4);
        if rng.bernoulli(0.5) {
            descriptors.push(FeatureDescriptor::numeric(format!("f{f}")));
            arity.push((true, a + 2));
        } else {
            descriptors.push(
                FeatureDescriptor::nominal(format!("f{f}"), (0..a).map(|t| format!("t{t}"))).unwrap(),
            );
            arity.push((false, a));
        }
    }
    let names: Vec<String> = (0..labels).map(|l| format!("c{l}")).collect();
    let schema = FeatureSchema::new(descriptors, "y", names).unwrap();
    // skewed label draw: a random dominant label half of the time
    let dominant = rng.below(labels);
    let skew = rng.bernoulli(0.5);
    let rows = (0..examples)
        .map(|_| {
            let values = arity
                .iter()
                .map(|&(numeric, a)| {
                    let t = rng.below(a);
                    if numeric {
                        Value::Numeric(t as f64)
                    } else {
                        Value::Nominal(t as u32)
                    }
                })
                .collect();
            let label = if skew && rng.bernoulli(0.6) { dominant } else { rng.below(labels) };
            Example::new(values, label)
        })
        .collect();
    ExampleBase::new(schema, rows).unwrap()
}

/// Every subset of `0..n` as a bitmask.
pub fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}

pub fn columns(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}
