//! Decide whether a feature set is enough to tell the labels of an example
//! base apart.
//!
//! A base is a multiset of labeled examples. Projecting every example onto a
//! feature subset gives its *description*; when identical descriptions carry
//! different labels, the features do not determine the label. The
//! [inconsistency rate](consistency::inconsistency_rate) measures how often
//! that happens, between `0` (consistent) and `1 - 1/|L|`.
//!
//! The [pipeline](pipeline::evaluate) chains three steps:
//!
//! 1. a supervised [filter](filters) drops features unrelated to the label;
//! 2. [MDL discretization](discretize) turns surviving numeric features into
//!    intervals;
//! 3. the inconsistency rate of the result is compared with the minority
//!    proportion, its value when no feature is kept.
//!
//! ```
//! use featcheck::{fixtures, inconsistency_rate, FeatureSubset, Rate};
//!
//! let base = fixtures::b_ex2();
//! let result = inconsistency_rate(&base, &FeatureSubset::all(base.schema())).unwrap();
//! assert_eq!(result.inconsistency, Rate::new(1, 4));
//! ```

pub mod base;
pub mod cli;
pub mod consistency;
pub mod csvio;
pub mod discretize;
pub mod error;
pub mod filters;
pub mod pipeline;
pub mod rate;
pub mod report;
pub mod rng;
pub mod synth;

pub use base::{
    Description, DescriptionGroup, Example, ExampleBase, FeatureDescriptor, FeatureKind,
    FeatureSchema, FeatureSubset, LabelHistogram, Value,
};
pub use consistency::{
    inconsistency_delta, inconsistency_rate, minority_bound, theoretical_max, ConsistencyResult,
};
pub use csvio::{load_csv, read_csv, read_csv_str, save_csv, write_csv, SchemaHints};
pub use discretize::{apply_schemes, compute_scheme, mdl_cuts, DiscretizationMethod, IntervalScheme};
pub use error::{Error, ErrorClass, Result};
pub use filters::{
    chi_squared, info_gain, relief_score, relief_weights, score_features, select_features,
    FeatureScore, ReliefParams, ScoreMethod, SelectionMode, SelectionPolicy,
};
pub use pipeline::{evaluate, evaluate_many, BatchItem, BatchOutcome, EvaluationConfig, EvaluationReport, Verdict};
pub use rate::Rate;
pub use synth::{gen_consistent, gen_noisy, gen_worst, GeneratorSpec};

/// The two pre-discretized bases of the running example: eight building
/// groups described by three interval-coded measures and labeled
/// `success`/`failure`.
pub mod fixtures {
    use crate::base::ExampleBase;
    use crate::csvio::read_csv_str;

    /// Eight distinct descriptions; consistent.
    pub const B_EX1_CSV: &str = include_str!("../fixtures/b_ex1.csv");
    /// Same measures after coarser generalization; two descriptions collide.
    pub const B_EX2_CSV: &str = include_str!("../fixtures/b_ex2.csv");

    pub fn b_ex1() -> ExampleBase {
        read_csv_str(B_EX1_CSV, "label").expect("bundled fixture parses")
    }

    pub fn b_ex2() -> ExampleBase {
        read_csv_str(B_EX2_CSV, "label").expect("bundled fixture parses")
    }
}
