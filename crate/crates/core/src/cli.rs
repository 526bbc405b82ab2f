//! Command-line surface.
//!
//! Exit codes: 0 success, 1 usage, 2 data (loading or validation), 3 a
//! configuration the base cannot support. Results are rendered in full
//! before anything is written, so a failing run leaves the output empty.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::base::{ExampleBase, FeatureKind, FeatureSubset, LabelHistogram};
use crate::consistency::{minority_bound, theoretical_max};
use crate::csvio::{load_csv, write_csv, SchemaHints};
use crate::discretize::{apply_schemes, compute_scheme, DiscretizationMethod};
use crate::error::{Error, ErrorClass, Result};
use crate::filters::{score_features, ReliefParams, ScoreMethod, SelectionMode, SelectionPolicy};
use crate::pipeline::{evaluate, evaluate_many, BatchItem, EvaluationConfig, DEFAULT_VERDICT_THRESHOLD};
use crate::rate::Rate;
use crate::report;
use crate::synth::{gen_consistent, gen_noisy, gen_worst, GeneratorSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

pub fn exit_code(error: &Error) -> i32 {
    match error.class() {
        ErrorClass::Usage => EXIT_USAGE,
        ErrorClass::Data => EXIT_DATA,
        ErrorClass::Config => EXIT_CONFIG,
    }
}

#[derive(Debug, Parser)]
#[command(name = "featcheck", version, about = "Check whether a feature set determines the labels of an example base")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Select, discretize and measure inconsistency.
    Evaluate(EvaluateArgs),
    /// Score every feature with a filter method.
    Score(ScoreArgs),
    /// Discretize numeric features and emit the resulting CSV.
    Discretize(DiscretizeArgs),
    /// Summarize a base: size, labels, feature kinds and bounds.
    Inspect(InspectArgs),
    /// Generate a synthetic base as CSV.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file with a header row.
    #[arg(long, short)]
    input: PathBuf,
    /// Name of the label column.
    #[arg(long, default_value = "label")]
    label: String,
    /// JSON sidecar pinning column kinds or the label set.
    #[arg(long)]
    schema: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self) -> Result<ExampleBase> {
        load_input(&self.input, &self.label, self.schema.as_deref())
    }
}

fn load_input(path: &Path, label: &str, schema: Option<&Path>) -> Result<ExampleBase> {
    let hints = schema.map(SchemaHints::from_json_file).transpose()?;
    let label = hints.as_ref().and_then(|h| h.label.as_deref()).unwrap_or(label);
    load_csv(path, label, hints.as_ref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SelectArg {
    None,
    Infogain,
    Chi2,
    Relief,
}

impl SelectArg {
    fn method(self) -> Option<ScoreMethod> {
        match self {
            SelectArg::None => None,
            SelectArg::Infogain => Some(ScoreMethod::InfoGain),
            SelectArg::Chi2 => Some(ScoreMethod::ChiSquared),
            SelectArg::Relief => Some(ScoreMethod::Relief),
        }
    }
}

/// `none` or a [`DiscretizationMethod`].
#[derive(Debug, Clone, Copy, PartialEq)]
struct DiscretizeArg(Option<DiscretizationMethod>);

fn parse_discretization(s: &str) -> std::result::Result<DiscretizeArg, String> {
    match s {
        "none" => Ok(DiscretizeArg(None)),
        _ => s.parse().map(|m| DiscretizeArg(Some(m))).map_err(|e: Error| e.to_string()),
    }
}

fn parse_feature_set(s: &str) -> std::result::Result<(String, Vec<String>), String> {
    let (name, list) = s.split_once('=').ok_or("expected NAME=feature,feature,...")?;
    if name.is_empty() {
        return Err("feature set name is empty".into());
    }
    Ok((name.to_string(), split_list(list)))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|f| !f.is_empty()).map(str::to_string).collect()
}

#[derive(Debug, Args)]
struct RelieArgs {
    /// Relief sample count; defaults to the number of examples.
    #[arg(long)]
    relief_samples: Option<usize>,
    /// Seed for Relief sampling.
    #[arg(long, env = "FEATCHECK_SEED", default_value_t = 0)]
    seed: u64,
}

impl RelieArgs {
    fn params(&self) -> ReliefParams {
        ReliefParams { samples: self.relief_samples, seed: self.seed }
    }
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Candidate features (comma separated); all features when omitted.
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<String>>,
    /// Evaluate a named candidate set; repeat to compare several.
    #[arg(long = "feature-set", value_name = "NAME=F1,F2", value_parser = parse_feature_set, conflicts_with = "features")]
    feature_sets: Vec<(String, Vec<String>)>,
    /// Filter used to drop features before discretization.
    #[arg(long, value_enum, default_value = "infogain")]
    select: SelectArg,
    /// Keep features scoring strictly above this value.
    #[arg(long, conflicts_with = "top_k")]
    threshold: Option<f64>,
    /// Keep the K best-scoring features instead of thresholding.
    #[arg(long)]
    top_k: Option<usize>,
    #[command(flatten)]
    relief: RelieArgs,
    /// none, mdl, equal-width:N or equal-frequency:N.
    #[arg(long, value_parser = parse_discretization, default_value = "mdl")]
    discretize: DiscretizeArg,
    /// Verdict threshold as a fraction of the minority proportion.
    #[arg(long, default_value_t = DEFAULT_VERDICT_THRESHOLD)]
    tau: f64,
    /// Report name; defaults to the input file stem.
    #[arg(long)]
    name: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl EvaluateArgs {
    fn config(&self) -> EvaluationConfig {
        let selection = self.select.method().map(|method| {
            let mode = match self.top_k {
                Some(k) => SelectionMode::TopK { k },
                None => SelectionMode::Threshold { threshold: self.threshold.unwrap_or(0.0) },
            };
            SelectionPolicy { method, mode, relief: self.relief.params() }
        });
        EvaluationConfig {
            features: self.features.clone(),
            selection,
            discretization: self.discretize.0,
            verdict_threshold: self.tau,
        }
    }
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[command(flatten)]
    input: InputArgs,
    /// infogain, chi2 or relief.
    #[arg(long, default_value = "infogain")]
    method: ScoreMethod,
    /// Restrict scoring to these features (comma separated).
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<String>>,
    #[command(flatten)]
    relief: RelieArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiscretizeFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct DiscretizeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// mdl, equal-width:N or equal-frequency:N.
    #[arg(long, default_value = "mdl")]
    method: DiscretizationMethod,
    /// Numeric features to discretize (comma separated); all when omitted.
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<String>>,
    /// csv emits the discretized base, json the interval schemes.
    #[arg(long, value_enum, default_value = "csv")]
    format: DiscretizeFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InspectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SynthKind {
    Consistent,
    Noisy,
    Worst,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, value_enum, default_value = "consistent")]
    kind: SynthKind,
    #[arg(long, env = "FEATCHECK_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    examples: usize,
    #[arg(long, default_value_t = 2)]
    labels: usize,
    #[arg(long, default_value_t = 2)]
    relevant: usize,
    #[arg(long, default_value_t = 2)]
    irrelevant: usize,
    /// Share of relabeled examples (noisy only).
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Distinct descriptions (worst only).
    #[arg(long, default_value_t = 4)]
    descriptions: usize,
    /// Copies of each description per label (worst only).
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };

    let (result, output) = match &cli.command {
        Command::Evaluate(a) => (run_evaluate(a), &a.output),
        Command::Score(a) => (run_score(a), &a.output),
        Command::Discretize(a) => (run_discretize(a), &a.output),
        Command::Inspect(a) => (run_inspect(a), &a.output),
        Command::Synth(a) => (run_synth(a), &a.output),
    };
    let (document, code) = match result {
        Ok(Outcome { document, failure }) => {
            if let Some(e) = &failure {
                let _ = writeln!(err, "featcheck: {e}");
            }
            (document, failure.as_ref().map_or(EXIT_OK, exit_code))
        }
        Err(e) => {
            let _ = writeln!(err, "featcheck: {e}");
            return exit_code(&e);
        }
    };
    let written = match output {
        Some(path) => std::fs::write(path, document.as_bytes()),
        None => out.write_all(document.as_bytes()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "featcheck: cannot write output: {e}");
            EXIT_DATA
        }
    }
}

/// A complete document, plus the first failure of a batch if any.
struct Outcome {
    document: String,
    failure: Option<Error>,
}

impl From<String> for Outcome {
    fn from(document: String) -> Self {
        Outcome { document, failure: None }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

fn run_evaluate(a: &EvaluateArgs) -> Result<Outcome> {
    let base = a.input.load()?;
    let config = a.config();
    config.validate()?;
    let name = a.name.clone().unwrap_or_else(|| file_stem(&a.input.input));

    if a.feature_sets.is_empty() {
        let report = evaluate(&name, &base, &config)?;
        return Ok(match a.format {
            Format::Json => report::to_json(&report),
            Format::Text => report::to_text(&report),
        }
        .into());
    }

    let items: Vec<BatchItem<'_>> = a
        .feature_sets
        .iter()
        .map(|(set, features)| {
            BatchItem::new(set.clone(), &base, config.clone().with_features(features.clone()))
        })
        .collect();
    let mut outcome = evaluate_many(&items);
    let document = match a.format {
        Format::Json => report::batch_to_json(&outcome),
        Format::Text => {
            let mut text: String = outcome.reports.iter().map(report::to_text).collect::<Vec<_>>().join("\n");
            for f in &outcome.failures {
                text.push_str(&format!("\n== {} ==\nfailed: {}\n", f.name, f.error));
            }
            text
        }
    };
    let failure = if outcome.failures.is_empty() { None } else { Some(outcome.failures.remove(0).error) };
    Ok(Outcome { document, failure })
}

#[derive(Serialize)]
struct ScoreDocument<'a> {
    input: String,
    method: ScoreMethod,
    scores: &'a [crate::filters::FeatureScore],
}

fn run_score(a: &ScoreArgs) -> Result<Outcome> {
    let mut base = a.input.load()?;
    if let Some(features) = &a.features {
        base = base.project(&FeatureSubset::of(features))?;
    }
    let scores = score_features(&base, a.method, &a.relief.params())?;
    Ok(match a.format {
        Format::Json => report::to_json(&ScoreDocument {
            input: file_stem(&a.input.input),
            method: a.method,
            scores: &scores,
        }),
        Format::Text => {
            let mut text = format!("{} scores\n", a.method);
            for s in &scores {
                text.push_str(&format!("{:<24} {:>12.6}\n", s.feature, s.value));
            }
            text
        }
    }
    .into())
}

fn run_discretize(a: &DiscretizeArgs) -> Result<Outcome> {
    a.method.validate()?;
    let base = a.input.load()?;
    let targets: Vec<String> = match &a.features {
        Some(f) => f.clone(),
        None => base
            .schema()
            .features()
            .iter()
            .filter(|f| f.kind() == FeatureKind::Numeric)
            .map(|f| f.name().to_string())
            .collect(),
    };
    let schemes = targets
        .iter()
        .map(|f| compute_scheme(&base, f, a.method))
        .collect::<Result<Vec<_>>>()?;
    Ok(match a.format {
        DiscretizeFormat::Json => report::to_json(&schemes),
        DiscretizeFormat::Csv => {
            let mut buf = Vec::new();
            write_csv(&apply_schemes(&base, &schemes)?, &mut buf)?;
            String::from_utf8(buf).expect("csv writer emits utf-8")
        }
    }
    .into())
}

#[derive(Serialize)]
struct FeatureLine {
    name: String,
    kind: FeatureKind,
}

#[derive(Serialize)]
struct InspectSummary {
    examples: usize,
    label_column: String,
    label_count: usize,
    #[serde(serialize_with = "report::histogram")]
    label_histogram: LabelHistogram,
    features: Vec<FeatureLine>,
    minority_proportion: Rate,
    minority_exact: String,
    theoretical_max: Rate,
}

fn run_inspect(a: &InspectArgs) -> Result<Outcome> {
    let base = a.input.load()?;
    let histogram = base.label_histogram();
    let minority = minority_bound(&histogram)?;
    let summary = InspectSummary {
        examples: base.card(),
        label_column: base.schema().label_name().to_string(),
        label_count: base.schema().label_count(),
        features: base
            .schema()
            .features()
            .iter()
            .map(|f| FeatureLine { name: f.name().to_string(), kind: f.kind() })
            .collect(),
        minority_exact: minority.exact(),
        minority_proportion: minority,
        theoretical_max: theoretical_max(base.schema().label_count())?,
        label_histogram: histogram,
    };
    Ok(match a.format {
        Format::Json => report::to_json(&summary),
        Format::Text => {
            let mut t = format!(
                "examples: {}\nlabels: {} ({})\n",
                summary.examples, summary.label_count, summary.label_column
            );
            for (label, n) in summary.label_histogram.iter() {
                t.push_str(&format!("  {label:<20} {n}\n"));
            }
            t.push_str(&format!("features: {}\n", summary.features.len()));
            for f in &summary.features {
                t.push_str(&format!("  {:<20} {}\n", f.name, f.kind));
            }
            t.push_str(&format!(
                "minority proportion: {} ({})\ntheoretical maximum: {}\n",
                summary.minority_proportion.to_f64(),
                summary.minority_exact,
                summary.theoretical_max.to_f64()
            ));
            t
        }
    }
    .into())
}

fn run_synth(a: &SynthArgs) -> Result<Outcome> {
    let spec = GeneratorSpec {
        seed: a.seed,
        example_count: a.examples,
        label_count: a.labels,
        relevant_feature_count: a.relevant,
        irrelevant_feature_count: a.irrelevant,
        noise_rate: a.noise,
    };
    let base = match a.kind {
        SynthKind::Consistent => gen_consistent(&spec)?,
        SynthKind::Noisy => gen_noisy(&spec)?,
        SynthKind::Worst => gen_worst(a.labels, a.descriptions, a.copies)?,
    };
    let mut buf = Vec::new();
    write_csv(&base, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv writer emits utf-8").into())
}
