//! Labeled example bases: schema, examples, descriptions and label counts.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::Provenance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Numeric,
    Nominal,
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeatureKind::Numeric => "numeric",
            FeatureKind::Nominal => "nominal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Domain {
    Numeric,
    Nominal(Vec<String>),
}

/// Name and value domain of one feature column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureDescriptor {
    name: String,
    domain: Domain,
}

impl FeatureDescriptor {
    pub fn numeric(name: impl Into<String>) -> Self {
        FeatureDescriptor { name: name.into(), domain: Domain::Numeric }
    }

    /// A nominal feature over a non-empty, duplicate-free vocabulary.
    pub fn nominal<S: Into<String>>(
        name: impl Into<String>,
        vocabulary: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        let vocabulary: Vec<String> = vocabulary.into_iter().map(Into::into).collect();
        if vocabulary.is_empty() {
            return Err(Error::InvalidSchema(format!("feature `{name}` has an empty vocabulary")));
        }
        if let Some(dup) = first_duplicate(&vocabulary) {
            return Err(Error::InvalidSchema(format!(
                "feature `{name}` lists `{dup}` twice in its vocabulary"
            )));
        }
        Ok(FeatureDescriptor { name, domain: Domain::Nominal(vocabulary) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FeatureKind {
        match self.domain {
            Domain::Numeric => FeatureKind::Numeric,
            Domain::Nominal(_) => FeatureKind::Nominal,
        }
    }

    pub fn vocabulary(&self) -> Option<&[String]> {
        match &self.domain {
            Domain::Numeric => None,
            Domain::Nominal(v) => Some(v),
        }
    }

    pub fn token_index(&self, token: &str) -> Option<u32> {
        self.vocabulary()?.iter().position(|t| t == token).map(|i| i as u32)
    }

    /// Renders a value of this feature as it would appear in a CSV cell.
    pub fn render(&self, value: &Value) -> String {
        match (value, &self.domain) {
            (Value::Numeric(x), _) => format!("{x}"),
            (Value::Nominal(i), Domain::Nominal(vocab)) => vocab[*i as usize].clone(),
            (Value::Nominal(i), Domain::Numeric) => format!("#{i}"),
        }
    }
}

fn first_duplicate(items: &[String]) -> Option<&str> {
    let mut seen = std::collections::HashSet::new();
    items.iter().find(|s| !seen.insert(s.as_str())).map(String::as_str)
}

/// Ordered feature columns plus the label column and its label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSchema {
    features: Vec<FeatureDescriptor>,
    label_name: String,
    labels: Vec<String>,
}

impl FeatureSchema {
    pub fn new<S: Into<String>>(
        features: Vec<FeatureDescriptor>,
        label_name: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let label_name = label_name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooFewLabels(labels.len()));
        }
        if let Some(dup) = first_duplicate(&labels) {
            return Err(Error::InvalidSchema(format!("label `{dup}` declared twice")));
        }
        let names: Vec<String> = features.iter().map(|f| f.name.clone()).collect();
        if names.iter().any(String::is_empty) {
            return Err(Error::InvalidSchema("empty feature name".into()));
        }
        if let Some(dup) = first_duplicate(&names) {
            return Err(Error::InvalidSchema(format!("feature `{dup}` declared twice")));
        }
        if names.contains(&label_name) {
            return Err(Error::InvalidSchema(format!(
                "label column `{label_name}` collides with a feature name"
            )));
        }
        Ok(FeatureSchema { features, label_name, labels })
    }

    pub fn features(&self) -> &[FeatureDescriptor] {
        &self.features
    }

    pub fn feature_names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.name.as_str())
    }

    pub fn label_name(&self) -> &str {
        &self.label_name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn feature_index(&self, name: &str) -> Result<usize> {
        self.features
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    pub fn feature(&self, name: &str) -> Result<&FeatureDescriptor> {
        Ok(&self.features[self.feature_index(name)?])
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Column indices of `subset`, deduplicated and in schema order.
    pub fn resolve(&self, subset: &FeatureSubset) -> Result<Vec<usize>> {
        let mut idx = subset
            .names()
            .iter()
            .map(|n| self.feature_index(n))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }
}

/// One feature value. Nominal values index into their descriptor's vocabulary.
///
/// Equality is exact: numeric values compare by bit pattern, nominal values
/// by vocabulary index.
#[derive(Debug, Clone, Copy)]
pub enum Value {
    Numeric(f64),
    Nominal(u32),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Numeric(x) => Some(*x),
            Value::Nominal(_) => None,
        }
    }

    pub fn as_token(&self) -> Option<u32> {
        match self {
            Value::Nominal(i) => Some(*i),
            Value::Numeric(_) => None,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Numeric(a), Value::Numeric(b)) => a.to_bits() == b.to_bits(),
            (Value::Nominal(a), Value::Nominal(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Value::Numeric(x) => {
                0u8.hash(state);
                x.to_bits().hash(state);
            }
            Value::Nominal(i) => {
                1u8.hash(state);
                i.hash(state);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    values: Vec<Value>,
    label: usize,
}

impl Example {
    pub fn new(values: Vec<Value>, label: usize) -> Self {
        Example { values, label }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// Index into the schema's label set.
    pub fn label(&self) -> usize {
        self.label
    }

    fn project(&self, columns: &[usize]) -> Description {
        Description(columns.iter().map(|&c| self.values[c]).collect())
    }
}

/// Feature values of an example restricted to a feature subset, in schema order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Description(pub Vec<Value>);

/// A set of feature names, optionally annotated with how it was selected.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureSubset {
    features: Vec<String>,
    provenance: Option<Provenance>,
}

impl FeatureSubset {
    pub fn of<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        FeatureSubset { features: names.into_iter().map(Into::into).collect(), provenance: None }
    }

    pub fn empty() -> Self {
        FeatureSubset::default()
    }

    pub fn all(schema: &FeatureSchema) -> Self {
        FeatureSubset::of(schema.feature_names())
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn names(&self) -> &[String] {
        &self.features
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.features.iter().any(|f| f == name)
    }
}

/// Per-label example counts, in label-set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelHistogram {
    counts: Vec<(String, u64)>,
}

impl LabelHistogram {
    pub fn from_counts<S: Into<String>>(counts: impl IntoIterator<Item = (S, u64)>) -> Self {
        LabelHistogram { counts: counts.into_iter().map(|(l, c)| (l.into(), c)).collect() }
    }

    pub fn get(&self, label: &str) -> Option<u64> {
        self.counts.iter().find(|(l, _)| l == label).map(|(_, c)| *c)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.iter().map(|(_, c)| *c).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(l, c)| (l.as_str(), *c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// A distinct description together with its per-label example counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptionGroup {
    pub description: Description,
    /// Indexed like the schema's label set.
    pub label_counts: Vec<u64>,
}

impl DescriptionGroup {
    pub fn total(&self) -> u64 {
        self.label_counts.iter().sum()
    }

    /// Largest label count; ties resolve to the earliest label in the label set.
    pub fn majority(&self) -> (usize, u64) {
        let mut best = (0, self.label_counts[0]);
        for (i, &c) in self.label_counts.iter().enumerate().skip(1) {
            if c > best.1 {
                best = (i, c);
            }
        }
        best
    }
}

/// An immutable, validated table of labeled examples.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleBase {
    schema: FeatureSchema,
    examples: Vec<Example>,
}

impl ExampleBase {
    pub fn new(schema: FeatureSchema, examples: Vec<Example>) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::EmptyBase);
        }
        for (index, ex) in examples.iter().enumerate() {
            validate_example(&schema, ex).map_err(|reason| Error::InvalidExample { index, reason })?;
        }
        Ok(ExampleBase { schema, examples })
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    /// card(B).
    pub fn card(&self) -> usize {
        self.examples.len()
    }

    pub fn label_name_of(&self, example: &Example) -> &str {
        &self.schema.labels[example.label]
    }

    /// A base over the same schema with different examples.
    pub fn with_examples(&self, examples: Vec<Example>) -> Result<Self> {
        ExampleBase::new(self.schema.clone(), examples)
    }

    /// Appends the examples of `other`, which must share this base's schema.
    pub fn concat(&self, other: &ExampleBase) -> Result<Self> {
        if self.schema != other.schema {
            return Err(Error::InvalidSchema("cannot concatenate bases with different schemas".into()));
        }
        let mut examples = self.examples.clone();
        examples.extend_from_slice(&other.examples);
        self.with_examples(examples)
    }

    pub fn numeric_column(&self, feature: usize) -> Option<Vec<f64>> {
        self.examples.iter().map(|e| e.values[feature].as_f64()).collect()
    }

    pub fn label_indices(&self) -> Vec<usize> {
        self.examples.iter().map(|e| e.label).collect()
    }

    /// Groups examples by their description over `subset`, in first-occurrence
    /// order. The empty subset yields a single group holding every example.
    pub fn description_groups(&self, subset: &FeatureSubset) -> Result<Vec<DescriptionGroup>> {
        let columns = self.schema.resolve(subset)?;
        let labels = self.schema.label_count();
        let mut index: HashMap<Description, usize> = HashMap::new();
        let mut groups: Vec<DescriptionGroup> = Vec::new();
        for ex in &self.examples {
            let d = ex.project(&columns);
            let g = *index.entry(d.clone()).or_insert_with(|| {
                groups.push(DescriptionGroup { description: d, label_counts: vec![0; labels] });
                groups.len() - 1
            });
            groups[g].label_counts[ex.label] += 1;
        }
        Ok(groups)
    }

    /// S_B over `subset`: distinct descriptions in first-occurrence order.
    pub fn distinct_descriptions(&self, subset: &FeatureSubset) -> Result<Vec<Description>> {
        Ok(self.description_groups(subset)?.into_iter().map(|g| g.description).collect())
    }

    /// nb_examples(s, l): examples whose projection on `subset` is `description`
    /// and whose label is `label`.
    pub fn count_examples(
        &self,
        subset: &FeatureSubset,
        description: &Description,
        label: &str,
    ) -> Result<usize> {
        let label = self.schema.label_index(label)?;
        let columns = self.schema.resolve(subset)?;
        Ok(self
            .examples
            .iter()
            .filter(|e| e.label == label && e.project(&columns) == *description)
            .count())
    }

    pub fn label_histogram(&self) -> LabelHistogram {
        let mut counts = vec![0u64; self.schema.label_count()];
        for e in &self.examples {
            counts[e.label] += 1;
        }
        LabelHistogram::from_counts(self.schema.labels.iter().cloned().zip(counts))
    }

    /// Keeps only the `subset` columns (in schema order) and the labels.
    pub fn project(&self, subset: &FeatureSubset) -> Result<ExampleBase> {
        let columns = self.schema.resolve(subset)?;
        let features = columns.iter().map(|&c| self.schema.features[c].clone()).collect();
        let schema = FeatureSchema {
            features,
            label_name: self.schema.label_name.clone(),
            labels: self.schema.labels.clone(),
        };
        let examples = self
            .examples
            .iter()
            .map(|e| Example { values: e.project(&columns).0, label: e.label })
            .collect();
        Ok(ExampleBase { schema, examples })
    }

    /// Human-readable cell values of `description` taken over `subset`.
    pub fn render_description(
        &self,
        subset: &FeatureSubset,
        description: &Description,
    ) -> Result<Vec<String>> {
        let columns = self.schema.resolve(subset)?;
        Ok(columns
            .iter()
            .zip(&description.0)
            .map(|(&c, v)| self.schema.features[c].render(v))
            .collect())
    }
}

fn validate_example(schema: &FeatureSchema, ex: &Example) -> std::result::Result<(), String> {
    if ex.values.len() != schema.features.len() {
        return Err(format!(
            "{} values for {} features",
            ex.values.len(),
            schema.features.len()
        ));
    }
    if ex.label >= schema.labels.len() {
        return Err(format!("label index {} out of range", ex.label));
    }
    for (v, f) in ex.values.iter().zip(&schema.features) {
        match (v, &f.domain) {
            (Value::Numeric(x), Domain::Numeric) if x.is_finite() => {}
            (Value::Numeric(_), Domain::Numeric) => {
                return Err(format!("feature `{}` holds a non-finite value", f.name))
            }
            (Value::Nominal(i), Domain::Nominal(vocab)) if (*i as usize) < vocab.len() => {}
            (Value::Nominal(_), Domain::Nominal(_)) => {
                return Err(format!("feature `{}` holds a token outside its vocabulary", f.name))
            }
            _ => return Err(format!("feature `{}` holds a value of the wrong kind", f.name)),
        }
    }
    Ok(())
}
