//! The decision table: a schema of predictor attributes plus one binary class
//! attribute, and the instances (patients) that populate it.
//!
//! Values are stored positionally. Nominal values are indices into their
//! attribute's domain, so two datasets compare equal exactly when they hold
//! the same symbols and numbers in the same order.

mod arff;
mod csv;
mod impute;
mod thoracic;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use self::arff::{parse_arff, parse_arff_header, write_arff};
pub use self::csv::{parse_csv, write_csv};
pub use self::impute::{impute_missing, ImputeStrategy};
pub use self::thoracic::thoracic_schema;

/// Count of instances per class value, in class declaration order.
pub type ClassCounts = IndexMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    /// Ordered list of admissible symbols.
    Nominal(Vec<String>),
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Predictor,
    Class,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
}

impl Attribute {
    pub fn nominal<S: Into<String>>(name: &str, values: impl IntoIterator<Item = S>) -> Self {
        Attribute {
            name: name.to_string(),
            kind: AttributeKind::Nominal(values.into_iter().map(Into::into).collect()),
        }
    }

    pub fn numeric(name: &str) -> Self {
        Attribute {
            name: name.to_string(),
            kind: AttributeKind::Numeric,
        }
    }

    pub fn is_nominal(&self) -> bool {
        matches!(self.kind, AttributeKind::Nominal(_))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, AttributeKind::Numeric)
    }

    /// Domain of a nominal attribute; empty for numerics.
    pub fn domain(&self) -> &[String] {
        match &self.kind {
            AttributeKind::Nominal(values) => values,
            AttributeKind::Numeric => &[],
        }
    }

    /// Position of `symbol` in the domain. Matching is exact after trimming.
    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        let symbol = symbol.trim();
        self.domain().iter().position(|v| v == symbol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    pub relation: String,
    pub attributes: Vec<Attribute>,
    pub class_index: usize,
}

impl Schema {
    /// Builds a schema whose class is the last attribute.
    pub fn new(relation: &str, attributes: Vec<Attribute>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::Schema("no attributes declared".into()));
        }
        let class_index = attributes.len() - 1;
        let schema = Schema {
            relation: relation.to_string(),
            attributes,
            class_index,
        };
        schema.validate()?;
        Ok(schema)
    }

    /// Returns a copy of this schema with `name` as the class attribute.
    pub fn with_class(&self, name: &str) -> Result<Self> {
        let class_index = self
            .index_of(name)
            .ok_or_else(|| Error::Schema(format!("no attribute named `{name}`")))?;
        let schema = Schema {
            class_index,
            ..self.clone()
        };
        schema.validate()?;
        Ok(schema)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for attr in &self.attributes {
            if !seen.insert(attr.name.as_str()) {
                return Err(Error::Schema(format!(
                    "duplicate attribute `{}`",
                    attr.name
                )));
            }
            if let AttributeKind::Nominal(values) = &attr.kind {
                if values.is_empty() {
                    return Err(Error::Schema(format!(
                        "nominal attribute `{}` has an empty domain",
                        attr.name
                    )));
                }
                let mut distinct = std::collections::HashSet::new();
                if let Some(dup) = values.iter().find(|v| !distinct.insert(v.as_str())) {
                    return Err(Error::Schema(format!(
                        "nominal attribute `{}` repeats value `{dup}`",
                        attr.name
                    )));
                }
            }
        }
        let class = self
            .attributes
            .get(self.class_index)
            .ok_or_else(|| Error::Schema("class index out of range".into()))?;
        match &class.kind {
            AttributeKind::Nominal(values) if values.len() == 2 => Ok(()),
            AttributeKind::Nominal(values) => Err(Error::Schema(format!(
                "class attribute `{}` must have exactly two values, has {}",
                class.name,
                values.len()
            ))),
            AttributeKind::Numeric => Err(Error::Schema(format!(
                "class attribute `{}` must be nominal",
                class.name
            ))),
        }
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn role(&self, index: usize) -> Role {
        if index == self.class_index {
            Role::Class
        } else {
            Role::Predictor
        }
    }

    pub fn class_attribute(&self) -> &Attribute {
        &self.attributes[self.class_index]
    }

    pub fn class_values(&self) -> &[String] {
        self.class_attribute().domain()
    }

    pub fn num_classes(&self) -> usize {
        self.class_values().len()
    }

    /// Indices of all predictor attributes, in declaration order.
    pub fn predictors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.attributes.len()).filter(move |&i| i != self.class_index)
    }

    pub fn class_value_index(&self, value: &str) -> Result<usize> {
        self.class_attribute()
            .symbol_index(value)
            .ok_or_else(|| Error::ClassAbsent(value.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    /// Index into the attribute's nominal domain.
    Symbol(usize),
    Real(f64),
    Missing,
}

impl Value {
    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    pub fn as_symbol(&self) -> Option<usize> {
        match *self {
            Value::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Value::Real(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    values: Vec<Value>,
}

impl Instance {
    pub fn new(values: Vec<Value>) -> Self {
        Instance { values }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, attribute: usize) -> Value {
        self.values[attribute]
    }

    pub(crate) fn set(&mut self, attribute: usize, value: Value) {
        self.values[attribute] = value;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    schema: Schema,
    instances: Vec<Instance>,
}

impl Dataset {
    /// Validates every instance against the schema.
    pub fn new(schema: Schema, instances: Vec<Instance>) -> Result<Self> {
        schema.validate()?;
        for (row, inst) in instances.iter().enumerate() {
            check_instance(&schema, inst, row + 1)?;
        }
        Ok(Dataset { schema, instances })
    }

    /// Used where instances are already known to conform.
    pub(crate) fn from_parts(schema: Schema, instances: Vec<Instance>) -> Self {
        Dataset { schema, instances }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.schema.attributes
    }

    pub fn class_index(&self) -> usize {
        self.schema.class_index
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn into_instances(self) -> Vec<Instance> {
        self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.schema.num_classes()
    }

    /// Class index of an instance. Instances of a dataset never have a
    /// missing class.
    pub fn class_of(&self, inst: &Instance) -> usize {
        inst.value(self.schema.class_index)
            .as_symbol()
            .expect("class value is present")
    }

    pub fn labels(&self) -> Vec<usize> {
        self.instances.iter().map(|i| self.class_of(i)).collect()
    }

    pub fn class_counts(&self) -> ClassCounts {
        let mut counts = vec![0usize; self.num_classes()];
        for inst in &self.instances {
            counts[self.class_of(inst)] += 1;
        }
        self.schema
            .class_values()
            .iter()
            .cloned()
            .zip(counts)
            .collect()
    }

    /// Per-class counts indexed by class position.
    pub fn class_histogram(&self) -> Vec<usize> {
        self.class_counts().values().copied().collect()
    }

    /// Re-targets the class attribute by name.
    pub fn with_class(&self, name: &str) -> Result<Dataset> {
        let schema = self.schema.with_class(name)?;
        Dataset::new(schema, self.instances.clone())
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            instances: indices.iter().map(|&i| self.instances[i].clone()).collect(),
        }
    }

    pub fn with_instances(&self, instances: Vec<Instance>) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            instances,
        }
    }

    pub fn has_missing(&self) -> bool {
        self.instances
            .iter()
            .any(|i| i.values().iter().any(Value::is_missing))
    }

    /// Number of missing values per attribute.
    pub fn missing_census(&self) -> Vec<usize> {
        let mut census = vec![0; self.schema.len()];
        for inst in &self.instances {
            for (slot, v) in census.iter_mut().zip(inst.values()) {
                if v.is_missing() {
                    *slot += 1;
                }
            }
        }
        census
    }
}

fn check_instance(schema: &Schema, inst: &Instance, line: usize) -> Result<()> {
    if inst.values.len() != schema.len() {
        return Err(Error::Arity {
            line,
            expected: schema.len(),
            found: inst.values.len(),
        });
    }
    for (attr, value) in schema.attributes.iter().zip(&inst.values) {
        match (&attr.kind, value) {
            (_, Value::Missing) => {}
            (AttributeKind::Nominal(dom), Value::Symbol(s)) if *s < dom.len() => {}
            (AttributeKind::Numeric, Value::Real(x)) if x.is_finite() => {}
            (_, other) => {
                return Err(Error::Schema(format!(
                    "row {line}: value {other:?} does not fit attribute `{}`",
                    attr.name
                )))
            }
        }
    }
    if inst.values[schema.class_index].is_missing() {
        return Err(Error::MissingClass { line });
    }
    Ok(())
}
