//! C4.5-style decision tree ("J48").
//!
//! Growth picks, at each node, the candidate with the highest gain ratio
//! among those whose information gain is at least the mean gain of all
//! splittable candidates. Nominal attributes branch once per observed value
//! and are not reused below; numeric attributes split at the midpoint
//! threshold maximizing gain and may be reused. Optional post-pruning
//! replaces a subtree by a leaf when the leaf's pessimistic error estimate is
//! no worse than the subtree's.

mod prune;
mod rules;
mod split;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classifier::Predictor;
use crate::dataset::{AttributeKind, Dataset, Instance, Value};
use crate::error::{Error, Result};

pub use self::prune::added_errors;
pub use self::rules::{classify_by_rules, Condition, Rule};
pub use self::split::{gain_ratio, SplitScore};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    pub min_leaf_instances: usize,
    pub pruning_confidence: f64,
    pub prune: bool,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            min_leaf_instances: 2,
            pruning_confidence: 0.25,
            prune: true,
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_leaf_instances < 1 {
            return Err(Error::Config("min_leaf_instances must be >= 1".into()));
        }
        if !(self.pruning_confidence > 0.0 && self.pruning_confidence < 1.0) {
            return Err(Error::Config(format!(
                "pruning confidence must lie in (0, 1), got {}",
                self.pruning_confidence
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Test {
    /// `branch_of_value[v]` is the child taken for value `v`. Values without
    /// training instances share the child holding the most training mass.
    Nominal {
        attribute: usize,
        branch_of_value: Vec<usize>,
    },
    /// Child 0 takes `x <= threshold`, child 1 takes `x > threshold`.
    Threshold { attribute: usize, threshold: f64 },
}

impl Test {
    pub fn attribute(&self) -> usize {
        match *self {
            Test::Nominal { attribute, .. } | Test::Threshold { attribute, .. } => attribute,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum TreeNode {
    Leaf {
        counts: Vec<usize>,
        predicted: usize,
    },
    Internal {
        test: Test,
        children: Vec<TreeNode>,
        /// Training class counts that reached this node.
        counts: Vec<usize>,
    },
}

impl TreeNode {
    pub fn leaf(counts: Vec<usize>) -> TreeNode {
        let predicted = majority(&counts);
        TreeNode::Leaf { counts, predicted }
    }

    pub fn counts(&self) -> &[usize] {
        match self {
            TreeNode::Leaf { counts, .. } | TreeNode::Internal { counts, .. } => counts,
        }
    }

    pub fn mass(&self) -> usize {
        self.counts().iter().sum()
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { children, .. } => children.iter().map(TreeNode::num_leaves).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Internal { children, .. } => {
                1 + children.iter().map(TreeNode::depth).max().unwrap_or(0)
            }
        }
    }

    /// Follows the tests from this node down to a leaf.
    pub fn route(&self, x: &Instance) -> &TreeNode {
        let mut node = self;
        while let TreeNode::Internal { test, children, .. } = node {
            node = &children[child_for(test, children, x)];
        }
        node
    }
}

fn child_for(test: &Test, children: &[TreeNode], x: &Instance) -> usize {
    let heaviest = || {
        let mut best = 0;
        for (i, c) in children.iter().enumerate() {
            if c.mass() > children[best].mass() {
                best = i;
            }
        }
        best
    };
    match (test, x.value(test.attribute())) {
        (
            Test::Nominal {
                branch_of_value, ..
            },
            Value::Symbol(v),
        ) if v < branch_of_value.len() => branch_of_value[v],
        (Test::Threshold { threshold, .. }, Value::Real(r)) => usize::from(r > *threshold),
        _ => heaviest(),
    }
}

/// Majority class; ties go to the earlier declared class.
fn majority(counts: &[usize]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

/// A trained tree plus the schema details needed to print it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub root: TreeNode,
    pub attribute_names: Vec<String>,
    pub domains: Vec<Vec<String>>,
    pub class_name: String,
    pub classes: Vec<String>,
}

impl DecisionTree {
    pub fn train(d: &Dataset, cfg: &TreeConfig) -> Result<Self> {
        cfg.validate()?;
        if d.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if d.has_missing() {
            return Err(Error::Config(
                "decision tree training requires data without missing values".into(),
            ));
        }
        let labels = d.labels();
        let idx: Vec<usize> = (0..d.len()).collect();
        let available: Vec<bool> = (0..d.attributes().len())
            .map(|a| a != d.class_index())
            .collect();
        let mut root = grow(d, &labels, &idx, &available, cfg);
        if cfg.prune {
            prune::prune(&mut root, cfg.pruning_confidence);
        }
        Ok(DecisionTree {
            root,
            attribute_names: d.attributes().iter().map(|a| a.name.clone()).collect(),
            domains: d.attributes().iter().map(|a| a.domain().to_vec()).collect(),
            class_name: d.schema().class_attribute().name.clone(),
            classes: d.schema().class_values().to_vec(),
        })
    }

    pub fn num_leaves(&self) -> usize {
        self.root.num_leaves()
    }

    pub fn rules(&self) -> Vec<Rule> {
        rules::tree_to_rules(self)
    }

    /// Indented text rendering, one node per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.write_node(&self.root, 0, &mut out);
        out
    }

    fn write_node(&self, node: &TreeNode, depth: usize, out: &mut String) {
        match node {
            TreeNode::Leaf { counts, predicted } => {
                let _ = writeln!(
                    out,
                    "{}{}",
                    "|   ".repeat(depth),
                    self.leaf_label(counts, *predicted)
                );
            }
            TreeNode::Internal { test, children, .. } => {
                for (ci, child) in children.iter().enumerate() {
                    let edge = self.edge_label(test, ci);
                    match child {
                        TreeNode::Leaf { counts, predicted } => {
                            let _ = writeln!(
                                out,
                                "{}{edge}: {}",
                                "|   ".repeat(depth),
                                self.leaf_label(counts, *predicted)
                            );
                        }
                        TreeNode::Internal { .. } => {
                            let _ = writeln!(out, "{}{edge}", "|   ".repeat(depth));
                            self.write_node(child, depth + 1, out);
                        }
                    }
                }
            }
        }
    }

    fn leaf_label(&self, counts: &[usize], predicted: usize) -> String {
        let total: usize = counts.iter().sum();
        let wrong = total - counts[predicted];
        format!("{} ({total}/{wrong})", self.classes[predicted])
    }

    fn edge_label(&self, test: &Test, child: usize) -> String {
        let name = &self.attribute_names[test.attribute()];
        match test {
            Test::Nominal {
                branch_of_value,
                attribute,
            } => {
                let values: Vec<&str> = branch_of_value
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b == child)
                    .map(|(v, _)| self.domains[*attribute][v].as_str())
                    .collect();
                format!("{name} = {}", values.join(" | "))
            }
            Test::Threshold { threshold, .. } if child == 0 => format!("{name} <= {threshold}"),
            Test::Threshold { threshold, .. } => format!("{name} > {threshold}"),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl Predictor for DecisionTree {
    /// Laplace-corrected class distribution of the reached leaf.
    fn predict_proba(&self, x: &Instance) -> Vec<f64> {
        laplace(self.root.route(x).counts())
    }
}

pub(crate) fn laplace(counts: &[usize]) -> Vec<f64> {
    let total: usize = counts.iter().sum();
    let denom = (total + counts.len()) as f64;
    counts.iter().map(|&c| (c as f64 + 1.0) / denom).collect()
}

fn grow(
    d: &Dataset,
    labels: &[usize],
    idx: &[usize],
    available: &[bool],
    cfg: &TreeConfig,
) -> TreeNode {
    let mut counts = vec![0usize; d.num_classes()];
    for &i in idx {
        counts[labels[i]] += 1;
    }
    let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
    if pure || idx.len() < 2 * cfg.min_leaf_instances {
        return TreeNode::leaf(counts);
    }

    let candidates: Vec<(usize, f64, f64, Option<f64>)> = (0..d.attributes().len())
        .filter(|&a| available[a])
        .filter_map(
            |a| match split::score(d, labels, idx, a, cfg.min_leaf_instances) {
                SplitScore::Split {
                    gain,
                    ratio,
                    threshold,
                    ..
                } => Some((a, gain, ratio, threshold)),
                SplitScore::NotSplittable => None,
            },
        )
        .collect();
    if candidates.is_empty() {
        return TreeNode::leaf(counts);
    }
    let mean_gain = candidates.iter().map(|c| c.1).sum::<f64>() / candidates.len() as f64;
    let mut best: Option<&(usize, f64, f64, Option<f64>)> = None;
    for cand in &candidates {
        // Small slack so the candidate achieving the mean is not lost to
        // rounding when all gains are equal.
        if cand.1 + split::GAIN_TIE < mean_gain {
            continue;
        }
        if best.is_none_or(|b| cand.2 > b.2 + split::GAIN_TIE) {
            best = Some(cand);
        }
    }
    let Some(&(attribute, gain, _, threshold)) = best else {
        return TreeNode::leaf(counts);
    };
    if gain <= split::GAIN_TIE {
        return TreeNode::leaf(counts);
    }

    match &d.attributes()[attribute].kind {
        AttributeKind::Nominal(domain) => {
            let mut parts: Vec<Vec<usize>> = vec![Vec::new(); domain.len()];
            for &i in idx {
                if let Value::Symbol(v) = d.instances()[i].value(attribute) {
                    parts[v].push(i);
                }
            }
            let observed: Vec<usize> = (0..domain.len())
                .filter(|&v| !parts[v].is_empty())
                .collect();
            let mut sub_available = available.to_vec();
            sub_available[attribute] = false;
            let children: Vec<TreeNode> = observed
                .iter()
                .map(|&v| grow(d, labels, &parts[v], &sub_available, cfg))
                .collect();
            let heaviest = {
                let mut best = 0;
                for (ci, &v) in observed.iter().enumerate() {
                    if parts[v].len() > parts[observed[best]].len() {
                        best = ci;
                    }
                }
                best
            };
            let branch_of_value = (0..domain.len())
                .map(|v| observed.iter().position(|&o| o == v).unwrap_or(heaviest))
                .collect();
            TreeNode::Internal {
                test: Test::Nominal {
                    attribute,
                    branch_of_value,
                },
                children,
                counts,
            }
        }
        AttributeKind::Numeric => {
            let t = threshold.expect("numeric split carries a threshold");
            let (le, gt): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| {
                d.instances()[i]
                    .value(attribute)
                    .as_real()
                    .is_some_and(|x| x <= t)
            });
            let children = vec![
                grow(d, labels, &le, available, cfg),
                grow(d, labels, &gt, available, cfg),
            ];
            TreeNode::Internal {
                test: Test::Threshold {
                    attribute,
                    threshold: t,
                },
                children,
                counts,
            }
        }
    }
}
