//! Root-to-leaf paths as conjunctive rules.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DecisionTree, Test, TreeNode};
use crate::dataset::{Instance, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Condition {
    /// Nominal attribute takes one of `values`.
    In {
        attribute: usize,
        name: String,
        values: Vec<String>,
        symbols: Vec<usize>,
    },
    /// `lower < x <= upper`; an absent bound is unbounded. Successive
    /// thresholds on the same attribute merge into one interval.
    Range {
        attribute: usize,
        name: String,
        lower: Option<f64>,
        upper: Option<f64>,
    },
}

impl Condition {
    pub fn attribute(&self) -> usize {
        match *self {
            Condition::In { attribute, .. } | Condition::Range { attribute, .. } => attribute,
        }
    }

    pub fn holds(&self, x: &Instance) -> bool {
        match (self, x.value(self.attribute())) {
            (Condition::In { symbols, .. }, Value::Symbol(s)) => symbols.contains(&s),
            (Condition::Range { lower, upper, .. }, Value::Real(r)) => {
                lower.is_none_or(|l| r > l) && upper.is_none_or(|u| r <= u)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::In { name, values, .. } if values.len() == 1 => {
                write!(f, "({name}, {})", values[0])
            }
            Condition::In { name, values, .. } => write!(f, "({name}, {{{}}})", values.join(", ")),
            Condition::Range {
                name, lower, upper, ..
            } => match (lower, upper) {
                (Some(l), Some(u)) => write!(f, "({l} < {name} <= {u})"),
                (Some(l), None) => write!(f, "({name} > {l})"),
                (None, Some(u)) => write!(f, "({name} <= {u})"),
                (None, None) => write!(f, "({name})"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: Vec<Condition>,
    pub class_name: String,
    pub class_value: String,
    pub class_index: usize,
}

impl Rule {
    pub fn matches(&self, x: &Instance) -> bool {
        self.antecedent.iter().all(|c| c.holds(x))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antecedent.is_empty() {
            write!(f, "TRUE")?;
        } else {
            let parts: Vec<String> = self.antecedent.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" ∩ "))?;
        }
        write!(f, " ⇒ ({} = {})", self.class_name, self.class_value)
    }
}

/// One rule per leaf, in depth-first order.
pub(super) fn tree_to_rules(tree: &DecisionTree) -> Vec<Rule> {
    let mut rules = Vec::new();
    walk(tree, &tree.root, &mut Vec::new(), &mut rules);
    rules
}

/// First matching rule's class, if any rule matches.
pub fn classify_by_rules(rules: &[Rule], x: &Instance) -> Option<usize> {
    rules.iter().find(|r| r.matches(x)).map(|r| r.class_index)
}

fn walk(tree: &DecisionTree, node: &TreeNode, path: &mut Vec<Condition>, out: &mut Vec<Rule>) {
    match node {
        TreeNode::Leaf { predicted, .. } => out.push(Rule {
            antecedent: path.clone(),
            class_name: tree.class_name.clone(),
            class_value: tree.classes[*predicted].clone(),
            class_index: *predicted,
        }),
        TreeNode::Internal { test, children, .. } => {
            for (ci, child) in children.iter().enumerate() {
                let saved = path.clone();
                match test {
                    Test::Nominal {
                        attribute,
                        branch_of_value,
                    } => {
                        let symbols: Vec<usize> = branch_of_value
                            .iter()
                            .enumerate()
                            .filter(|(_, &b)| b == ci)
                            .map(|(v, _)| v)
                            .collect();
                        path.push(Condition::In {
                            attribute: *attribute,
                            name: tree.attribute_names[*attribute].clone(),
                            values: symbols
                                .iter()
                                .map(|&v| tree.domains[*attribute][v].clone())
                                .collect(),
                            symbols,
                        });
                    }
                    Test::Threshold {
                        attribute,
                        threshold,
                    } => {
                        let (lo, hi) = if ci == 0 {
                            (None, Some(*threshold))
                        } else {
                            (Some(*threshold), None)
                        };
                        narrow(path, *attribute, &tree.attribute_names[*attribute], lo, hi);
                    }
                }
                walk(tree, child, path, out);
                *path = saved;
            }
        }
    }
}

fn narrow(
    path: &mut Vec<Condition>,
    attribute: usize,
    name: &str,
    lo: Option<f64>,
    hi: Option<f64>,
) {
    for cond in path.iter_mut() {
        if let Condition::Range {
            attribute: a,
            lower,
            upper,
            ..
        } = cond
        {
            if *a == attribute {
                if let Some(l) = lo {
                    *lower = Some(lower.map_or(l, |x: f64| x.max(l)));
                }
                if let Some(h) = hi {
                    *upper = Some(upper.map_or(h, |x: f64| x.min(h)));
                }
                return;
            }
        }
    }
    path.push(Condition::Range {
        attribute,
        name: name.to_string(),
        lower: lo,
        upper: hi,
    });
}
