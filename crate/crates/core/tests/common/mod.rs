//! Independent reference implementations and data generators shared by the
//! integration and acceptance tests. Nothing here calls into the code under
//! test except for constructing datasets.

#![allow(dead_code)]

use rand::Rng;
use thorax_core::decision_tree::{DecisionTree, Test, TreeNode};
use thorax_core::mlp::Network;
use thorax_core::{Attribute, Dataset, Instance, Schema, Value};

/// Schema of nominal predictors `a0, a1, ...` with the given domain sizes
/// followed by a binary class `c` in {T, F}.
pub fn nominal_schema(domain_sizes: &[usize]) -> Schema {
    let mut attrs: Vec<Attribute> = domain_sizes
        .iter()
        .enumerate()
        .map(|(j, &s)| Attribute::nominal(&format!("a{j}"), (0..s).map(|v| format!("v{v}"))))
        .collect();
    attrs.push(Attribute::nominal("c", ["T", "F"]));
    Schema::new("toy", attrs).unwrap()
}

/// Rows of symbol indices, class last.
pub fn nominal_dataset(domain_sizes: &[usize], rows: &[Vec<usize>]) -> Dataset {
    let instances = rows
        .iter()
        .map(|r| Instance::new(r.iter().map(|&v| Value::Symbol(v)).collect()))
        .collect();
    Dataset::new(nominal_schema(domain_sizes), instances).unwrap()
}

pub fn random_nominal_dataset<R: Rng>(rng: &mut R, domain_sizes: &[usize], n: usize) -> Dataset {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut r: Vec<usize> = domain_sizes.iter().map(|&s| rng.gen_range(0..s)).collect();
            r.push(rng.gen_range(0..2));
            r
        })
        .collect();
    nominal_dataset(domain_sizes, &rows)
}

/// Posterior of a naive Bayes model with add-one smoothing, computed by
/// counting matching training rows and multiplying the ratios directly.
pub fn nb_direct_posterior(train: &Dataset, x: &Instance) -> Vec<f64> {
    let class = train.class_index();
    let k = train.num_classes();
    let n = train.len() as f64;
    let mut joint = Vec::with_capacity(k);
    for c in 0..k {
        let in_class: Vec<&Instance> = train
            .instances()
            .iter()
            .filter(|i| i.value(class) == Value::Symbol(c))
            .collect();
        let nc = in_class.len() as f64;
        let mut p = (nc + 1.0) / (n + k as f64);
        for (a, attr) in train.attributes().iter().enumerate() {
            if a == class {
                continue;
            }
            let matching = in_class.iter().filter(|i| i.value(a) == x.value(a)).count() as f64;
            p *= (matching + 1.0) / (nc + attr.domain().len() as f64);
        }
        joint.push(p);
    }
    let total: f64 = joint.iter().sum();
    joint.iter().map(|p| p / total).collect()
}

fn entropy_bits(labels: &[usize]) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    let n = labels.len() as f64;
    let mut h = 0.0;
    for c in 0..2 {
        let m = labels.iter().filter(|&&l| l == c).count() as f64;
        if m > 0.0 {
            h -= m / n * (m / n).ln() / std::f64::consts::LN_2;
        }
    }
    h
}

/// Gain ratio of splitting `labels` into the groups given by `key`.
fn partition_ratio(labels: &[usize], key: &[usize]) -> Option<(f64, f64)> {
    let n = labels.len() as f64;
    let mut groups: Vec<usize> = key.to_vec();
    groups.sort_unstable();
    groups.dedup();
    if groups.len() < 2 {
        return None;
    }
    let mut remainder = 0.0;
    let mut split_info = 0.0;
    for g in groups {
        let sub: Vec<usize> = labels
            .iter()
            .zip(key)
            .filter(|(_, &k)| k == g)
            .map(|(&l, _)| l)
            .collect();
        let w = sub.len() as f64 / n;
        remainder += w * entropy_bits(&sub);
        split_info -= w * w.ln() / std::f64::consts::LN_2;
    }
    let gain = entropy_bits(labels) - remainder;
    Some((gain, gain / split_info))
}

/// Brute-force gain ratio over the whole dataset. Numeric attributes try
/// every midpoint between distinct values and keep the one with the largest
/// gain (lowest threshold on ties). `None` when no split exists.
pub fn gain_ratio_oracle(d: &Dataset, attribute: usize) -> Option<f64> {
    let labels = d.labels();
    if d.attributes()[attribute].is_nominal() {
        let key: Vec<usize> = d
            .instances()
            .iter()
            .map(|i| i.value(attribute).as_symbol().unwrap())
            .collect();
        return partition_ratio(&labels, &key).map(|(_, r)| r);
    }
    let xs: Vec<f64> = d
        .instances()
        .iter()
        .map(|i| i.value(attribute).as_real().unwrap())
        .collect();
    let mut distinct = xs.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let mut best: Option<(f64, f64)> = None;
    for w in distinct.windows(2) {
        let t = (w[0] + w[1]) / 2.0;
        let key: Vec<usize> = xs.iter().map(|&x| usize::from(x > t)).collect();
        let (gain, ratio) = partition_ratio(&labels, &key).unwrap();
        if best.is_none_or(|(g, _)| gain > g + 1e-12) {
            best = Some((gain, ratio));
        }
    }
    best.map(|(_, r)| r)
}

/// AUC by comparing every positive with every negative; ties count one half.
pub fn auc_all_pairs(scores: &[f64], labels: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &li) in labels.iter().enumerate() {
        if !li {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj {
                continue;
            }
            pairs += 1.0;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Forward pass written as explicit matrix-vector products over the
/// network's row-major weights.
pub fn forward_oracle(net: &Network, x: &[f64]) -> Vec<f64> {
    let mut a = x.to_vec();
    for layer in &net.layers {
        let mut next = vec![0.0; layer.outputs];
        for (j, out) in next.iter_mut().enumerate() {
            let mut z = layer.biases[j];
            for (i, ai) in a.iter().enumerate() {
                z += layer.weights[j * layer.inputs + i] * ai;
            }
            *out = sigmoid(z);
        }
        a = next;
    }
    a
}

pub fn half_squared_error(net: &Network, x: &[f64], t: &[f64]) -> f64 {
    forward_oracle(net, x)
        .iter()
        .zip(t)
        .map(|(o, t)| (o - t) * (o - t))
        .sum::<f64>()
        / 2.0
}

/// Central finite-difference gradient, parameters in `Network::parameters` order.
pub fn numeric_gradient(net: &Network, x: &[f64], t: &[f64], h: f64) -> Vec<f64> {
    let count = net.parameters().count();
    let mut probe = net.clone();
    (0..count)
        .map(|p| {
            let original = *probe.parameters().nth(p).unwrap();
            *probe.parameters_mut().nth(p).unwrap() = original + h;
            let up = half_squared_error(&probe, x, t);
            *probe.parameters_mut().nth(p).unwrap() = original - h;
            let down = half_squared_error(&probe, x, t);
            *probe.parameters_mut().nth(p).unwrap() = original;
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Relative error with an absolute floor so near-zero entries do not blow up.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-6)
}

/// The sample tree: S1 has three values; its first two branches test S2 and
/// S3, the third is a leaf. The binary decision D takes values 1 and 0.
pub fn sample_clinical_tree() -> DecisionTree {
    let positive = || TreeNode::leaf(vec![4, 1]);
    let negative = || TreeNode::leaf(vec![1, 4]);
    let stump = |attribute| TreeNode::Internal {
        test: Test::Nominal {
            attribute,
            branch_of_value: vec![0, 1],
        },
        children: vec![positive(), negative()],
        counts: vec![5, 5],
    };
    let root = TreeNode::Internal {
        test: Test::Nominal {
            attribute: 0,
            branch_of_value: vec![0, 1, 2],
        },
        children: vec![stump(1), stump(2), positive()],
        counts: vec![14, 11],
    };
    DecisionTree {
        root,
        attribute_names: vec!["S1".into(), "S2".into(), "S3".into(), "D".into()],
        domains: vec![
            vec!["v11".into(), "v12".into(), "v13".into()],
            vec!["v21".into(), "v22".into()],
            vec!["v31".into(), "v32".into()],
            vec!["1".into(), "0".into()],
        ],
        class_name: "D".into(),
        classes: vec!["1".into(), "0".into()],
    }
}

pub const SAMPLE_TREE_RULES: [&str; 5] = [
    "(S1, v11) ∩ (S2, v21) ⇒ (D = 1)",
    "(S1, v11) ∩ (S2, v22) ⇒ (D = 0)",
    "(S1, v12) ∩ (S3, v31) ⇒ (D = 1)",
    "(S1, v12) ∩ (S3, v32) ⇒ (D = 0)",
    "(S1, v13) ⇒ (D = 1)",
];

/// Every instance over the sample tree's attribute domains.
pub fn sample_tree_inputs() -> Vec<Instance> {
    let mut out = Vec::new();
    for s1 in 0..3 {
        for s2 in 0..2 {
            for s3 in 0..2 {
                out.push(Instance::new(vec![
                    Value::Symbol(s1),
                    Value::Symbol(s2),
                    Value::Symbol(s3),
                    Value::Symbol(0),
                ]));
            }
        }
    }
    out
}

/// Two nominal predictors (3 values each), two numeric predictors and the
/// binary class `c`.
pub fn mixed_schema() -> Schema {
    Schema::new(
        "mixed",
        vec![
            Attribute::nominal("n0", ["a", "b", "c"]),
            Attribute::numeric("x0"),
            Attribute::nominal("n1", ["p", "q", "r"]),
            Attribute::numeric("x1"),
            Attribute::nominal("c", ["T", "F"]),
        ],
    )
    .unwrap()
}

/// Row layout `(n0, x0, n1, x1, class)`.
pub type MixedRow = (usize, f64, usize, f64, usize);

pub fn mixed_dataset(rows: &[MixedRow]) -> Dataset {
    let instances = rows
        .iter()
        .map(|&(a, x, b, y, c)| {
            Instance::new(vec![
                Value::Symbol(a),
                Value::Real(x),
                Value::Symbol(b),
                Value::Real(y),
                Value::Symbol(c),
            ])
        })
        .collect();
    Dataset::new(mixed_schema(), instances).unwrap()
}

pub fn random_mixed_dataset<R: Rng>(rng: &mut R, n: usize) -> Dataset {
    let rows: Vec<MixedRow> = (0..n)
        .map(|_| {
            (
                rng.gen_range(0..3),
                (rng.gen_range(-50.0..50.0f64) * 4.0).round() / 4.0,
                rng.gen_range(0..3),
                rng.gen_range(0.0..1.0),
                rng.gen_range(0..2),
            )
        })
        .collect();
    mixed_dataset(&rows)
}
