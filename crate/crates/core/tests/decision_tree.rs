mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thorax_core::decision_tree::{
    classify_by_rules, gain_ratio, DecisionTree, Test, TreeConfig, TreeNode,
};
use thorax_core::{Dataset, Instance, Predictor, Value};

use common::{
    gain_ratio_oracle, mixed_dataset, random_mixed_dataset, sample_clinical_tree,
    sample_tree_inputs, MixedRow, SAMPLE_TREE_RULES,
};

#[test]
fn gain_ratio_matches_entropy_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let n = rng.gen_range(2..16);
        let d = random_mixed_dataset(&mut rng, n);
        for a in d.schema().predictors() {
            let got = gain_ratio(&d, a).unwrap().ratio();
            let want = gain_ratio_oracle(&d, a);
            match (got, want) {
                (Some(g), Some(w)) => assert!((g - w).abs() < 1e-10, "attribute {a}: {g} vs {w}"),
                (None, None) => {}
                other => panic!("attribute {a}: splittability differs {other:?}"),
            }
        }
    }
}

#[test]
fn hand_computed_table() {
    // n0 = a holds (T, T, F), n0 = b holds (T, T, F, F, F):
    // gain = H(4/8) − (3/8)·H(1/3) − (5/8)·H(2/5), split info = H(3/8).
    let rows: Vec<MixedRow> = vec![
        (0, 1.0, 0, 0.0, 0),
        (0, 2.0, 0, 0.0, 0),
        (0, 3.0, 1, 0.0, 1),
        (1, 4.0, 1, 0.0, 0),
        (1, 5.0, 2, 0.0, 0),
        (1, 6.0, 2, 0.0, 1),
        (1, 7.0, 0, 0.0, 1),
        (1, 8.0, 1, 0.0, 1),
    ];
    let d = mixed_dataset(&rows);
    let gain = 1.0
        - 3.0 / 8.0
            * (-(1.0f64 / 3.0) * (1.0f64 / 3.0).log2() - (2.0 / 3.0) * (2.0f64 / 3.0).log2())
        - 5.0 / 8.0
            * (-(2.0f64 / 5.0) * (2.0f64 / 5.0).log2() - (3.0 / 5.0) * (3.0f64 / 5.0).log2());
    let split = -(3.0f64 / 8.0) * (3.0f64 / 8.0).log2() - (5.0 / 8.0) * (5.0f64 / 8.0).log2();
    let got = gain_ratio(&d, 0).unwrap().ratio().unwrap();
    assert!((got - gain / split).abs() < 1e-12);
    assert!((gain_ratio_oracle(&d, 0).unwrap() - got).abs() < 1e-12);
    // The constant numeric attribute cannot split.
    assert_eq!(gain_ratio(&d, 3).unwrap().ratio(), None);
}

#[test]
fn sample_tree_yields_five_rules() {
    let tree = sample_clinical_tree();
    let rules: Vec<String> = tree.rules().iter().map(ToString::to_string).collect();
    assert_eq!(rules, SAMPLE_TREE_RULES);
    let rules = tree.rules();
    for x in sample_tree_inputs() {
        assert_eq!(classify_by_rules(&rules, &x), Some(tree.predict(&x)));
    }
}

#[test]
fn stump_and_leaf_rule_counts() {
    let leaf = DecisionTree {
        root: TreeNode::leaf(vec![3, 1]),
        attribute_names: vec!["c".into()],
        domains: vec![vec!["T".into(), "F".into()]],
        class_name: "c".into(),
        classes: vec!["T".into(), "F".into()],
    };
    assert_eq!(leaf.rules().len(), 1);
    assert!(leaf.rules()[0].antecedent.is_empty());

    let rows: Vec<MixedRow> = (0..12)
        .map(|i| (i % 3, 0.0, 0, 0.0, usize::from(i % 3 == 1)))
        .collect();
    let stump = DecisionTree::train(&mixed_dataset(&rows), &TreeConfig::default()).unwrap();
    assert_eq!(stump.rules().len(), 3);
}

fn rows() -> impl Strategy<Value = Vec<MixedRow>> {
    proptest::collection::vec(
        (0usize..3, -10i32..10, 0usize..3, 0.0f64..1.0, 0usize..2),
        1..60,
    )
    .prop_map(|v| {
        v.into_iter()
            .map(|(a, x, b, y, c)| (a, f64::from(x), b, (y * 8.0).round() / 8.0, c))
            .collect()
    })
}

fn any_instance() -> impl Strategy<Value = Instance> {
    (0usize..3, -12.0f64..12.0, 0usize..3, -0.5f64..1.5).prop_map(|(a, x, b, y)| {
        Instance::new(vec![
            Value::Symbol(a),
            Value::Real(x),
            Value::Symbol(b),
            Value::Real(y),
            Value::Symbol(0),
        ])
    })
}

fn config() -> impl Strategy<Value = TreeConfig> {
    (1usize..4, 0.05f64..0.5, any::<bool>()).prop_map(|(m, cf, prune)| TreeConfig {
        min_leaf_instances: m,
        pruning_confidence: cf,
        prune,
    })
}

fn check_structure(
    node: &TreeNode,
    used_nominal: &mut Vec<usize>,
    d: &Dataset,
) -> Result<(), TestCaseError> {
    if let TreeNode::Internal { test, children, .. } = node {
        prop_assert!(children.len() >= 2);
        let nominal = matches!(test, Test::Nominal { .. });
        if nominal {
            prop_assert!(
                !used_nominal.contains(&test.attribute()),
                "nominal attribute tested twice on a path"
            );
            prop_assert!(d.attributes()[test.attribute()].is_nominal());
            used_nominal.push(test.attribute());
        }
        for c in children {
            check_structure(c, used_nominal, d)?;
        }
        if nominal {
            used_nominal.pop();
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn rules_are_lossless(rows in rows(), cfg in config(), probes in proptest::collection::vec(any_instance(), 20)) {
        let d = mixed_dataset(&rows);
        let tree = DecisionTree::train(&d, &cfg).unwrap();
        let rules = tree.rules();
        prop_assert_eq!(rules.len(), tree.num_leaves());
        for x in d.instances().iter().chain(&probes) {
            prop_assert_eq!(classify_by_rules(&rules, x), Some(tree.predict(x)));
        }
    }

    #[test]
    fn pruning_never_adds_leaves(rows in rows(), cfg in config()) {
        let d = mixed_dataset(&rows);
        let grown = DecisionTree::train(&d, &TreeConfig { prune: false, ..cfg }).unwrap();
        let pruned = DecisionTree::train(&d, &TreeConfig { prune: true, ..cfg }).unwrap();
        prop_assert!(pruned.num_leaves() <= grown.num_leaves());
    }

    #[test]
    fn unpruned_tree_routes_instances_to_their_subsets(rows in rows(), cfg in config()) {
        let d = mixed_dataset(&rows);
        let tree = DecisionTree::train(&d, &TreeConfig { prune: false, ..cfg }).unwrap();
        check_structure(&tree.root, &mut Vec::new(), &d)?;
        for x in d.instances() {
            prop_assert!(tree.root.route(x).counts()[d.class_of(x)] > 0);
        }
    }

    #[test]
    fn predictions_are_distributions(rows in rows(), x in any_instance()) {
        let tree = DecisionTree::train(&mixed_dataset(&rows), &TreeConfig::default()).unwrap();
        let p = tree.predict_proba(&x);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
