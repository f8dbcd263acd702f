mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thorax_core::mlp::{MlpConfig, MlpModel, Network};
use thorax_core::{Attribute, Dataset, Instance, Predictor, Schema, Value};

use common::{forward_oracle, numeric_gradient, relative_error};

/// Random architecture with 1 or 2 hidden layers and parameters in ±2.
fn random_case(rng: &mut ChaCha8Rng) -> (Network, Vec<f64>, Vec<f64>) {
    let mut sizes = vec![rng.gen_range(1..6)];
    for _ in 0..rng.gen_range(1..3) {
        sizes.push(rng.gen_range(1..6));
    }
    sizes.push(rng.gen_range(1..4));
    let net = Network::random(&sizes, 2.0, rng);
    let x = (0..sizes[0]).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let t = (0..*sizes.last().unwrap())
        .map(|_| f64::from(rng.gen_range(0..2u8)))
        .collect();
    (net, x, t)
}

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (net, x, t) = random_case(&mut rng);
        let analytic: Vec<f64> = net.gradient(&x, &t).values().copied().collect();
        let numeric = numeric_gradient(&net, &x, &t, 1e-5);
        assert_eq!(analytic.len(), numeric.len());
        for (a, n) in analytic.iter().zip(&numeric) {
            worst = worst.max(relative_error(*a, *n));
        }
    }
    assert!(worst < 1e-4, "max relative error {worst}");
}

#[test]
fn forward_matches_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (net, x, _) = random_case(&mut rng);
        let got = net.forward(&x);
        let want = forward_oracle(&net, &x);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12);
            assert!(*g > 0.0 && *g < 1.0);
        }
    }
}

fn separable(n: usize, seed: u64) -> Dataset {
    let schema = Schema::new(
        "sep",
        vec![
            Attribute::numeric("x"),
            Attribute::numeric("y"),
            Attribute::nominal("c", ["T", "F"]),
        ],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    while rows.len() < n {
        let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        // Keep a margin around the boundary x + y = 0.
        if (x + y).abs() < 0.2 {
            continue;
        }
        let c = usize::from(x + y < 0.0);
        rows.push(Instance::new(vec![
            Value::Real(x),
            Value::Real(y),
            Value::Symbol(c),
        ]));
    }
    Dataset::new(schema, rows).unwrap()
}

#[test]
fn learns_a_linearly_separable_set() {
    let d = separable(60, 1);
    let cfg = MlpConfig {
        epochs: 200,
        seed: 9,
        ..MlpConfig::default()
    };
    let model = MlpModel::train(&d, &cfg).unwrap();
    let correct = d
        .instances()
        .iter()
        .filter(|x| model.predict(x) == d.class_of(x))
        .count();
    assert_eq!(correct, d.len());
}

#[test]
fn loss_settles_into_a_non_increasing_curve() {
    let d = separable(40, 2);
    let seeds = 40;
    let mut monotone = 0;
    for seed in 0..seeds {
        let cfg = MlpConfig {
            epochs: 100,
            learning_rate: 0.1,
            seed,
            ..MlpConfig::default()
        };
        let history = MlpModel::train(&d, &cfg).unwrap().loss_history;
        if history[10..].windows(2).all(|w| w[1] <= w[0]) {
            monotone += 1;
        }
    }
    assert!(
        monotone * 100 >= seeds * 95,
        "{monotone}/{seeds} seeds non-increasing"
    );
}

#[test]
fn training_is_bit_reproducible() {
    let d = separable(30, 3);
    let cfg = MlpConfig {
        epochs: 50,
        seed: 17,
        ..MlpConfig::default()
    };
    let a = MlpModel::train(&d, &cfg).unwrap();
    let b = MlpModel::train(&d, &cfg).unwrap();
    let bits = |m: &MlpModel| {
        m.network
            .parameters()
            .map(|p| p.to_bits())
            .collect::<Vec<_>>()
    };
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn zero_epochs_rejected() {
    let d = separable(4, 4);
    let cfg = MlpConfig {
        epochs: 0,
        ..MlpConfig::default()
    };
    assert!(MlpModel::train(&d, &cfg).is_err());
}

proptest! {
    #[test]
    fn normalized_outputs_are_distributions(seed in any::<u64>(), x in -5.0f64..5.0, y in -5.0f64..5.0) {
        let d = separable(10, seed);
        let cfg = MlpConfig { epochs: 5, seed, ..MlpConfig::default() };
        let model = MlpModel::train(&d, &cfg).unwrap();
        let q = Instance::new(vec![Value::Real(x), Value::Real(y), Value::Symbol(0)]);
        let p = model.predict_proba(&q);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let raw = model.network.forward(&model.encoding.encode_instance(&q));
        prop_assert!(raw.iter().all(|o| *o > 0.0 && *o < 1.0));
    }
}
