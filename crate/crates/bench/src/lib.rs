//! Benchmark support: a deterministic synthetic stand-in for the thoracic
//! surgery data, with the same schema and class balance (470 instances,
//! 70 deaths), used where the real records are not available.
//!
//! Values are drawn per class so that the risk factors carry signal, but the
//! generator makes no claim to reproduce the real data's joint distribution.
//! Results obtained on it say nothing about the original study.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thorax_core::dataset::thoracic_schema;
use thorax_core::{Dataset, Instance, Value};

pub const SURROGATE_SEED: u64 = 20_131_470;
pub const SURROGATE_DEATHS: usize = 70;
pub const SURROGATE_SURVIVORS: usize = 400;

/// Per-class parameters: index 0 is used for deaths (T), 1 for survivors (F).
struct Profile {
    dgn: [[f64; 7]; 2],
    fvc: [(f64, f64); 2],
    fev1_ratio: [(f64, f64); 2],
    performance: [[f64; 3]; 2],
    /// P(T) for PRE7, PRE8, PRE9, PRE10, PRE11.
    symptoms: [[f64; 5]; 2],
    tumor: [[f64; 4]; 2],
    /// P(T) for PRE17, PRE19, PRE25, PRE30, PRE32.
    history: [[f64; 5]; 2],
    age: [(f64, f64); 2],
}

const PROFILE: Profile = Profile {
    dgn: [
        [0.70, 0.12, 0.09, 0.01, 0.06, 0.01, 0.01],
        [0.75, 0.11, 0.10, 0.01, 0.03, 0.00, 0.00],
    ],
    fvc: [(3.05, 0.80), (3.33, 0.87)],
    fev1_ratio: [(0.76, 0.09), (0.79, 0.08)],
    performance: [[0.10, 0.65, 0.25], [0.06, 0.66, 0.28]],
    symptoms: [
        [0.09, 0.13, 0.12, 0.80, 0.24],
        [0.05, 0.06, 0.05, 0.67, 0.15],
    ],
    tumor: [[0.40, 0.06, 0.44, 0.10], [0.63, 0.03, 0.31, 0.03]],
    history: [
        [0.17, 0.01, 0.03, 0.90, 0.01],
        [0.06, 0.00, 0.02, 0.82, 0.00],
    ],
    age: [(63.5, 8.5), (62.4, 8.6)],
};

fn categorical(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    weights.len() - 1
}

/// Symbol index of T (0) or F (1) with P(T) = `p`.
fn flag(rng: &mut ChaCha8Rng, p: f64) -> Value {
    Value::Symbol(usize::from(rng.gen::<f64>() >= p))
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn instance(rng: &mut ChaCha8Rng, class: usize) -> Instance {
    let p = &PROFILE;
    let (fvc_mean, fvc_sd) = p.fvc[class];
    let (ratio_mean, ratio_sd) = p.fev1_ratio[class];
    let (age_mean, age_sd) = p.age[class];
    let fvc = Normal::new(fvc_mean, fvc_sd)
        .unwrap()
        .sample(rng)
        .clamp(1.4, 6.3);
    let ratio = Normal::new(ratio_mean, ratio_sd)
        .unwrap()
        .sample(rng)
        .clamp(0.45, 0.98);
    let age = Normal::new(age_mean, age_sd)
        .unwrap()
        .sample(rng)
        .round()
        .clamp(21.0, 87.0);

    let mut values = Vec::with_capacity(17);
    values.push(Value::Symbol(categorical(rng, &p.dgn[class])));
    values.push(Value::Real(round2(fvc)));
    values.push(Value::Real(round2(fvc * ratio)));
    values.push(Value::Symbol(categorical(rng, &p.performance[class])));
    for &s in &p.symptoms[class] {
        values.push(flag(rng, s));
    }
    values.push(Value::Symbol(categorical(rng, &p.tumor[class])));
    for &h in &p.history[class] {
        values.push(flag(rng, h));
    }
    values.push(Value::Real(age));
    values.push(Value::Symbol(class));
    Instance::new(values)
}

/// The stand-in dataset for `seed`; `surrogate(SURROGATE_SEED)` is the
/// committed `data/thoracic-surrogate.arff`.
pub fn surrogate(seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(SURROGATE_DEATHS + SURROGATE_SURVIVORS);
    for (class, count) in [(0, SURROGATE_DEATHS), (1, SURROGATE_SURVIVORS)] {
        for _ in 0..count {
            instances.push(instance(&mut rng, class));
        }
    }
    instances.shuffle(&mut rng);
    Dataset::new(thoracic_schema(), instances).expect("generated values conform to the schema")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_matches_the_original() {
        let d = surrogate(SURROGATE_SEED);
        assert_eq!(d.len(), 470);
        assert_eq!(d.class_histogram(), vec![70, 400]);
        assert!(!d.has_missing());
    }

    #[test]
    fn deterministic() {
        assert_eq!(surrogate(3), surrogate(3));
        assert_ne!(surrogate(3), surrogate(4));
    }
}
