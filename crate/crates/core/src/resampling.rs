//! Class rebalancing: SMOTE oversampling plus plain random over- and
//! undersampling.
//!
//! SMOTE builds each synthetic minority instance from an original minority
//! instance `x` and one of its `k` nearest minority neighbours `n`. Numeric
//! fields are interpolated as `x + λ·(n − x)` with a single `λ ~ U[0, 1)`
//! per synthetic instance. Nominal fields take the majority value of
//! `{x, n}`, ties going to `x`. Distances use min-max normalized numerics
//! plus a 0/1 mismatch per nominal attribute.
//!
//! The "randomize" variant that perturbs features with random values is not
//! implemented; only interpolation is.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeKind, ClassCounts, Dataset, Instance, Value};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoteConfig {
    pub k_neighbors: usize,
    /// Synthetic growth in percent; a multiple of 100.
    pub percent: u32,
    pub seed: u64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        SmoteConfig {
            k_neighbors: 5,
            percent: 700,
            seed: 0,
        }
    }
}

impl SmoteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_neighbors == 0 {
            return Err(Error::Config("SMOTE needs k_neighbors >= 1".into()));
        }
        if !self.percent.is_multiple_of(100) {
            return Err(Error::Config(format!(
                "SMOTE percent must be a multiple of 100, got {}",
                self.percent
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ResampleMethod {
    None,
    Smote {
        minority_class: String,
        #[serde(flatten)]
        config: SmoteConfig,
        /// Number of 100% applications when SMOTE is repeated, else 1.
        applications: u32,
    },
    RandomOversample {
        minority_class: String,
        target_count: usize,
        seed: u64,
    },
    RandomUndersample {
        majority_class: String,
        target_count: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResampleRecord {
    pub original_counts: ClassCounts,
    pub final_counts: ClassCounts,
    pub synthetic_created: usize,
    pub config: ResampleMethod,
}

impl ResampleRecord {
    pub fn identity(d: &Dataset) -> Self {
        ResampleRecord {
            original_counts: d.class_counts(),
            final_counts: d.class_counts(),
            synthetic_created: 0,
            config: ResampleMethod::None,
        }
    }
}

/// Indices of the instances of class `class`.
fn members(d: &Dataset, class: usize) -> Vec<usize> {
    d.instances()
        .iter()
        .enumerate()
        .filter(|(_, inst)| d.class_of(inst) == class)
        .map(|(i, _)| i)
        .collect()
}

/// Per-attribute (min, range) of numeric attributes over the whole dataset.
fn numeric_ranges(d: &Dataset) -> Vec<Option<(f64, f64)>> {
    d.attributes()
        .iter()
        .enumerate()
        .map(|(a, attr)| {
            if !attr.is_numeric() {
                return None;
            }
            let (lo, hi) = d
                .instances()
                .iter()
                .filter_map(|i| i.value(a).as_real())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                    (lo.min(x), hi.max(x))
                });
            (lo <= hi).then_some((lo, hi - lo))
        })
        .collect()
}

fn distance(d: &Dataset, ranges: &[Option<(f64, f64)>], x: &Instance, y: &Instance) -> f64 {
    let mut sum = 0.0;
    for a in d.schema().predictors() {
        let term = match (&d.attributes()[a].kind, x.value(a), y.value(a)) {
            (AttributeKind::Numeric, Value::Real(p), Value::Real(q)) => match ranges[a] {
                Some((_, range)) if range > 0.0 => {
                    let diff = (p - q) / range;
                    diff * diff
                }
                _ => 0.0,
            },
            (AttributeKind::Nominal(_), Value::Symbol(p), Value::Symbol(q)) => {
                f64::from(u8::from(p != q))
            }
            // Missing on either side counts as a maximal difference.
            _ => 1.0,
        };
        sum += term;
    }
    sum.sqrt()
}

/// The `k` nearest other members for each member, ties broken by position.
fn nearest_neighbors(d: &Dataset, minority: &[usize], k: usize) -> Vec<Vec<usize>> {
    let ranges = numeric_ranges(d);
    let inst = d.instances();
    minority
        .iter()
        .map(|&i| {
            let mut cands: Vec<(f64, usize)> = minority
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| (distance(d, &ranges, &inst[i], &inst[j]), j))
                .collect();
            cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            cands.into_iter().take(k).map(|(_, j)| j).collect()
        })
        .collect()
}

fn interpolate(d: &Dataset, x: &Instance, n: &Instance, lambda: f64) -> Instance {
    let values = x
        .values()
        .iter()
        .zip(n.values())
        .enumerate()
        .map(|(a, (&xv, &nv))| {
            if a == d.class_index() {
                return xv;
            }
            match (xv, nv) {
                (Value::Real(p), Value::Real(q)) => {
                    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
                    Value::Real((p + lambda * (q - p)).clamp(lo, hi))
                }
                // Majority of {x, n}: two values can only tie or agree, and
                // ties go to x.
                _ => xv,
            }
        })
        .collect();
    Instance::new(values)
}

/// Applies SMOTE once. Originals come first in the generated list, then the
/// whole list is shuffled.
pub fn smote(
    d: &Dataset,
    minority_class: &str,
    cfg: &SmoteConfig,
) -> Result<(Dataset, ResampleRecord)> {
    cfg.validate()?;
    let class = d.schema().class_value_index(minority_class)?;
    let minority = members(d, class);
    if minority.is_empty() {
        return Err(Error::ClassAbsent(minority_class.to_string()));
    }
    let record_for = |out: &Dataset, created: usize| ResampleRecord {
        original_counts: d.class_counts(),
        final_counts: out.class_counts(),
        synthetic_created: created,
        config: ResampleMethod::Smote {
            minority_class: minority_class.to_string(),
            config: *cfg,
            applications: 1,
        },
    };
    if cfg.percent == 0 {
        return Ok((d.clone(), record_for(d, 0)));
    }
    if minority.len() < 2 {
        return Err(Error::Resample(format!(
            "SMOTE needs at least 2 instances of `{minority_class}`, found {}",
            minority.len()
        )));
    }
    if cfg.k_neighbors >= minority.len() {
        return Err(Error::Resample(format!(
            "k_neighbors ({}) must be smaller than the minority count ({})",
            cfg.k_neighbors,
            minority.len()
        )));
    }

    let neighbors = nearest_neighbors(d, &minority, cfg.k_neighbors);
    let per_instance = (cfg.percent / 100) as usize;
    let mut rng = rng_from_seed(cfg.seed);
    let mut synthetic = Vec::with_capacity(minority.len() * per_instance);
    for (&i, nn) in minority.iter().zip(&neighbors) {
        let x = &d.instances()[i];
        for _ in 0..per_instance {
            let n = &d.instances()[nn[rng.gen_range(0..nn.len())]];
            let lambda: f64 = rng.gen();
            synthetic.push(interpolate(d, x, n, lambda));
        }
    }
    let created = synthetic.len();
    let mut instances = d.instances().to_vec();
    instances.extend(synthetic);
    instances.shuffle(&mut rng);
    let out = d.with_instances(instances);
    let record = record_for(&out, created);
    Ok((out, record))
}

/// Applies 100% SMOTE `applications` times, each round reading the previous
/// round's output. Round `r` uses seed `derive_seed(cfg.seed, "smote-round", r)`.
pub fn smote_repeated(
    d: &Dataset,
    minority_class: &str,
    cfg: &SmoteConfig,
    applications: u32,
) -> Result<(Dataset, ResampleRecord)> {
    if applications == 0 {
        return Err(Error::Config("SMOTE repetition count must be >= 1".into()));
    }
    let mut current = d.clone();
    let mut created = 0;
    for round in 0..applications {
        let round_cfg = SmoteConfig {
            percent: 100,
            seed: derive_seed(cfg.seed, "smote-round", round as u64),
            ..*cfg
        };
        let (next, rec) = smote(&current, minority_class, &round_cfg)?;
        created += rec.synthetic_created;
        current = next;
    }
    let record = ResampleRecord {
        original_counts: d.class_counts(),
        final_counts: current.class_counts(),
        synthetic_created: created,
        config: ResampleMethod::Smote {
            minority_class: minority_class.to_string(),
            config: SmoteConfig {
                percent: 100,
                ..*cfg
            },
            applications,
        },
    };
    Ok((current, record))
}

/// Number of 100% rounds equivalent to a single application at `percent`,
/// i.e. `log2(1 + percent/100)` when that is a whole number.
pub fn doubling_rounds(percent: u32) -> Option<u32> {
    let factor = 1 + percent / 100;
    (percent.is_multiple_of(100) && factor.is_power_of_two() && factor > 1)
        .then(|| factor.trailing_zeros())
}

/// Grows the minority class to `target_count` by appending originals drawn
/// with replacement.
pub fn random_oversample(
    d: &Dataset,
    minority_class: &str,
    target_count: usize,
    seed: u64,
) -> Result<(Dataset, ResampleRecord)> {
    let class = d.schema().class_value_index(minority_class)?;
    let minority = members(d, class);
    if minority.is_empty() {
        return Err(Error::ClassAbsent(minority_class.to_string()));
    }
    if target_count < minority.len() {
        return Err(Error::Resample(format!(
            "target {target_count} is below the current count {} of `{minority_class}`",
            minority.len()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut instances = d.instances().to_vec();
    for _ in minority.len()..target_count {
        let pick = minority[rng.gen_range(0..minority.len())];
        instances.push(d.instances()[pick].clone());
    }
    let out = d.with_instances(instances);
    let record = ResampleRecord {
        original_counts: d.class_counts(),
        final_counts: out.class_counts(),
        synthetic_created: target_count - minority.len(),
        config: ResampleMethod::RandomOversample {
            minority_class: minority_class.to_string(),
            target_count,
            seed,
        },
    };
    Ok((out, record))
}

/// Shrinks the majority class to `target_count` by sampling without
/// replacement. Surviving instances keep their original relative order.
pub fn random_undersample(
    d: &Dataset,
    majority_class: &str,
    target_count: usize,
    seed: u64,
) -> Result<(Dataset, ResampleRecord)> {
    let class = d.schema().class_value_index(majority_class)?;
    let majority = members(d, class);
    if target_count > majority.len() {
        return Err(Error::Resample(format!(
            "target {target_count} exceeds the current count {} of `{majority_class}`",
            majority.len()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut keep = vec![true; d.len()];
    for &i in &majority {
        keep[i] = false;
    }
    for pos in index::sample(&mut rng, majority.len(), target_count) {
        keep[majority[pos]] = true;
    }
    let instances = d
        .instances()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(inst, _)| inst.clone())
        .collect();
    let out = d.with_instances(instances);
    let record = ResampleRecord {
        original_counts: d.class_counts(),
        final_counts: out.class_counts(),
        synthetic_created: 0,
        config: ResampleMethod::RandomUndersample {
            majority_class: majority_class.to_string(),
            target_count,
            seed,
        },
    };
    Ok((out, record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Attribute, Schema};

    fn points(rows: &[(f64, f64, usize)]) -> Dataset {
        let schema = Schema::new(
            "pts",
            vec![
                Attribute::numeric("x"),
                Attribute::numeric("y"),
                Attribute::nominal("c", ["T", "F"]),
            ],
        )
        .unwrap();
        let inst = rows
            .iter()
            .map(|&(x, y, c)| Instance::new(vec![Value::Real(x), Value::Real(y), Value::Symbol(c)]))
            .collect();
        Dataset::new(schema, inst).unwrap()
    }

    #[test]
    fn zero_percent_is_identity() {
        let d = points(&[(0.0, 0.0, 0), (1.0, 1.0, 0), (5.0, 5.0, 1)]);
        let cfg = SmoteConfig {
            k_neighbors: 1,
            percent: 0,
            seed: 3,
        };
        let (out, rec) = smote(&d, "T", &cfg).unwrap();
        assert_eq!(out, d);
        assert_eq!(rec.synthetic_created, 0);
    }

    #[test]
    fn identical_parents_give_identical_children() {
        let d = points(&[(1.5, -2.0, 0), (1.5, -2.0, 0), (9.0, 9.0, 1)]);
        let cfg = SmoteConfig {
            k_neighbors: 1,
            percent: 100,
            seed: 11,
        };
        let (out, rec) = smote(&d, "T", &cfg).unwrap();
        assert_eq!(rec.synthetic_created, 2);
        for inst in out.instances().iter().filter(|i| out.class_of(i) == 0) {
            assert_eq!(inst.value(0), Value::Real(1.5));
            assert_eq!(inst.value(1), Value::Real(-2.0));
        }
    }

    #[test]
    fn precondition_errors() {
        let d = points(&[(0.0, 0.0, 0), (1.0, 1.0, 0), (5.0, 5.0, 1)]);
        let bad_k = SmoteConfig {
            k_neighbors: 2,
            percent: 100,
            seed: 0,
        };
        assert!(matches!(smote(&d, "T", &bad_k), Err(Error::Resample(_))));
        let bad_pct = SmoteConfig {
            k_neighbors: 1,
            percent: 150,
            seed: 0,
        };
        assert!(matches!(smote(&d, "T", &bad_pct), Err(Error::Config(_))));
        let only_f = points(&[(0.0, 0.0, 1), (1.0, 1.0, 1)]);
        let cfg = SmoteConfig {
            k_neighbors: 1,
            percent: 100,
            seed: 0,
        };
        assert!(matches!(
            smote(&only_f, "T", &cfg),
            Err(Error::ClassAbsent(_))
        ));
        assert!(matches!(smote(&d, "X", &cfg), Err(Error::ClassAbsent(_))));
    }

    #[test]
    fn repeated_doubles_each_round() {
        let mut rows: Vec<(f64, f64, usize)> = (0..5).map(|i| (i as f64, 0.0, 0)).collect();
        rows.extend((0..7).map(|i| (i as f64, 10.0, 1)));
        let d = points(&rows);
        let cfg = SmoteConfig {
            k_neighbors: 2,
            percent: 700,
            seed: 1,
        };
        let rounds = doubling_rounds(cfg.percent).unwrap();
        assert_eq!(rounds, 3);
        let (out, rec) = smote_repeated(&d, "T", &cfg, rounds).unwrap();
        assert_eq!(out.class_counts()["T"], 40);
        assert_eq!(rec.synthetic_created, 35);
        assert_eq!(doubling_rounds(200), None);
        assert_eq!(doubling_rounds(0), None);
    }

    #[test]
    fn oversample_and_undersample_counts() {
        let mut rows: Vec<(f64, f64, usize)> = (0..3).map(|i| (i as f64, 0.0, 0)).collect();
        rows.extend((0..10).map(|i| (i as f64, 1.0, 1)));
        let d = points(&rows);
        let (same, _) = random_oversample(&d, "T", 3, 1).unwrap();
        assert_eq!(same, d);
        let (up, rec) = random_oversample(&d, "T", 10, 1).unwrap();
        assert_eq!(up.class_counts()["T"], 10);
        assert_eq!(rec.synthetic_created, 7);
        assert!(random_oversample(&d, "T", 2, 1).is_err());

        let (down, _) = random_undersample(&d, "F", 3, 1).unwrap();
        assert_eq!(down.class_counts()["F"], 3);
        assert_eq!(down.class_counts()["T"], 3);
        let (same, _) = random_undersample(&d, "F", 10, 1).unwrap();
        assert_eq!(same, d);
        assert!(random_undersample(&d, "F", 11, 1).is_err());

        let empty_minority = points(&[(0.0, 0.0, 1)]);
        assert!(random_oversample(&empty_minority, "T", 4, 0).is_err());
    }
}
