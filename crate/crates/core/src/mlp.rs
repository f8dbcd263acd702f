//! Feed-forward multilayer perceptron trained by per-instance
//! back-propagation with momentum.
//!
//! Every unit (hidden and output) is a logistic sigmoid and the loss is half
//! the squared error. Nominal inputs are one-hot encoded and numeric inputs
//! are min-max scaled using the training data's range. Class probabilities are
//! the output activations normalized to sum to one.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::Predictor;
use crate::dataset::{AttributeKind, Dataset, Instance, Value};
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    /// Hidden layer widths. `None` means one layer of
    /// `(input width + classes) / 2` units.
    pub hidden_sizes: Option<Vec<usize>>,
    pub learning_rate: f64,
    pub momentum: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Initial weights are uniform in `[-r, r]`.
    pub weight_init_range: f64,
}

impl Default for MlpConfig {
    fn default() -> Self {
        MlpConfig {
            hidden_sizes: None,
            learning_rate: 0.3,
            momentum: 0.2,
            epochs: 500,
            seed: 0,
            weight_init_range: 0.05,
        }
    }
}

impl MlpConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::Config(format!(
                "learning rate must lie in (0, 1], got {}",
                self.learning_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.momentum) {
            return Err(Error::Config(format!(
                "momentum must lie in [0, 1], got {}",
                self.momentum
            )));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be >= 1".into()));
        }
        if !(self.weight_init_range >= 0.0 && self.weight_init_range.is_finite()) {
            return Err(Error::Config(
                "weight init range must be finite and non-negative".into(),
            ));
        }
        if let Some(h) = &self.hidden_sizes {
            if h.contains(&0) {
                return Err(Error::Config(
                    "hidden layers must have at least one unit".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum EncodedAttribute {
    Nominal {
        attribute: usize,
        offset: usize,
        size: usize,
    },
    Numeric {
        attribute: usize,
        offset: usize,
        min: f64,
        max: f64,
        /// Set when `min == max`; the input is then always 0.
        constant: bool,
    },
}

/// Mapping from dataset instances to network input and target vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Encoding {
    pub inputs: Vec<EncodedAttribute>,
    pub width: usize,
    pub class_index: usize,
    pub num_classes: usize,
}

impl Encoding {
    pub fn fit(d: &Dataset) -> Result<Self> {
        if d.has_missing() {
            return Err(Error::Config(
                "encoding requires data without missing values".into(),
            ));
        }
        let mut inputs = Vec::new();
        let mut offset = 0;
        for a in d.schema().predictors() {
            match &d.attributes()[a].kind {
                AttributeKind::Nominal(domain) => {
                    inputs.push(EncodedAttribute::Nominal {
                        attribute: a,
                        offset,
                        size: domain.len(),
                    });
                    offset += domain.len();
                }
                AttributeKind::Numeric => {
                    let (min, max) = d
                        .instances()
                        .iter()
                        .filter_map(|i| i.value(a).as_real())
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                            (lo.min(x), hi.max(x))
                        });
                    let (min, max) = if min <= max { (min, max) } else { (0.0, 0.0) };
                    inputs.push(EncodedAttribute::Numeric {
                        attribute: a,
                        offset,
                        min,
                        max,
                        constant: min >= max,
                    });
                    offset += 1;
                }
            }
        }
        Ok(Encoding {
            inputs,
            width: offset,
            class_index: d.class_index(),
            num_classes: d.num_classes(),
        })
    }

    /// Missing nominals encode as an all-zero block, missing numerics as 0.
    pub fn encode_instance(&self, x: &Instance) -> Vec<f64> {
        let mut v = vec![0.0; self.width];
        for input in &self.inputs {
            match *input {
                EncodedAttribute::Nominal {
                    attribute,
                    offset,
                    size,
                } => {
                    if let Value::Symbol(s) = x.value(attribute) {
                        if s < size {
                            v[offset + s] = 1.0;
                        }
                    }
                }
                EncodedAttribute::Numeric {
                    attribute,
                    offset,
                    min,
                    max,
                    constant,
                } => {
                    if let (Value::Real(r), false) = (x.value(attribute), constant) {
                        v[offset] = (r - min) / (max - min);
                    }
                }
            }
        }
        v
    }

    pub fn target(&self, class: usize) -> Vec<f64> {
        (0..self.num_classes)
            .map(|c| if c == class { 1.0 } else { 0.0 })
            .collect()
    }

    pub fn constant_attributes(&self) -> Vec<usize> {
        self.inputs
            .iter()
            .filter_map(|i| match *i {
                EncodedAttribute::Numeric {
                    attribute,
                    constant: true,
                    ..
                } => Some(attribute),
                _ => None,
            })
            .collect()
    }
}

/// Encoding, input rows and one-hot target rows of a dataset.
pub type Encoded = (Encoding, Vec<Vec<f64>>, Vec<Vec<f64>>);

/// Encodes a whole dataset.
pub fn encode(d: &Dataset) -> Result<Encoded> {
    let enc = Encoding::fit(d)?;
    let xs = d
        .instances()
        .iter()
        .map(|i| enc.encode_instance(i))
        .collect();
    let ts = d
        .instances()
        .iter()
        .map(|i| enc.target(d.class_of(i)))
        .collect();
    Ok((enc, xs, ts))
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Fully connected sigmoid layer. `weights` is row-major with one row per
/// output unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Layer {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            biases: vec![0.0; outputs],
        }
    }

    fn activate(&self, input: &[f64], out: &mut Vec<f64>) {
        out.clear();
        for (row, b) in self.weights.chunks_exact(self.inputs).zip(&self.biases) {
            let z: f64 = row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>() + b;
            out.push(sigmoid(z));
        }
    }
}

/// Gradient with the same shape as the network's layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub layers: Vec<Layer>,
    /// Loss `Σ(o − t)² / 2` at the evaluated point.
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub layer_sizes: Vec<usize>,
    pub layers: Vec<Layer>,
}

impl Network {
    pub fn zeros(layer_sizes: &[usize]) -> Self {
        let layers = layer_sizes
            .windows(2)
            .map(|w| Layer::zeros(w[0], w[1]))
            .collect();
        Network {
            layer_sizes: layer_sizes.to_vec(),
            layers,
        }
    }

    /// Parameters uniform in `[-range, range]`.
    pub fn random<R: Rng>(layer_sizes: &[usize], range: f64, rng: &mut R) -> Self {
        let mut net = Network::zeros(layer_sizes);
        for layer in &mut net.layers {
            for w in layer.weights.iter_mut().chain(layer.biases.iter_mut()) {
                *w = if range > 0.0 {
                    rng.gen_range(-range..=range)
                } else {
                    0.0
                };
            }
        }
        net
    }

    /// Activations of every layer, input included.
    pub fn activations(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.to_vec());
        for layer in &self.layers {
            let mut out = Vec::with_capacity(layer.outputs);
            layer.activate(acts.last().unwrap(), &mut out);
            acts.push(out);
        }
        acts
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        self.activations(x).pop().unwrap()
    }

    pub fn gradient(&self, x: &[f64], target: &[f64]) -> Gradient {
        let acts = self.activations(x);
        let out = acts.last().unwrap();
        let loss = out
            .iter()
            .zip(target)
            .map(|(o, t)| (o - t) * (o - t))
            .sum::<f64>()
            / 2.0;
        let mut delta: Vec<f64> = out
            .iter()
            .zip(target)
            .map(|(o, t)| (o - t) * o * (1.0 - o))
            .collect();
        let mut grads: Vec<Layer> = self
            .layers
            .iter()
            .map(|l| Layer::zeros(l.inputs, l.outputs))
            .collect();
        for li in (0..self.layers.len()).rev() {
            let layer = &self.layers[li];
            let input = &acts[li];
            let g = &mut grads[li];
            for (j, &dj) in delta.iter().enumerate() {
                g.biases[j] = dj;
                for (gw, &xi) in g.weights[j * layer.inputs..(j + 1) * layer.inputs]
                    .iter_mut()
                    .zip(input)
                {
                    *gw = dj * xi;
                }
            }
            if li > 0 {
                delta = (0..layer.inputs)
                    .map(|i| {
                        let back: f64 = delta
                            .iter()
                            .enumerate()
                            .map(|(j, dj)| layer.weights[j * layer.inputs + i] * dj)
                            .sum();
                        back * input[i] * (1.0 - input[i])
                    })
                    .collect();
            }
        }
        Gradient {
            layers: grads,
            loss,
        }
    }

    pub fn parameters(&self) -> impl Iterator<Item = &f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.biases.iter()))
    }

    pub fn parameters_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.layers
            .iter_mut()
            .flat_map(|l| l.weights.iter_mut().chain(l.biases.iter_mut()))
    }
}

impl Gradient {
    pub fn values(&self) -> impl Iterator<Item = &f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.biases.iter()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    pub network: Network,
    pub encoding: Encoding,
    /// Mean loss over the training set after each epoch.
    pub loss_history: Vec<f64>,
}

fn mean_loss(net: &Network, xs: &[Vec<f64>], ts: &[Vec<f64>]) -> f64 {
    let total: f64 = xs
        .iter()
        .zip(ts)
        .map(|(x, t)| {
            net.forward(x)
                .iter()
                .zip(t)
                .map(|(o, t)| (o - t) * (o - t))
                .sum::<f64>()
                / 2.0
        })
        .sum();
    total / xs.len() as f64
}

pub fn default_hidden(encoding: &Encoding) -> usize {
    ((encoding.width + encoding.num_classes) / 2).max(1)
}

impl MlpModel {
    pub fn train(d: &Dataset, cfg: &MlpConfig) -> Result<Self> {
        cfg.validate()?;
        if d.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let (encoding, xs, ts) = encode(d)?;
        let mut sizes = vec![encoding.width];
        match &cfg.hidden_sizes {
            Some(h) => sizes.extend(h),
            None => sizes.push(default_hidden(&encoding)),
        }
        sizes.push(encoding.num_classes);

        let mut rng = rng_from_seed(cfg.seed);
        let mut net = Network::random(&sizes, cfg.weight_init_range, &mut rng);
        let mut velocity = Network::zeros(&sizes);
        let mut order: Vec<usize> = (0..xs.len()).collect();
        let mut history = Vec::with_capacity(cfg.epochs);

        for epoch in 0..cfg.epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let grad = net.gradient(&xs[i], &ts[i]);
                for ((w, v), g) in net
                    .parameters_mut()
                    .zip(velocity.parameters_mut())
                    .zip(grad.values())
                {
                    *v = -cfg.learning_rate * g + cfg.momentum * *v;
                    *w += *v;
                }
            }
            let loss = mean_loss(&net, &xs, &ts);
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss { epoch: epoch + 1 });
            }
            history.push(loss);
        }

        Ok(MlpModel {
            network: net,
            encoding,
            loss_history: history,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Output activations scaled to sum to one.
pub fn normalize_outputs(out: &[f64]) -> Vec<f64> {
    let total: f64 = out.iter().sum();
    if total > 0.0 {
        out.iter().map(|o| o / total).collect()
    } else {
        vec![1.0 / out.len() as f64; out.len()]
    }
}

impl Predictor for MlpModel {
    fn predict_proba(&self, x: &Instance) -> Vec<f64> {
        normalize_outputs(&self.network.forward(&self.encoding.encode_instance(x)))
    }
}
