use serde::{Deserialize, Serialize};

use super::{AttributeKind, Dataset, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImputeStrategy {
    /// Mean for numerics, most frequent value for nominals (ties go to the
    /// earlier declared value).
    MeanOrMode,
    DropInstance,
}

pub fn impute_missing(d: &Dataset, strategy: ImputeStrategy) -> Result<Dataset> {
    if !d.has_missing() {
        return Ok(d.clone());
    }
    match strategy {
        ImputeStrategy::DropInstance => {
            let kept = d
                .instances()
                .iter()
                .filter(|i| !i.values().iter().any(Value::is_missing))
                .cloned()
                .collect();
            Ok(d.with_instances(kept))
        }
        ImputeStrategy::MeanOrMode => {
            let census = d.missing_census();
            let mut instances = d.instances().to_vec();
            for (a, attr) in d.attributes().iter().enumerate() {
                if census[a] == 0 {
                    continue;
                }
                let fill = match &attr.kind {
                    AttributeKind::Numeric => {
                        let (sum, n) = d
                            .instances()
                            .iter()
                            .filter_map(|i| i.value(a).as_real())
                            .fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
                        if n == 0 {
                            return Err(Error::NoStatistic(attr.name.clone()));
                        }
                        Value::Real(sum / n as f64)
                    }
                    AttributeKind::Nominal(domain) => {
                        let mut counts = vec![0usize; domain.len()];
                        for s in d.instances().iter().filter_map(|i| i.value(a).as_symbol()) {
                            counts[s] += 1;
                        }
                        let best = counts.iter().copied().max().unwrap_or(0);
                        if best == 0 {
                            return Err(Error::NoStatistic(attr.name.clone()));
                        }
                        Value::Symbol(counts.iter().position(|&c| c == best).unwrap())
                    }
                };
                for inst in instances.iter_mut().filter(|i| i.value(a).is_missing()) {
                    inst.set(a, fill);
                }
            }
            Ok(d.with_instances(instances))
        }
    }
}
