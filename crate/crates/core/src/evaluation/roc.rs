use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    /// (false-positive rate, true-positive rate) from (0, 0) to (1, 1).
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// ROC curve from a threshold sweep over the distinct scores, highest first.
/// Instances sharing a score move the curve diagonally, which credits tied
/// positive/negative pairs with one half. The trapezoid area is accumulated
/// in integer units of one positive-negative pair.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<RocCurve> {
    if scores.len() != labels.len() {
        return Err(Error::Config("scores and labels differ in length".into()));
    }
    let pos = labels.iter().filter(|&&l| l).count() as u64;
    let neg = labels.len() as u64 - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::Config(
            "ROC analysis needs both positive and negative instances".into(),
        ));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut twice_area = 0u64;
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        let (tp0, fp0) = (tp, fp);
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        twice_area += (fp - fp0) * (tp + tp0);
        points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
    }
    Ok(RocCurve {
        points,
        auc: twice_area as f64 / (2 * pos * neg) as f64,
    })
}
