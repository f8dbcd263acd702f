//! Pessimistic-error subtree replacement.

use statrs::distribution::{ContinuousCDF, Normal};

use super::TreeNode;

/// Extra errors to add to `errors` observed among `n` instances so that the
/// total is the upper confidence limit of the binomial error rate at
/// confidence `cf` (normal approximation with continuity correction; exact
/// bound when no errors were observed).
pub fn added_errors(n: f64, errors: f64, cf: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    if errors < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if errors == 0.0 {
            return base;
        }
        return base + errors * (added_errors(n, 1.0, cf) - base);
    }
    if errors + 0.5 >= n {
        return (n - errors).max(0.0);
    }
    let z = Normal::standard().inverse_cdf(1.0 - cf);
    let f = (errors + 0.5) / n;
    let r = (f + z * z / (2.0 * n) + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt())
        / (1.0 + z * z / n);
    r * n - errors
}

fn leaf_estimate(counts: &[usize], cf: f64) -> f64 {
    let n: usize = counts.iter().sum();
    let errors = n - counts.iter().copied().max().unwrap_or(0);
    errors as f64 + added_errors(n as f64, errors as f64, cf)
}

/// Prunes bottom-up and returns the estimated error count of the result.
pub(super) fn prune(node: &mut TreeNode, cf: f64) -> f64 {
    let TreeNode::Internal {
        children, counts, ..
    } = node
    else {
        return leaf_estimate(node.counts(), cf);
    };
    let subtree: f64 = children.iter_mut().map(|c| prune(c, cf)).sum();
    let as_leaf = leaf_estimate(counts, cf);
    if as_leaf <= subtree {
        *node = TreeNode::leaf(counts.clone());
        as_leaf
    } else {
        subtree
    }
}
