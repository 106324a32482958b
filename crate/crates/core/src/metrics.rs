//! Classification metrics: ROC sweep, trapezoid AUC, FPR-bounded partial
//! AUC, and F1 for the bot class.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricError {
    SingleClass,
    LengthMismatch,
}

impl core::fmt::Display for MetricError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MetricError::SingleClass => write!(f, "both classes must be present"),
            MetricError::LengthMismatch => write!(f, "scores and labels differ in length"),
        }
    }
}

/// One ROC point (false positive rate, true positive rate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
    /// Partial AUC over FPR in [0, 0.1], standardized (McClish) so a
    /// perfect classifier scores 1.0 and a chance-level one 0.5.
    pub bounded_auc: f64,
}

const FPR_BOUND: f64 = 0.1;

/// ROC by descending-score sweep. Equal scores move as one step, so tied
/// scores produce a single diagonal segment. `labels[i]` is true for bots
/// (the positive class).
pub fn roc_and_auc(scores: &[f64], labels: &[bool]) -> Result<RocCurve, MetricError> {
    if scores.len() != labels.len() {
        return Err(MetricError::LengthMismatch);
    }
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(MetricError::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut points = Vec::with_capacity(scores.len() + 1);
    points.push(RocPoint { fpr: 0.0, tpr: 0.0 });
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0usize;
    while i < order.len() {
        let score = scores[order[i]];
        // Consume the whole tie group before emitting a point.
        while i < order.len() && scores[order[i]] == score {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(RocPoint {
            fpr: fp as f64 / negatives as f64,
            tpr: tp as f64 / positives as f64,
        });
    }

    let auc = trapezoid_area(&points, 1.0);
    let partial = trapezoid_area(&points, FPR_BOUND);
    let chance = FPR_BOUND * FPR_BOUND / 2.0; // diagonal area below the bound
    let bounded_auc = 0.5 * (1.0 + (partial - chance) / (FPR_BOUND - chance));
    Ok(RocCurve {
        points,
        auc,
        bounded_auc,
    })
}

/// Trapezoid area under the curve for FPR in [0, `fpr_limit`], with linear
/// interpolation at the cut.
fn trapezoid_area(points: &[RocPoint], fpr_limit: f64) -> f64 {
    let mut area = 0.0;
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.fpr >= fpr_limit {
            break;
        }
        if b.fpr <= fpr_limit {
            area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
        } else {
            // Cut the segment at the limit.
            let t = (fpr_limit - a.fpr) / (b.fpr - a.fpr);
            let tpr_cut = a.tpr + t * (b.tpr - a.tpr);
            area += (fpr_limit - a.fpr) * (a.tpr + tpr_cut) / 2.0;
            break;
        }
    }
    area
}

/// F1 for the bot class; any zero-division collapses to 0.
pub fn f1_score(predictions: &[bool], labels: &[bool]) -> f64 {
    debug_assert_eq!(predictions.len(), labels.len());
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fn_ = 0usize;
    for (&p, &l) in predictions.iter().zip(labels) {
        match (p, l) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    if tp == 0 {
        return 0.0;
    }
    2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn perfect_separation() {
        let curve = roc_and_auc(&[0.9, 0.8, 0.2, 0.1], &[true, true, false, false]).unwrap();
        assert_eq!(curve.auc, 1.0);
        assert_eq!(curve.bounded_auc, 1.0);
    }

    #[test]
    fn all_scores_equal_is_diagonal() {
        let curve = roc_and_auc(&[0.5; 6], &[true, false, true, false, true, false]).unwrap();
        assert!((curve.auc - 0.5).abs() < 1e-12);
        assert_eq!(curve.points.len(), 2);
    }

    #[test]
    fn single_class_is_error() {
        assert_eq!(
            roc_and_auc(&[0.1, 0.2], &[true, true]).unwrap_err(),
            MetricError::SingleClass
        );
    }

    #[test]
    fn f1_perfect_and_degenerate() {
        assert_eq!(f1_score(&[true, false], &[true, false]), 1.0);
        assert_eq!(f1_score(&[false, false], &[true, false]), 0.0);
    }

    #[test]
    fn f1_matches_formula() {
        // tp=2 fp=1 fn=1 -> p=2/3 r=2/3 -> f1=2/3
        let predictions = vec![true, true, true, false, false];
        let labels = vec![true, true, false, true, false];
        assert!((f1_score(&predictions, &labels) - 2.0 / 3.0).abs() < 1e-12);
    }
}
