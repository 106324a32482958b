//! Repeated stratified k-fold cross-validation and grid search optimizing
//! mean AUC.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::metrics::{f1_score, roc_and_auc, MetricError};
use crate::models::{train, ModelSpec, Params, TrainError};
use crate::rng::{seeded, shuffle, subseed, Rng};

#[derive(Debug, Clone, PartialEq)]
pub enum CvError {
    FoldsExceedMinorityClass,
    Train(TrainError),
    Metric(MetricError),
    EmptyGrid,
}

impl From<TrainError> for CvError {
    fn from(e: TrainError) -> Self {
        CvError::Train(e)
    }
}

impl From<MetricError> for CvError {
    fn from(e: MetricError) -> Self {
        CvError::Metric(e)
    }
}

impl core::fmt::Display for CvError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CvError::FoldsExceedMinorityClass => {
                write!(f, "k exceeds the minority class count")
            }
            CvError::Train(e) => write!(f, "training failed: {e}"),
            CvError::Metric(e) => write!(f, "metric failed: {e}"),
            CvError::EmptyGrid => write!(f, "grid search needs at least one grid point"),
        }
    }
}

/// Metrics of one (repeat, fold) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellMetrics {
    pub f1: f64,
    pub auc: f64,
    pub bounded_auc: f64,
}

/// Distributions over all repeat x fold cells, averaged per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub cells: Vec<CellMetrics>,
    pub mean_f1: f64,
    pub std_f1: f64,
    pub mean_auc: f64,
    pub std_auc: f64,
    pub mean_bounded_auc: f64,
    pub std_bounded_auc: f64,
}

fn mean_std<F: Fn(&CellMetrics) -> f64>(cells: &[CellMetrics], get: F) -> (f64, f64) {
    let n = cells.len() as f64;
    let mean = cells.iter().map(&get).sum::<f64>() / n;
    let var = cells
        .iter()
        .map(|c| {
            let d = get(c) - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    (mean, libm::sqrt(var))
}

impl CvReport {
    fn from_cells(cells: Vec<CellMetrics>) -> CvReport {
        let (mean_f1, std_f1) = mean_std(&cells, |c| c.f1);
        let (mean_auc, std_auc) = mean_std(&cells, |c| c.auc);
        let (mean_bounded_auc, std_bounded_auc) = mean_std(&cells, |c| c.bounded_auc);
        CvReport {
            cells,
            mean_f1,
            std_f1,
            mean_auc,
            std_auc,
            mean_bounded_auc,
            std_bounded_auc,
        }
    }
}

/// Stratified fold assignment: indices are shuffled per class and dealt
/// round-robin, keeping per-fold class ratios within one sample of the
/// global ratio. Returns `k` disjoint index sets covering `0..labels.len()`.
pub fn stratified_folds(
    labels: &[bool],
    k: usize,
    rng: &mut Rng,
) -> Result<Vec<Vec<usize>>, CvError> {
    let minority = labels
        .iter()
        .filter(|&&l| l)
        .count()
        .min(labels.iter().filter(|&&l| !l).count());
    if k > minority || k < 2 {
        return Err(CvError::FoldsExceedMinorityClass);
    }
    let mut folds: Vec<Vec<usize>> = (0..k).map(|_| Vec::new()).collect();
    for class in [true, false] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        shuffle(rng, &mut members);
        for (pos, idx) in members.into_iter().enumerate() {
            folds[pos % k].push(idx);
        }
    }
    Ok(folds)
}

/// Repeated stratified k-fold CV: per repeat a fresh seeded shuffle, per
/// fold train on the remainder and score the held-out fold. Fully
/// deterministic given `seed`.
pub fn cross_validate(
    spec: &ModelSpec,
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<CvReport, CvError> {
    let mut cells = Vec::with_capacity(k * repeats);
    for repeat in 0..repeats {
        let mut rng = seeded(subseed(seed, repeat as u64));
        let folds = stratified_folds(y, k, &mut rng)?;
        for (fold_idx, fold) in folds.iter().enumerate() {
            let holdout: &[usize] = fold;
            let train_idx: Vec<usize> = (0..y.len()).filter(|i| !holdout.contains(i)).collect();

            let train_x: Vec<Vec<f64>> = train_idx.iter().map(|&i| x[i].clone()).collect();
            let train_y: Vec<bool> = train_idx.iter().map(|&i| y[i]).collect();
            let cell_spec = ModelSpec {
                params: spec.params.clone(),
                seed: subseed(spec.seed, (repeat * k + fold_idx) as u64),
            };
            let model = train(&cell_spec, &train_x, &train_y)?;

            let scores: Vec<f64> = holdout
                .iter()
                .map(|&i| model.predict_score(&x[i]).expect("dimension checked"))
                .collect();
            let labels: Vec<bool> = holdout.iter().map(|&i| y[i]).collect();
            let curve = roc_and_auc(&scores, &labels)?;
            let predictions: Vec<bool> = scores.iter().map(|&s| s >= 0.5).collect();
            cells.push(CellMetrics {
                f1: f1_score(&predictions, &labels),
                auc: curve.auc,
                bounded_auc: curve.bounded_auc,
            });
        }
    }
    Ok(CvReport::from_cells(cells))
}

/// Evaluate every grid point with `cross_validate` and return the spec with
/// the best mean AUC together with all per-point reports (in declaration
/// order). Exact AUC ties go to the simpler model: fewer trees/stumps or
/// stronger regularization, then declaration order.
pub fn grid_search(
    grid: &[ModelSpec],
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<(ModelSpec, Vec<CvReport>), CvError> {
    if grid.is_empty() {
        return Err(CvError::EmptyGrid);
    }
    let mut reports = Vec::with_capacity(grid.len());
    for spec in grid {
        reports.push(cross_validate(spec, x, y, k, repeats, seed)?);
    }
    let mut best = 0usize;
    for i in 1..grid.len() {
        let (a, b) = (reports[i].mean_auc, reports[best].mean_auc);
        if a > b || (a == b && simpler_than(&grid[i].params, &grid[best].params)) {
            best = i;
        }
    }
    Ok((grid[best].clone(), reports))
}

/// Strictly simpler: fewer trees, then stronger (larger) regularization.
fn simpler_than(a: &Params, b: &Params) -> bool {
    fn key(p: &Params) -> (usize, f64) {
        match p {
            Params::GradientBoosting { trees, .. } => (*trees, 0.0),
            Params::RandomForest { trees, .. } => (*trees, 0.0),
            Params::AdaBoost { stumps } => (*stumps, 0.0),
            Params::LogisticRegression { l2 } => (0, -*l2),
            Params::LinearSvc { l2, .. } => (0, -*l2),
            Params::KNeighbors { k } => (*k, 0.0),
        }
    }
    let (ta, ra) = key(a);
    let (tb, rb) = key(b);
    ta < tb || (ta == tb && ra < rb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Params;
    use alloc::vec;
    use alloc::vec::Vec;

    fn toy_data(n: usize) -> (Vec<Vec<f64>>, Vec<bool>) {
        // Linearly separable: bots live at x > 0.
        let x: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                vec![sign * (1.0 + (i as f64) / n as f64), sign * 0.5]
            })
            .collect();
        let y: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        (x, y)
    }

    #[test]
    fn folds_partition_and_stratify() {
        let labels: Vec<bool> = (0..103).map(|i| i % 3 == 0).collect();
        let mut rng = seeded(5);
        let folds = stratified_folds(&labels, 10, &mut rng).unwrap();
        let mut seen = vec![false; labels.len()];
        for fold in &folds {
            for &i in fold {
                assert!(!seen[i], "index {} in two folds", i);
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        let global_bots = labels.iter().filter(|&&l| l).count();
        for fold in &folds {
            let bots = fold.iter().filter(|&&i| labels[i]).count();
            let expected = global_bots as f64 * fold.len() as f64 / labels.len() as f64;
            assert!((bots as f64 - expected).abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn k_larger_than_minority_is_error() {
        let labels = vec![true, false, false, false, false];
        let mut rng = seeded(0);
        assert_eq!(
            stratified_folds(&labels, 2, &mut rng).unwrap_err(),
            CvError::FoldsExceedMinorityClass
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let (x, y) = toy_data(40);
        let spec = ModelSpec {
            params: Params::LogisticRegression { l2: 0.1 },
            seed: 9,
        };
        let a = cross_validate(&spec, &x, &y, 5, 3, 123).unwrap();
        let b = cross_validate(&spec, &x, &y, 5, 3, 123).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn separable_data_scores_perfectly() {
        let (x, y) = toy_data(40);
        let spec = ModelSpec {
            params: Params::LogisticRegression { l2: 0.01 },
            seed: 1,
        };
        let report = cross_validate(&spec, &x, &y, 5, 2, 7).unwrap();
        assert_eq!(report.mean_auc, 1.0);
        assert_eq!(report.mean_f1, 1.0);
    }

    #[test]
    fn grid_of_one_returns_it() {
        let (x, y) = toy_data(30);
        let spec = ModelSpec {
            params: Params::KNeighbors { k: 3 },
            seed: 2,
        };
        let (best, reports) = grid_search(core::slice::from_ref(&spec), &x, &y, 3, 2, 5).unwrap();
        assert_eq!(best, spec);
        assert_eq!(reports.len(), 1);
    }

    #[test]
    fn grid_picks_dominant_point() {
        // k=1 on this noisy-free set still wins against a absurdly large k
        // that underfits.
        let (x, y) = toy_data(30);
        let grid = vec![
            ModelSpec {
                params: Params::LogisticRegression { l2: 100.0 },
                seed: 3,
            },
            ModelSpec {
                params: Params::LogisticRegression { l2: 0.01 },
                seed: 3,
            },
        ];
        let (best, reports) = grid_search(&grid, &x, &y, 3, 2, 5).unwrap();
        // Rerun-oracle: recompute and argmax independently.
        let mut best_idx = 0;
        for (i, r) in reports.iter().enumerate() {
            if r.mean_auc > reports[best_idx].mean_auc {
                best_idx = i;
            }
        }
        assert_eq!(best, grid[best_idx]);
    }
}
