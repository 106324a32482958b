//! Evaluation driver: feature/label CSV IO, default hyperparameter grids,
//! grid search with repeated stratified CV, pooled ROC of the winner, and
//! extrapolation of a trained model to unlabeled accounts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use astroturf_core::cv::{cross_validate, grid_search, stratified_folds, CvReport};
use astroturf_core::features::column_names;
use astroturf_core::metrics::{roc_and_auc, RocCurve};
use astroturf_core::models::{train, Family, MaxFeatures, ModelSpec, Params, TrainedModel};
use astroturf_core::rng::{seeded, subseed};

use crate::featurize::AccountFeatures;
use crate::store::UserTimeline;

// ---------------------------------------------------------------------------
// CSV IO

/// Write the feature matrix; floats use the shortest round-trip rendering,
/// so identical inputs give byte-identical files.
pub fn write_features_csv(path: &Path, rows: &[AccountFeatures]) -> Result<()> {
    let mut out = String::new();
    out.push_str("user_id");
    for name in column_names() {
        out.push(',');
        out.push_str(&name);
    }
    out.push('\n');
    for row in rows {
        write!(out, "{}", row.user_id)?;
        for v in &row.vector.values {
            write!(out, ",{v}")?;
        }
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read_features_csv(path: &Path) -> Result<Vec<(u64, Vec<f64>)>> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let mut lines = raw.lines();
    let header = lines.next().context("empty features file")?;
    let expected = column_names().len() + 1;
    if header.split(',').count() != expected {
        bail!("feature file has wrong column count");
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let user_id: u64 = fields
            .next()
            .context("empty row")?
            .parse()
            .with_context(|| format!("row {}: bad user id", i + 2))?;
        let values: Vec<f64> = fields
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("row {}: bad float", i + 2))?;
        if values.len() != expected - 1 {
            bail!("row {}: wrong width", i + 2);
        }
        rows.push((user_id, values));
    }
    Ok(rows)
}

/// Read `user_id,label` rows; labels are "bot" or "human".
pub fn read_labels_csv(path: &Path) -> Result<BTreeMap<u64, bool>> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, line) in raw.lines().enumerate() {
        if i == 0 || line.is_empty() {
            continue;
        }
        let (id, label) = line
            .split_once(',')
            .with_context(|| format!("row {}: expected two columns", i + 1))?;
        let is_bot = match label.trim() {
            "bot" => true,
            "human" => false,
            other => bail!("row {}: unknown label {other:?}", i + 1),
        };
        map.insert(id.trim().parse()?, is_bot);
    }
    Ok(map)
}

/// Read `account,score` rows from an externally produced score file.
pub fn read_scores_csv(path: &Path) -> Result<Vec<(u64, f64)>> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let mut rows = Vec::new();
    for (i, line) in raw.lines().enumerate() {
        if i == 0 || line.is_empty() {
            continue;
        }
        let (id, score) = line
            .split_once(',')
            .with_context(|| format!("row {}: expected two columns", i + 1))?;
        rows.push((id.trim().parse()?, score.trim().parse()?));
    }
    Ok(rows)
}

/// Align features and labels into a training matrix; accounts missing a
/// label are skipped.
pub fn align(
    features: &[(u64, Vec<f64>)],
    labels: &BTreeMap<u64, bool>,
) -> (Vec<Vec<f64>>, Vec<bool>, Vec<u64>) {
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut ids = Vec::new();
    for (id, values) in features {
        if let Some(&is_bot) = labels.get(id) {
            x.push(values.clone());
            y.push(is_bot);
            ids.push(*id);
        }
    }
    (x, y, ids)
}

// ---------------------------------------------------------------------------
// grids

/// Declared default grid per family.
pub fn default_grid(family: Family, seed: u64) -> Vec<ModelSpec> {
    let mut specs = Vec::new();
    let mut push = |params: Params| {
        specs.push(ModelSpec { params, seed });
    };
    match family {
        Family::GradientBoosting => {
            for &trees in &[100usize, 300] {
                for &depth in &[2usize, 3] {
                    for &learning_rate in &[0.05, 0.1] {
                        push(Params::GradientBoosting {
                            trees,
                            depth,
                            learning_rate,
                        });
                    }
                }
            }
        }
        Family::RandomForest => {
            for &trees in &[100usize, 300] {
                for &depth in &[None, Some(8usize)] {
                    push(Params::RandomForest {
                        trees,
                        depth,
                        bootstrap: true,
                        max_features: MaxFeatures::Sqrt,
                    });
                }
            }
        }
        Family::AdaBoost => {
            for &stumps in &[100usize, 300] {
                push(Params::AdaBoost { stumps });
            }
        }
        Family::LogisticRegression => {
            for &l2 in &[0.01, 0.1, 1.0] {
                push(Params::LogisticRegression { l2 });
            }
        }
        Family::KNeighbors => {
            for &k in &[5usize, 11, 21] {
                push(Params::KNeighbors { k });
            }
        }
        Family::LinearSvc => {
            for &l2 in &[0.01, 0.1] {
                push(Params::LinearSvc { l2, epochs: 50 });
            }
        }
    }
    specs
}

pub fn family_from_name(name: &str) -> Result<Family> {
    Ok(match name.to_lowercase().as_str() {
        "gb" | "gradientboosting" => Family::GradientBoosting,
        "rf" | "randomforest" => Family::RandomForest,
        "ada" | "adaboost" => Family::AdaBoost,
        "lr" | "logisticregression" => Family::LogisticRegression,
        "knn" | "kneighbors" => Family::KNeighbors,
        "svc" | "linearsvc" => Family::LinearSvc,
        other => bail!("unknown model family {other:?}"),
    })
}

// ---------------------------------------------------------------------------
// evaluation

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub family: String,
    pub params: String,
    pub mean_f1: f64,
    pub std_f1: f64,
    pub mean_auc: f64,
    pub std_auc: f64,
    pub mean_bounded_auc: f64,
    pub std_bounded_auc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub rows: Vec<GridRow>,
    pub best: ModelSpec,
    pub best_report: CvReport,
    /// ROC of the winner's pooled held-out scores (repeat 0).
    pub roc: RocCurve,
}

fn grid_row(spec: &ModelSpec, report: &CvReport) -> GridRow {
    GridRow {
        family: spec.params.family().name().to_string(),
        params: spec.params.describe(),
        mean_f1: report.mean_f1,
        std_f1: report.std_f1,
        mean_auc: report.mean_auc,
        std_auc: report.std_auc,
        mean_bounded_auc: report.mean_bounded_auc,
        std_bounded_auc: report.std_bounded_auc,
    }
}

/// Grid search with repeated stratified CV, then a pooled ROC for the
/// winning spec.
pub fn evaluate_grid(
    grid: &[ModelSpec],
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<EvalReport> {
    let (best, reports) =
        grid_search(grid, x, y, k, repeats, seed).map_err(|e| anyhow::anyhow!("{e}"))?;
    let rows: Vec<GridRow> = grid
        .iter()
        .zip(&reports)
        .map(|(spec, report)| grid_row(spec, report))
        .collect();
    let best_idx = grid.iter().position(|s| *s == best).expect("best in grid");
    let roc = pooled_roc(&best, x, y, k, seed)?;
    Ok(EvalReport {
        rows,
        best,
        best_report: reports[best_idx].clone(),
        roc,
    })
}

/// One stratified pass pooling every held-out score into a single curve.
pub fn pooled_roc(
    spec: &ModelSpec,
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    seed: u64,
) -> Result<RocCurve> {
    let mut rng = seeded(subseed(seed, 0));
    let folds = stratified_folds(y, k, &mut rng).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut scores = vec![0.0; y.len()];
    for (fold_idx, fold) in folds.iter().enumerate() {
        let train_idx: Vec<usize> = (0..y.len()).filter(|i| !fold.contains(i)).collect();
        let train_x: Vec<Vec<f64>> = train_idx.iter().map(|&i| x[i].clone()).collect();
        let train_y: Vec<bool> = train_idx.iter().map(|&i| y[i]).collect();
        let cell_spec = ModelSpec {
            params: spec.params.clone(),
            seed: subseed(spec.seed, fold_idx as u64),
        };
        let model = train(&cell_spec, &train_x, &train_y).map_err(|e| anyhow::anyhow!("{e}"))?;
        for &i in fold {
            scores[i] = model
                .predict_score(&x[i])
                .map_err(|e| anyhow::anyhow!("{e}"))?;
        }
    }
    roc_and_auc(&scores, y).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Cross-validate one spec (full-repeat mode for a chosen model).
pub fn evaluate_spec(
    spec: &ModelSpec,
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<CvReport> {
    cross_validate(spec, x, y, k, repeats, seed).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn metrics_csv(report: &EvalReport) -> String {
    let mut out = String::from(
        "family,params,mean_f1,std_f1,mean_auc,std_auc,mean_bounded_auc,std_bounded_auc\n",
    );
    for row in &report.rows {
        let params = if row.params.contains(',') || row.params.contains('"') {
            format!("\"{}\"", row.params.replace('"', "\"\""))
        } else {
            row.params.clone()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.family,
            params,
            row.mean_f1,
            row.std_f1,
            row.mean_auc,
            row.std_auc,
            row.mean_bounded_auc,
            row.std_bounded_auc
        );
    }
    out
}

pub fn roc_csv(curve: &RocCurve) -> String {
    let mut out = String::from("fpr,tpr\n");
    for p in &curve.points {
        let _ = writeln!(out, "{},{}", p.fpr, p.tpr);
    }
    out
}

// ---------------------------------------------------------------------------
// extrapolation

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    /// (user_id, score, predicted bot) for every qualifying unlabeled user.
    pub scores: Vec<(u64, f64, bool)>,
    pub qualifying: u64,
    pub predicted_bot: u64,
    pub predicted_human: u64,
    pub labeled_bot: u64,
    pub labeled_human: u64,
    pub total_bot: u64,
    pub total_human: u64,
    /// Bot share among all classified accounts (predicted + labeled).
    pub bot_fraction: f64,
}

/// Score every unlabeled account with at least `min_tweets` tweets at the
/// 0.5 threshold and merge previously labeled accounts into the totals.
pub fn extrapolate(
    model: &TrainedModel,
    timelines: &[UserTimeline],
    min_tweets: usize,
    labeled: &BTreeMap<u64, bool>,
) -> Result<Extrapolation> {
    let qualifying: Vec<&UserTimeline> = timelines
        .iter()
        .filter(|tl| tl.tweets.len() >= min_tweets)
        .collect();
    let unlabeled: Vec<UserTimeline> = qualifying
        .iter()
        .filter(|tl| !labeled.contains_key(&tl.user_id))
        .map(|tl| (*tl).clone())
        .collect();
    let rows = crate::featurize::extract_all(&unlabeled, min_tweets)?;
    let mut scores = Vec::with_capacity(rows.len());
    let mut predicted_bot = 0u64;
    for row in &rows {
        let score = model
            .predict_score(&row.vector.values)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let is_bot = score >= 0.5;
        if is_bot {
            predicted_bot += 1;
        }
        scores.push((row.user_id, score, is_bot));
    }
    let predicted_human = scores.len() as u64 - predicted_bot;
    let labeled_qualifying: Vec<bool> = qualifying
        .iter()
        .filter_map(|tl| labeled.get(&tl.user_id).copied())
        .collect();
    let labeled_bot = labeled_qualifying.iter().filter(|&&b| b).count() as u64;
    let labeled_human = labeled_qualifying.len() as u64 - labeled_bot;
    let total_bot = predicted_bot + labeled_bot;
    let total_human = predicted_human + labeled_human;
    let total = total_bot + total_human;
    Ok(Extrapolation {
        scores,
        qualifying: qualifying.len() as u64,
        predicted_bot,
        predicted_human,
        labeled_bot,
        labeled_human,
        total_bot,
        total_human,
        bot_fraction: if total == 0 {
            0.0
        } else {
            total_bot as f64 / total as f64
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use astroturf_core::features::FeatureVector;

    #[test]
    fn features_csv_round_trip() {
        let rows = vec![
            AccountFeatures {
                user_id: 3,
                vector: FeatureVector {
                    values: (0..59).map(|i| i as f64 / 7.0).collect(),
                },
            },
            AccountFeatures {
                user_id: 9,
                vector: FeatureVector {
                    values: (0..59).map(|i| (i as f64).sqrt()).collect(),
                },
            },
        ];
        let file = tempfile::NamedTempFile::new().unwrap();
        write_features_csv(file.path(), &rows).unwrap();
        let loaded = read_features_csv(file.path()).unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded[0].0, 3);
        assert_eq!(loaded[1].1, rows[1].vector.values);
    }

    #[test]
    fn labels_csv_parses() {
        let file = tempfile::NamedTempFile::new().unwrap();
        fs::write(file.path(), "user_id,label\n1,bot\n2,human\n").unwrap();
        let labels = read_labels_csv(file.path()).unwrap();
        assert!(labels[&1]);
        assert!(!labels[&2]);
    }

    #[test]
    fn default_grids_validate() {
        for family in [
            Family::GradientBoosting,
            Family::RandomForest,
            Family::AdaBoost,
            Family::LogisticRegression,
            Family::KNeighbors,
            Family::LinearSvc,
        ] {
            let grid = default_grid(family, 1);
            assert!(!grid.is_empty());
            for spec in grid {
                spec.validate().unwrap();
            }
        }
    }

    #[test]
    fn grid_evaluation_is_deterministic() {
        let x: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                vec![sign * (1.0 + i as f64 / 40.0), sign]
            })
            .collect();
        let y: Vec<bool> = (0..40).map(|i| i % 2 == 0).collect();
        let grid = default_grid(Family::LogisticRegression, 5);
        let a = evaluate_grid(&grid, &x, &y, 5, 2, 77).unwrap();
        let b = evaluate_grid(&grid, &x, &y, 5, 2, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.best_report.mean_auc, 1.0);
    }
}
