//! Classifier families with a uniform train/score interface. Six families
//! are implemented in-house: gradient boosting, random forest, AdaBoost
//! stumps, L2 logistic regression, k-nearest neighbors and a linear SVM
//! trained by stochastic subgradient descent.
//!
//! All randomness flows from `ModelSpec::seed`; training twice on the same
//! data produces bit-identical models.

// Index-based loops are kept in the linear-algebra kernels; iterator
// rewrites obscure the symmetric matrix access patterns.
#![allow(clippy::needless_range_loop)]

pub mod tree;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::rng::{sample_with_replacement, seeded, shuffle, subseed};
use tree::{Criterion, Dataset, Tree, TreeConfig};

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-z))
}

/// How many features each random-forest node considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxFeatures {
    Sqrt,
    All,
}

/// Family-specific hyperparameters, validated by [`ModelSpec::validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Params {
    GradientBoosting {
        trees: usize,
        depth: usize,
        learning_rate: f64,
    },
    RandomForest {
        trees: usize,
        /// `None` grows unbounded trees.
        depth: Option<usize>,
        bootstrap: bool,
        max_features: MaxFeatures,
    },
    AdaBoost {
        stumps: usize,
    },
    LogisticRegression {
        l2: f64,
    },
    KNeighbors {
        k: usize,
    },
    LinearSvc {
        l2: f64,
        epochs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    GradientBoosting,
    RandomForest,
    AdaBoost,
    LogisticRegression,
    KNeighbors,
    LinearSvc,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GradientBoosting => "GradientBoosting",
            Family::RandomForest => "RandomForest",
            Family::AdaBoost => "AdaBoost",
            Family::LogisticRegression => "LogisticRegression",
            Family::KNeighbors => "KNeighbors",
            Family::LinearSvc => "LinearSVC",
        }
    }
}

impl Params {
    pub fn family(&self) -> Family {
        match self {
            Params::GradientBoosting { .. } => Family::GradientBoosting,
            Params::RandomForest { .. } => Family::RandomForest,
            Params::AdaBoost { .. } => Family::AdaBoost,
            Params::LogisticRegression { .. } => Family::LogisticRegression,
            Params::KNeighbors { .. } => Family::KNeighbors,
            Params::LinearSvc { .. } => Family::LinearSvc,
        }
    }

    /// Short human-readable parameter summary for reports.
    pub fn describe(&self) -> String {
        match self {
            Params::GradientBoosting {
                trees,
                depth,
                learning_rate,
            } => alloc::format!("trees={trees} depth={depth} lr={learning_rate}"),
            Params::RandomForest {
                trees,
                depth,
                bootstrap,
                max_features,
            } => alloc::format!(
                "trees={trees} depth={} bootstrap={bootstrap} max_features={:?}",
                depth.map_or(alloc::string::String::from("inf"), |d| alloc::format!(
                    "{d}"
                )),
                max_features
            ),
            Params::AdaBoost { stumps } => alloc::format!("stumps={stumps}"),
            Params::LogisticRegression { l2 } => alloc::format!("l2={l2}"),
            Params::KNeighbors { k } => alloc::format!("k={k}"),
            Params::LinearSvc { l2, epochs } => alloc::format!("l2={l2} epochs={epochs}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub params: Params,
    pub seed: u64,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<(), TrainError> {
        let invalid = |msg: &'static str| Err(TrainError::InvalidParams(msg));
        match &self.params {
            Params::GradientBoosting {
                trees,
                depth,
                learning_rate,
            } => {
                if *trees < 1 {
                    return invalid("gradient boosting needs trees >= 1");
                }
                if *depth < 1 {
                    return invalid("gradient boosting needs depth >= 1");
                }
                if learning_rate.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
                    return invalid("learning_rate must be > 0");
                }
            }
            Params::RandomForest { trees, depth, .. } => {
                if *trees < 1 {
                    return invalid("random forest needs trees >= 1");
                }
                if depth == &Some(0) {
                    return invalid("random forest depth must be >= 1");
                }
            }
            Params::AdaBoost { stumps } => {
                if *stumps < 1 {
                    return invalid("adaboost needs stumps >= 1");
                }
            }
            Params::LogisticRegression { l2 } | Params::LinearSvc { l2, .. } => {
                if l2.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
                    return invalid("l2 must be > 0");
                }
                if let Params::LinearSvc { epochs, .. } = &self.params {
                    if *epochs < 1 {
                        return invalid("linear svc needs epochs >= 1");
                    }
                }
            }
            Params::KNeighbors { k } => {
                if *k < 1 || *k % 2 == 0 {
                    return invalid("k must be >= 1 and odd");
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrainError {
    SingleClass,
    TooFewSamples,
    NonFiniteFeature,
    InvalidParams(&'static str),
    DimensionMismatch,
}

impl core::fmt::Display for TrainError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TrainError::SingleClass => write!(f, "training labels contain a single class"),
            TrainError::TooFewSamples => write!(f, "need at least two samples"),
            TrainError::NonFiniteFeature => write!(f, "infinite feature value in training data"),
            TrainError::InvalidParams(msg) => write!(f, "{msg}"),
            TrainError::DimensionMismatch => {
                write!(f, "feature matrix and labels differ in length")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionError;

impl core::fmt::Display for DimensionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "input dimension does not match the trained model")
    }
}

/// Per-feature standardization fitted on the training fold only. NaN cells
/// are treated as missing and replaced by the training median before
/// centering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub medians: Vec<f64>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Standardizer {
        let d = rows.first().map_or(0, |r| r.len());
        let n = rows.len() as f64;
        let mut medians = Vec::with_capacity(d);
        for c in 0..d {
            let mut col: Vec<f64> = rows.iter().map(|r| r[c]).filter(|v| !v.is_nan()).collect();
            medians.push(crate::timefeat::median(&mut col));
        }
        let mut means = vec![0.0; d];
        for row in rows {
            for c in 0..d {
                means[c] += if row[c].is_nan() { medians[c] } else { row[c] };
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut stds = vec![0.0; d];
        for row in rows {
            for c in 0..d {
                let v = if row[c].is_nan() { medians[c] } else { row[c] };
                stds[c] += (v - means[c]) * (v - means[c]);
            }
        }
        for s in &mut stds {
            *s = libm::sqrt(*s / n);
            if *s == 0.0 {
                *s = 1.0;
            }
        }
        Standardizer {
            medians,
            means,
            stds,
        }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(c, &v)| {
                let v = if v.is_nan() { self.medians[c] } else { v };
                (v - self.means[c]) / self.stds[c]
            })
            .collect()
    }

    pub fn transform(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.transform_row(r)).collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GbModel {
    pub base_margin: f64,
    pub learning_rate: f64,
    pub trees: Vec<Tree>,
    /// Mean in-sample logistic loss after each boosting round.
    pub loss_trace: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForestModel {
    pub trees: Vec<Tree>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdaModel {
    pub stumps: Vec<(Tree, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ModelParams {
    GradientBoosting(GbModel),
    RandomForest(ForestModel),
    AdaBoost(AdaModel),
    LogisticRegression(LinearModel),
    KNeighbors(KnnModel),
    LinearSvc(LinearModel),
}

/// A fitted classifier with its standardizer and originating spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainedModel {
    pub spec: ModelSpec,
    pub standardizer: Standardizer,
    pub model: ModelParams,
    pub n_features: usize,
}

impl TrainedModel {
    /// Bot-likeness score in [0, 1]; higher means more bot-like.
    pub fn predict_score(&self, x: &[f64]) -> Result<f64, DimensionError> {
        if x.len() != self.n_features {
            return Err(DimensionError);
        }
        let z = self.standardizer.transform_row(x);
        let score = match &self.model {
            ModelParams::GradientBoosting(m) => {
                let margin: f64 =
                    m.base_margin + m.trees.iter().map(|t| t.predict(&z)).sum::<f64>();
                sigmoid(margin)
            }
            ModelParams::RandomForest(m) => {
                m.trees.iter().map(|t| t.predict(&z)).sum::<f64>() / m.trees.len() as f64
            }
            ModelParams::AdaBoost(m) => {
                let alpha_total: f64 = m.stumps.iter().map(|(_, a)| a).sum();
                let margin: f64 = m
                    .stumps
                    .iter()
                    .map(|(stump, alpha)| {
                        let h = if stump.predict(&z) > 0.5 { 1.0 } else { -1.0 };
                        alpha * h
                    })
                    .sum();
                (margin / alpha_total + 1.0) / 2.0
            }
            ModelParams::LogisticRegression(m) | ModelParams::LinearSvc(m) => {
                sigmoid(dot(&m.weights, &z) + m.bias)
            }
            ModelParams::KNeighbors(m) => {
                let mut dist: Vec<(f64, usize)> = m
                    .points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (squared_distance(p, &z), i))
                    .collect();
                dist.sort_by(|a, b| {
                    a.0.partial_cmp(&b.0)
                        .unwrap_or(core::cmp::Ordering::Equal)
                        .then(a.1.cmp(&b.1))
                });
                let k = m.k.min(dist.len());
                let bots = dist[..k].iter().filter(|(_, i)| m.labels[*i]).count();
                bots as f64 / k as f64
            }
        };
        Ok(score.clamp(0.0, 1.0))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Fit a classifier. `y[i]` is true for bot accounts.
pub fn train(spec: &ModelSpec, x: &[Vec<f64>], y: &[bool]) -> Result<TrainedModel, TrainError> {
    spec.validate()?;
    if x.len() != y.len() {
        return Err(TrainError::DimensionMismatch);
    }
    if x.len() < 2 {
        return Err(TrainError::TooFewSamples);
    }
    let bots = y.iter().filter(|&&b| b).count();
    if bots == 0 || bots == y.len() {
        return Err(TrainError::SingleClass);
    }
    if x.iter().flatten().any(|v| v.is_infinite()) {
        return Err(TrainError::NonFiniteFeature);
    }

    let standardizer = Standardizer::fit(x);
    let z = standardizer.transform(x);
    let n_features = z.first().map_or(0, |r| r.len());

    let model = match &spec.params {
        Params::GradientBoosting {
            trees,
            depth,
            learning_rate,
        } => ModelParams::GradientBoosting(fit_gradient_boosting(
            &z,
            y,
            *trees,
            *depth,
            *learning_rate,
            spec.seed,
        )),
        Params::RandomForest {
            trees,
            depth,
            bootstrap,
            max_features,
        } => ModelParams::RandomForest(fit_random_forest(
            &z,
            y,
            *trees,
            *depth,
            *bootstrap,
            *max_features,
            spec.seed,
        )),
        Params::AdaBoost { stumps } => {
            ModelParams::AdaBoost(fit_adaboost(&z, y, *stumps, spec.seed))
        }
        Params::LogisticRegression { l2 } => {
            ModelParams::LogisticRegression(fit_logistic_regression(&z, y, *l2))
        }
        Params::KNeighbors { k } => ModelParams::KNeighbors(KnnModel {
            k: *k,
            points: z.clone(),
            labels: y.to_vec(),
        }),
        Params::LinearSvc { l2, epochs } => {
            ModelParams::LinearSvc(fit_linear_svc(&z, y, *l2, *epochs, spec.seed))
        }
    };

    Ok(TrainedModel {
        spec: spec.clone(),
        standardizer,
        model,
        n_features,
    })
}

fn mean_log_loss(margins: &[f64], y: &[bool]) -> f64 {
    let n = y.len() as f64;
    margins
        .iter()
        .zip(y)
        .map(|(&m, &label)| {
            // -log p(y) written via log1p(exp(-|m|)) for stability.
            let yy = if label { 1.0 } else { -1.0 };
            let t = -yy * m;
            if t > 0.0 {
                t + libm::log1p(libm::exp(-t))
            } else {
                libm::log1p(libm::exp(t))
            }
        })
        .sum::<f64>()
        / n
}

/// Binary gradient boosting on logistic loss: regression trees on the
/// negative gradient, Newton leaf values, shrinkage by `learning_rate`.
fn fit_gradient_boosting(
    z: &[Vec<f64>],
    y: &[bool],
    trees: usize,
    depth: usize,
    learning_rate: f64,
    seed: u64,
) -> GbModel {
    let n = z.len();
    let data = Dataset::from_rows(z);
    let pos = y.iter().filter(|&&b| b).count() as f64;
    let base_margin = libm::log(pos / (n as f64 - pos));
    let mut margins = vec![base_margin; n];
    let weights = vec![1.0; n];
    let config = TreeConfig {
        criterion: Criterion::Variance,
        max_depth: Some(depth),
        min_leaf_weight: 1.0,
        features_per_node: None,
    };

    let mut fitted = Vec::with_capacity(trees);
    let mut loss_trace = Vec::with_capacity(trees);
    let mut rng = seeded(subseed(seed, 0xb005));
    for _ in 0..trees {
        let residuals: Vec<f64> = margins
            .iter()
            .zip(y)
            .map(|(&m, &label)| (label as u8 as f64) - sigmoid(m))
            .collect();
        let (mut tree, leaf_of) = tree::fit(&data, &residuals, &weights, &config, &mut rng);

        // Newton step per leaf: sum(residual) / sum(p (1 - p)).
        let mut grad_sum: Vec<f64> = vec![0.0; tree.nodes.len()];
        let mut hess_sum: Vec<f64> = vec![0.0; tree.nodes.len()];
        for i in 0..n {
            let leaf = leaf_of[i];
            let p = sigmoid(margins[i]);
            grad_sum[leaf] += residuals[i];
            hess_sum[leaf] += p * (1.0 - p);
        }
        for leaf in 0..tree.nodes.len() {
            if let tree::Node::Leaf { .. } = tree.nodes[leaf] {
                let value = if hess_sum[leaf] > 1e-12 {
                    (grad_sum[leaf] / hess_sum[leaf]).clamp(-10.0, 10.0)
                } else {
                    0.0
                };
                tree.set_leaf_value(leaf, learning_rate * value);
            }
        }
        for i in 0..n {
            margins[i] += match tree.nodes[leaf_of[i]] {
                tree::Node::Leaf { value } => value,
                _ => unreachable!(),
            };
        }
        loss_trace.push(mean_log_loss(&margins, y));
        fitted.push(tree);
    }

    GbModel {
        base_margin,
        learning_rate,
        trees: fitted,
        loss_trace,
    }
}

fn fit_random_forest(
    z: &[Vec<f64>],
    y: &[bool],
    trees: usize,
    depth: Option<usize>,
    bootstrap: bool,
    max_features: MaxFeatures,
    seed: u64,
) -> ForestModel {
    let n = z.len();
    let d = z.first().map_or(0, |r| r.len());
    let data = Dataset::from_rows(z);
    let targets: Vec<f64> = y.iter().map(|&b| b as u8 as f64).collect();
    let features_per_node = match max_features {
        MaxFeatures::All => None,
        MaxFeatures::Sqrt => Some((libm::round(libm::sqrt(d as f64)) as usize).max(1)),
    };
    let config = TreeConfig {
        criterion: Criterion::Gini,
        max_depth: depth,
        min_leaf_weight: 1.0,
        features_per_node,
    };

    let fitted = (0..trees)
        .map(|t| {
            let mut rng = seeded(subseed(seed, t as u64));
            let weights = if bootstrap {
                let mut w = vec![0.0; n];
                for i in sample_with_replacement(&mut rng, n, n) {
                    w[i] += 1.0;
                }
                w
            } else {
                vec![1.0; n]
            };
            tree::fit(&data, &targets, &weights, &config, &mut rng).0
        })
        .collect();
    ForestModel { trees: fitted }
}

/// SAMME boosting of depth-1 stumps. Halts early when a stump's weighted
/// error reaches 0.5 or the training set is fit perfectly.
fn fit_adaboost(z: &[Vec<f64>], y: &[bool], stumps: usize, seed: u64) -> AdaModel {
    let n = z.len();
    let data = Dataset::from_rows(z);
    let targets: Vec<f64> = y.iter().map(|&b| b as u8 as f64).collect();
    let config = TreeConfig {
        criterion: Criterion::Gini,
        max_depth: Some(1),
        min_leaf_weight: 1e-9,
        features_per_node: None,
    };
    let mut rng = seeded(subseed(seed, 0xada));
    let mut weights = vec![1.0 / n as f64; n];
    let mut fitted: Vec<(Tree, f64)> = Vec::new();

    for _ in 0..stumps {
        let (stump, _) = tree::fit(&data, &targets, &weights, &config, &mut rng);
        let err: f64 = (0..n)
            .filter(|&i| (stump.predict(&z[i]) > 0.5) != y[i])
            .map(|i| weights[i])
            .sum();
        if err >= 0.5 {
            break;
        }
        if err <= 1e-12 {
            fitted.push((stump, libm::log((1.0 - 1e-12) / 1e-12)));
            break;
        }
        let alpha = libm::log((1.0 - err) / err);
        for i in 0..n {
            if (stump.predict(&z[i]) > 0.5) != y[i] {
                weights[i] *= libm::exp(alpha);
            }
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        fitted.push((stump, alpha));
    }

    if fitted.is_empty() {
        // Degenerate data; fall back to a constant stump with zero vote
        // weight epsilon so scoring stays defined.
        let (stump, _) = tree::fit(&data, &targets, &vec![1.0 / n as f64; n], &config, &mut rng);
        fitted.push((stump, 1e-9));
    }
    AdaModel { stumps: fitted }
}

/// L2-regularized logistic regression by iteratively reweighted least
/// squares, run to an infinity-norm gradient tolerance of 1e-6.
fn fit_logistic_regression(z: &[Vec<f64>], y: &[bool], l2: f64) -> LinearModel {
    let n = z.len();
    let d = z.first().map_or(0, |r| r.len());
    let nf = n as f64;
    // Parameter vector with the intercept last; the intercept is not
    // regularized.
    let mut w = vec![0.0; d + 1];

    for _ in 0..200 {
        let margins: Vec<f64> = z.iter().map(|row| dot(&w[..d], row) + w[d]).collect();
        let probs: Vec<f64> = margins.iter().map(|&m| sigmoid(m)).collect();

        let mut grad = vec![0.0; d + 1];
        for i in 0..n {
            let e = probs[i] - (y[i] as u8 as f64);
            for c in 0..d {
                grad[c] += e * z[i][c];
            }
            grad[d] += e;
        }
        for g in &mut grad {
            *g /= nf;
        }
        for c in 0..d {
            grad[c] += l2 * w[c];
        }
        let grad_norm = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        if grad_norm <= 1e-6 {
            break;
        }

        // Hessian = X' diag(p(1-p)) X / n + l2 I (intercept unregularized),
        // with a small floor on the curvature for separable data.
        let mut hess = vec![vec![0.0; d + 1]; d + 1];
        for i in 0..n {
            let s = (probs[i] * (1.0 - probs[i])).max(1e-6);
            for a in 0..=d {
                let xa = if a == d { 1.0 } else { z[i][a] };
                for b in a..=d {
                    let xb = if b == d { 1.0 } else { z[i][b] };
                    hess[a][b] += s * xa * xb;
                }
            }
        }
        for a in 0..=d {
            for b in a..=d {
                hess[a][b] /= nf;
            }
            if a < d {
                hess[a][a] += l2;
            }
            hess[a][a] += 1e-10;
        }
        for a in 0..=d {
            for b in 0..a {
                hess[a][b] = hess[b][a];
            }
        }

        let step = cholesky_solve(&mut hess, &grad);
        for c in 0..=d {
            w[c] -= step[c];
        }
    }

    LinearModel {
        bias: w[d],
        weights: {
            w.truncate(d);
            w
        },
    }
}

/// Solve `A x = b` for symmetric positive definite `A` (in place Cholesky).
fn cholesky_solve(a: &mut [Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    // Factor A = L L'.
    for j in 0..n {
        for k in 0..j {
            let ljk = a[j][k];
            for i in j..n {
                a[i][j] -= a[i][k] * ljk;
            }
        }
        let diag = libm::sqrt(a[j][j].max(1e-12));
        a[j][j] = diag;
        for i in (j + 1)..n {
            a[i][j] /= diag;
        }
    }
    // Forward then backward substitution.
    let mut x = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            x[i] -= a[i][k] * x[k];
        }
        x[i] /= a[i][i];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            x[i] -= a[k][i] * x[k];
        }
        x[i] /= a[i][i];
    }
    x
}

/// Pegasos-style stochastic subgradient descent on the hinge loss with a
/// fixed epoch budget.
fn fit_linear_svc(z: &[Vec<f64>], y: &[bool], l2: f64, epochs: usize, seed: u64) -> LinearModel {
    let n = z.len();
    let d = z.first().map_or(0, |r| r.len());
    let mut w = vec![0.0; d];
    let mut bias = 0.0;
    let mut rng = seeded(subseed(seed, 0x57c));
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0u64;

    for _ in 0..epochs {
        shuffle(&mut rng, &mut order);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (l2 * t as f64);
            let yy = if y[i] { 1.0 } else { -1.0 };
            let margin = yy * (dot(&w, &z[i]) + bias);
            for c in 0..d {
                w[c] *= 1.0 - eta * l2;
            }
            if margin < 1.0 {
                for c in 0..d {
                    w[c] += eta * yy * z[i][c];
                }
                bias += eta * yy;
            }
        }
    }
    LinearModel { weights: w, bias }
}
