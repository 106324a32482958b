//! Weighted CART trees shared by the ensemble families. Trees grow
//! level-wise over pre-sorted feature columns, so one pass per feature per
//! level finds the best exact split of every active node at once.

// The level-wise split scan mutates `node_of` while indexing rows; index
// loops stay.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::rng::{sample_without_replacement, Rng};

/// Split quality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Weighted Gini impurity decrease (binary classification; targets in {0,1}).
    Gini,
    /// Weighted variance reduction (regression).
    Variance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

/// A fitted decision tree. Leaf values are mean targets (regression) or
/// positive-class fractions (classification).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                Node::Leaf { value } => return *value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    /// Leaf node index reached by `x`; used to patch leaf values after the fit.
    pub fn leaf_index(&self, x: &[f64]) -> usize {
        let mut at = 0usize;
        loop {
            match &self.nodes[at] {
                Node::Leaf { .. } => return at,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn set_leaf_value(&mut self, leaf: usize, value: f64) {
        if let Node::Leaf { value: v } = &mut self.nodes[leaf] {
            *v = value;
        }
    }
}

/// Feature columns with per-column argsort, computed once per fit and
/// shared by every tree of an ensemble.
pub struct Dataset {
    pub columns: Vec<Vec<f64>>,
    pub sorted: Vec<Vec<u32>>,
    pub n_rows: usize,
}

impl Dataset {
    pub fn from_rows(rows: &[Vec<f64>]) -> Dataset {
        let n_rows = rows.len();
        let n_cols = if n_rows == 0 { 0 } else { rows[0].len() };
        let mut columns = vec![Vec::with_capacity(n_rows); n_cols];
        for row in rows {
            for (c, &v) in row.iter().enumerate() {
                columns[c].push(v);
            }
        }
        let sorted = columns
            .iter()
            .map(|col| {
                let mut idx: Vec<u32> = (0..n_rows as u32).collect();
                idx.sort_by(|&a, &b| {
                    col[a as usize]
                        .partial_cmp(&col[b as usize])
                        .unwrap_or(core::cmp::Ordering::Equal)
                        .then(a.cmp(&b))
                });
                idx
            })
            .collect();
        Dataset {
            columns,
            sorted,
            n_rows,
        }
    }
}

pub struct TreeConfig {
    pub criterion: Criterion,
    pub max_depth: Option<usize>,
    /// Minimum sample weight per child.
    pub min_leaf_weight: f64,
    /// Features considered per node; `None` means all.
    pub features_per_node: Option<usize>,
}

struct NodeStats {
    weight: f64,
    sum: f64, // target sum (regression) or positive weight (classification)
    depth: usize,
    /// Allowed features when subsampling; empty means all.
    features: Vec<usize>,
}

struct BestSplit {
    gain: f64,
    feature: usize,
    threshold: f64,
}

/// Fit a tree on `data` with per-sample `targets` and non-negative
/// `weights` (zero weight drops the sample). Returns the tree and the leaf
/// index each in-weight sample ends in.
pub fn fit(
    data: &Dataset,
    targets: &[f64],
    weights: &[f64],
    config: &TreeConfig,
    rng: &mut Rng,
) -> (Tree, Vec<usize>) {
    let n = data.n_rows;
    let n_features = data.columns.len();
    debug_assert_eq!(targets.len(), n);
    debug_assert_eq!(weights.len(), n);

    let mut tree = Tree { nodes: Vec::new() };
    // node assignment per sample; usize::MAX marks zero-weight rows
    let mut node_of: Vec<usize> = weights
        .iter()
        .map(|&w| if w > 0.0 { 0 } else { usize::MAX })
        .collect();

    let root_stats = stats_for(targets, weights, |i| node_of[i] == 0);
    tree.nodes.push(Node::Leaf {
        value: leaf_value(&root_stats),
    });
    let mut pending: Vec<(usize, NodeStats)> = vec![(
        0,
        NodeStats {
            features: draw_features(config, n_features, rng),
            ..root_stats
        },
    )];

    while !pending.is_empty() {
        // Node id -> slot in the sweep accumulators.
        let mut slot_of: Vec<usize> = vec![usize::MAX; tree.nodes.len()];
        for (slot, (id, _)) in pending.iter().enumerate() {
            slot_of[*id] = slot;
        }
        let n_active = pending.len();
        let mut best: Vec<Option<BestSplit>> = (0..n_active).map(|_| None).collect();

        for feature in 0..n_features {
            // Per-slot left accumulators, reset per feature.
            let mut left_w = vec![0.0f64; n_active];
            let mut left_sum = vec![0.0f64; n_active];
            let mut prev_val = vec![f64::NAN; n_active];
            for &row in &data.sorted[feature] {
                let row = row as usize;
                let node = node_of[row];
                if node == usize::MAX {
                    continue;
                }
                let slot = slot_of[node];
                if slot == usize::MAX {
                    continue;
                }
                let value = data.columns[feature][row];
                let stats = &pending[slot].1;
                if !stats.features.is_empty() && !stats.features.contains(&feature) {
                    continue;
                }
                // Evaluate the boundary before absorbing this sample.
                if left_w[slot] > 0.0 && value > prev_val[slot] {
                    let rw = stats.weight - left_w[slot];
                    if left_w[slot] >= config.min_leaf_weight && rw >= config.min_leaf_weight {
                        let gain =
                            split_gain(config.criterion, stats, left_w[slot], left_sum[slot]);
                        let better = match &best[slot] {
                            Some(b) => gain > b.gain + 1e-12,
                            None => gain > 1e-12,
                        };
                        if better {
                            best[slot] = Some(BestSplit {
                                gain,
                                feature,
                                threshold: (prev_val[slot] + value) / 2.0,
                            });
                        }
                    }
                }
                let w = weights[row];
                left_w[slot] += w;
                left_sum[slot] += w * targets[row];
                prev_val[slot] = value;
            }
        }

        // Materialize the chosen splits and re-route samples.
        let mut next_pending: Vec<(usize, NodeStats)> = Vec::new();
        let mut split_info: Vec<Option<(usize, f64, usize, usize)>> = vec![None; n_active];
        for (slot, (id, stats)) in pending.iter().enumerate() {
            let Some(b) = &best[slot] else { continue };
            let left_id = tree.nodes.len();
            let right_id = left_id + 1;
            tree.nodes.push(Node::Leaf { value: 0.0 });
            tree.nodes.push(Node::Leaf { value: 0.0 });
            tree.nodes[*id] = Node::Split {
                feature: b.feature,
                threshold: b.threshold,
                left: left_id,
                right: right_id,
            };
            split_info[slot] = Some((b.feature, b.threshold, left_id, right_id));
            let _ = stats;
        }

        for row in 0..n {
            let node = node_of[row];
            if node == usize::MAX {
                continue;
            }
            let slot = slot_of[node];
            if slot == usize::MAX {
                continue;
            }
            if let Some((feature, threshold, left_id, right_id)) = split_info[slot] {
                node_of[row] = if data.columns[feature][row] <= threshold {
                    left_id
                } else {
                    right_id
                };
            }
        }

        for (slot, (_, stats)) in pending.iter().enumerate() {
            let Some((_, _, left_id, right_id)) = split_info[slot] else {
                continue;
            };
            let child_depth = stats.depth + 1;
            for &child in &[left_id, right_id] {
                let child_stats = stats_for(targets, weights, |i| node_of[i] == child);
                tree.nodes[child] = Node::Leaf {
                    value: leaf_value(&child_stats),
                };
                let expandable = config.max_depth.is_none_or(|d| child_depth < d)
                    && child_stats.weight >= 2.0 * config.min_leaf_weight;
                if expandable {
                    next_pending.push((
                        child,
                        NodeStats {
                            depth: child_depth,
                            features: draw_features(config, n_features, rng),
                            ..child_stats
                        },
                    ));
                }
            }
        }
        pending = next_pending;
    }

    let leaf_of: Vec<usize> = node_of
        .iter()
        .map(|&node| if node == usize::MAX { usize::MAX } else { node })
        .collect();
    (tree, leaf_of)
}

fn draw_features(config: &TreeConfig, n_features: usize, rng: &mut Rng) -> Vec<usize> {
    match config.features_per_node {
        Some(k) if k < n_features => {
            let mut f = sample_without_replacement(rng, n_features, k);
            f.sort_unstable();
            f
        }
        _ => Vec::new(),
    }
}

fn stats_for<F: Fn(usize) -> bool>(targets: &[f64], weights: &[f64], member: F) -> NodeStats {
    let mut weight = 0.0;
    let mut sum = 0.0;
    for i in 0..targets.len() {
        if member(i) && weights[i] > 0.0 {
            weight += weights[i];
            sum += weights[i] * targets[i];
        }
    }
    NodeStats {
        weight,
        sum,
        depth: 0,
        features: Vec::new(),
    }
}

fn leaf_value(stats: &NodeStats) -> f64 {
    if stats.weight > 0.0 {
        stats.sum / stats.weight
    } else {
        0.0
    }
}

/// Split score to maximize. Both criteria reduce to maximizing
/// sum_side(children score), with the parent's score constant per node.
fn split_gain(criterion: Criterion, parent: &NodeStats, left_w: f64, left_sum: f64) -> f64 {
    let right_w = parent.weight - left_w;
    let right_sum = parent.sum - left_sum;
    match criterion {
        Criterion::Variance => {
            // SSE reduction = sum_l^2/w_l + sum_r^2/w_r - sum^2/w (>= 0).
            left_sum * left_sum / left_w + right_sum * right_sum / right_w
                - parent.sum * parent.sum / parent.weight
        }
        Criterion::Gini => {
            // Weighted impurity decrease for binary targets in {0,1}:
            // gini(side) = 2 p (1-p); decrease telescopes to the below.
            let gini = |w: f64, pos: f64| {
                if w <= 0.0 {
                    0.0
                } else {
                    2.0 * pos * (w - pos) / w
                }
            };
            gini(parent.weight, parent.sum) - gini(left_w, left_sum) - gini(right_w, right_sum)
        }
    }
}
