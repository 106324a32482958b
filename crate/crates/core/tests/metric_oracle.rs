//! Independent oracles for the ranking metrics: trapezoid AUC must equal
//! the tie-corrected Mann-Whitney rank statistic, and the bounded AUC must
//! behave sanely on perfect and random scores.

use astroturf_core::metrics::{f1_score, roc_and_auc};
use astroturf_core::rng::{gen_f64, gen_index, seeded};

/// Mann-Whitney AUC with tie correction: P(bot > human) + 0.5 P(tie),
/// computed by brute-force pairwise comparison.
fn rank_auc(scores: &[f64], labels: &[bool]) -> f64 {
    let bots: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l)
        .map(|(&s, _)| s)
        .collect();
    let humans: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| !l)
        .map(|(&s, _)| s)
        .collect();
    let mut u = 0.0;
    for &b in &bots {
        for &h in &humans {
            if b > h {
                u += 1.0;
            } else if b == h {
                u += 0.5;
            }
        }
    }
    u / (bots.len() as f64 * humans.len() as f64)
}

#[test]
fn trapezoid_auc_equals_rank_statistic() {
    let mut rng = seeded(0xa0c);
    for case in 0..1000 {
        let n = 5 + gen_index(&mut rng, 60);
        // Quantized scores force plenty of ties.
        let scores: Vec<f64> = (0..n)
            .map(|_| (gen_f64(&mut rng) * 8.0).floor() / 8.0)
            .collect();
        let mut labels: Vec<bool> = (0..n).map(|_| gen_index(&mut rng, 2) == 0).collect();
        // Guarantee both classes.
        labels[0] = true;
        labels[1] = false;
        let curve = roc_and_auc(&scores, &labels).unwrap();
        let expected = rank_auc(&scores, &labels);
        assert!(
            (curve.auc - expected).abs() < 1e-9,
            "case {}: trapezoid {} != rank {}",
            case,
            curve.auc,
            expected
        );
    }
}

#[test]
fn f1_matches_confusion_counts() {
    let mut rng = seeded(0xf1);
    for _ in 0..500 {
        let n = 2 + gen_index(&mut rng, 50);
        let predictions: Vec<bool> = (0..n).map(|_| gen_index(&mut rng, 2) == 0).collect();
        let labels: Vec<bool> = (0..n).map(|_| gen_index(&mut rng, 2) == 0).collect();

        let tp = predictions
            .iter()
            .zip(&labels)
            .filter(|(&p, &l)| p && l)
            .count() as f64;
        let fp = predictions
            .iter()
            .zip(&labels)
            .filter(|(&p, &l)| p && !l)
            .count() as f64;
        let fn_ = predictions
            .iter()
            .zip(&labels)
            .filter(|(&p, &l)| !p && l)
            .count() as f64;
        // Oracle route: harmonic mean of precision and recall.
        let expected = if tp == 0.0 {
            0.0
        } else {
            let precision = tp / (tp + fp);
            let recall = tp / (tp + fn_);
            2.0 * precision * recall / (precision + recall)
        };
        assert!((f1_score(&predictions, &labels) - expected).abs() < 1e-12);
    }
}

#[test]
fn bounded_auc_perfect_is_one() {
    let scores = [0.99, 0.98, 0.97, 0.2, 0.15, 0.1];
    let labels = [true, true, true, false, false, false];
    let curve = roc_and_auc(&scores, &labels).unwrap();
    assert_eq!(curve.bounded_auc, 1.0);
}

// Random scores on a large balanced set give a bounded AUC near 0.5 in
// nearly all seeds.
#[test]
fn bounded_auc_random_is_near_half() {
    let mut hits = 0;
    for seed in 0..100u64 {
        let mut rng = seeded(seed);
        let n = 10_000;
        let scores: Vec<f64> = (0..n).map(|_| gen_f64(&mut rng)).collect();
        let labels: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        let curve = roc_and_auc(&scores, &labels).unwrap();
        if (0.4..=0.6).contains(&curve.bounded_auc) {
            hits += 1;
        }
    }
    assert!(hits >= 95, "only {hits}/100 seeds inside [0.4, 0.6]");
}

// Uniform random seconds: chi-square statistic stays below the 99th
// percentile of chi-square(59) in at least 95 of 100 seeded trials.
#[test]
fn chi_square_uniform_seconds_stays_low() {
    // 99th percentile of the chi-square distribution with 59 dof.
    const CHI2_59_P99: f64 = 87.166;
    let mut hits = 0;
    for seed in 0..100u64 {
        let mut rng = seeded(seed ^ 0xc4157);
        let timestamps: Vec<i64> = (0..6000)
            .map(|i| i * 3600 + gen_index(&mut rng, 60) as i64)
            .collect();
        if astroturf_core::timefeat::chi_square_seconds(&timestamps) < CHI2_59_P99 {
            hits += 1;
        }
    }
    assert!(
        hits >= 95,
        "only {hits}/100 trials below the 99th percentile"
    );
}
