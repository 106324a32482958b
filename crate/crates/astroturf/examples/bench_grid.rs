use std::time::Instant;

use astroturf::evalrun::default_grid;
use astroturf::featurize::extract_all;
use astroturf::ingest::build_timelines;
use astroturf::synth::{generate, SynthConfig};
use astroturf_core::models::Family;

fn main() {
    let t0 = Instant::now();
    let output = generate(&SynthConfig::default()).unwrap();
    println!("synth: {:?} records={}", t0.elapsed(), output.records.len());
    let t0 = Instant::now();
    let timelines: Vec<_> = build_timelines(output.records).into_values().collect();
    let rows = extract_all(&timelines, 1).unwrap();
    println!("features: {:?} rows={}", t0.elapsed(), rows.len());
    let labels: std::collections::BTreeMap<u64, bool> = output.labels.iter().cloned().collect();
    let x: Vec<Vec<f64>> = rows.iter().map(|r| r.vector.values.clone()).collect();
    let y: Vec<bool> = rows.iter().map(|r| labels[&r.user_id]).collect();
    println!(
        "bots={} total={}",
        y.iter().filter(|&&b| b).count(),
        y.len()
    );
    for family in [
        Family::KNeighbors,
        Family::LogisticRegression,
        Family::GradientBoosting,
    ] {
        let grid = default_grid(family, 42);
        let t0 = Instant::now();
        let (best, reports) = astroturf_core::cv::grid_search(&grid, &x, &y, 10, 10, 42).unwrap();
        let best_auc = reports.iter().map(|r| r.mean_auc).fold(f64::MIN, f64::max);
        println!(
            "{:?}: {:?} best mean_auc={:.4} best={:?}",
            family,
            t0.elapsed(),
            best_auc,
            best.params
        );
    }
}
