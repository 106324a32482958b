//! TOML configuration files: corpus terms, synthetic-corpus parameters and
//! hyperparameter grids.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use astroturf_core::models::{MaxFeatures, ModelSpec, Params};

use crate::ingest::CorpusConfig;
use crate::synth::SynthConfig;

/// Party search terms of the acquisition setup, including the alternate
/// spellings.
pub fn default_search_terms() -> Vec<String> {
    [
        "afd",
        "cdu",
        "csu",
        "gruene",
        "grüne",
        "diegruenen",
        "diegrünen",
        "linke",
        "dielinke",
        "npd",
        "spd",
        "btw17",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn default_exclusion_terms() -> Vec<String> {
    vec!["fdp".to_string()]
}

pub fn load_corpus_config(path: &Path) -> Result<CorpusConfig> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let config: CorpusConfig = toml::from_str(&raw)?;
    if config.search_terms.is_empty() {
        bail!("search_terms must be non-empty");
    }
    Ok(config)
}

pub fn load_synth_config(path: &Path) -> Result<SynthConfig> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let config: SynthConfig = toml::from_str(&raw)?;
    config.validate()?;
    Ok(config)
}

#[derive(Deserialize)]
struct GridFile {
    spec: Vec<GridPoint>,
}

#[derive(Deserialize)]
struct GridPoint {
    family: String,
    seed: Option<u64>,
    trees: Option<usize>,
    depth: Option<usize>,
    learning_rate: Option<f64>,
    stumps: Option<usize>,
    l2: Option<f64>,
    k: Option<usize>,
    epochs: Option<usize>,
    bootstrap: Option<bool>,
}

/// Parse a grid file: one `[[spec]]` table per grid point. Omitted random
/// forest depth means unbounded trees.
pub fn load_grid(path: &Path, default_seed: u64) -> Result<Vec<ModelSpec>> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let file: GridFile = toml::from_str(&raw)?;
    if file.spec.is_empty() {
        bail!("grid file declares no specs");
    }
    let mut specs = Vec::with_capacity(file.spec.len());
    for point in file.spec {
        let need = |v: Option<usize>, name: &str| {
            v.with_context(|| format!("{} requires {name}", point.family))
        };
        let need_f = |v: Option<f64>, name: &str| {
            v.with_context(|| format!("{} requires {name}", point.family))
        };
        let params = match crate::evalrun::family_from_name(&point.family)? {
            astroturf_core::models::Family::GradientBoosting => Params::GradientBoosting {
                trees: need(point.trees, "trees")?,
                depth: need(point.depth, "depth")?,
                learning_rate: need_f(point.learning_rate, "learning_rate")?,
            },
            astroturf_core::models::Family::RandomForest => Params::RandomForest {
                trees: need(point.trees, "trees")?,
                depth: point.depth,
                bootstrap: point.bootstrap.unwrap_or(true),
                max_features: MaxFeatures::Sqrt,
            },
            astroturf_core::models::Family::AdaBoost => Params::AdaBoost {
                stumps: need(point.stumps, "stumps")?,
            },
            astroturf_core::models::Family::LogisticRegression => Params::LogisticRegression {
                l2: need_f(point.l2, "l2")?,
            },
            astroturf_core::models::Family::KNeighbors => Params::KNeighbors {
                k: need(point.k, "k")?,
            },
            astroturf_core::models::Family::LinearSvc => Params::LinearSvc {
                l2: need_f(point.l2, "l2")?,
                epochs: point.epochs.unwrap_or(50),
            },
        };
        let spec = ModelSpec {
            params,
            seed: point.seed.unwrap_or(default_seed),
        };
        spec.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
        specs.push(spec);
    }
    Ok(specs)
}
