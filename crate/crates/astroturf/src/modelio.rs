//! Versioned on-disk container for trained models.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use astroturf_core::models::TrainedModel;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Container {
    format_version: u32,
    model: TrainedModel,
}

pub fn save_model(path: &Path, model: &TrainedModel) -> Result<()> {
    let container = Container {
        format_version: FORMAT_VERSION,
        model: model.clone(),
    };
    fs::write(path, serde_json::to_string(&container)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let raw = fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
    let container: Container = serde_json::from_str(&raw)?;
    if container.format_version != FORMAT_VERSION {
        bail!(
            "unsupported model format version {} (expected {})",
            container.format_version,
            FORMAT_VERSION
        );
    }
    Ok(container.model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use astroturf_core::models::{train, ModelSpec, Params};

    #[test]
    fn round_trip_preserves_scores() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, (i % 3) as f64]).collect();
        let y: Vec<bool> = (0..20).map(|i| i >= 10).collect();
        let spec = ModelSpec {
            params: Params::LogisticRegression { l2: 0.1 },
            seed: 1,
        };
        let model = train(&spec, &x, &y).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        save_model(file.path(), &model).unwrap();
        let loaded = load_model(file.path()).unwrap();
        for row in &x {
            assert_eq!(
                model.predict_score(row).unwrap(),
                loaded.predict_score(row).unwrap()
            );
        }
    }

    #[test]
    fn version_mismatch_rejected() {
        let file = tempfile::NamedTempFile::new().unwrap();
        fs::write(file.path(), r#"{"format_version":99,"model":{}}"#).unwrap();
        assert!(load_model(file.path()).is_err());
    }
}
