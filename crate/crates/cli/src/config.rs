use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Optional TOML defaults; command-line flags win.
///
/// ```toml
/// builder = "antisym"
/// g = 3
/// order = 8
/// seed = 7
/// max_rounds = 12
/// format = "json"
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub builder: Option<String>,
    pub g: Option<usize>,
    pub model_file: Option<PathBuf>,
    pub order: Option<usize>,
    pub seed: Option<u64>,
    pub max_rounds: Option<usize>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}
