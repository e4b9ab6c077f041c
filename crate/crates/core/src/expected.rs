//! Frozen constants measured once by `examples/freeze_constants.rs` and
//! gated at 10% thereafter.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

const BUNDLED: &str = include_str!("../expected.json");

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub constants: BTreeMap<String, f64>,
    #[serde(default)]
    pub reported: BTreeMap<String, f64>,
}

impl Expected {
    pub fn bundled() -> Self {
        serde_json::from_str(BUNDLED).expect("bundled expected.json is valid")
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.constants.get(key).copied()
    }
}
