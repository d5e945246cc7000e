use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits. Exceeding any of them is a hard error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub weyl_order: usize,
    pub rep_dim: u64,
    pub hilbert_dim: usize,
    pub degree: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl_order: 40320,
            rep_dim: 1_000_000,
            hilbert_dim: 5,
            degree: 8,
        }
    }
}

impl Caps {
    /// Parses either inline JSON or a path to a JSON file.
    pub fn from_str_or_path(s: &str) -> Result<Caps> {
        let text = if s.trim_start().starts_with('{') {
            s.to_string()
        } else {
            std::fs::read_to_string(s)
                .map_err(|e| Error::BadInput(format!("cannot read caps file {s}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("caps: {e}")))
    }
}
