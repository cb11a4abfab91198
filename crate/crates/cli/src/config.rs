//! Run-wide settings shared by every command.

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tol: f64,
    /// Grade or site count; each command picks its own default when absent.
    pub n: Option<u32>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tol: 1e-9, n: None, format: Format::Text, seed: DEFAULT_SEED }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if let Some(n) = self.n {
            if n < 2 {
                return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
            }
        }
        Ok(())
    }
}
