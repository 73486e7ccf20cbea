//! Resource caps, overridable from the environment.

use std::env;

use crate::error::{Error, Result};

/// Prefix for the environment variables that override [`Caps`].
pub const ENV_PREFIX: &str = "RANDLINK_";

pub const DEFAULT_EXACT_N: usize = 2000;
pub const DEFAULT_PARTITION_N: usize = 120;
pub const DEFAULT_EXHAUSTIVE_N: usize = 8;
pub const DEFAULT_WALKS: usize = 10_000_000;
pub const DEFAULT_STEPS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for a Stirling row.
    pub exact_n: usize,
    /// Largest `n` for a partition scan.
    pub partition_n: usize,
    /// Largest `n` for anything that walks all of `S_n`.
    pub exhaustive_n: usize,
    pub walks: usize,
    pub steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exact_n: DEFAULT_EXACT_N,
            partition_n: DEFAULT_PARTITION_N,
            exhaustive_n: DEFAULT_EXHAUSTIVE_N,
            walks: DEFAULT_WALKS,
            steps: DEFAULT_STEPS,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `RANDLINK_MAX_EXACT_N`, `RANDLINK_MAX_PARTITION_N`,
    /// `RANDLINK_MAX_EXHAUSTIVE_N`, `RANDLINK_MAX_WALKS` and `RANDLINK_MAX_STEPS`.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        for (suffix, slot) in [
            ("MAX_EXACT_N", &mut caps.exact_n),
            ("MAX_PARTITION_N", &mut caps.partition_n),
            ("MAX_EXHAUSTIVE_N", &mut caps.exhaustive_n),
            ("MAX_WALKS", &mut caps.walks),
            ("MAX_STEPS", &mut caps.steps),
        ] {
            let key = format!("{ENV_PREFIX}{suffix}");
            if let Ok(raw) = env::var(&key) {
                *slot = raw.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("{key}={raw:?} is not a non-negative integer"))
                })?;
            }
        }
        Ok(caps)
    }
}
