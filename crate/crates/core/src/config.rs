//! Shared run configuration.
//!
//! A [`Config`] fixes the prime, the idempotent-lifting precision window, the
//! isomorphism sampling budget, the RNG seed, and the parallelism degree.
//! Defaults match the reference setup: `p = 3`, precision 20 (max 60),
//! 32 samples, seed 0, single-threaded.

use serde::{Deserialize, Serialize};

use crate::dvr::Dvr;
use crate::error::Error;

/// Engine configuration. All fields have sensible defaults; validation
/// happens in [`Config::validate`] / [`Config::dvr`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Residue characteristic of the base ring (must be prime).
    pub p: u64,
    /// Working precision `N` for idempotent lifting (modulo `eps^N`).
    pub precision: u32,
    /// Hard ceiling for precision escalation on retries.
    pub precision_max: u32,
    /// Number of random samples the isomorphism test draws before giving up.
    pub iso_samples: u32,
    /// Seed for all randomized sampling (fully deterministic runs).
    pub seed: u64,
    /// Worker threads for batch jobs (`1` = sequential).
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            p: 3,
            precision: 20,
            precision_max: 60,
            iso_samples: 32,
            seed: 0,
            jobs: 1,
        }
    }
}

impl Config {
    /// Checks every invariant: `p` prime, `1 <= precision <= precision_max`,
    /// at least one isomorphism sample, at least one job.
    pub fn validate(&self) -> Result<(), Error> {
        Dvr::new(self.p)?;
        if self.precision == 0 {
            return Err(Error::InvalidConfig("precision must be positive".into()));
        }
        if self.precision > self.precision_max {
            return Err(Error::InvalidConfig(format!(
                "precision {} exceeds precision_max {}",
                self.precision, self.precision_max
            )));
        }
        if self.iso_samples == 0 {
            return Err(Error::InvalidConfig("iso_samples must be positive".into()));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidConfig("jobs must be positive".into()));
        }
        Ok(())
    }

    /// The base ring for this configuration.
    pub fn dvr(&self) -> Result<Dvr, Error> {
        self.validate()?;
        Dvr::new(self.p)
    }
}
