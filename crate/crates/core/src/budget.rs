//! Node budgets for the exhaustive searches.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

/// Default number of search nodes before a search gives up with [`Error::SizeLimit`].
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Environment variable read by the command-line front end to override the budget.
pub const BUDGET_ENV: &str = "GKM_SEARCH_BUDGET";

/// A shared node counter. Searches call [`Budget::tick`] once per node.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    /// Budget from [`BUDGET_ENV`], falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tick(&self) -> Result<()> {
        let n = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.limit {
            Err(Error::SizeLimit { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
