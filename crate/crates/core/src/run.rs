//! Execution knobs shared by the counting and enumeration entry points.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// How a long computation is run.
///
/// Results never depend on `threads` or `split_depth`; they only change how
/// the search tree is cut into independent subtasks.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub threads: usize,
    /// Number of leading decision levels expanded into independent subtasks.
    pub split_depth: u32,
    /// Lift the feasibility caps.
    pub force: bool,
    pub time_budget: Option<Duration>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: 1,
            split_depth: 6,
            force: false,
            time_budget: None,
        }
    }
}

impl RunOptions {
    pub fn with_threads(threads: usize) -> Self {
        RunOptions {
            threads,
            ..Default::default()
        }
    }

    pub(crate) fn check_cap(&self, what: &'static str, n: u32, cap: u32) -> Result<()> {
        if n > cap && !self.force {
            return Err(Error::ResourceCap { what, n, cap });
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.max(1))
            .build()
            .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))
    }

    pub(crate) fn budget(&self, total: u64) -> Budget {
        Budget {
            deadline: self.time_budget.map(|d| Instant::now() + d),
            expired: AtomicBool::new(false),
            completed: AtomicU64::new(0),
            total,
        }
    }
}

/// Wall-clock guard polled from inside the search loops.
#[derive(Debug)]
pub(crate) struct Budget {
    deadline: Option<Instant>,
    expired: AtomicBool,
    completed: AtomicU64,
    total: u64,
}

impl Budget {
    /// Returns an error once the deadline has passed; cheap when no deadline is set.
    pub(crate) fn poll(&self) -> Result<()> {
        let Some(deadline) = self.deadline else {
            return Ok(());
        };
        if self.expired.load(Ordering::Relaxed) || Instant::now() >= deadline {
            self.expired.store(true, Ordering::Relaxed);
            return Err(self.exhausted());
        }
        Ok(())
    }

    pub(crate) fn subtask_done(&self) {
        self.completed.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn exhausted(&self) -> Error {
        Error::TimeBudget {
            completed: self.completed.load(Ordering::Relaxed),
            total: self.total,
        }
    }
}
