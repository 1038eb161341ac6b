//! Node-count and wall-clock limits shared by the exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn time(d: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(d),
        }
    }

    pub fn with_time(mut self, d: Duration) -> Self {
        self.max_time = Some(d);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter {
            max_nodes: self.max_nodes.unwrap_or(u64::MAX),
            deadline: self.max_time.map(|d| Instant::now() + d),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
        }
    }
}

/// Running tally for one search. Shared by reference across workers.
#[derive(Debug)]
pub struct Meter {
    max_nodes: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stopped: AtomicBool,
    exhausted: AtomicBool,
}

impl Meter {
    /// Counts one node. Returns false once the budget is spent or the search
    /// was halted.
    #[inline]
    pub fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            self.exhaust();
            return false;
        }
        if n.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhaust();
                    return false;
                }
            }
        }
        true
    }

    fn exhaust(&self) {
        self.exhausted.store(true, Ordering::Relaxed);
        self.stopped.store(true, Ordering::Relaxed);
    }

    /// Stops all workers without marking the budget as spent (early exit on success).
    pub fn halt(&self) {
        self.stopped.store(true, Ordering::Relaxed);
    }

    #[inline]
    pub fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    /// True when the search was cut short by the budget.
    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}
