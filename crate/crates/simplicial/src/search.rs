//! Node budgets and progress reporting for the long-running searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Receives periodic node counts from a running search. Implementations must
/// be cheap; reports arrive from worker threads.
pub trait Progress: Sync {
    fn report(&self, visited: u64);
}

/// Options for searches that may not terminate quickly. `budget` caps the
/// number of visited search nodes (approximately, to batching granularity);
/// exhausting it aborts the search with [`crate::Error::Exhausted`].
#[derive(Default, Clone, Copy)]
pub struct SearchOpts<'a> {
    pub budget: Option<u64>,
    pub progress: Option<&'a dyn Progress>,
}

const REPORT_EVERY: u64 = 1 << 20;

/// Shared node counter. Workers batch ticks locally and sync in chunks.
pub(crate) struct Counter<'a> {
    visited: AtomicU64,
    aborted: AtomicBool,
    next_report: AtomicU64,
    opts: SearchOpts<'a>,
}

impl<'a> Counter<'a> {
    pub(crate) fn new(opts: SearchOpts<'a>) -> Self {
        Counter {
            visited: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            next_report: AtomicU64::new(REPORT_EVERY),
            opts,
        }
    }

    /// Adds a batch of visited nodes. Returns false once the budget is gone;
    /// callers should unwind promptly.
    pub(crate) fn sync(&self, batch: u64) -> bool {
        let total = self.visited.fetch_add(batch, Ordering::Relaxed) + batch;
        if let Some(p) = self.opts.progress {
            let due = self.next_report.load(Ordering::Relaxed);
            if total >= due
                && self
                    .next_report
                    .compare_exchange(due, total + REPORT_EVERY, Ordering::Relaxed, Ordering::Relaxed)
                    .is_ok()
            {
                p.report(total);
            }
        }
        if let Some(b) = self.opts.budget {
            if total > b {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    pub(crate) fn is_aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    pub(crate) fn visited(&self) -> u64 {
        self.visited.load(Ordering::Relaxed)
    }
}

/// Per-worker tick accumulator; keeps the shared atomic out of hot loops.
pub(crate) struct LocalTicks {
    pending: u64,
}

pub(crate) const SYNC_BATCH: u64 = 8192;

impl LocalTicks {
    pub(crate) fn new() -> Self {
        LocalTicks { pending: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self, counter: &Counter) -> bool {
        self.pending += 1;
        if self.pending >= SYNC_BATCH {
            let b = self.pending;
            self.pending = 0;
            counter.sync(b)
        } else {
            true
        }
    }

    pub(crate) fn flush(&mut self, counter: &Counter) -> bool {
        let b = self.pending;
        self.pending = 0;
        if b > 0 {
            counter.sync(b)
        } else {
            !counter.is_aborted()
        }
    }
}
