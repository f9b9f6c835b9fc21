//! Resource limits for the exponential searches.
//!
//! A [`Budget`] caps node expansions (deterministic) and, optionally, wall
//! time (a safety net that can make results depend on machine speed).

use std::cell::Cell;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of search-node expansions.
    pub nodes: u64,
    /// Optional wall-clock cap.
    pub time: Option<Duration>,
    /// Seed for every randomized heuristic run under this budget.
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 2_000_000,
            time: None,
            seed: 0x5eed,
        }
    }
}

impl Budget {
    pub fn nodes(nodes: u64) -> Self {
        Budget {
            nodes,
            ..Budget::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_time(mut self, time: Duration) -> Self {
        self.time = Some(time);
        self
    }

    pub fn unlimited() -> Self {
        Budget {
            nodes: u64::MAX,
            time: None,
            seed: 0x5eed,
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            left: Cell::new(self.nodes),
            deadline: self.time.map(|t| Instant::now() + t),
            exhausted: Cell::new(false),
        }
    }
}

/// Running counter for one search.
#[derive(Debug)]
pub(crate) struct Meter {
    left: Cell<u64>,
    deadline: Option<Instant>,
    exhausted: Cell<bool>,
}

impl Meter {
    /// Consumes one unit; returns false once the budget is spent.
    pub fn tick(&self) -> bool {
        if self.exhausted.get() {
            return false;
        }
        let left = self.left.get();
        if left == 0 {
            self.exhausted.set(true);
            return false;
        }
        self.left.set(left - 1);
        if left.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted.set(true);
                    return false;
                }
            }
        }
        true
    }
}

/// Tri-state answer of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Search<T> {
    Found(T),
    Absent,
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Unknown => Search::Unknown,
        }
    }
}

/// Closed interval of possible values for a budget-limited quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: usize,
    pub hi: usize,
}

impl Bracket {
    pub fn exact(v: usize) -> Self {
        Bracket { lo: v, hi: v }
    }

    pub fn value(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }
}
