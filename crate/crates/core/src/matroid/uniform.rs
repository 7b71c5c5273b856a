use super::{ElementSet, RankOracle};
use std::cell::Cell;

/// The uniform matroid `U(r, n)`.
#[derive(Debug)]
pub struct UniformMatroid {
    rank: usize,
    len: usize,
    queries: Cell<u64>,
}

impl UniformMatroid {
    pub fn new(rank: usize, len: usize) -> Self {
        assert!(rank <= len && len <= super::MAX_ELEMENTS, "U({rank},{len}) is not representable");
        UniformMatroid { rank, len, queries: Cell::new(0) }
    }
}

impl RankOracle for UniformMatroid {
    fn len(&self) -> usize {
        self.len
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.queries.set(self.queries.get() + 1);
        set.len().min(self.rank)
    }

    fn queries(&self) -> u64 {
        self.queries.get()
    }
}
