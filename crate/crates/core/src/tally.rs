/// Sink for per-query evaluation counts.
///
/// Locators are generic over the tally so the uninstrumented path compiles
/// to nothing; `()` discards, [`EvalCount`] records.
pub trait Tally {
    /// One edge/face half-plane or half-space evaluation.
    fn constraint(&mut self);
    /// One auxiliary evaluation (wedge line, bounding-box side, y-range bound).
    fn auxiliary(&mut self);
}

impl Tally for () {
    #[inline(always)]
    fn constraint(&mut self) {}
    #[inline(always)]
    fn auxiliary(&mut self) {}
}

/// Evaluation counters for one or more queries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCount {
    pub constraints: usize,
    pub auxiliary: usize,
}

impl EvalCount {
    pub fn total(&self) -> usize {
        self.constraints + self.auxiliary
    }
}

impl Tally for EvalCount {
    #[inline]
    fn constraint(&mut self) {
        self.constraints += 1;
    }
    #[inline]
    fn auxiliary(&mut self) {
        self.auxiliary += 1;
    }
}
