use crate::tally::EvalCount;
use crate::Containment;

/// Object-safe view of a built locator, used by the comparison harness and
/// the benchmark driver.
pub trait Locator<P> {
    /// Short method name (`linear`, `wedge`, `polar`, ...).
    fn name(&self) -> &'static str;

    fn locate(&self, p: P) -> Containment;

    /// Classification plus the evaluations it took.
    fn locate_counted(&self, p: P) -> (Containment, EvalCount);

    /// Largest per-query candidate list, where the method has one.
    fn max_occupancy(&self) -> Option<usize> {
        None
    }
}
