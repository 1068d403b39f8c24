//! Wall-clock measurement of deferred computations.

use std::time::Instant;

/// Times `work` on the calling thread with a monotonic clock. One untimed
/// warmup execution precedes measurement; with `repeats > 1` the minimum of
/// the raw timings is reported. The result of the last timed run is returned.
pub fn time_op<T>(repeats: usize, mut work: impl FnMut() -> T) -> (T, f64) {
    assert!(repeats >= 1, "time_op: repeats must be at least 1");
    let _ = work(); // warmup
    let mut best = f64::INFINITY;
    let mut result = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let r = work();
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed < best {
            best = elapsed;
        }
        result = Some(r);
    }
    (result.expect("repeats >= 1"), best)
}
