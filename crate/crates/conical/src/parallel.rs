//! Worker-pool helpers for batch scans. The worker count honours the
//! `CONICAL_WORKERS` environment variable and falls back to the number of
//! available CPUs.

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "CONICAL_WORKERS";

pub fn worker_count() -> usize {
    if let Ok(s) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Splits `0..total` into at most `parts` contiguous, near-equal ranges.
pub fn partition(total: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out.retain(|r| !r.is_empty());
    out
}

/// Applies `f` to each index range on its own thread and concatenates the
/// per-range outputs in range order.
pub fn map_ranges<T, F>(total: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<T> + Sync,
{
    let ranges = partition(total, worker_count());
    if ranges.len() <= 1 {
        return ranges.into_iter().flat_map(&f).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| f(r)))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_range() {
        for total in [0usize, 1, 7, 100] {
            for parts in [1usize, 3, 8] {
                let rs = partition(total, parts);
                let mut next = 0;
                for r in &rs {
                    assert_eq!(r.start, next);
                    assert!(!r.is_empty());
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn map_ranges_matches_sequential() {
        let got = map_ranges(50, |r| r.map(|i| i * i).collect());
        let want: Vec<usize> = (0..50).map(|i| i * i).collect();
        assert_eq!(got, want);
    }
}
