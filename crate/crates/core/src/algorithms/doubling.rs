//! Order-oblivious doubling and the rank-aware selection baseline.

use std::cmp::Ordering;

use crate::oracle::Outcome;
use crate::probe::Probe;

use super::select;
use super::sort::sort_until_equal;

/// Sorts the first `min(n, k)` elements for `k = 2, 4, 8, ...`, from scratch
/// each time. The final full sort certifies `Distinct`.
pub async fn order_doubling(probe: &Probe, n: usize) -> Outcome {
    let mut k = 2usize;
    loop {
        let take = n.min(k);
        if let Err((x, y)) = sort_until_equal(probe, (0..take).collect()).await {
            return Outcome::Duplicate(x, y);
        }
        if take == n {
            return Outcome::Distinct;
        }
        k = k.saturating_mul(2);
    }
}

/// Sorts all elements; `Distinct` when no EQ shows up.
pub async fn sort_checker(probe: &Probe, n: usize) -> Outcome {
    match sort_until_equal(probe, (0..n).collect()).await {
        Err((x, y)) => Outcome::Duplicate(x, y),
        Ok(_) => Outcome::Distinct,
    }
}

/// Knowing that a cluster of size two sits at 1-based ranks `k` and `k + 1`,
/// select both and compare them once.
pub async fn quickselect_pair(probe: &Probe, n: usize, k: usize) -> Outcome {
    assert!(k >= 1 && k < n, "rank {k} needs a successor among {n} elements");
    let first = select::kth(probe, (0..n).collect(), k - 1).await;
    if let Some((x, y)) = first.tie {
        return Outcome::Duplicate(x, y);
    }
    let second = select::kth(probe, (0..n).collect(), k).await;
    if let Some((x, y)) = second.tie {
        return Outcome::Duplicate(x, y);
    }
    let (a, b) = (first.index, second.index);
    match probe.compare(a, b).await {
        Ordering::Equal => Outcome::Duplicate(a, b),
        _ => Outcome::GaveUp,
    }
}
