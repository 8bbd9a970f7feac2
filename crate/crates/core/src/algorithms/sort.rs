//! Comparison-counted bottom-up merge sort.
//!
//! Every adjacent pair of the output was compared directly during some
//! merge, so the sort also reports which neighbours are equal at no extra cost.

use std::cmp::Ordering;

use crate::probe::Probe;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sorted {
    /// Non-decreasing order; `equal_prev[i]` iff `order[i]` equals `order[i - 1]`.
    Done { order: Vec<usize>, equal_prev: Vec<bool> },
    /// The stop predicate accepted this equal pair.
    Stopped(usize, usize),
}

impl Sorted {
    /// Maximal runs of equal elements, in sorted order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let Sorted::Done { order, equal_prev } = self else {
            return Vec::new();
        };
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &x) in order.iter().enumerate() {
            if i > 0 && equal_prev[i] {
                groups.last_mut().unwrap().push(x);
            } else {
                groups.push(vec![x]);
            }
        }
        groups
    }
}

struct Run {
    items: Vec<usize>,
    equal_prev: Vec<bool>,
}

/// Sorts `items`; every EQ answer is offered to `stop`, and the sort returns
/// that pair as soon as `stop` accepts one. Uses at most `b * ceil(log2 b)`
/// comparisons for `b` items.
pub async fn merge_sort(probe: &Probe, items: Vec<usize>, stop: &mut dyn FnMut(usize, usize) -> bool) -> Sorted {
    let mut runs: Vec<Run> = items
        .into_iter()
        .map(|x| Run {
            items: vec![x],
            equal_prev: vec![false],
        })
        .collect();
    if runs.is_empty() {
        return Sorted::Done {
            order: Vec::new(),
            equal_prev: Vec::new(),
        };
    }
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => match merge(probe, a, b, stop).await {
                    Ok(run) => next.push(run),
                    Err((x, y)) => return Sorted::Stopped(x, y),
                },
                None => next.push(a),
            }
        }
        runs = next;
    }
    let run = runs.pop().unwrap();
    Sorted::Done {
        order: run.items,
        equal_prev: run.equal_prev,
    }
}

async fn merge(
    probe: &Probe,
    a: Run,
    b: Run,
    stop: &mut dyn FnMut(usize, usize) -> bool,
) -> Result<Run, (usize, usize)> {
    let runs = [&a, &b];
    let total = a.items.len() + b.items.len();
    let mut out = Run {
        items: Vec::with_capacity(total),
        equal_prev: Vec::with_capacity(total),
    };
    let mut pos = [0usize, 0usize];
    // (run the last output came from, whether the comparison that emitted it was EQ)
    let mut last: Option<(usize, bool)> = None;
    let emit = |out: &mut Run, src: usize, at: usize, via_equal: bool, last: &mut Option<(usize, bool)>| {
        let eq = match *last {
            None => false,
            Some((prev_src, _)) if prev_src == src => runs[src].equal_prev[at],
            // the previous element left its run after being compared with
            // this element, which was the other head at that moment
            Some((_, prev_equal)) => prev_equal,
        };
        out.items.push(runs[src].items[at]);
        out.equal_prev.push(eq);
        *last = Some((src, via_equal));
    };
    while pos[0] < a.items.len() && pos[1] < b.items.len() {
        let (x, y) = (a.items[pos[0]], b.items[pos[1]]);
        let ord = probe.compare(x, y).await;
        if ord == Ordering::Equal && stop(x, y) {
            return Err((x, y));
        }
        let src = usize::from(ord == Ordering::Greater);
        emit(&mut out, src, pos[src], ord == Ordering::Equal, &mut last);
        pos[src] += 1;
    }
    for src in 0..2 {
        while pos[src] < runs[src].items.len() {
            emit(&mut out, src, pos[src], false, &mut last);
            pos[src] += 1;
        }
    }
    Ok(out)
}

/// Sorts `items`, stopping at the first EQ answer.
pub async fn sort_until_equal(probe: &Probe, items: Vec<usize>) -> Result<Vec<usize>, (usize, usize)> {
    match merge_sort(probe, items, &mut |_, _| true).await {
        Sorted::Done { order, .. } => Ok(order),
        Sorted::Stopped(x, y) => Err((x, y)),
    }
}

/// Worst-case comparison count of [`merge_sort`] on `b` items.
pub fn sort_cost_bound(b: usize) -> u64 {
    if b <= 1 {
        0
    } else {
        (b as u64) * u64::from(usize::BITS - (b - 1).leading_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::{run_on_keys, Task};
    use proptest::prelude::*;

    fn sort_keys(keys: &[u32]) -> (Sorted, u64) {
        let items: Vec<usize> = (0..keys.len()).collect();
        run_on_keys(
            keys,
            Task::new(move |p| async move { merge_sort(&p, items, &mut |_, _| false).await }),
        )
    }

    #[test]
    fn sorts_small_inputs() {
        let (s, c) = sort_keys(&[3, 1, 2]);
        assert_eq!(
            s,
            Sorted::Done {
                order: vec![1, 2, 0],
                equal_prev: vec![false, false, false]
            }
        );
        assert!(c <= sort_cost_bound(3));
        let (s, c) = sort_keys(&[7]);
        assert_eq!(s.groups(), vec![vec![0]]);
        assert_eq!(c, 0);
    }

    #[test]
    fn stops_at_first_equal() {
        let keys = [5u32, 5];
        let (out, c) = run_on_keys(
            &keys,
            Task::new(|p| async move { sort_until_equal(&p, vec![0, 1]).await }),
        );
        assert_eq!(out, Err((0, 1)));
        assert_eq!(c, 1);
    }

    #[test]
    fn cost_bound_values() {
        assert_eq!(sort_cost_bound(2), 2);
        assert_eq!(sort_cost_bound(4), 8);
        assert_eq!(sort_cost_bound(8), 24);
        assert_eq!(sort_cost_bound(5), 15);
    }

    proptest! {
        #[test]
        fn matches_std_sort_and_groups(keys in prop::collection::vec(0u32..12, 0..80)) {
            let (s, c) = sort_keys(&keys);
            prop_assert!(c <= sort_cost_bound(keys.len()));
            let Sorted::Done { order, .. } = &s else { panic!("never stops") };
            let sorted: Vec<u32> = order.iter().map(|&i| keys[i]).collect();
            let mut expected = keys.clone();
            expected.sort();
            prop_assert_eq!(sorted, expected);
            let mut group_sizes: Vec<usize> = s.groups().iter().map(|g| g.len()).collect();
            let mut counts = std::collections::BTreeMap::new();
            for k in &keys {
                *counts.entry(*k).or_insert(0usize) += 1;
            }
            let mut expected_sizes: Vec<usize> = counts.into_values().collect();
            group_sizes.sort();
            expected_sizes.sort();
            prop_assert_eq!(group_sizes, expected_sizes);
        }
    }
}
