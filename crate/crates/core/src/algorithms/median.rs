//! Median Recursion: split around the lower median, recurse on both sides,
//! and prune subproblems smaller than `L`.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::oracle::{CountingOracle, Outcome, RunReport};
use crate::probe::{Probe, Task};
use crate::Result;

use super::select;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MedianRun {
    pub outcome: Outcome,
    /// Non-empty subproblems pruned for having fewer than `L` elements.
    pub small_calls: usize,
    pub small_mass: usize,
}

#[derive(Clone, Debug)]
enum Split {
    Duplicate(usize, usize),
    Parts { less: Vec<usize>, greater: Vec<usize> },
}

/// One median-recursion step: lower median, then a three-way partition that
/// doubles as the "does the median repeat" check.
async fn split(probe: &Probe, items: &[usize]) -> Split {
    let sel = select::kth(probe, items.to_vec(), (items.len() - 1) / 2).await;
    if let Some((x, y)) = sel.tie {
        return Split::Duplicate(x, y);
    }
    let m = sel.index;
    let mut less = Vec::new();
    let mut greater = Vec::new();
    for &x in items {
        if x == m {
            continue;
        }
        match probe.compare(x, m).await {
            Ordering::Less => less.push(x),
            Ordering::Greater => greater.push(x),
            Ordering::Equal => return Split::Duplicate(x, m),
        }
    }
    Split::Parts { less, greater }
}

/// Remembered splits of the top of the recursion tree, keyed by the
/// less/greater path from the root. Replaying a split costs nothing.
#[derive(Debug, Default)]
pub(crate) struct Memo {
    pub depth: usize,
    splits: HashMap<Vec<bool>, (Vec<usize>, Vec<usize>)>,
}

impl Memo {
    pub fn new() -> Self {
        Self::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Walk {
    Duplicate(usize, usize),
    /// Every subproblem was split or pruned.
    Exhausted {
        small_calls: usize,
        small_mass: usize,
    },
    /// Pruned mass reached the cap before the walk finished.
    Capped,
}

/// Depth-first, less side first. Stops once the pruned mass reaches `cap`.
pub(crate) async fn walk(
    probe: &Probe,
    items: Vec<usize>,
    l: usize,
    cap: Option<usize>,
    mut memo: Option<&mut Memo>,
) -> Walk {
    let mut stack = vec![(items, Vec::<bool>::new())];
    let mut small_calls = 0;
    let mut small_mass = 0;
    while let Some((sub, path)) = stack.pop() {
        if sub.len() < l {
            if !sub.is_empty() {
                small_calls += 1;
                small_mass += sub.len();
                if cap.is_some_and(|c| small_mass >= c) {
                    return Walk::Capped;
                }
            }
            continue;
        }
        let remembered = memo
            .as_deref()
            .filter(|m| path.len() < m.depth)
            .and_then(|m| m.splits.get(&path).cloned());
        let (less, greater) = match remembered {
            Some(parts) => parts,
            None => match split(probe, &sub).await {
                Split::Duplicate(x, y) => return Walk::Duplicate(x, y),
                Split::Parts { less, greater } => {
                    if let Some(m) = memo.as_deref_mut().filter(|m| path.len() < m.depth) {
                        m.splits.insert(path.clone(), (less.clone(), greater.clone()));
                    }
                    (less, greater)
                }
            },
        };
        let mut right = path.clone();
        right.push(true);
        let mut left = path;
        left.push(false);
        stack.push((greater, right));
        stack.push((less, left));
    }
    Walk::Exhausted {
        small_calls,
        small_mass,
    }
}

pub async fn median_recursion(probe: &Probe, items: Vec<usize>, l: usize) -> MedianRun {
    assert!(l >= 1, "L must be positive");
    match walk(probe, items, l, None, None).await {
        Walk::Duplicate(x, y) => MedianRun {
            outcome: Outcome::Duplicate(x, y),
            small_calls: 0,
            small_mass: 0,
        },
        Walk::Exhausted {
            small_calls,
            small_mass,
        } => MedianRun {
            outcome: Outcome::GaveUp,
            small_calls,
            small_mass,
        },
        Walk::Capped => unreachable!("uncapped walk"),
    }
}

/// Runs Median Recursion, also returning the small-call statistics.
pub fn run_median_recursion(oracle: &mut CountingOracle<'_>, l: usize) -> Result<(RunReport, MedianRun)> {
    if l == 0 {
        return Err(crate::Error::Usage("L must be at least 1".into()));
    }
    let items: Vec<usize> = (0..oracle.len()).collect();
    let before = oracle.count();
    let run = oracle.drive(Task::new(move |p| async move { median_recursion(&p, items, l).await }))?;
    Ok((
        RunReport::from_finding(run.outcome.into(), oracle.count() - before),
        run,
    ))
}

/// Statistics of a full walk that never stops at a duplicate; test support
/// for the small-call bounds, which the early exit would otherwise hide.
pub async fn small_call_profile(probe: &Probe, items: Vec<usize>, l: usize) -> (usize, usize) {
    let mut stack = vec![items];
    let (mut calls, mut mass) = (0, 0);
    while let Some(sub) = stack.pop() {
        if sub.len() < l {
            if !sub.is_empty() {
                calls += 1;
                mass += sub.len();
            }
            continue;
        }
        let m = select::kth(probe, sub.clone(), (sub.len() - 1) / 2).await.index;
        let (mut less, mut greater) = (Vec::new(), Vec::new());
        for &x in &sub {
            if x != m {
                match probe.compare(x, m).await {
                    Ordering::Less => less.push(x),
                    _ => greater.push(x),
                }
            }
        }
        stack.push(greater);
        stack.push(less);
    }
    (calls, mass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{realize_instance, Instance};
    use crate::profile::ClusterProfile;

    #[test]
    fn pair_is_found() {
        let inst = Instance::from_ranks([3, 3]).unwrap();
        let (r, _) = run_median_recursion(&mut CountingOracle::new(&inst), 2).unwrap();
        assert!(r.outcome.is_duplicate());
    }

    #[test]
    fn distinct_gives_up() {
        let inst = Instance::from_ranks([1, 2, 3, 4]).unwrap();
        let (r, run) = run_median_recursion(&mut CountingOracle::new(&inst), 2).unwrap();
        assert_eq!(r.outcome, Outcome::GaveUp);
        assert_eq!((run.small_calls, run.small_mass), (2, 2));
    }

    #[test]
    fn singleton_heavy_profile() {
        let mut sizes = vec![2];
        sizes.extend([1; 16]);
        let p = ClusterProfile::new(sizes).unwrap();
        for seed in 0..50 {
            let inst = realize_instance(&p, seed);
            let (r, run) = run_median_recursion(&mut CountingOracle::new(&inst), 2).unwrap();
            let (x, y) = r.outcome.witness().expect("C(2) < n");
            assert_eq!(inst.values()[x], inst.values()[y]);
            assert!(run.small_mass <= 16);
        }
    }

    #[test]
    fn memo_replays_without_comparisons() {
        let keys: Vec<u32> = (0..64).map(|i| (i * 37) % 64).collect();
        let (_, first, second) = {
            let mut memo = Memo::new();
            memo.depth = 3;
            let items: Vec<usize> = (0..64).collect();
            let mut counts = Vec::new();
            for _ in 0..2 {
                let items = items.clone();
                let memo_ref = &mut memo;
                let (w, c) = crate::probe::run_on_keys(
                    &keys,
                    Task::new(move |p| async move { walk(&p, items, 2, None, Some(memo_ref)).await }),
                );
                assert!(matches!(w, Walk::Exhausted { .. }));
                counts.push(c);
            }
            ((), counts[0], counts[1])
        };
        assert!(second < first);
    }
}
