//! The oblivious algorithm: Block Sorting with doubly-exponential block
//! sizes, a doubling checker, and capped median-recursion branches, interleaved
//! one comparison at a time.

use std::collections::BTreeMap;

use crate::oracle::{Finding, Outcome};
use crate::probe::{Probe, Step, Task};

use super::block::block_sorting;
use super::doubling::order_doubling;
use super::median::{walk, Memo, Walk};

struct Branch<'a> {
    label: String,
    task: Option<Task<'a, Outcome>>,
    cost: u64,
}

/// Round-robin interleaving of resumable branches. In each round every live
/// branch receives exactly one comparison, in insertion order.
#[derive(Default)]
pub struct Scheduler<'a> {
    branches: Vec<Branch<'a>>,
    rounds: u64,
}

impl<'a> Scheduler<'a> {
    pub fn new() -> Self {
        Scheduler {
            branches: Vec::new(),
            rounds: 0,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, task: Task<'a, Outcome>) {
        self.branches.push(Branch {
            label: label.into(),
            task: Some(task),
            cost: 0,
        });
    }

    pub fn labels(&self) -> Vec<&str> {
        self.branches.iter().map(|b| b.label.as_str()).collect()
    }

    pub fn costs(&self) -> BTreeMap<String, u64> {
        self.branches.iter().map(|b| (b.label.clone(), b.cost)).collect()
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Runs at most `max_rounds` rounds. Returns the first `Duplicate` or
    /// `Distinct`, in branch order within a round, or `GaveUp` once every
    /// branch has given up; `None` if rounds ran out first.
    pub async fn run_rounds(&mut self, probe: &Probe, max_rounds: u64) -> Option<Outcome> {
        while self.rounds < max_rounds {
            self.rounds += 1;
            let mut live = false;
            for b in &mut self.branches {
                let Some(task) = b.task.as_mut() else { continue };
                match task.resume() {
                    Step::Done(outcome) => {
                        b.task = None;
                        if outcome != Outcome::GaveUp {
                            return Some(outcome);
                        }
                    }
                    Step::Compare(x, y) => {
                        let answer = probe.compare(x, y).await;
                        task.reply(answer);
                        b.cost += 1;
                        live = true;
                    }
                }
            }
            if !live {
                return Some(Outcome::GaveUp);
            }
        }
        None
    }

    pub async fn run(mut self, probe: &Probe) -> Finding {
        let outcome = self.run_rounds(probe, u64::MAX).await.expect("unbounded");
        Finding {
            outcome,
            branch_costs: self.costs(),
        }
    }
}

/// `ceil(log2 log2 n)`, and 0 for `n <= 2`.
pub fn log_log_ceil(n: usize) -> u32 {
    if n <= 2 {
        return 0;
    }
    (n as f64).log2().log2().ceil() as u32
}

/// Block sizes `2 * 2^(2^i)` for `i = 0..=ceil(log2 log2 n)`, saturating.
pub fn block_sizes(n: usize) -> Vec<usize> {
    (0..=log_log_ceil(n))
        .map(|i| {
            let e = 1u64 << i.min(63);
            let pow = if e >= usize::BITS as u64 - 1 {
                usize::MAX / 2
            } else {
                1usize << e
            };
            pow.saturating_mul(2)
        })
        .collect()
}

/// Shift parameters `i` of the median branches: `1, 2, 4, ..., 2^ceil(log2 log2 n)`.
pub fn median_shifts(n: usize) -> Vec<u32> {
    (0..=log_log_ceil(n)).map(|j| 1u32 << j).collect()
}

/// One capped median branch: for `C = 1, 2, 4, ...` run median recursion with
/// `L = max(2, C / 2^i)` until the pruned mass reaches `C`, reusing the top
/// `floor(log2(n / C))` levels of the recursion tree.
pub async fn median_branch(probe: &Probe, n: usize, shift: u32) -> Outcome {
    let mut memo = Memo::new();
    let mut c = 1usize;
    loop {
        let l = 2usize.max(c.checked_shr(shift).unwrap_or(0));
        memo.depth = if c <= n { (n / c).ilog2() as usize } else { 0 };
        match walk(probe, (0..n).collect(), l, Some(c), Some(&mut memo)).await {
            Walk::Duplicate(x, y) => return Outcome::Duplicate(x, y),
            Walk::Exhausted { .. } => return Outcome::GaveUp,
            Walk::Capped => c = c.saturating_mul(2),
        }
    }
}

pub fn scheduler(n: usize) -> Scheduler<'static> {
    let mut s = Scheduler::new();
    for (i, k) in block_sizes(n).into_iter().enumerate() {
        s.push(
            format!("block:{i}"),
            Task::new(move |p| async move {
                match block_sorting(&p, (0..n).collect(), k).await.outcome {
                    // a single block holding everything is a full sort, which certifies
                    Outcome::GaveUp if 2 * k > n => Outcome::Distinct,
                    other => other,
                }
            }),
        );
    }
    s.push("double", Task::new(move |p| async move { order_doubling(&p, n).await }));
    for shift in median_shifts(n) {
        s.push(
            format!("median:{shift}"),
            Task::new(move |p| async move { median_branch(&p, n, shift).await }),
        );
    }
    s
}

pub async fn oblivious(probe: &Probe, n: usize) -> Finding {
    scheduler(n).run(probe).await
}
