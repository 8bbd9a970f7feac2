//! Block Sorting: sort disjoint blocks of `k` elements until two equal
//! elements land in the same block.

use crate::oracle::{CountingOracle, Outcome, RunReport};
use crate::probe::{Probe, Task};
use crate::Result;

use super::sort::sort_until_equal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRun {
    pub outcome: Outcome,
    /// Block sorts performed, the final sort of the remainder included.
    pub iterations: usize,
}

/// Blocks are the lowest remaining indices of `items`.
pub async fn block_sorting(probe: &Probe, items: Vec<usize>, k: usize) -> BlockRun {
    assert!(k >= 1, "block size must be positive");
    let mut rest = &items[..];
    let mut iterations = 0;
    while rest.len() >= 2 * k {
        iterations += 1;
        if let Err((x, y)) = sort_until_equal(probe, rest[..k].to_vec()).await {
            return BlockRun {
                outcome: Outcome::Duplicate(x, y),
                iterations,
            };
        }
        rest = &rest[k..];
    }
    iterations += 1;
    let outcome = match sort_until_equal(probe, rest.to_vec()).await {
        Err((x, y)) => Outcome::Duplicate(x, y),
        Ok(_) => Outcome::GaveUp,
    };
    BlockRun { outcome, iterations }
}

pub fn run_block_sorting(oracle: &mut CountingOracle<'_>, k: usize) -> Result<(RunReport, usize)> {
    if k == 0 {
        return Err(crate::Error::Usage("block size k must be at least 1".into()));
    }
    let items: Vec<usize> = (0..oracle.len()).collect();
    let before = oracle.count();
    let run = oracle.drive(Task::new(move |p| async move { block_sorting(&p, items, k).await }))?;
    let report = RunReport::from_finding(run.outcome.into(), oracle.count() - before);
    Ok((report, run.iterations))
}
