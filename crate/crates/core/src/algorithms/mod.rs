//! Element-distinctness algorithms. Each one is an `async fn` over a
//! [`Probe`]; [`Algorithm`] packages them for oracles, games and the CLI.

pub mod block;
pub mod clairvoyant;
pub mod doubling;
pub mod median;
pub mod oblivious;
pub mod preprocess;
pub mod select;
pub mod sort;

use std::fmt;

use crate::oracle::{run_task, CountingOracle, Finding, RunReport};
use crate::probe::{Probe, Task};
use crate::profile::ClusterProfile;
use crate::{Error, Result};

pub use block::{block_sorting, run_block_sorting, BlockRun};
pub use clairvoyant::{clairvoyant_bound, run_clairvoyant, Plan};
pub use doubling::{order_doubling, quickselect_pair, sort_checker};
pub use median::{median_recursion, run_median_recursion, MedianRun};
pub use oblivious::{oblivious, Scheduler};
pub use preprocess::{preprocess, run_preprocessed, Preprocessed, PreprocessedPlan};
pub use select::{select_kth, Selection};

#[derive(Clone, Debug, PartialEq)]
pub enum Algorithm {
    Block {
        k: usize,
    },
    Median {
        l: usize,
    },
    Clairvoyant(ClusterProfile),
    Preprocessed(ClusterProfile),
    Oblivious,
    Doubling,
    /// A single full merge sort.
    SortChecker,
    /// Selects 1-based ranks `k` and `k + 1` and compares them.
    Quickselect {
        k: usize,
    },
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Block { .. } => "block",
            Algorithm::Median { .. } => "median",
            Algorithm::Clairvoyant(_) => "clairvoyant",
            Algorithm::Preprocessed(_) => "preprocessed",
            Algorithm::Oblivious => "oblivious",
            Algorithm::Doubling => "doubling",
            Algorithm::SortChecker => "sort",
            Algorithm::Quickselect { .. } => "quickselect",
        }
    }

    /// The algorithm as a resumable task over `n` elements.
    pub fn task(&self, n: usize) -> Result<Task<'static, Finding>> {
        let bad = |msg: &str| Err(Error::Usage(msg.into()));
        match *self {
            Algorithm::Block { k: 0 } => return bad("block size k must be at least 1"),
            Algorithm::Median { l: 0 } => return bad("L must be at least 1"),
            Algorithm::Quickselect { k } if k == 0 || k >= n => {
                return bad("quickselect rank k must satisfy 1 <= k < n")
            }
            Algorithm::Clairvoyant(ref p) | Algorithm::Preprocessed(ref p) if p.n() != n => {
                return Err(Error::ProfileMismatch)
            }
            _ => {}
        }
        let items = move || (0..n).collect::<Vec<usize>>();
        Ok(match self.clone() {
            Algorithm::Block { k } => {
                Task::new(move |p| async move { block_sorting(&p, items(), k).await.outcome.into() })
            }
            Algorithm::Median { l } => {
                Task::new(move |p| async move { median_recursion(&p, items(), l).await.outcome.into() })
            }
            Algorithm::Clairvoyant(profile) => {
                let plan = Plan::for_profile(&profile);
                Task::new(move |p| async move { plan.execute(&p, n).await.into() })
            }
            Algorithm::Preprocessed(profile) => match preprocess(&profile).plan {
                PreprocessedPlan::Deferred(profile) => {
                    let plan = Plan::for_profile(&profile);
                    Task::new(move |p| async move { plan.execute(&p, n).await.into() })
                }
                PreprocessedPlan::Block { k } => {
                    Task::new(move |p| async move { block_sorting(&p, items(), k).await.outcome.into() })
                }
            },
            Algorithm::Oblivious => Task::new(move |p: Probe| async move { oblivious(&p, n).await }),
            Algorithm::Doubling => Task::new(move |p| async move { order_doubling(&p, n).await.into() }),
            Algorithm::SortChecker => Task::new(move |p| async move { sort_checker(&p, n).await.into() }),
            Algorithm::Quickselect { k } => Task::new(move |p| async move { quickselect_pair(&p, n, k).await.into() }),
        })
    }

    /// Runs against an oracle. Clairvoyant runners verify their profile
    /// against the oracle's instance first.
    pub fn run(&self, oracle: &mut CountingOracle<'_>) -> Result<RunReport> {
        if let Algorithm::Clairvoyant(p) | Algorithm::Preprocessed(p) = self {
            if let Some(inst) = oracle.instance() {
                if !inst.verify_graph(p) {
                    return Err(Error::ProfileMismatch);
                }
            }
        }
        let task = self.task(oracle.len())?;
        run_task(oracle, task)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Block { k } => write!(f, "block(k={k})"),
            Algorithm::Median { l } => write!(f, "median(L={l})"),
            Algorithm::Quickselect { k } => write!(f, "quickselect(k={k})"),
            other => f.write_str(other.name()),
        }
    }
}
