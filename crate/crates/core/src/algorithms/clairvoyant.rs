//! The clairvoyant runner: knows the profile, picks the cheaper of Median
//! Recursion with `L1` and Block Sorting with `k = 2 D(L2)`.

use crate::oracle::{CountingOracle, Outcome, RunReport};
use crate::probe::{Probe, Task};
use crate::profile::ClusterProfile;
use crate::{Error, Result};

use super::block::block_sorting;
use super::median::median_recursion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plan {
    Median { l: usize },
    Block { k: usize },
}

impl Plan {
    pub fn for_profile(profile: &ClusterProfile) -> Plan {
        let (l2, bound2) = profile.select_l2();
        match profile.select_l1() {
            Ok((l1, bound1)) if bound1 < bound2 => Plan::Median { l: l1 },
            _ => {
                let (_, d) = profile.cd(l2).expect("L2 >= 1");
                Plan::Block { k: 2 * d }
            }
        }
    }

    pub async fn execute(self, probe: &Probe, n: usize) -> Outcome {
        let items = (0..n).collect();
        match self {
            Plan::Median { l } => median_recursion(probe, items, l).await.outcome,
            Plan::Block { k } => block_sorting(probe, items, k).await.outcome,
        }
    }
}

/// `min(bound1, bound2)`, the quantity the clairvoyant runner is charged against.
pub fn clairvoyant_bound(profile: &ClusterProfile) -> f64 {
    let bound2 = profile.select_l2().1;
    profile.select_l1().map_or(bound2, |(_, b1)| b1.min(bound2))
}

/// Fails with a profile mismatch when the oracle's instance does not realize `profile`.
pub fn run_clairvoyant(oracle: &mut CountingOracle<'_>, profile: &ClusterProfile) -> Result<RunReport> {
    if let Some(inst) = oracle.instance() {
        if !inst.verify_graph(profile) {
            return Err(Error::ProfileMismatch);
        }
    } else if oracle.len() != profile.n() {
        return Err(Error::ProfileMismatch);
    }
    let plan = Plan::for_profile(profile);
    let n = oracle.len();
    crate::oracle::run_task(oracle, Task::new(move |p| async move { plan.execute(&p, n).await }))
}
