//! Profile preprocessing: a plan built from size arithmetic alone.

use crate::oracle::{CountingOracle, RunReport};
use crate::probe::Task;
use crate::profile::ClusterProfile;
use crate::{Error, Result};

use super::block::block_sorting;
use super::clairvoyant::run_clairvoyant;

#[derive(Clone, Debug, PartialEq)]
pub enum PreprocessedPlan {
    /// The block objective is linear in `n`; select exact parameters at run time.
    Deferred(ClusterProfile),
    Block {
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Preprocessed {
    pub plan: PreprocessedPlan,
    /// Size comparisons spent building the plan; no oracle is involved.
    pub size_comparisons: u64,
}

pub fn preprocess(profile: &ClusterProfile) -> Preprocessed {
    let approx = profile.approx_l2();
    let plan = if approx.objective >= profile.n() as f64 {
        PreprocessedPlan::Deferred(profile.clone())
    } else {
        PreprocessedPlan::Block { k: 2 * approx.d }
    };
    Preprocessed {
        plan,
        size_comparisons: approx.size_comparisons,
    }
}

pub fn run_preprocessed(plan: &PreprocessedPlan, oracle: &mut CountingOracle<'_>) -> Result<RunReport> {
    match plan {
        PreprocessedPlan::Deferred(profile) => run_clairvoyant(oracle, profile),
        &PreprocessedPlan::Block { k } => {
            if k == 0 {
                return Err(Error::Usage("block size k must be at least 1".into()));
            }
            let n = oracle.len();
            crate::oracle::run_task(
                oracle,
                Task::new(move |p| async move { block_sorting(&p, (0..n).collect(), k).await.outcome }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::realize_instance;

    #[test]
    fn clique_plan() {
        let p = ClusterProfile::clique(8).unwrap();
        let pre = preprocess(&p);
        assert_eq!(pre.plan, PreprocessedPlan::Block { k: 2 });
        let inst = realize_instance(&p, 0);
        let r = run_preprocessed(&pre.plan, &mut CountingOracle::new(&inst)).unwrap();
        assert_eq!((r.outcome.is_duplicate(), r.comparisons), (true, 1));
    }

    #[test]
    fn all_distinct_defers() {
        let p = ClusterProfile::distinct(32).unwrap();
        assert!(matches!(preprocess(&p).plan, PreprocessedPlan::Deferred(_)));
    }
}
