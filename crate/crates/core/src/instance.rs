//! Opaque ordered values and element-distinctness instances.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profile::ClusterProfile;

/// An element of the ordered universe. Equal ranks encode duplicates.
///
/// Algorithms never see a `Value`; they only receive comparison answers
/// through a [`crate::probe::Probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(u64);

impl Value {
    pub fn new(rank: u64) -> Self {
        Value(rank)
    }

    pub fn rank(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    values: Vec<Value>,
}

impl Instance {
    pub fn new(values: Vec<Value>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Usage("instance must hold at least one value".into()));
        }
        Ok(Instance { values })
    }

    pub fn from_ranks(ranks: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(ranks.into_iter().map(Value).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.iter().map(|v| v.0)
    }

    pub(crate) fn value(&self, index: usize) -> Value {
        self.values[index]
    }

    /// Sizes of the equality classes, sorted descending.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut counts: HashMap<Value, usize> = HashMap::new();
        for v in &self.values {
            *counts.entry(*v).or_default() += 1;
        }
        let mut sizes: Vec<usize> = counts.into_values().collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// The profile of the duplicate graph `G(I)`.
    pub fn profile(&self) -> ClusterProfile {
        ClusterProfile::new(self.cluster_sizes()).expect("non-empty instance has a valid profile")
    }

    /// True iff the multiset of equality-class sizes equals the profile's.
    pub fn verify_graph(&self, profile: &ClusterProfile) -> bool {
        let mut expected = profile.sizes().to_vec();
        expected.sort_unstable_by(|a, b| b.cmp(a));
        self.cluster_sizes() == expected
    }
}

/// Builds an instance whose duplicate graph is isomorphic to `profile`.
///
/// Clusters receive the distinct ranks `0..m` in a seed-determined order and
/// the `n` positions are a seed-determined permutation.
pub fn realize_instance(profile: &ClusterProfile, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = profile.m();
    let mut ranks: Vec<u64> = (0..m as u64).collect();
    ranks.shuffle(&mut rng);
    let mut values = Vec::with_capacity(profile.n());
    for (size, rank) in profile.sizes().iter().zip(&ranks) {
        values.extend(std::iter::repeat_n(Value(*rank), *size));
    }
    values.shuffle(&mut rng);
    Instance { values }
}

/// Alias kept for callers that think of the check as a free function.
pub fn verify_graph(instance: &Instance, profile: &ClusterProfile) -> bool {
    instance.verify_graph(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(sizes: &[usize]) -> ClusterProfile {
        ClusterProfile::new(sizes.to_vec()).unwrap()
    }

    #[test]
    fn verify_graph_examples() {
        let inst = Instance::from_ranks([5, 5, 9]).unwrap();
        assert!(inst.verify_graph(&profile(&[2, 1])));
        assert!(inst.verify_graph(&profile(&[1, 2])));
        assert!(!inst.verify_graph(&profile(&[3])));
    }

    #[test]
    fn realize_single_clique() {
        let inst = realize_instance(&profile(&[2]), 0);
        assert_eq!(inst.len(), 2);
        assert_eq!(inst.value(0), inst.value(1));
    }

    #[test]
    fn realize_all_distinct() {
        for seed in 0..10 {
            let inst = realize_instance(&profile(&[1, 1, 1]), seed);
            assert_eq!(inst.cluster_sizes(), vec![1, 1, 1]);
        }
    }

    #[test]
    fn realize_round_trips_through_verify_graph() {
        assert!(realize_instance(&profile(&[3, 1, 1, 1]), 7).verify_graph(&profile(&[3, 1, 1, 1])));
        let p = profile(&[4, 2, 2]);
        for seed in 0..100 {
            assert!(realize_instance(&p, seed).verify_graph(&p));
        }
    }

    #[test]
    fn realize_is_deterministic_per_seed() {
        let p = profile(&[5, 3, 1, 1]);
        assert_eq!(realize_instance(&p, 11), realize_instance(&p, 11));
    }

    #[test]
    fn empty_instance_rejected() {
        assert!(Instance::new(vec![]).is_err());
    }
}
