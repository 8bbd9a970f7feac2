//! Set intersection: given lists `A` and `B`, find `a` in `A` and `b` in `B`
//! with equal values.
//!
//! Both lists live in one joint [`Instance`]: `A` occupies indices
//! `0..|A|` and `B` the indices after it. `Outcome::Distinct` means disjoint.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::select;
use crate::algorithms::sort::{merge_sort, Sorted};
use crate::instance::{Instance, Value};
use crate::oracle::{run_task, CountingOracle, Outcome, RunReport};
use crate::probe::{Probe, Task};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiInstance {
    a: Vec<Value>,
    b: Vec<Value>,
}

impl SiInstance {
    pub fn new(a: Vec<Value>, b: Vec<Value>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Usage("both lists must be non-empty".into()));
        }
        Ok(SiInstance { a, b })
    }

    pub fn from_ranks(a: &[u64], b: &[u64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&r| Value::new(r)).collect(),
            b.iter().map(|&r| Value::new(r)).collect(),
        )
    }

    pub fn a(&self) -> &[Value] {
        &self.a
    }

    pub fn b(&self) -> &[Value] {
        &self.b
    }

    /// `A` followed by `B`.
    pub fn joint(&self) -> Instance {
        Instance::new(self.a.iter().chain(&self.b).copied().collect()).expect("non-empty")
    }

    pub fn profile(&self) -> BipartiteProfile {
        let mut counts: HashMap<Value, (usize, usize)> = HashMap::new();
        for v in &self.a {
            counts.entry(*v).or_default().0 += 1;
        }
        for v in &self.b {
            counts.entry(*v).or_default().1 += 1;
        }
        BipartiteProfile::new(counts.into_values().collect()).expect("counts are consistent")
    }
}

/// Multiset of `(A-size, B-size)` pairs, one per cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteProfile {
    clusters: Vec<(usize, usize)>,
}

impl BipartiteProfile {
    pub fn new(mut clusters: Vec<(usize, usize)>) -> Result<Self> {
        if clusters.iter().any(|&(a, b)| a == 0 && b == 0) {
            return Err(Error::InvalidProfile("empty cluster".into()));
        }
        clusters.sort_unstable_by(|x, y| y.cmp(x));
        Ok(BipartiteProfile { clusters })
    }

    /// Canonical (descending) order; equality is isomorphism.
    pub fn clusters(&self) -> &[(usize, usize)] {
        &self.clusters
    }

    pub fn a_total(&self) -> usize {
        self.clusters.iter().map(|c| c.0).sum()
    }

    pub fn b_total(&self) -> usize {
        self.clusters.iter().map(|c| c.1).sum()
    }
}

/// `t` with `n = 2^(3t)`, `t >= 1`.
pub fn cube_exponent(n: usize) -> Result<u32> {
    if n.is_power_of_two() && n.trailing_zeros().is_multiple_of(3) && n >= 8 {
        Ok(n.trailing_zeros() / 3)
    } else {
        Err(Error::Usage(format!("n = {n} is not 2^(3t) for t >= 1")))
    }
}

/// Size of the large A-only cluster for `n = 2^(3t)`.
pub fn big_cluster_size(n: usize) -> usize {
    let r = 1usize << (n.trailing_zeros() / 3);
    n - r * (r + 1) / 2
}

/// The lower-bound family: A-only clusters of sizes `1..=n^(1/3)` except
/// that cluster `i` also holds one B element, `n - 1` B singletons, and one
/// large A-only cluster.
pub fn si_family(n: usize, i: usize) -> Result<BipartiteProfile> {
    let t = cube_exponent(n)?;
    let r = 1usize << t;
    if i == 0 || i > r {
        return Err(Error::Usage(format!("i = {i} outside 1..={r}")));
    }
    let mut clusters: Vec<(usize, usize)> = (1..=r).map(|j| (j, usize::from(j == i))).collect();
    clusters.extend(std::iter::repeat_n((0, 1), n - 1));
    clusters.push((big_cluster_size(n), 0));
    BipartiteProfile::new(clusters)
}

/// A seed-determined realization; clusters get distinct ranks in random order.
pub fn realize_si(profile: &BipartiteProfile, seed: u64) -> SiInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks: Vec<u64> = (0..profile.clusters.len() as u64).collect();
    ranks.shuffle(&mut rng);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (&(sa, sb), &r) in profile.clusters.iter().zip(&ranks) {
        a.extend(std::iter::repeat_n(Value::new(r), sa));
        b.extend(std::iter::repeat_n(Value::new(r), sb));
    }
    a.shuffle(&mut rng);
    b.shuffle(&mut rng);
    SiInstance { a, b }
}

/// Jointly sorts the first `min(|A|, k)` and `min(|B|, k)` elements for
/// `k = 2, 4, ...`; only A-B equalities are witnesses.
pub async fn si_doubling(probe: &Probe, na: usize, nb: usize) -> Outcome {
    let cross = move |x: usize, y: usize| (x < na) != (y < na);
    let mut k = 2usize;
    loop {
        let (ta, tb) = (na.min(k), nb.min(k));
        let items: Vec<usize> = (0..ta).chain(na..na + tb).collect();
        if let Sorted::Stopped(x, y) = merge_sort(probe, items, &mut |x, y| cross(x, y)).await {
            return if x < na {
                Outcome::Duplicate(x, y)
            } else {
                Outcome::Duplicate(y, x)
            };
        }
        if ta == na && tb == nb {
            return Outcome::Distinct;
        }
        k = k.saturating_mul(2);
    }
}

/// Knows the instance realizes the family member with parameter `i`: strips
/// the large cluster around the median of A, sorts the rest of A, and scans
/// B with a member of the cluster of A-size `i`.
pub async fn si_clairvoyant(probe: &Probe, na: usize, nb: usize, i: usize) -> Outcome {
    let median = select::kth(probe, (0..na).collect(), (na - 1) / 2).await.index;
    let mut rest = Vec::new();
    for x in 0..na {
        if x != median && probe.compare(x, median).await != std::cmp::Ordering::Equal {
            rest.push(x);
        }
    }
    let sorted = merge_sort(probe, rest, &mut |_, _| false).await;
    let Some(group) = sorted.groups().into_iter().find(|g| g.len() == i) else {
        return Outcome::GaveUp;
    };
    let a = group[0];
    for b in na..na + nb {
        if probe.compare(a, b).await == std::cmp::Ordering::Equal {
            return Outcome::Duplicate(a, b);
        }
    }
    Outcome::GaveUp
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiAlgorithm {
    Doubling,
    Clairvoyant { i: usize },
}

impl SiAlgorithm {
    pub fn name(&self) -> &'static str {
        match self {
            SiAlgorithm::Doubling => "doubling",
            SiAlgorithm::Clairvoyant { .. } => "clairvoyant",
        }
    }

    pub fn task(self, na: usize, nb: usize) -> Task<'static, Outcome> {
        match self {
            SiAlgorithm::Doubling => Task::new(move |p| async move { si_doubling(&p, na, nb).await }),
            SiAlgorithm::Clairvoyant { i } => Task::new(move |p| async move { si_clairvoyant(&p, na, nb, i).await }),
        }
    }

    pub fn run(self, instance: &SiInstance) -> Result<RunReport> {
        let joint = instance.joint();
        let mut oracle = CountingOracle::new(&joint);
        run_task(&mut oracle, self.task(instance.a.len(), instance.b.len()))
    }
}
