//! Cluster-size profiles and every closed-form quantity derived from them.
//!
//! `C(L)` is the total size of clusters smaller than `L` and `D(L)` the number
//! of clusters of size at least `L`. Both are step functions that only change
//! right after a cluster size, so every minimisation below scans the
//! intervals between consecutive distinct sizes instead of all `L`.

use std::fmt;

use crate::algorithms::select;
use crate::error::{Error, Result};
use crate::probe::{run_on_keys, Probe, Task};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterProfile {
    sizes: Vec<usize>,
    n: usize,
}

impl ClusterProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidProfile("profile has no clusters".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidProfile("cluster sizes must be positive".into()));
        }
        let n = sizes.iter().sum();
        Ok(ClusterProfile { sizes, n })
    }

    /// A single clique on `n` vertices.
    pub fn clique(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `n` isolated vertices.
    pub fn distinct(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_size(&self) -> usize {
        *self.sizes.iter().max().expect("non-empty")
    }

    /// Sizes sorted in decreasing order; the canonical form for isomorphism.
    pub fn canonical(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn is_isomorphic(&self, other: &ClusterProfile) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn steps(&self) -> StepFunctions {
        StepFunctions::new(&self.sizes)
    }

    pub fn cd(&self, l: usize) -> Result<(usize, usize)> {
        self.steps().cd(l)
    }

    /// `argmin_{L >= 2, C(L) < n} n + C(L) max{0, log2(C(L)/L)}`, ties toward smaller `L`.
    pub fn select_l1(&self) -> Result<(usize, f64)> {
        let steps = self.steps();
        let n = self.n;
        let mut best: Option<(usize, f64)> = None;
        for iv in steps.intervals() {
            let Some(hi) = iv.hi else { continue };
            let lo = iv.lo.max(2);
            if lo > hi || iv.c >= n {
                continue;
            }
            // the median term is non-increasing in L inside an interval and
            // vanishes once L >= C
            let l = if iv.c <= hi { lo.max(iv.c) } else { hi };
            let value = bound_median(n, iv.c, l);
            if best.is_none_or(|(_, b)| value < b) {
                best = Some((l, value));
            }
        }
        best.ok_or(Error::NoValidL1)
    }

    /// `argmin_{L >= 1, 2C(L) < n} (C(L) + D(L)) max{1, log2 D(L)}`, ties toward smaller `L`.
    pub fn select_l2(&self) -> (usize, f64) {
        let steps = self.steps();
        let mut best: Option<(usize, f64)> = None;
        for iv in steps.intervals() {
            if 2 * iv.c >= self.n {
                continue;
            }
            let value = block_objective(iv.c, iv.d);
            if best.is_none_or(|(_, b)| value < b) {
                best = Some((iv.lo, value));
            }
        }
        best.expect("L = 1 always qualifies")
    }

    /// Linear-time approximation of `L2` by recursive halving of the sizes.
    ///
    /// Level `j` looks at a set `S` of sizes that contains every size `>= min S`,
    /// records `t_j = min S` and evaluates the objective there; the next level
    /// keeps the sizes at least as large as the lower median of `S` (or the
    /// strictly larger ones when the median is the minimum). Only candidates
    /// with `2 C(t_j) < n` are eligible.
    pub fn approx_l2(&self) -> ApproxL2 {
        let sizes = self.sizes.clone();
        let n = self.n;
        let task = Task::new(move |probe| approx_l2_levels(probe, sizes, n));
        let (levels, comparisons) = run_on_keys(&self.sizes, task);
        let (level, objective) = levels
            .iter()
            .filter(|lv| 2 * lv.c < n)
            .fold(None::<(Level, f64)>, |best, lv| {
                let value = block_objective(lv.c, lv.d);
                match best {
                    Some((_, b)) if value >= b => best,
                    _ => Some((*lv, value)),
                }
            })
            .expect("the first level has C = 0");
        ApproxL2 {
            l: level.t,
            c: level.c,
            d: level.d,
            objective,
            levels: levels.len(),
            size_comparisons: comparisons,
        }
    }

    /// Deletes largest clusters until at most `3n/4` vertices remain.
    pub fn derive_reduced(&self) -> Result<Reduced> {
        if self.m() < 2 {
            return Err(Error::TooFewClusters);
        }
        let mut sizes = self.canonical();
        let mut remaining = self.n;
        let mut last_deleted = 0;
        let mut cut = 0;
        while 4 * remaining > 3 * self.n {
            last_deleted = sizes[cut];
            remaining -= last_deleted;
            cut += 1;
        }
        let kept = sizes.split_off(cut);
        Ok(Reduced {
            profile: ClusterProfile::new(kept).expect("a cluster always survives the reduction"),
            n_prime: remaining,
            last_deleted,
        })
    }

    /// `min_{L >= 2, C(L) < n} (1/4) C(L) max{0, log2(C(L)/(2L))}`, or 0 without candidates.
    pub fn lower_bound_median(&self) -> f64 {
        let steps = self.steps();
        steps
            .intervals()
            .filter_map(|iv| {
                let hi = iv.hi?;
                (iv.lo.max(2) <= hi && iv.c < self.n).then(|| median_lower_term(iv.c, hi))
            })
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))))
            .unwrap_or(0.0)
    }

    /// `(1/1000) min{n, bound2}`.
    pub fn lower_bound_block(&self) -> f64 {
        (self.n as f64).min(self.select_l2().1) / 1000.0
    }

    /// `(1/1000) min{bound1, bound2}`; the median term is absent without a valid `L1`.
    pub fn lower_bound_combined(&self) -> f64 {
        let bound2 = self.select_l2().1;
        let bound1 = self.select_l1().map_or(f64::INFINITY, |(_, b)| b);
        bound1.min(bound2) / 1000.0
    }

    /// Both sides of the linear-subset inequality, evaluated exactly.
    pub fn linear_subset_sides(&self) -> Result<(f64, f64)> {
        let reduced = self.derive_reduced()?;
        let g = &reduced.profile;
        let n_prime = reduced.n_prime;
        let inner = g
            .steps()
            .intervals()
            .filter(|iv| iv.c < n_prime)
            .map(|iv| block_objective(iv.c, iv.d))
            .fold(f64::INFINITY, f64::min);
        let lhs = (n_prime as f64 / 8.0).min(inner / 32.0);
        let rhs = (self.n as f64).min(self.select_l2().1) / 1000.0;
        Ok((lhs, rhs))
    }

    pub fn check_linear_subset(&self) -> Result<bool> {
        let (lhs, rhs) = self.linear_subset_sides()?;
        Ok(lhs >= rhs)
    }

    pub fn bounds(&self) -> LowerBounds {
        LowerBounds {
            median: self.lower_bound_median(),
            block: self.lower_bound_block(),
            combined: self.lower_bound_combined(),
        }
    }
}

impl fmt::Display for ClusterProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `n + C max{0, log2(C/L)}`, with a zero term when `C = 0`.
pub fn bound_median(n: usize, c: usize, l: usize) -> f64 {
    n as f64 + median_term(c, l)
}

pub fn median_term(c: usize, l: usize) -> f64 {
    if c == 0 {
        0.0
    } else {
        c as f64 * (c as f64 / l as f64).log2().max(0.0)
    }
}

/// `(C + D) max{1, log2 D}`.
pub fn block_objective(c: usize, d: usize) -> f64 {
    (c + d) as f64 * (d as f64).log2().max(1.0)
}

/// `(1/4) C max{0, log2(C/(2L))}`.
pub fn median_lower_term(c: usize, l: usize) -> f64 {
    if c == 0 {
        0.0
    } else {
        0.25 * c as f64 * (c as f64 / (2 * l) as f64).log2().max(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxL2 {
    pub l: usize,
    pub c: usize,
    pub d: usize,
    pub objective: f64,
    pub levels: usize,
    pub size_comparisons: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub profile: ClusterProfile,
    pub n_prime: usize,
    /// Size of the last (smallest) deleted cluster.
    pub last_deleted: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBounds {
    pub median: f64,
    pub block: f64,
    pub combined: f64,
}

/// One maximal range `[lo, hi]` of `L` on which `C` and `D` are constant.
/// The last interval is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: Option<usize>,
    pub c: usize,
    pub d: usize,
}

#[derive(Clone, Debug)]
pub struct StepFunctions {
    /// Distinct cluster sizes, ascending.
    breakpoints: Vec<usize>,
    /// `mass_below[j]` = total size of clusters with size `<= breakpoints[j-1]`.
    mass_below: Vec<usize>,
    count_below: Vec<usize>,
    m: usize,
}

impl StepFunctions {
    pub fn new(sizes: &[usize]) -> Self {
        let mut sorted = sizes.to_vec();
        sorted.sort_unstable();
        let mut breakpoints = Vec::new();
        let mut mass_below = vec![0];
        let mut count_below = vec![0];
        let mut i = 0;
        while i < sorted.len() {
            let s = sorted[i];
            let mut j = i;
            while j < sorted.len() && sorted[j] == s {
                j += 1;
            }
            breakpoints.push(s);
            mass_below.push(mass_below.last().unwrap() + s * (j - i));
            count_below.push(j);
            i = j;
        }
        StepFunctions {
            breakpoints,
            mass_below,
            count_below,
            m: sorted.len(),
        }
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    pub fn cd(&self, l: usize) -> Result<(usize, usize)> {
        if l < 1 {
            return Err(Error::Usage("L must be at least 1".into()));
        }
        let j = self.breakpoints.partition_point(|&s| s < l);
        Ok((self.mass_below[j], self.m - self.count_below[j]))
    }

    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        (0..=self.breakpoints.len()).map(move |j| Interval {
            lo: if j == 0 { 1 } else { self.breakpoints[j - 1] + 1 },
            hi: self.breakpoints.get(j).copied(),
            c: self.mass_below[j],
            d: self.m - self.count_below[j],
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Level {
    t: usize,
    c: usize,
    d: usize,
}

async fn approx_l2_levels(probe: Probe, sizes: Vec<usize>, n: usize) -> Vec<Level> {
    let mut levels = Vec::new();
    let mut current: Vec<usize> = (0..sizes.len()).collect();
    loop {
        let mut min = current[0];
        for &x in &current[1..] {
            if probe.compare(x, min).await.is_lt() {
                min = x;
            }
        }
        let mass: usize = current.iter().map(|&i| sizes[i]).sum();
        levels.push(Level {
            t: sizes[min],
            c: n - mass,
            d: current.len(),
        });
        if current.len() == 1 {
            break;
        }
        let median = select::kth(&probe, current.clone(), (current.len() - 1) / 2)
            .await
            .index;
        let mut at_least = Vec::new();
        let mut above = Vec::new();
        for &x in &current {
            if x == median {
                at_least.push(x);
                continue;
            }
            match probe.compare(x, median).await {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => at_least.push(x),
                std::cmp::Ordering::Greater => {
                    at_least.push(x);
                    above.push(x);
                }
            }
        }
        current = if at_least.len() < current.len() {
            at_least
        } else {
            above
        };
        if current.is_empty() {
            break;
        }
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(sizes: &[usize]) -> ClusterProfile {
        ClusterProfile::new(sizes.to_vec()).unwrap()
    }

    fn with_singletons(big: &[usize], ones: usize) -> ClusterProfile {
        let mut s = big.to_vec();
        s.extend(std::iter::repeat_n(1, ones));
        p(&s)
    }

    // Independent oracle: evaluate C and D straight from the definition.
    fn cd_brute(sizes: &[usize], l: usize) -> (usize, usize) {
        let c = sizes.iter().filter(|&&s| s < l).sum();
        let d = sizes.iter().filter(|&&s| s >= l).count();
        (c, d)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn invalid_profiles() {
        assert!(ClusterProfile::new(vec![]).is_err());
        assert!(ClusterProfile::new(vec![2, 0]).is_err());
    }

    #[test]
    fn cd_examples() {
        let prof = p(&[3, 1, 1, 1]);
        assert_eq!(prof.cd(1).unwrap(), (0, 4));
        assert_eq!(prof.cd(2).unwrap(), (3, 1));
        assert_eq!(prof.cd(4).unwrap(), (6, 0));
        assert!(prof.cd(0).is_err());
    }

    #[test]
    fn cd_matches_definition() {
        let prof = p(&[5, 2, 2, 7, 1, 1, 3]);
        for l in 1..=prof.n() + 1 {
            assert_eq!(prof.cd(l).unwrap(), cd_brute(prof.sizes(), l), "L = {l}");
        }
    }

    #[test]
    fn select_l1_examples() {
        assert_eq!(p(&[3, 1, 1, 1]).select_l1().unwrap(), (3, 6.0));
        let (l, b) = with_singletons(&[2], 16).select_l1().unwrap();
        assert_eq!(l, 2);
        assert!(close(b, 66.0));
        assert_eq!(p(&[6]).select_l1().unwrap(), (2, 6.0));
        assert!(matches!(p(&[1, 1, 1]).select_l1(), Err(Error::NoValidL1)));
    }

    #[test]
    fn select_l1_prefers_smallest_zero_term() {
        // C(L) = 3 on 2..=10; the term first vanishes at L = 3
        assert_eq!(p(&[10, 1, 1, 1]).select_l1().unwrap(), (3, 13.0));
    }

    #[test]
    fn select_l2_examples() {
        assert_eq!(p(&[3, 1, 1, 1]).select_l2(), (1, 8.0));
        assert_eq!(p(&[8]).select_l2(), (1, 1.0));
        let (l, b) = with_singletons(&[2], 16).select_l2();
        assert_eq!(l, 1);
        assert!(close(b, 17.0 * 17f64.log2()));
    }

    #[test]
    fn approx_l2_examples() {
        let a = p(&[8]).approx_l2();
        assert_eq!((a.l, a.objective), (8, 1.0));
        let a = p(&[3, 1, 1, 1]).approx_l2();
        assert!(a.objective <= 3.0 * 8.0);
    }

    #[test]
    fn approx_l2_all_equal_sizes_terminates() {
        let a = p(&[4; 64]).approx_l2();
        assert_eq!(a.l, 4);
        assert_eq!(a.objective, 64.0 * 6.0);
    }

    #[test]
    fn derive_reduced_examples() {
        let r = p(&[4, 2, 2]).derive_reduced().unwrap();
        assert_eq!((r.profile.canonical(), r.n_prime, r.last_deleted), (vec![2, 2], 4, 4));
        let r = p(&[5, 1, 1, 1]).derive_reduced().unwrap();
        assert_eq!(
            (r.profile.canonical(), r.n_prime, r.last_deleted),
            (vec![1, 1, 1], 3, 5)
        );
        let r = p(&[4, 4, 4, 4]).derive_reduced().unwrap();
        assert_eq!(
            (r.profile.canonical(), r.n_prime, r.last_deleted),
            (vec![4, 4, 4], 12, 4)
        );
        assert!(matches!(p(&[7]).derive_reduced(), Err(Error::TooFewClusters)));
    }

    #[test]
    fn lower_bound_median_examples() {
        assert_eq!(p(&[3, 3]).lower_bound_median(), 0.0);
        assert!(close(with_singletons(&[2], 16).lower_bound_median(), 8.0));
        assert_eq!(p(&[1; 9]).lower_bound_median(), 0.0);
    }

    #[test]
    fn lower_bound_block_examples() {
        assert!(close(p(&[8]).lower_bound_block(), 0.001));
        assert!(close(p(&[3, 1, 1, 1]).lower_bound_block(), 0.006));
        assert!(close(with_singletons(&[2], 16).lower_bound_block(), 0.018));
    }

    #[test]
    fn lower_bound_combined_examples() {
        assert!(close(p(&[8]).lower_bound_combined(), 0.001));
        assert!(close(p(&[3, 1, 1, 1]).lower_bound_combined(), 0.006));
        let m = 12;
        let expected = m as f64 * (m as f64).log2() / 1000.0;
        assert!(close(p(&[1; 12]).lower_bound_combined(), expected));
    }

    #[test]
    fn linear_subset_examples() {
        assert!(p(&[4, 2, 2]).check_linear_subset().unwrap());
        assert!(p(&[2, 2]).check_linear_subset().unwrap());
        assert!(p(&[3]).check_linear_subset().is_err());
    }

    #[test]
    fn step_identities() {
        let prof = p(&[6, 3, 3, 2, 1, 1, 1]);
        let steps = prof.steps();
        assert_eq!(steps.cd(1).unwrap(), (0, prof.m()));
        assert_eq!(steps.cd(prof.max_size() + 1).unwrap().0, prof.n());
        for l in 1..=prof.n() {
            let (c0, _) = steps.cd(l).unwrap();
            let (c1, _) = steps.cd(l + 1).unwrap();
            let exact = prof.sizes().iter().filter(|&&s| s == l).count();
            assert_eq!(c1 - c0, l * exact);
        }
    }
}
