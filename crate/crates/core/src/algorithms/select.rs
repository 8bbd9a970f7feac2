//! Deterministic linear-comparison selection (median of medians, groups of 5).
//!
//! Ranks are taken in the stable total order "value, then index", so equal
//! values still have a well-defined order. The first EQ answer seen is kept
//! as a witness: callers looking for duplicates get it for free.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::oracle::CountingOracle;
use crate::probe::{BoxFuture, Probe, Task};

/// Per-item comparison allowance of [`kth`]; the worst case is about `22 n`.
pub const C_SEL: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub index: usize,
    /// Some pair the oracle reported equal during the selection.
    pub tie: Option<(usize, usize)>,
}

struct Stable<'p> {
    probe: &'p Probe,
    tie: Cell<Option<(usize, usize)>>,
}

impl Stable<'_> {
    async fn less(&self, a: usize, b: usize) -> bool {
        match self.probe.compare(a, b).await {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                if self.tie.get().is_none() {
                    self.tie.set(Some((a, b)));
                }
                a < b
            }
        }
    }

    async fn insertion_sort(&self, items: &mut [usize]) {
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && self.less(items[j], items[j - 1]).await {
                items.swap(j, j - 1);
                j -= 1;
            }
        }
    }

    /// Median of five distinct-ranked items in six comparisons.
    async fn median5(&self, g: [usize; 5]) -> usize {
        let [mut a, mut b, mut c, mut d, e] = g;
        if self.less(b, a).await {
            std::mem::swap(&mut a, &mut b);
        }
        if self.less(d, c).await {
            std::mem::swap(&mut c, &mut d);
        }
        // a < b and c < d; the smaller head lies below three others
        if self.less(c, a).await {
            std::mem::swap(&mut a, &mut c);
            std::mem::swap(&mut b, &mut d);
        }
        a = e;
        if self.less(b, a).await {
            std::mem::swap(&mut a, &mut b);
        }
        if self.less(c, a).await {
            std::mem::swap(&mut a, &mut c);
            std::mem::swap(&mut b, &mut d);
        }
        // two items below the median are gone; it is min(b, c) since c < d
        if self.less(b, c).await {
            b
        } else {
            c
        }
    }

    fn kth<'a>(&'a self, items: Vec<usize>, rank: usize) -> BoxFuture<'a, usize> {
        Box::pin(async move {
            let mut items = items;
            let mut rank = rank;
            loop {
                if items.len() <= 5 {
                    self.insertion_sort(&mut items).await;
                    return items[rank];
                }
                let mut medians = Vec::with_capacity(items.len().div_ceil(5));
                for chunk in items.chunks(5) {
                    if let Ok(g) = <[usize; 5]>::try_from(chunk) {
                        medians.push(self.median5(g).await);
                    } else {
                        let mut g = chunk.to_vec();
                        self.insertion_sort(&mut g).await;
                        medians.push(g[(g.len() - 1) / 2]);
                    }
                }
                let mid = (medians.len() - 1) / 2;
                let pivot = self.kth(medians, mid).await;
                let mut below = Vec::new();
                let mut above = Vec::new();
                for &x in &items {
                    if x == pivot {
                        continue;
                    }
                    if self.less(x, pivot).await {
                        below.push(x);
                    } else {
                        above.push(x);
                    }
                }
                match rank.cmp(&below.len()) {
                    Ordering::Less => items = below,
                    Ordering::Equal => return pivot,
                    Ordering::Greater => {
                        rank -= below.len() + 1;
                        items = above;
                    }
                }
            }
        })
    }
}

/// Item of 0-based `rank` among `items`. Panics when `rank` is out of range.
pub async fn kth(probe: &Probe, items: Vec<usize>, rank: usize) -> Selection {
    assert!(rank < items.len(), "rank {rank} out of range for {} items", items.len());
    let stable = Stable {
        probe,
        tie: Cell::new(None),
    };
    let index = stable.kth(items, rank).await;
    Selection {
        index,
        tie: stable.tie.get(),
    }
}

/// Index whose value has 1-based rank `k` among `items`.
pub fn select_kth(oracle: &mut CountingOracle<'_>, items: &[usize], k: usize) -> Result<usize> {
    if k == 0 || k > items.len() {
        return Err(Error::Usage(format!("rank {k} out of range for {} items", items.len())));
    }
    let items = items.to_vec();
    let task = Task::new(move |p| async move { kth(&p, items, k - 1).await.index });
    oracle.drive(task)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::probe::run_on_keys;
    use proptest::prelude::*;

    fn select_on(keys: &[u32], rank: usize) -> (Selection, u64) {
        let items: Vec<usize> = (0..keys.len()).collect();
        run_on_keys(keys, Task::new(move |p| async move { kth(&p, items, rank).await }))
    }

    #[test]
    fn single_item_costs_nothing() {
        let (s, c) = select_on(&[9], 0);
        assert_eq!((s.index, c), (0, 0));
    }

    #[test]
    fn middle_of_three() {
        let inst = Instance::from_ranks([3, 1, 2]).unwrap();
        let mut oracle = CountingOracle::new(&inst);
        assert_eq!(select_kth(&mut oracle, &[0, 1, 2], 2).unwrap(), 2);
    }

    #[test]
    fn rank_out_of_range() {
        let inst = Instance::from_ranks([3, 1, 2]).unwrap();
        let mut oracle = CountingOracle::new(&inst);
        assert!(select_kth(&mut oracle, &[0, 1, 2], 0).is_err());
        assert!(select_kth(&mut oracle, &[0, 1, 2], 4).is_err());
    }

    #[test]
    fn median5_exhaustive() {
        let mut perm = [0u32, 1, 2, 3, 4];
        // every permutation of five distinct keys
        fn permute(k: usize, perm: &mut [u32; 5], out: &mut Vec<[u32; 5]>) {
            if k == perm.len() {
                out.push(*perm);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(k + 1, perm, out);
                perm.swap(k, i);
            }
        }
        let mut all = Vec::new();
        permute(0, &mut perm, &mut all);
        assert_eq!(all.len(), 120);
        for keys in all {
            let (m, c) = run_on_keys(
                &keys,
                Task::new(|p| async move {
                    let s = Stable {
                        probe: &p,
                        tie: Cell::new(None),
                    };
                    s.median5([0, 1, 2, 3, 4]).await
                }),
            );
            assert_eq!(keys[m], 2);
            assert_eq!(c, 6);
        }
    }

    #[test]
    fn reports_tie() {
        let (s, _) = select_on(&[4, 4, 1], 1);
        assert!(s.tie.is_some());
        let (s, _) = select_on(&[4, 3, 1], 1);
        assert_eq!(s.tie, None);
    }

    #[test]
    fn linear_comparisons_on_large_inputs() {
        for n in [100usize, 1000, 10_000] {
            let keys: Vec<u32> = (0..n as u32)
                .map(|i| i.wrapping_mul(2_654_435_761) % 1_000_003)
                .collect();
            let (_, c) = select_on(&keys, n / 2);
            assert!(c <= C_SEL * n as u64, "n = {n}: {c}");
        }
    }

    proptest! {
        #[test]
        fn matches_sorted_order(keys in prop::collection::vec(0u32..20, 1..60), pick in any::<prop::sample::Index>()) {
            let rank = pick.index(keys.len());
            let (s, c) = select_on(&keys, rank);
            let mut sorted = keys.clone();
            sorted.sort();
            prop_assert_eq!(keys[s.index], sorted[rank]);
            prop_assert!(c <= C_SEL * keys.len() as u64);
            if let Some((x, y)) = s.tie {
                prop_assert_eq!(keys[x], keys[y]);
            }
        }
    }
}
