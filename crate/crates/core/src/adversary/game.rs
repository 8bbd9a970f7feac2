//! The binary-tree adversary as a comparison hook, and the game driver.

use std::cmp::Ordering;

use crate::algorithms::Algorithm;
use crate::oracle::{ComparisonHook, CountingOracle, Outcome, Transcript};
use crate::{Error, Result};

use super::path::{answer, TreePath};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryState {
    positions: Vec<TreePath>,
    rounds: u64,
}

impl AdversaryState {
    /// All `n` elements at the root.
    pub fn new(n: usize) -> Self {
        Self::with_positions(vec![TreePath::root(); n])
    }

    pub fn with_positions(positions: Vec<TreePath>) -> Self {
        AdversaryState { positions, rounds: 0 }
    }

    pub fn positions(&self) -> &[TreePath] {
        &self.positions
    }

    pub fn position(&self, x: usize) -> &TreePath {
        &self.positions[x]
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Sum of explicit depths over all elements.
    pub fn total_depth(&self) -> usize {
        self.positions.iter().map(TreePath::depth).sum()
    }

    pub fn max_depth(&self) -> usize {
        self.positions.iter().map(TreePath::depth).max().unwrap_or(0)
    }
}

impl ComparisonHook for AdversaryState {
    fn len(&self) -> usize {
        self.positions.len()
    }

    fn answer(&mut self, x: usize, y: usize) -> Ordering {
        self.rounds += 1;
        let (lo, hi) = (x.min(y), x.max(y));
        let (left, right) = self.positions.split_at_mut(hi);
        let (a, b) = (&mut left[lo], &mut right[0]);
        if x < y {
            answer(a, b)
        } else {
            answer(b, a)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Game {
    pub state: AdversaryState,
    pub transcript: Transcript,
    /// Set when the algorithm halted inside the budget. Any halt is a failure
    /// of the algorithm: the realization will contain a duplicate.
    pub halted: Option<Outcome>,
}

/// Plays `algorithm` on `n` elements against the adversary for at most `rounds` comparisons.
pub fn play_game(algorithm: &Algorithm, n: usize, rounds: u64) -> Result<Game> {
    let task = algorithm.task(n)?;
    let mut state = AdversaryState::new(n);
    let (finished, transcript) = {
        let mut oracle = CountingOracle::with_hook(&mut state);
        let finished = oracle.drive_budget(task, rounds)?;
        (finished, oracle.into_transcript())
    };
    let halted = finished.map(|f| f.outcome);
    if let Some(Outcome::Duplicate(x, y)) = halted {
        return Err(Error::Internal(format!(
            "algorithm reported a duplicate ({x}, {y}) the adversary never revealed"
        )));
    }
    Ok(Game {
        state,
        transcript,
        halted,
    })
}

/// The separation game's length, `floor(n log2 log2 n / 8)`.
pub fn separation_budget(n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    ((n as f64) * (n as f64).log2().log2() / 8.0).floor() as u64
}

/// Smallest `i` in `floor(loglog n / 2) ..= floor(loglog n)` such that fewer
/// than `n / 2^i` elements have depth at least `2^i`.
pub fn few_deep_index(state: &AdversaryState, n: usize) -> Result<u32> {
    let ll = if n < 4 { 0.0 } else { (n as f64).log2().log2() };
    let (lo, hi) = ((ll / 2.0).floor() as u32, ll.floor() as u32);
    (lo..=hi)
        .find(|&i| {
            let deep = state.positions.iter().filter(|p| p.depth() >= 1usize << i).count();
            (deep << i) < n
        })
        .ok_or_else(|| Error::Internal("no index with few deep elements".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rounds_leaves_everything_at_root() {
        let g = play_game(&Algorithm::SortChecker, 16, 0).unwrap();
        assert_eq!(g.state.total_depth(), 0);
        assert_eq!(few_deep_index(&g.state, 16).unwrap(), 1);
    }

    #[test]
    fn merge_sort_game_at_256() {
        let budget = separation_budget(256);
        assert_eq!(budget, 96);
        let g = play_game(&Algorithm::SortChecker, 256, budget).unwrap();
        assert!(!g.transcript.contains_equal());
        assert_eq!(g.state.rounds(), budget);
        assert!(g.state.total_depth() <= 2 * budget as usize);
        let i = few_deep_index(&g.state, 256).unwrap();
        assert!((1..=3).contains(&i));
    }

    #[test]
    fn depth_grows_by_at_most_two_per_round() {
        let mut state = AdversaryState::new(10);
        let pairs = [(0, 1), (0, 1), (2, 0), (3, 4), (4, 2), (5, 6), (6, 0), (9, 8)];
        for (x, y) in pairs {
            let before: Vec<usize> = state.positions().iter().map(|p| p.depth()).collect();
            let ans = state.answer(x, y);
            assert_ne!(ans, Ordering::Equal);
            let after: Vec<usize> = state.positions().iter().map(|p| p.depth()).collect();
            let grown: usize = after.iter().zip(&before).map(|(a, b)| a - b).sum();
            assert!(grown <= 2);
            assert!(after.iter().zip(&before).all(|(a, b)| a - b <= 1));
        }
    }
}
