//! The set-intersection adversary: A sits at fixed leaves, B starts at the
//! root and only B moves.

use crate::instance::Value;
use crate::oracle::{CountingOracle, Outcome, Transcript};
use crate::setint::{big_cluster_size, cube_exponent, SiAlgorithm, SiInstance};
use crate::{Error, Result};

use super::game::AdversaryState;
use super::path::{Relation, TreePath};

#[derive(Clone, Debug)]
pub struct SiGame {
    pub instance: SiInstance,
    /// The family member the realization belongs to.
    pub j: usize,
    pub rounds: u64,
    pub transcript: Transcript,
    /// Set when the algorithm halted inside the budget.
    pub halted: Option<Outcome>,
    /// The B element merged into cluster `j`.
    pub partner: usize,
}

/// `floor(n l / 2)` with `l = log2(n) / 3`.
pub fn si_budget(n: usize) -> Result<u64> {
    let t = cube_exponent(n)? as u64;
    Ok(n as u64 * t / 2)
}

fn bits(value: usize, width: u32) -> Vec<bool> {
    (0..width).rev().map(|i| (value >> i) & 1 == 1).collect()
}

/// A-layout: cluster `j` of A-size `j` (for `j = 1..=2^t`) followed by the large cluster.
fn a_leaves(n: usize, t: u32) -> Vec<(TreePath, usize)> {
    let r = 1usize << t;
    let mut leaves = Vec::with_capacity(n);
    for j in 1..=r {
        let mut path = bits(j - 1, t);
        path.push(true);
        leaves.extend(std::iter::repeat_n((TreePath::leaf(path, false), j), j));
    }
    // the large cluster sits at the leftmost leaf, below everything else
    leaves.extend(std::iter::repeat_n(
        (TreePath::leaf(vec![], false), 0),
        big_cluster_size(n),
    ));
    leaves
}

/// Plays `algorithm` against the adversary for `rounds` comparisons
/// (default `floor(n l / 2)`), then realizes an instance of the family.
///
/// The partner is a B element of depth at most `l`; one exists because the
/// game adds at most two to the total depth per round. Its subtree contains
/// the depth-`l` node of some A cluster, which fixes `j`.
pub fn si_adversary_game(algorithm: SiAlgorithm, n: usize, rounds: Option<u64>) -> Result<SiGame> {
    let t = cube_exponent(n)?;
    let ell = t as usize;
    let budget = match rounds {
        Some(r) => r,
        None => si_budget(n)?,
    };
    let layout = a_leaves(n, t);
    let mut positions: Vec<TreePath> = layout.iter().map(|(p, _)| p.clone()).collect();
    positions.extend(std::iter::repeat_n(TreePath::root(), n));
    let mut state = AdversaryState::with_positions(positions);
    let (halted, transcript) = {
        let mut oracle = CountingOracle::with_hook(&mut state);
        let finished = oracle.drive_budget(algorithm.task(n, n), budget)?;
        (finished, oracle.into_transcript())
    };
    if transcript
        .records()
        .iter()
        .any(|r| r.answer.is_eq() && ((r.x as usize) < n) != ((r.y as usize) < n))
    {
        return Err(Error::Internal("adversary revealed an A-B equality".into()));
    }
    if let Some(Outcome::Duplicate(a, b)) = halted {
        return Err(Error::Internal(format!("algorithm claimed a witness ({a}, {b})")));
    }

    let partner = (n..2 * n)
        .filter(|&x| state.position(x).depth() <= ell)
        .min_by_key(|&x| (state.position(x).depth(), x))
        .ok_or_else(|| Error::Internal("no shallow B element".into()))?;
    let mut node = state.position(partner).bits().to_vec();
    node.resize(ell, false);
    let j = node.iter().fold(0usize, |acc, &b| 2 * acc + usize::from(b)) + 1;

    // terminal leaves: A clusters keep theirs, the partner joins cluster j,
    // other B elements get fresh leaves below their positions
    let z = state.max_depth() + 1;
    let width = usize::BITS - (n.saturating_sub(1)).leading_zeros();
    let cluster_leaf = |c: usize| -> TreePath {
        layout
            .iter()
            .find(|(_, id)| *id == c)
            .map(|(p, _)| p.clone())
            .expect("cluster exists")
    };
    let mut leaves: Vec<TreePath> = layout.iter().map(|(p, _)| p.clone()).collect();
    for x in n..2 * n {
        if x == partner {
            leaves.push(cluster_leaf(j));
        } else {
            let mut p = state.position(x).clone();
            p.extend(std::iter::repeat_n(false, z));
            p.push(true);
            p.extend(bits(x - n, width.max(1)));
            leaves.push(p.pinned(false));
        }
    }
    debug_assert!(state.position(partner).is_prefix_of(&cluster_leaf(j)));
    let mut order: Vec<usize> = (0..leaves.len()).collect();
    order.sort_by(|&a, &b| leaves[a].leaf_cmp(&leaves[b]));
    let mut values = vec![Value::new(0); leaves.len()];
    let mut rank = 0u64;
    for (k, &x) in order.iter().enumerate() {
        if k > 0 && leaves[order[k - 1]].relation(&leaves[x]) != Relation::Equal {
            rank += 1;
        }
        values[x] = Value::new(rank);
    }
    let b = values.split_off(n);
    Ok(SiGame {
        instance: SiInstance::new(values, b)?,
        j,
        rounds: transcript.len() as u64,
        transcript,
        halted,
        partner: partner - n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setint::si_family;

    #[test]
    fn idle_opponent() {
        let g = si_adversary_game(SiAlgorithm::Doubling, 8, Some(0)).unwrap();
        assert_eq!(g.rounds, 0);
        assert_eq!(g.j, 1);
        assert_eq!(g.instance.profile(), si_family(8, 1).unwrap());
        assert!(g.transcript.replay(&g.instance.joint()));
    }

    #[test]
    fn doubling_opponent_at_64() {
        let g = si_adversary_game(SiAlgorithm::Doubling, 64, None).unwrap();
        assert_eq!(g.rounds, 64);
        assert!(g.halted.is_none());
        assert_eq!(g.instance.profile(), si_family(64, g.j).unwrap());
        assert!(g.transcript.replay(&g.instance.joint()));
        let r = SiAlgorithm::Clairvoyant { i: g.j }.run(&g.instance).unwrap();
        assert!(r.outcome.is_duplicate());
    }
}
