//! Pushing every cluster down to its own leaf and reading off values.

use crate::instance::Instance;
use crate::Result;

use super::game::AdversaryState;
use super::packing::{check_chains, Assignment};

/// Bits of `c`, most significant first, padded to `width`.
fn code(c: usize, width: usize) -> impl Iterator<Item = bool> {
    (0..width).rev().map(move |i| (c >> i) & 1 == 1)
}

/// Values are the left-to-right ranks of the cluster leaves.
///
/// Cluster `c` goes to the leaf below `d_c 0^Z 1 code(c)`, where `d_c` is its
/// deepest member's path and `Z` exceeds every depth in the state. Distinct
/// clusters get distinct, prefix-free terminal paths, and each terminal path
/// extends every member's position, so all answers of the game still hold.
pub fn realize(state: &AdversaryState, assignment: &Assignment) -> Result<Instance> {
    let deepest = check_chains(state, assignment)?;
    let z = state.max_depth() + 1;
    let width = (usize::BITS - assignment.clusters().saturating_sub(1).leading_zeros()).max(1) as usize;
    let terminals: Vec<Vec<bool>> = deepest
        .iter()
        .enumerate()
        .map(|(c, d)| {
            let mut t = d.bits().to_vec();
            t.extend(std::iter::repeat_n(false, z));
            t.push(true);
            t.extend(code(c, width));
            t
        })
        .collect();
    let mut order: Vec<usize> = (0..terminals.len()).collect();
    order.sort_by(|&a, &b| terminals[a].cmp(&terminals[b]));
    let mut rank = vec![0u64; terminals.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r as u64;
    }
    Instance::from_ranks(assignment.cluster_of().iter().map(|&c| rank[c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::packing::pack_isomorphic;
    use crate::profile::ClusterProfile;

    #[test]
    fn two_root_singletons() {
        let s = AdversaryState::new(2);
        let a = pack_isomorphic(&s, &ClusterProfile::distinct(2).unwrap()).unwrap();
        let inst = realize(&s, &a).unwrap();
        let mut ranks: Vec<u64> = inst.ranks().collect();
        ranks.sort();
        assert_eq!(ranks, vec![0, 1]);
    }
}
