//! Turning an adversary state into clusters whose members share a
//! root-to-leaf path.

use std::collections::BTreeMap;

use crate::profile::ClusterProfile;
use crate::{Error, Result};

use super::game::AdversaryState;
use super::path::TreePath;

/// Cluster id per element; ids are dense, `0..clusters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    cluster_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl Assignment {
    fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Self {
        let mut cluster_of = vec![usize::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            for &x in members {
                cluster_of[x] = c;
            }
        }
        debug_assert!(cluster_of.iter().all(|&c| c != usize::MAX));
        Assignment {
            cluster_of,
            sizes: clusters.iter().map(Vec::len).collect(),
        }
    }

    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn clusters(&self) -> usize {
        self.sizes.len()
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (x, &c) in self.cluster_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn profile(&self) -> ClusterProfile {
        ClusterProfile::new(self.sizes.clone()).expect("every cluster is non-empty")
    }
}

#[derive(Debug, Default)]
struct Node {
    children: [Option<usize>; 2],
    /// Unused elements at exactly this node, largest index last.
    elems: Vec<usize>,
    /// Largest unused count along a downward chain starting here.
    best: usize,
}

/// Trie of the current positions of unused elements.
#[derive(Debug)]
struct Trie {
    nodes: Vec<Node>,
}

impl Trie {
    fn build(state: &AdversaryState) -> Self {
        let mut trie = Trie {
            nodes: vec![Node::default()],
        };
        for (x, p) in state.positions().iter().enumerate().rev() {
            assert!(!p.is_leaf(), "packing works on unresolved positions");
            let mut v = 0;
            for &b in p.bits() {
                let next = match trie.nodes[v].children[usize::from(b)] {
                    Some(c) => c,
                    None => {
                        trie.nodes.push(Node::default());
                        let c = trie.nodes.len() - 1;
                        trie.nodes[v].children[usize::from(b)] = Some(c);
                        c
                    }
                };
                v = next;
            }
            trie.nodes[v].elems.push(x);
        }
        // children always have larger ids than their parents
        for v in (0..trie.nodes.len()).rev() {
            trie.refresh(v);
        }
        trie
    }

    fn child_best(&self, v: usize, b: usize) -> usize {
        self.nodes[v].children[b].map_or(0, |c| self.nodes[c].best)
    }

    fn refresh(&mut self, v: usize) {
        let below = self.child_best(v, 0).max(self.child_best(v, 1));
        self.nodes[v].best = self.nodes[v].elems.len() + below;
    }

    fn best(&self) -> usize {
        self.nodes[0].best
    }

    /// Nodes of the heaviest chain, root first; ties go left.
    fn best_chain(&self) -> Vec<usize> {
        let mut chain = vec![0];
        let mut v = 0;
        loop {
            let (l, r) = (self.child_best(v, 0), self.child_best(v, 1));
            if l.max(r) == 0 {
                return chain;
            }
            v = self.nodes[v].children[usize::from(r > l)].unwrap();
            chain.push(v);
        }
    }

    /// Takes `size` elements from the heaviest chain, shallowest first.
    fn take(&mut self, size: usize) -> Vec<usize> {
        let chain = self.best_chain();
        let mut out = Vec::with_capacity(size);
        for &v in &chain {
            while out.len() < size {
                match self.nodes[v].elems.pop() {
                    Some(x) => out.push(x),
                    None => break,
                }
            }
        }
        for &v in chain.iter().rev() {
            self.refresh(v);
        }
        out
    }
}

/// Forms the profile's clusters, largest first, each on the chain with the
/// most unused elements.
pub fn pack_isomorphic(state: &AdversaryState, profile: &ClusterProfile) -> Result<Assignment> {
    if profile.n() != state.n() {
        return Err(Error::ProfileMismatch);
    }
    let mut trie = Trie::build(state);
    let mut clusters = Vec::with_capacity(profile.m());
    for size in profile.canonical() {
        if trie.best() < size {
            return Err(Error::Internal(format!("no chain holds {size} unused elements")));
        }
        clusters.push(trie.take(size));
    }
    Ok(Assignment::from_clusters(state.n(), &clusters))
}

/// Forms clusters of size `l` while some chain holds `l` unused elements,
/// then makes every remaining element a singleton.
pub fn pack_greedy(state: &AdversaryState, l: usize) -> Assignment {
    assert!(l >= 1);
    let mut trie = Trie::build(state);
    let mut clusters = Vec::new();
    while trie.best() >= l {
        clusters.push(trie.take(l));
    }
    while trie.best() > 0 {
        clusters.push(trie.take(1));
    }
    Assignment::from_clusters(state.n(), &clusters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub assignment: Assignment,
    /// Every cluster of the reduced profile was formed before the non-root
    /// elements ran out.
    pub reduced_formed: bool,
}

/// Forms the reduced profile's clusters from the shallowest non-root nodes,
/// topping up with root elements, then the remaining clusters the same way.
pub fn reconstruct(state: &AdversaryState, profile: &ClusterProfile) -> Result<Reconstruction> {
    if profile.n() != state.n() {
        return Err(Error::ProfileMismatch);
    }
    let reduced = profile.derive_reduced()?;
    let mut root: Vec<usize> = Vec::new();
    // keyed by (depth, path) so the first entry is a minimal-depth node
    let mut nodes: BTreeMap<(usize, Vec<bool>), Vec<usize>> = BTreeMap::new();
    for (x, p) in state.positions().iter().enumerate().rev() {
        if p.depth() == 0 {
            root.push(x);
        } else {
            nodes.entry((p.depth(), p.bits().to_vec())).or_default().push(x);
        }
    }
    let kept = reduced.profile.canonical();
    let mut deleted = profile.canonical();
    for s in &kept {
        let at = deleted
            .iter()
            .rposition(|d| d == s)
            .expect("reduced profile is a sub-multiset");
        deleted.remove(at);
    }
    let mut clusters = Vec::with_capacity(profile.m());
    let mut reduced_formed = true;
    for (i, size) in kept.into_iter().chain(deleted).enumerate() {
        let mut members = Vec::with_capacity(size);
        if let Some(mut entry) = nodes.first_entry() {
            let here = entry.get_mut();
            while members.len() < size {
                match here.pop() {
                    Some(x) => members.push(x),
                    None => break,
                }
            }
            if here.is_empty() {
                entry.remove();
            }
        } else if i < reduced.profile.m() {
            reduced_formed = false;
        }
        while members.len() < size {
            members.push(
                root.pop()
                    .ok_or_else(|| Error::Internal("root elements exhausted".into()))?,
            );
        }
        clusters.push(members);
    }
    if !nodes.is_empty() {
        return Err(Error::Internal("non-root elements left after all clusters".into()));
    }
    Ok(Reconstruction {
        assignment: Assignment::from_clusters(state.n(), &clusters),
        reduced_formed,
    })
}

/// Depth of the deepest member of each cluster must extend every other member.
pub fn check_chains(state: &AdversaryState, assignment: &Assignment) -> Result<Vec<TreePath>> {
    assignment
        .members()
        .into_iter()
        .enumerate()
        .map(|(c, members)| {
            let deepest = members
                .iter()
                .map(|&x| state.position(x))
                .max_by_key(|p| p.depth())
                .expect("non-empty cluster");
            if members.iter().all(|&x| state.position(x).is_prefix_of(deepest)) {
                Ok(deepest.clone())
            } else {
                Err(Error::NotAChain(c))
            }
        })
        .collect()
}
