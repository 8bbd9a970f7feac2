//! Positions in the adversary's implicit binary tree.

use std::cmp::Ordering;

/// A root-to-node path (`false` = left child). A pinned path continues with
/// `tail` forever, i.e. it names a leaf.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TreePath {
    bits: Vec<bool>,
    tail: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// The paths split at `depth`; `self` takes `self_bit` there.
    Diverge {
        depth: usize,
        self_bit: bool,
    },
    Equal,
    /// `self` is a proper prefix of the other path.
    Above,
    /// The other path is a proper prefix of `self`.
    Below,
}

impl TreePath {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        TreePath { bits, tail: None }
    }

    /// The leaf reached by following `bits` and then `tail` forever.
    pub fn leaf(bits: Vec<bool>, tail: bool) -> Self {
        TreePath { bits, tail: Some(tail) }
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(Self::from_bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_leaf(&self) -> bool {
        self.tail.is_some()
    }

    /// Length of the explicit part; a leaf's depth is unbounded.
    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied().or(self.tail)
    }

    pub fn push(&mut self, bit: bool) {
        assert!(self.tail.is_none(), "a leaf has no children");
        self.bits.push(bit);
    }

    /// Appends bits to the explicit part.
    pub fn extend(&mut self, bits: impl IntoIterator<Item = bool>) {
        assert!(self.tail.is_none(), "a leaf has no children");
        self.bits.extend(bits);
    }

    pub fn pinned(mut self, tail: bool) -> Self {
        self.tail = Some(tail);
        self
    }

    pub fn relation(&self, other: &TreePath) -> Relation {
        let explicit = self.bits.len().max(other.bits.len());
        for depth in 0..explicit {
            match (self.bit(depth), other.bit(depth)) {
                (Some(a), Some(b)) if a != b => return Relation::Diverge { depth, self_bit: a },
                (Some(_), Some(_)) => {}
                (None, Some(_)) => return Relation::Above,
                (Some(_), None) => return Relation::Below,
                (None, None) => return Relation::Equal,
            }
        }
        match (self.tail, other.tail) {
            (Some(a), Some(b)) if a != b => Relation::Diverge {
                depth: explicit,
                self_bit: a,
            },
            (None, Some(_)) => Relation::Above,
            (Some(_), None) => Relation::Below,
            _ => Relation::Equal,
        }
    }

    pub fn is_prefix_of(&self, other: &TreePath) -> bool {
        matches!(self.relation(other), Relation::Above | Relation::Equal)
    }

    /// Left-to-right order of leaves; prefixes sort before their extensions.
    pub fn leaf_cmp(&self, other: &TreePath) -> Ordering {
        match self.relation(other) {
            Relation::Diverge { self_bit, .. } => {
                if self_bit {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Relation::Equal => Ordering::Equal,
            Relation::Above => Ordering::Less,
            Relation::Below => Ordering::Greater,
        }
    }
}

/// The adversary's answer to "compare x with y", moving at most one step each.
///
/// Answers are read off the divergence after the move, so every answer agrees
/// with the final left-to-right order of leaves below the two positions.
pub fn answer(px: &mut TreePath, py: &mut TreePath) -> Ordering {
    let by_bit = |x_bit: bool| if x_bit { Ordering::Greater } else { Ordering::Less };
    match px.relation(py) {
        Relation::Diverge { self_bit, .. } => by_bit(self_bit),
        Relation::Equal if !px.is_leaf() => {
            px.push(false);
            py.push(true);
            Ordering::Less
        }
        Relation::Equal => Ordering::Equal,
        Relation::Above => {
            let next = py.bit(px.depth()).expect("deeper path");
            px.push(!next);
            by_bit(!next)
        }
        Relation::Below => {
            let next = px.bit(py.depth()).expect("deeper path");
            py.push(!next);
            by_bit(next)
        }
    }
}

impl std::fmt::Display for TreePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        if let Some(t) = self.tail {
            write!(f, "({})*", u8::from(t))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TreePath {
        TreePath::parse(s).unwrap()
    }

    #[test]
    fn both_at_root() {
        let (mut x, mut y) = (p(""), p(""));
        assert_eq!(answer(&mut x, &mut y), Ordering::Less);
        assert_eq!((x, y), (p("0"), p("1")));
    }

    #[test]
    fn prefix_moves_away_from_deeper_path() {
        let (mut x, mut y) = (p(""), p("0"));
        assert_eq!(answer(&mut x, &mut y), Ordering::Greater);
        assert_eq!((x, y), (p("1"), p("0")));

        let (mut x, mut y) = (p("01"), p(""));
        assert_eq!(answer(&mut x, &mut y), Ordering::Less);
        assert_eq!(y, p("1"));
    }

    #[test]
    fn separated_paths_do_not_move() {
        let (mut x, mut y) = (p("00"), p("01"));
        assert_eq!(answer(&mut x, &mut y), Ordering::Less);
        assert_eq!((x, y), (p("00"), p("01")));
    }

    #[test]
    fn leaves_compare_with_tails() {
        let zero = TreePath::leaf(vec![], false);
        let mut b = p("");
        let mut a = zero.clone();
        // a finite path above a leaf steps to the other side
        assert_eq!(answer(&mut b, &mut a), Ordering::Greater);
        assert_eq!(b, p("1"));
        let one = TreePath::leaf(vec![false, true], false);
        assert_eq!(zero.leaf_cmp(&one), Ordering::Less);
        assert_eq!(one.leaf_cmp(&one.clone()), Ordering::Equal);
    }

    #[test]
    fn answers_match_final_order() {
        // any sequence of answers is consistent with extending every path by zeros
        let mut paths = vec![TreePath::root(); 6];
        let pairs = [(0, 1), (1, 2), (0, 2), (3, 0), (4, 3), (5, 4), (2, 5), (1, 3), (4, 0)];
        let mut log = Vec::new();
        for &(x, y) in &pairs {
            let (mut a, mut b) = (paths[x].clone(), paths[y].clone());
            let ans = answer(&mut a, &mut b);
            paths[x] = a;
            paths[y] = b;
            log.push((x, y, ans));
        }
        for (x, y, ans) in log {
            let a = paths[x].clone().pinned(false);
            let b = paths[y].clone().pinned(false);
            assert_eq!(a.leaf_cmp(&b), ans);
        }
    }
}
