use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::instance::{Instance, MemberId};

/// Block index -> chosen member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdrAssignment {
    pairs: BTreeMap<usize, MemberId>,
}

impl SdrAssignment {
    pub fn new() -> Self {
        SdrAssignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, MemberId)>) -> Self {
        SdrAssignment {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, block: usize, member: MemberId) -> Option<MemberId> {
        self.pairs.insert(block, member)
    }

    pub fn remove(&mut self, block: usize) -> Option<MemberId> {
        self.pairs.remove(&block)
    }

    pub fn get(&self, block: usize) -> Option<&MemberId> {
        self.pairs.get(&block)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &MemberId)> + '_ {
        self.pairs.iter().map(|(&b, m)| (b, m))
    }

    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.keys().copied()
    }

    pub fn members(&self) -> impl Iterator<Item = &MemberId> + '_ {
        self.pairs.values()
    }

    /// Renumbers blocks through `map` (`new = map[old]`).
    pub fn remap_blocks(&self, map: &[usize]) -> SdrAssignment {
        SdrAssignment::from_pairs(self.pairs.iter().map(|(&b, m)| (map[b], m.clone())))
    }

    /// Keeps the `n` entries with the smallest block indices.
    pub fn truncated(&self, n: usize) -> SdrAssignment {
        SdrAssignment::from_pairs(self.pairs.iter().take(n).map(|(&b, m)| (b, m.clone())))
    }
}

/// Block indices valid, each member in its block, members distinct and
/// pairwise disjoint.
pub fn is_sdr(inst: &Instance, a: &SdrAssignment) -> bool {
    let mut used = HashSet::new();
    let mut chosen = Vec::with_capacity(a.len());
    for (b, id) in a.iter() {
        let Some(block) = inst.blocks().get(b) else {
            return false;
        };
        if !block.contains(id) || !used.insert(id) {
            return false;
        }
        let Some(i) = inst.member_index(id) else {
            return false;
        };
        chosen.push(i);
    }
    chosen
        .iter()
        .enumerate()
        .all(|(x, &i)| chosen[x + 1..].iter().all(|&j| !inst.members_meet(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, Direction, Segment};
    use crate::model::{Block, Context, Member};

    fn inst() -> Instance {
        let h = |id: &str, x0, x1| Member::segment(id, Segment::horizontal(int(x0), int(x1), int(0)).unwrap());
        Instance::new(
            2,
            Context::Directions {
                directions: vec![Direction::HORIZONTAL],
            },
            vec![h("a", 0, 1), h("b", 2, 3), h("c", 1, 2)],
            vec![
                Block::new("A", ["a".into(), "b".into()]),
                Block::new("B", ["a".into(), "b".into()]),
            ],
        )
    }

    #[test]
    fn empty_is_vacuous() {
        assert!(is_sdr(&inst(), &SdrAssignment::new()));
    }

    #[test]
    fn reuse_rejected() {
        let a = SdrAssignment::from_pairs([(0, "a".into()), (1, "a".into())]);
        assert!(!is_sdr(&inst(), &a));
    }

    #[test]
    fn disjoint_pair_accepted() {
        let a = SdrAssignment::from_pairs([(0, "a".into()), (1, "b".into())]);
        assert!(is_sdr(&inst(), &a));
    }

    #[test]
    fn member_outside_block_or_bad_index_rejected() {
        assert!(!is_sdr(&inst(), &SdrAssignment::from_pairs([(0, "c".into())])));
        assert!(!is_sdr(&inst(), &SdrAssignment::from_pairs([(7, "a".into())])));
    }
}
