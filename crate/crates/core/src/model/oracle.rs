//! Exhaustive maximum-SDR search.
//!
//! Backtracks over (block, member) choices. Each node branches on the
//! undecided block with the fewest still-available members, trying each
//! available member and finally leaving the block unrepresented. A branch is
//! cut when the chosen count plus the number of undecided blocks that still
//! have an available member cannot beat the incumbent. Identical blocks are
//! interchangeable, so within a class of identical blocks the chosen member
//! indices must increase with block index (unrepresented blocks last).

use super::assignment::SdrAssignment;
use super::bitset::BitSet;
use super::instance::Instance;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_NODE_BUDGET`].
pub const NODE_BUDGET_ENV: &str = "SDR_NODE_BUDGET";

pub fn node_budget_from_env() -> u64 {
    std::env::var(NODE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Stop as soon as an SDR of this size is found.
    pub target: Option<usize>,
    pub node_budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            target: None,
            node_budget: node_budget_from_env(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: SdrAssignment,
    pub nodes: u64,
}

pub fn max_sdr_bruteforce(inst: &Instance, target: Option<usize>) -> Result<OracleResult> {
    max_sdr_bruteforce_with(
        inst,
        &OracleOptions {
            target,
            ..OracleOptions::default()
        },
    )
}

pub fn max_sdr_bruteforce_with(inst: &Instance, opts: &OracleOptions) -> Result<OracleResult> {
    let m = inst.members().len();
    let conflicts: Vec<BitSet> = inst
        .meet_matrix()
        .into_iter()
        .map(|row| {
            let mut s = BitSet::new(m);
            for (j, _) in row.iter().enumerate().filter(|(_, &hit)| hit) {
                s.insert(j);
            }
            s
        })
        .collect();
    let blocks: Vec<Vec<usize>> = (0..inst.blocks().len())
        .map(|b| {
            let mut v = inst.block_indices(b);
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let mut search = Search::new(m, conflicts, blocks, opts);
    search.run()?;
    let witness = SdrAssignment::from_pairs(
        search
            .best_pairs
            .iter()
            .map(|&(b, i)| (b, inst.members()[i].id.clone())),
    );
    Ok(OracleResult {
        size: witness.len(),
        witness,
        nodes: search.nodes,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Undecided,
    Member(usize),
    Skip,
}

struct Search<'a> {
    conflicts: Vec<BitSet>,
    blocks: Vec<Vec<usize>>,
    /// Blocks identical to each block (including itself), ascending.
    peers: Vec<Vec<usize>>,
    choice: Vec<Choice>,
    chosen: usize,
    best: usize,
    best_pairs: Vec<(usize, usize)>,
    nodes: u64,
    opts: &'a OracleOptions,
    member_count: usize,
}

impl<'a> Search<'a> {
    fn new(member_count: usize, conflicts: Vec<BitSet>, blocks: Vec<Vec<usize>>, opts: &'a OracleOptions) -> Self {
        let peers = (0..blocks.len())
            .map(|b| (0..blocks.len()).filter(|&c| blocks[c] == blocks[b]).collect())
            .collect();
        let n = blocks.len();
        Search {
            conflicts,
            blocks,
            peers,
            choice: vec![Choice::Undecided; n],
            chosen: 0,
            best: 0,
            best_pairs: Vec::new(),
            nodes: 0,
            opts,
            member_count,
        }
    }

    fn run(&mut self) -> Result<()> {
        let available = BitSet::full(self.member_count);
        self.descend(&available)
    }

    fn done(&self) -> bool {
        self.opts.target.is_some_and(|t| self.best >= t) || self.best == self.blocks.len()
    }

    fn descend(&mut self, available: &BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(Error::BudgetExceeded {
                budget: self.opts.node_budget,
            });
        }

        if self.chosen > self.best {
            self.record();
            if self.done() {
                return Ok(());
            }
        }

        let mut live = 0;
        let mut pick: Option<(usize, usize)> = None;
        for (b, members) in self.blocks.iter().enumerate() {
            if self.choice[b] != Choice::Undecided {
                continue;
            }
            let count = members.iter().filter(|&&i| available.contains(i)).count();
            if count == 0 {
                continue;
            }
            live += 1;
            if pick.is_none_or(|(_, c)| count < c) {
                pick = Some((b, count));
            }
        }

        if self.chosen + live <= self.best {
            return Ok(());
        }
        let Some((block, _)) = pick else {
            return Ok(());
        };

        let candidates: Vec<usize> = self.blocks[block]
            .iter()
            .copied()
            .filter(|&i| available.contains(i))
            .collect();
        for member in candidates {
            if !self.symmetry_allows(block, Choice::Member(member)) {
                continue;
            }
            self.choice[block] = Choice::Member(member);
            self.chosen += 1;
            let next = available.minus(&self.conflicts[member]);
            let r = self.descend(&next);
            self.chosen -= 1;
            self.choice[block] = Choice::Undecided;
            r?;
            if self.done() {
                return Ok(());
            }
        }

        if self.symmetry_allows(block, Choice::Skip) {
            self.choice[block] = Choice::Skip;
            let r = self.descend(available);
            self.choice[block] = Choice::Undecided;
            r?;
        }
        Ok(())
    }

    fn record(&mut self) {
        self.best = self.chosen;
        self.best_pairs = self
            .choice
            .iter()
            .enumerate()
            .filter_map(|(b, c)| match c {
                Choice::Member(i) => Some((b, *i)),
                _ => None,
            })
            .collect();
    }

    /// Chosen values along a class of identical blocks must increase with
    /// block index, `Skip` ranking above every member.
    fn symmetry_allows(&self, block: usize, value: Choice) -> bool {
        let rank = |c: Choice| match c {
            Choice::Member(i) => Some(i),
            Choice::Skip => Some(usize::MAX),
            Choice::Undecided => None,
        };
        let Some(v) = rank(value) else { return true };
        self.peers[block].iter().all(|&p| {
            let Some(pv) = rank(self.choice[p]) else { return true };
            if p < block {
                pv < v || (pv == usize::MAX && v == usize::MAX)
            } else if p > block {
                pv > v || (pv == usize::MAX && v == usize::MAX)
            } else {
                true
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, Direction, Segment};
    use crate::model::{is_sdr, Block, Context, Member};

    fn unit(id: String, y: i64) -> Member {
        Member::segment(id, Segment::horizontal(int(0), int(1), int(y)).unwrap())
    }

    fn dirs() -> Context {
        Context::Directions {
            directions: vec![Direction::HORIZONTAL],
        }
    }

    #[test]
    fn globally_disjoint_members_give_full_sdr() {
        let n = 4;
        let members: Vec<Member> = (0..n * n).map(|i| unit(format!("m{i}"), i as i64)).collect();
        let blocks = (0..n)
            .map(|b| Block::new(format!("B{b}"), (0..n).map(|k| members[b * n + k].id.clone())))
            .collect();
        let inst = Instance::new(n, dirs(), members, blocks);
        let r = max_sdr_bruteforce(&inst, None).unwrap();
        assert_eq!(r.size, n);
        assert!(is_sdr(&inst, &r.witness));
    }

    #[test]
    fn identical_single_member_blocks_give_one() {
        let members = vec![unit("a".into(), 0)];
        let blocks = (0..5).map(|b| Block::new(format!("B{b}"), ["a".into()])).collect();
        let inst = Instance::new(1, dirs(), members, blocks);
        let r = max_sdr_bruteforce(&inst, None).unwrap();
        assert_eq!(r.size, 1);
    }

    #[test]
    fn target_stops_early() {
        let members: Vec<Member> = (0..9).map(|i| unit(format!("m{i}"), i)).collect();
        let blocks = (0..3)
            .map(|b| Block::new(format!("B{b}"), (0..3).map(|k| members[b * 3 + k].id.clone())))
            .collect();
        let inst = Instance::new(3, dirs(), members, blocks);
        let r = max_sdr_bruteforce(&inst, Some(1)).unwrap();
        assert_eq!(r.size, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let members: Vec<Member> = (0..9).map(|i| unit(format!("m{i}"), i)).collect();
        let blocks = (0..3)
            .map(|b| Block::new(format!("B{b}"), (0..3).map(|k| members[b * 3 + k].id.clone())))
            .collect();
        let inst = Instance::new(3, dirs(), members, blocks);
        let opts = OracleOptions {
            target: None,
            node_budget: 2,
        };
        assert_eq!(
            max_sdr_bruteforce_with(&inst, &opts),
            Err(Error::BudgetExceeded { budget: 2 })
        );
    }
}
