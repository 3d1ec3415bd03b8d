//! Rainbow independent sets at graph level.
//!
//! Independent sets are grown in increasing vertex order; after each added
//! vertex a bipartite matching from the chosen vertices into the blocks
//! containing them certifies that the set is still rainbow.

use super::assignment::SdrAssignment;
use super::graph::IntersectionGraph;
use super::instance::Block;
use crate::error::{Error, Result};

pub fn rainbow_independent_set(g: &IntersectionGraph, blocks: &[Block], n: usize) -> Result<Option<SdrAssignment>> {
    let vcount = g.vertices().len();
    let adj = g.adjacency();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); vcount];
    for (b, block) in blocks.iter().enumerate() {
        let mut idx = Vec::with_capacity(block.member_ids.len());
        for id in &block.member_ids {
            let v = g
                .vertex_index(id)
                .ok_or_else(|| Error::Precondition(format!("block `{}` names unknown vertex `{id}`", block.label)))?;
            idx.push(v);
        }
        for (x, &u) in idx.iter().enumerate() {
            if let Some(&w) = idx[x + 1..].iter().find(|&&w| w == u || adj[u].contains(&w)) {
                return Err(Error::Precondition(format!(
                    "block `{}` is not independent: `{}` and `{}`",
                    block.label,
                    g.vertices()[u],
                    g.vertices()[w]
                )));
            }
        }
        for v in idx {
            if !owners[v].contains(&b) {
                owners[v].push(b);
            }
        }
    }
    if n == 0 {
        return Ok(Some(SdrAssignment::new()));
    }
    let candidates: Vec<usize> = (0..vcount).filter(|&v| !owners[v].is_empty()).collect();
    let mut finder = Finder {
        adj: &adj,
        owners: &owners,
        candidates: &candidates,
        blocks: blocks.len(),
        n,
        chosen: Vec::new(),
    };
    Ok(finder.extend(0).map(|matching| {
        SdrAssignment::from_pairs(
            finder
                .chosen
                .iter()
                .zip(matching)
                .map(|(&v, b)| (b, g.vertices()[v].clone())),
        )
    }))
}

struct Finder<'a> {
    adj: &'a [Vec<usize>],
    owners: &'a [Vec<usize>],
    candidates: &'a [usize],
    blocks: usize,
    n: usize,
    chosen: Vec<usize>,
}

impl Finder<'_> {
    /// Returns the block matched to each chosen vertex once `n` are chosen.
    fn extend(&mut self, from: usize) -> Option<Vec<usize>> {
        if self.chosen.len() == self.n {
            return self.matching();
        }
        let need = self.n - self.chosen.len();
        for pos in from..self.candidates.len() {
            if self.candidates.len() - pos < need {
                break;
            }
            let v = self.candidates[pos];
            if self.chosen.iter().any(|&u| self.adj[v].contains(&u)) {
                continue;
            }
            self.chosen.push(v);
            if self.matching().is_some() {
                if let Some(found) = self.extend(pos + 1) {
                    return Some(found);
                }
            }
            self.chosen.pop();
        }
        None
    }

    /// Perfect matching of chosen vertices into distinct owning blocks.
    fn matching(&self) -> Option<Vec<usize>> {
        let mut block_owner: Vec<Option<usize>> = vec![None; self.blocks];
        for x in 0..self.chosen.len() {
            let mut seen = vec![false; self.blocks];
            if !self.augment(x, &mut block_owner, &mut seen) {
                return None;
            }
        }
        let mut out = vec![0; self.chosen.len()];
        for (b, owner) in block_owner.iter().enumerate() {
            if let Some(x) = owner {
                out[*x] = b;
            }
        }
        Some(out)
    }

    fn augment(&self, x: usize, block_owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &b in &self.owners[self.chosen[x]] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if block_owner[b].is_none_or(|y| self.augment(y, block_owner, seen)) {
                block_owner[b] = Some(x);
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MemberId;

    fn ids(v: &[&str]) -> Vec<MemberId> {
        v.iter().map(|s| MemberId::from(*s)).collect()
    }

    fn cycle(len: usize) -> IntersectionGraph {
        IntersectionGraph::from_edges(
            (0..len).map(|i| MemberId(format!("v{i}"))),
            (0..len).map(|i| (MemberId(format!("v{i}")), MemberId(format!("v{}", (i + 1) % len)))),
        )
    }

    #[test]
    fn edgeless_graph_gives_full_set() {
        let g = IntersectionGraph::from_edges(ids(&["a", "b", "c", "d"]), []);
        let blocks = vec![Block::new("A", ids(&["a", "b"])), Block::new("B", ids(&["c", "d"]))];
        let r = rainbow_independent_set(&g, &blocks, 2).unwrap().unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn six_cycle_two_classes() {
        let g = cycle(6);
        let even = Block::new("E", ids(&["v0", "v2", "v4"]));
        let odd = Block::new("O", ids(&["v1", "v3", "v5"]));
        let blocks = vec![even.clone(), even, odd.clone(), odd];
        assert_eq!(rainbow_independent_set(&g, &blocks, 3).unwrap(), None);
        let two = rainbow_independent_set(&g, &blocks, 2).unwrap().unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn dependent_block_rejected() {
        let g = cycle(4);
        let blocks = vec![Block::new("A", ids(&["v0", "v1"]))];
        assert!(matches!(
            rainbow_independent_set(&g, &blocks, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shared_vertex_used_once() {
        let g = IntersectionGraph::from_edges(ids(&["a", "b"]), []);
        let blocks = vec![Block::new("A", ids(&["a"])), Block::new("B", ids(&["a"]))];
        assert_eq!(rainbow_independent_set(&g, &blocks, 2).unwrap(), None);
        let blocks = vec![Block::new("A", ids(&["a"])), Block::new("B", ids(&["a", "b"]))];
        assert_eq!(rainbow_independent_set(&g, &blocks, 2).unwrap().unwrap().len(), 2);
    }
}
