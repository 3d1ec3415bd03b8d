#![allow(dead_code)]

use std::collections::BTreeSet;

use sdr_core::model::Instance;

pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Number of ways to give each block one of its members or nothing.
pub fn candidate_count(inst: &Instance) -> u128 {
    (0..inst.blocks().len())
        .map(|b| inst.block_indices(b).len() as u128 + 1)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX)
}

/// Largest SDR by walking every candidate assignment, without pruning.
pub fn enumerate_max(inst: &Instance) -> usize {
    let m = inst.members().len();
    let meets: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| inst.members_meet(i, j)).collect()).collect();
    let blocks: Vec<Vec<usize>> = (0..inst.blocks().len()).map(|b| inst.block_indices(b)).collect();
    fn walk(b: usize, blocks: &[Vec<usize>], meets: &[Vec<bool>], chosen: &mut Vec<usize>, best: &mut usize) {
        if b == blocks.len() {
            *best = (*best).max(chosen.len());
            return;
        }
        walk(b + 1, blocks, meets, chosen, best);
        for &i in &blocks[b] {
            if chosen.iter().all(|&j| !meets[i][j]) {
                chosen.push(i);
                walk(b + 1, blocks, meets, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    walk(0, &blocks, &meets, &mut Vec::new(), &mut best);
    best
}

/// Edges `{i, j}` of the `p`-th power of the cycle on `len` vertices.
pub fn cycle_power(len: usize, p: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..len {
        for d in 1..=p {
            let j = (i + d) % len;
            if i != j {
                out.insert((i.min(j), i.max(j)));
            }
        }
    }
    out
}

/// All independent sets of exactly `size` vertices, by subset enumeration.
pub fn independent_sets(len: usize, edges: &BTreeSet<(usize, usize)>, size: usize) -> Vec<BTreeSet<usize>> {
    assert!(len <= 24);
    (0u32..1 << len)
        .filter(|s| s.count_ones() as usize == size)
        .filter(|s| edges.iter().all(|&(i, j)| s & (1 << i) == 0 || s & (1 << j) == 0))
        .map(|s| (0..len).filter(|i| s & (1 << i) != 0).collect())
        .collect()
}
