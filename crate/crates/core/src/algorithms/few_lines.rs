//! Potential ascent for blocks of `m` disjoint segments spread over many
//! parallel lines.
//!
//! The state is a partial SDR `R`. Lines are split into `L0` (no member of `R`),
//! `L1` and `L2` (lines holding a member of `R` whose block has an alternative
//! on an `L0` line). Each move strictly increases
//! `phi = |R| * (|L| + 1) + #lines meeting R`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::json;

use super::flat::{flat_blocks, FlatBlock};
use super::greedy::{greedy_flat, Pick};
use super::trace::Trace;
use crate::error::{Error, Result};
use crate::model::{ensure_valid, Instance, SdrAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// Add a member lying on an empty line.
    Add,
    /// Two chosen members share an `L2` line; move one to an empty line.
    Swap,
    /// An unrepresented block reaches an `L2` line; take it and move the
    /// line's occupant to an empty line.
    DoubleSwap,
    /// Too few members on `L1` lines; rebuild them greedily from `m`
    /// unrepresented blocks.
    Rebuild,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FewLinesReport {
    pub assignment: SdrAssignment,
    /// Potential before the first move and after every move.
    pub phi_history: Vec<u64>,
    pub moves: Vec<Move>,
}

#[derive(Debug)]
struct Partition {
    /// Line -> block positions whose chosen member lies on it.
    occupied: BTreeMap<usize, Vec<usize>>,
    l0: BTreeSet<usize>,
    l2: BTreeSet<usize>,
}

struct Ascent<'a> {
    blocks: &'a [FlatBlock],
    lines: BTreeSet<usize>,
    /// Chosen member index per block position.
    chosen: Vec<Option<usize>>,
}

impl<'a> Ascent<'a> {
    fn size(&self) -> usize {
        self.chosen.iter().flatten().count()
    }

    fn line_of(&self, pos: usize, k: usize) -> usize {
        self.blocks[pos].members[k].line
    }

    fn partition(&self) -> Partition {
        let mut occupied: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, c) in self.chosen.iter().enumerate() {
            if let Some(k) = c {
                occupied.entry(self.line_of(pos, *k)).or_default().push(pos);
            }
        }
        let l0: BTreeSet<usize> = self.lines.iter().copied().filter(|l| !occupied.contains_key(l)).collect();
        let l2 = occupied
            .iter()
            .filter(|(_, ps)| ps.iter().any(|&p| self.reach_l0(p, &l0).is_some()))
            .map(|(&l, _)| l)
            .collect();
        Partition { occupied, l0, l2 }
    }

    fn reach_l0(&self, pos: usize, l0: &BTreeSet<usize>) -> Option<usize> {
        self.blocks[pos].members.iter().position(|m| l0.contains(&m.line))
    }

    fn phi(&self, part: &Partition) -> u64 {
        (self.size() * (self.lines.len() + 1) + part.occupied.len()) as u64
    }

    fn state(&self) -> serde_json::Value {
        json!(self
            .chosen
            .iter()
            .enumerate()
            .filter_map(|(pos, c)| c.map(|k| json!({
                "block": self.blocks[pos].block,
                "member": self.blocks[pos].members[k].to_json(),
            })))
            .collect::<Vec<_>>())
    }

    /// Applies one move, or returns `None` when none applies.
    fn step(&mut self, m: usize, part: &Partition, trace: &mut Trace) -> Result<Option<Move>> {
        let unrepresented: Vec<usize> = (0..self.blocks.len()).filter(|&p| self.chosen[p].is_none()).collect();

        for &pos in &unrepresented {
            if let Some(k) = self.reach_l0(pos, &part.l0) {
                self.chosen[pos] = Some(k);
                return Ok(Some(Move::Add));
            }
        }

        for &l in &part.l2 {
            let occupants = &part.occupied[&l];
            if occupants.len() < 2 {
                continue;
            }
            let (pos, k) = occupants
                .iter()
                .find_map(|&p| self.reach_l0(p, &part.l0).map(|k| (p, k)))
                .expect("L2 line has an occupant reaching L0");
            self.chosen[pos] = Some(k);
            return Ok(Some(Move::Swap));
        }

        for &pos in &unrepresented {
            let hit = self.blocks[pos]
                .members
                .iter()
                .position(|mm| part.l2.contains(&mm.line));
            if let Some(k) = hit {
                let line = self.line_of(pos, k);
                let occupants = &part.occupied[&line];
                if occupants.len() != 1 {
                    return Err(Error::internal_with(
                        "an L2 line still holds several chosen members",
                        json!({ "line": line, "state": self.state() }),
                    ));
                }
                let occ = occupants[0];
                let alt = self.reach_l0(occ, &part.l0).expect("L2 occupant reaches L0");
                self.chosen[pos] = Some(k);
                self.chosen[occ] = Some(alt);
                trace.record(|| json!({ "double_swap": { "line": line, "block": self.blocks[pos].block } }));
                return Ok(Some(Move::DoubleSwap));
            }
        }

        let r1: Vec<usize> = part
            .occupied
            .iter()
            .filter(|(l, _)| !part.l2.contains(l))
            .flat_map(|(_, ps)| ps.iter().copied())
            .collect();
        if r1.len() < m && unrepresented.len() >= m {
            let sub: Vec<FlatBlock> = unrepresented[..m].iter().map(|&p| self.blocks[p].clone()).collect();
            for b in &sub {
                if let Some(bad) = b.members.iter().find(|mm| !part.occupied.contains_key(&mm.line) || part.l2.contains(&mm.line)) {
                    return Err(Error::internal_with(
                        "an unrepresented block has a member off the L1 lines",
                        json!({ "block": b.block, "member": bad.to_json(), "state": self.state() }),
                    ));
                }
            }
            let picks = greedy_flat(&sub, Some(m), &mut Trace::disabled())?;
            if picks.len() < m {
                return Err(Error::internal(format!("rebuild found {} of {m} members", picks.len())));
            }
            for p in r1 {
                self.chosen[p] = None;
            }
            for (i, pick) in picks {
                let pos = unrepresented[i];
                let k = self.blocks[pos].members.iter().position(|mm| mm.id == pick.id).expect("picked from block");
                self.chosen[pos] = Some(k);
            }
            return Ok(Some(Move::Rebuild));
        }
        Ok(None)
    }

    fn check_disjoint(&self) -> Result<()> {
        let chosen: Vec<_> = self
            .chosen
            .iter()
            .enumerate()
            .filter_map(|(p, c)| c.map(|k| &self.blocks[p].members[k]))
            .collect();
        for (i, a) in chosen.iter().enumerate() {
            for b in &chosen[i + 1..] {
                if a.meets(b) {
                    return Err(Error::internal_with(
                        "chosen members meet",
                        json!({ "a": a.to_json(), "b": b.to_json() }),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Number of distinct lines meeting the blocks.
pub(crate) fn line_count(blocks: &[FlatBlock]) -> usize {
    blocks.iter().flat_map(|b| b.members.iter().map(|m| m.line)).collect::<BTreeSet<_>>().len()
}

/// Runs the ascent on at least `n + m - 1` blocks of `m` members each, which
/// together meet at least `m(n - m) + 1` lines.
pub(crate) fn few_lines_flat(
    blocks: &[FlatBlock],
    n: usize,
    m: usize,
    trace: &mut Trace,
) -> Result<(Vec<Pick>, Vec<u64>, Vec<Move>)> {
    let lines: BTreeSet<usize> = blocks.iter().flat_map(|b| b.members.iter().map(|mm| mm.line)).collect();
    let mut asc = Ascent {
        blocks,
        lines,
        chosen: vec![None; blocks.len()],
    };
    for (pos, pick) in greedy_flat(blocks, Some(n), &mut Trace::disabled())? {
        let k = blocks[pos].members.iter().position(|mm| mm.id == pick.id).expect("picked from block");
        asc.chosen[pos] = Some(k);
    }
    let mut part = asc.partition();
    let mut phi_history = vec![asc.phi(&part)];
    let mut moves = Vec::new();
    let cap = n * (asc.lines.len() + 1) + asc.lines.len();
    while asc.size() < n {
        let Some(mv) = asc.step(m, &part, trace)? else {
            return Err(Error::internal_with(
                "no exchange applies below the target size",
                json!({ "n": n, "m": m, "state": asc.state() }),
            ));
        };
        asc.check_disjoint()?;
        part = asc.partition();
        let phi = asc.phi(&part);
        let prev = *phi_history.last().expect("nonempty");
        if phi <= prev {
            return Err(Error::internal_with(
                "potential did not increase",
                json!({ "move": mv, "before": prev, "after": phi, "state": asc.state() }),
            ));
        }
        trace.record(|| {
            json!({
                "move": mv,
                "phi": phi,
                "size": asc.size(),
                "l0": part.l0.len(),
                "l2": part.l2.len(),
            })
        });
        phi_history.push(phi);
        moves.push(mv);
        if moves.len() > cap {
            return Err(Error::internal(format!("more than {cap} exchanges")));
        }
    }
    let mut picks: Vec<Pick> = asc
        .chosen
        .iter()
        .enumerate()
        .filter_map(|(p, c)| c.map(|k| (p, blocks[p].members[k].clone())))
        .collect();
    picks.truncate(n);
    Ok((picks, phi_history, moves))
}

/// SDR of size `n` for exactly `n + m - 1` blocks of `m` disjoint parallel
/// segments meeting at least `m(n - m) + 1` lines.
pub fn potential_ascent_few_lines(inst: &Instance, m: usize) -> Result<SdrAssignment> {
    Ok(potential_ascent_few_lines_report(inst, m, &mut Trace::disabled())?.assignment)
}

pub fn potential_ascent_few_lines_traced(inst: &Instance, m: usize, trace: &mut Trace) -> Result<SdrAssignment> {
    Ok(potential_ascent_few_lines_report(inst, m, trace)?.assignment)
}

pub fn potential_ascent_few_lines_report(inst: &Instance, m: usize, trace: &mut Trace) -> Result<FewLinesReport> {
    ensure_valid(inst)?;
    let n = inst.n();
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!("need 1 <= m < n, got m = {m}, n = {n}")));
    }
    if inst.blocks().len() != n + m - 1 {
        return Err(Error::Precondition(format!(
            "need exactly {} blocks, found {}",
            n + m - 1,
            inst.blocks().len()
        )));
    }
    if inst.block_size() != m {
        return Err(Error::Precondition(format!(
            "blocks must hold {m} members, found {}",
            inst.block_size()
        )));
    }
    let blocks = flat_blocks(inst)?;
    let lines = line_count(&blocks);
    let need = m * (n - m) + 1;
    if lines < need {
        return Err(Error::Precondition(format!(
            "members meet {lines} lines, need at least {need}"
        )));
    }
    let (picks, phi_history, moves) = few_lines_flat(&blocks, n, m, trace)?;
    Ok(FewLinesReport {
        assignment: SdrAssignment::from_pairs(picks.into_iter().map(|(p, mm)| (blocks[p].block, mm.id))),
        phi_history,
        moves,
    })
}
