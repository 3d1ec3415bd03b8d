use serde_json::json;

use super::flat::{flat_blocks, FlatBlock, FlatMember};
use super::trace::Trace;
use crate::error::{Error, Result};
use crate::model::{ensure_valid, Instance, SdrAssignment};

/// One pick of the sweep: position of the block in the input slice and the
/// chosen member.
pub(crate) type Pick = (usize, FlatMember);

/// Repeatedly takes the remaining member with the smallest right endpoint
/// (ties: line, block index, member id), assigns it to its block, drops that
/// block and deletes every remaining member meeting the pick.
///
/// Stops after `limit` picks or when no member remains. Each step removes at
/// most one member from every other block; a violation is reported as an
/// internal error.
pub(crate) fn greedy_flat(blocks: &[FlatBlock], limit: Option<usize>, trace: &mut Trace) -> Result<Vec<Pick>> {
    let mut remaining: Vec<Option<Vec<FlatMember>>> = blocks.iter().map(|b| Some(b.members.clone())).collect();
    let mut picks = Vec::new();
    while limit.is_none_or(|l| picks.len() < l) {
        let mut best: Option<(usize, usize)> = None;
        for (pos, members) in remaining.iter().enumerate() {
            let Some(members) = members else { continue };
            for (k, m) in members.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some((bp, bk)) => {
                        let cur = &remaining[bp].as_ref().expect("live")[bk];
                        (&m.hi, m.line, blocks[pos].block, &m.id) < (&cur.hi, cur.line, blocks[bp].block, &cur.id)
                    }
                };
                if better {
                    best = Some((pos, k));
                }
            }
        }
        let Some((pos, k)) = best else { break };
        let pick = remaining[pos].take().expect("live")[k].clone();
        for (other, members) in remaining.iter_mut().enumerate() {
            let Some(members) = members else { continue };
            let before = members.len();
            members.retain(|m| !m.meets(&pick));
            if before - members.len() > 1 {
                return Err(Error::internal_with(
                    "a greedy pick met two members of one block",
                    json!({ "pick": pick.to_json(), "block": blocks[other].block }),
                ));
            }
        }
        trace.record(|| {
            json!({
                "step": picks.len() + 1,
                "block": blocks[pos].block,
                "pick": pick.to_json(),
            })
        });
        picks.push((pos, pick));
    }
    Ok(picks)
}

/// Complete SDR for segments on mutually disjoint curves (or parallel
/// segments): needs at least `n` blocks of `n` members.
pub fn greedy_disjoint_curves(inst: &Instance) -> Result<SdrAssignment> {
    greedy_disjoint_curves_traced(inst, &mut Trace::disabled())
}

pub fn greedy_disjoint_curves_traced(inst: &Instance, trace: &mut Trace) -> Result<SdrAssignment> {
    ensure_valid(inst)?;
    let n = inst.n();
    if inst.blocks().len() < n {
        return Err(Error::Precondition(format!(
            "need at least {n} blocks, found {}",
            inst.blocks().len()
        )));
    }
    if inst.block_size() < n {
        return Err(Error::Precondition(format!(
            "blocks hold {} members, need {n}",
            inst.block_size()
        )));
    }
    let blocks = flat_blocks(inst)?;
    let picks = greedy_flat(&blocks, Some(n), trace)?;
    if picks.len() < n {
        return Err(Error::internal(format!("greedy stopped after {} of {n} picks", picks.len())));
    }
    Ok(SdrAssignment::from_pairs(
        picks.into_iter().map(|(pos, m)| (blocks[pos].block, m.id)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, CurveSegment, CurveTable, Direction, Point, PolyCurve, Segment};
    use crate::model::{is_sdr, Block, Context, Member, MemberId};

    fn line_instance(n: usize, blocks: &[&[(i64, i64)]]) -> Instance {
        let mut members = Vec::new();
        let mut bl = Vec::new();
        for (b, spans) in blocks.iter().enumerate() {
            let mut ids = Vec::new();
            for (k, &(lo, hi)) in spans.iter().enumerate() {
                let id = format!("b{b}m{k}");
                members.push(Member::segment(
                    id.clone(),
                    Segment::horizontal(int(lo), int(hi), int(0)).unwrap(),
                ));
                ids.push(MemberId(id));
            }
            bl.push(Block::new(format!("A{}", b + 1), ids));
        }
        Instance::new(
            n,
            Context::Directions {
                directions: vec![Direction::HORIZONTAL],
            },
            members,
            bl,
        )
    }

    #[test]
    fn single_block_single_member() {
        let inst = line_instance(1, &[&[(0, 1)]]);
        let a = greedy_disjoint_curves(&inst).unwrap();
        assert_eq!(a, SdrAssignment::from_pairs([(0, "b0m0".into())]));
    }

    #[test]
    fn leftmost_right_endpoint_first() {
        // A1 = {[0,1], [2,3]}, A2 = {[0,1], [4,5]}; the two [0,1] copies are
        // distinct members on the same line.
        let inst = line_instance(2, &[&[(0, 1), (2, 3)], &[(0, 1), (4, 5)]]);
        let mut trace = Trace::enabled();
        let a = greedy_disjoint_curves_traced(&inst, &mut trace).unwrap();
        assert_eq!(a, SdrAssignment::from_pairs([(0, "b0m0".into()), (1, "b1m1".into())]));
        assert!(is_sdr(&inst, &a));
        assert_eq!(trace.steps().len(), 2);
    }

    #[test]
    fn works_on_disjoint_curves() {
        let p = Point::from_ints;
        let curves = CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(1, 1), p(2, 0)], 1).unwrap(),
            PolyCurve::new("b", vec![p(0, 3), p(2, 3)], 1).unwrap(),
        ])
        .unwrap();
        let cs = |id: &str, c: &str, lo, hi| Member::curve_segment(id, CurveSegment::new(c, int(lo), int(hi)).unwrap());
        let inst = Instance::new(
            2,
            Context::Curves { curves, t: 0 },
            vec![cs("x", "a", 0, 1), cs("y", "b", 0, 1), cs("z", "a", 0, 2), cs("w", "b", 0, 1)],
            vec![
                Block::new("A", ["x".into(), "y".into()]),
                Block::new("B", ["z".into(), "w".into()]),
            ],
        );
        let a = greedy_disjoint_curves(&inst).unwrap();
        assert_eq!(a.len(), 2);
        assert!(is_sdr(&inst, &a));
    }

    #[test]
    fn too_few_blocks_rejected() {
        let inst = line_instance(2, &[&[(0, 1), (2, 3)]]);
        assert!(matches!(greedy_disjoint_curves(&inst), Err(Error::Precondition(_))));
    }

    #[test]
    fn mixed_directions_rejected() {
        let inst = Instance::new(
            1,
            Context::Directions {
                directions: vec![Direction::HORIZONTAL, Direction::VERTICAL],
            },
            vec![
                Member::segment("h", Segment::horizontal(int(0), int(1), int(0)).unwrap()),
                Member::segment("v", Segment::vertical(int(5), int(0), int(1)).unwrap()),
            ],
            vec![Block::new("A", ["h".into()]), Block::new("B", ["v".into()])],
        );
        assert!(matches!(greedy_disjoint_curves(&inst), Err(Error::Precondition(_))));
    }
}
