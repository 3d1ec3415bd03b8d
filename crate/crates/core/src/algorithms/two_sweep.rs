//! Blocks of `n - 1` horizontal segments plus one vertical segment.

use std::collections::BTreeSet;

use serde_json::json;

use super::flat::{rank_lines, FlatBlock, FlatMember};
use super::greedy::{greedy_flat, Pick};
use super::trace::Trace;
use crate::error::{Error, Result};
use crate::geometry::{format_rational, segments_intersect, Direction, Rational, Segment};
use crate::model::{ensure_valid, is_sdr, Context, Instance, MemberId, SdrAssignment};

struct Vertical {
    id: MemberId,
    x: Rational,
    y_lo: Rational,
    y_hi: Rational,
}

struct Split {
    horizontals: Vec<FlatBlock>,
    verticals: Vec<Vertical>,
    /// Height of each line rank.
    heights: Vec<Rational>,
}

fn split(inst: &Instance) -> Result<Split> {
    if !matches!(inst.context(), Context::Directions { .. }) {
        return Err(Error::Precondition("expected a segment instance".into()));
    }
    let n = inst.n();
    let mut keys = Vec::new();
    let mut horiz: Vec<Vec<(usize, Rational, Rational, MemberId)>> = Vec::new();
    let mut verticals = Vec::new();
    for b in 0..inst.blocks().len() {
        let mut hs = Vec::new();
        let mut vs = Vec::new();
        for i in inst.block_indices(b) {
            let m = &inst.members()[i];
            let s = m.as_segment().expect("validated segment instance");
            let (lo, hi) = s.axis_interval();
            if s.direction() == Direction::HORIZONTAL {
                hs.push((keys.len(), lo, hi, m.id.clone()));
                keys.push(s.line_key());
            } else if s.direction() == Direction::VERTICAL {
                vs.push(Vertical {
                    id: m.id.clone(),
                    x: -s.line_key(),
                    y_lo: lo,
                    y_hi: hi,
                });
            } else {
                return Err(Error::Precondition(format!(
                    "member `{}` is neither horizontal nor vertical",
                    m.id
                )));
            }
        }
        if hs.len() != n - 1 || vs.len() != 1 {
            return Err(Error::Precondition(format!(
                "block {} has {} horizontal and {} vertical segments, need {} and 1",
                inst.blocks()[b].label,
                hs.len(),
                vs.len(),
                n - 1
            )));
        }
        horiz.push(hs);
        verticals.push(vs.pop().expect("one vertical"));
    }
    let ranks = rank_lines(&keys);
    let mut heights = vec![Rational::default(); keys.len()];
    for (k, r) in keys.iter().zip(&ranks) {
        heights[*r] = k.clone();
    }
    heights.truncate(ranks.iter().max().map_or(0, |r| r + 1));
    let horizontals = horiz
        .into_iter()
        .enumerate()
        .map(|(b, hs)| FlatBlock {
            block: b,
            members: hs
                .into_iter()
                .map(|(k, lo, hi, id)| FlatMember { line: ranks[k], lo, hi, id })
                .collect(),
        })
        .collect();
    Ok(Split {
        horizontals,
        verticals,
        heights,
    })
}

fn assignment(picks: impl IntoIterator<Item = (usize, MemberId)>) -> SdrAssignment {
    SdrAssignment::from_pairs(picks)
}

/// SDR of size `n` for exactly `2n - 1` blocks, each made of `n - 1`
/// horizontal segments and one vertical segment.
pub fn two_sweep_hv(inst: &Instance) -> Result<SdrAssignment> {
    two_sweep_hv_traced(inst, &mut Trace::disabled())
}

pub fn two_sweep_hv_traced(inst: &Instance, trace: &mut Trace) -> Result<SdrAssignment> {
    ensure_valid(inst)?;
    let n = inst.n();
    if inst.blocks().len() != 2 * n - 1 {
        return Err(Error::Precondition(format!(
            "need exactly {} blocks, found {}",
            2 * n - 1,
            inst.blocks().len()
        )));
    }
    let sp = split(inst)?;
    let out = combine(inst, &sp, trace)?;
    if out.len() != n || !is_sdr(inst, &out) {
        return Err(Error::internal_with(
            "two-sweep result is not an SDR of size n",
            serde_json::to_value(&out).unwrap_or_default(),
        ));
    }
    Ok(out)
}

fn combine(inst: &Instance, sp: &Split, trace: &mut Trace) -> Result<SdrAssignment> {
    let n = inst.n();
    let first = greedy_flat(&sp.horizontals, None, trace)?;
    trace.record(|| json!({ "sweep": 1, "picks": first.len() }));
    if first.len() >= n {
        return Ok(assignment(first.into_iter().take(n).map(|(b, m)| (b, m.id))));
    }
    if first.len() != n - 1 {
        return Err(Error::internal(format!("first sweep made {} picks, expected {}", first.len(), n - 1)));
    }
    let used: BTreeSet<usize> = first.iter().map(|(b, _)| *b).collect();
    let rest: Vec<usize> = (0..sp.horizontals.len()).filter(|b| !used.contains(b)).collect();
    let mirrored: Vec<FlatBlock> = rest
        .iter()
        .map(|&b| FlatBlock {
            block: b,
            members: sp.horizontals[b].members.iter().map(FlatMember::mirrored).collect(),
        })
        .collect();
    let second: Vec<Pick> = greedy_flat(&mirrored, None, trace)?
        .into_iter()
        .map(|(pos, m)| (rest[pos], m.mirrored()))
        .collect();
    trace.record(|| json!({ "sweep": 2, "picks": second.len() }));
    if second.len() >= n {
        return Ok(assignment(second.into_iter().take(n).map(|(b, m)| (b, m.id))));
    }
    if second.len() != n - 1 {
        return Err(Error::internal(format!("second sweep made {} picks, expected {}", second.len(), n - 1)));
    }
    let taken: BTreeSet<usize> = second.iter().map(|(b, _)| *b).collect();
    let z = *rest.iter().find(|b| !taken.contains(b)).expect("one block left");

    let seg = |id: &MemberId| -> &Segment {
        inst.member(id).and_then(|m| m.as_segment()).expect("member exists")
    };
    let free = inst.block_indices(z).into_iter().map(|i| &inst.members()[i].id).find(|id| {
        second.iter().all(|(_, j)| !segments_intersect(seg(id), seg(&j.id)))
    });
    if let Some(id) = free {
        trace.record(|| json!({ "extend_second": { "block": z, "member": id.as_str() } }));
        let mut out = assignment(second.into_iter().map(|(b, m)| (b, m.id)));
        out.insert(z, id.clone());
        return Ok(out);
    }

    let v = &sp.verticals[z];
    let state = || {
        json!({
            "first": first.iter().map(|(b, m)| json!({ "block": b, "member": m.to_json() })).collect::<Vec<_>>(),
            "second": second.iter().map(|(b, m)| json!({ "block": b, "member": m.to_json() })).collect::<Vec<_>>(),
            "vertical": { "member": v.id.as_str(), "x": format_rational(&v.x) },
        })
    };
    let mut g = Vec::with_capacity(n - 1);
    for (_, i_j) in &first {
        let hits: Vec<usize> = second
            .iter()
            .enumerate()
            .filter(|(_, (_, j))| j.contains(i_j.line, &i_j.hi))
            .map(|(k, _)| k)
            .collect();
        if hits.len() != 1 {
            return Err(Error::internal_with("no unique second-sweep segment holds a right endpoint", state()));
        }
        g.push(hits[0]);
    }
    if g.iter().collect::<BTreeSet<_>>().len() != g.len() {
        return Err(Error::internal_with("the endpoint matching is not injective", state()));
    }

    let mut out = SdrAssignment::new();
    for ((b, i_j), &gj) in first.iter().zip(&g) {
        let (b2, j) = &second[gj];
        let lo = std::cmp::max(&i_j.lo, &j.lo).clone();
        let hi = i_j.hi.clone();
        let y = &sp.heights[i_j.line];
        let in_band = &v.y_lo <= y && y <= &v.y_hi;
        if in_band && lo <= v.x && v.x <= hi {
            return Err(Error::internal_with("the last vertical segment meets a crossing", state()));
        }
        let pick_first = !in_band || hi < v.x;
        trace.record(|| {
            json!({
                "crossing": { "line": i_j.line, "lo": format_rational(&lo), "hi": format_rational(&hi) },
                "in_band": in_band,
                "choice": if pick_first { i_j.id.as_str() } else { j.id.as_str() },
            })
        });
        if pick_first {
            out.insert(*b, i_j.id.clone());
        } else {
            out.insert(*b2, j.id.clone());
        }
    }
    out.insert(z, v.id.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, Segment};
    use crate::model::{Block, Member};

    fn h(id: &str, lo: i64, hi: i64, y: i64) -> Member {
        Member::segment(id, Segment::horizontal(int(lo), int(hi), int(y)).unwrap())
    }

    fn v(id: &str, x: i64, lo: i64, hi: i64) -> Member {
        Member::segment(id, Segment::vertical(int(x), int(lo), int(hi)).unwrap())
    }

    fn hv_context() -> Context {
        Context::Directions {
            directions: vec![Direction::HORIZONTAL, Direction::VERTICAL],
        }
    }

    #[test]
    fn first_sweep_suffices() {
        let members = vec![
            h("h1", 0, 1, 1),
            v("v1", -10, 0, 5),
            h("h2", 0, 1, 2),
            v("v2", -11, 0, 5),
            h("h3", 0, 1, 3),
            v("v3", -12, 0, 5),
        ];
        let blocks = vec![
            Block::new("A1", ["h1".into(), "v1".into()]),
            Block::new("A2", ["h2".into(), "v2".into()]),
            Block::new("A3", ["h3".into(), "v3".into()]),
        ];
        let inst = Instance::new(2, hv_context(), members, blocks);
        let a = two_sweep_hv(&inst).unwrap();
        assert_eq!(a, SdrAssignment::from_pairs([(0, "h1".into()), (1, "h2".into())]));
    }

    #[test]
    fn band_rule_uses_vertical() {
        // All horizontals on y = 0; the third block's vertical is the only way out.
        let members = vec![
            h("a", 0, 1, 0),
            v("av", 20, 1, 2),
            h("b", -5, 2, 0),
            v("bv", 21, 1, 2),
            h("c", -4, 3, 0),
            v("cv", 22, 1, 2),
        ];
        let blocks = vec![
            Block::new("A", ["a".into(), "av".into()]),
            Block::new("B", ["b".into(), "bv".into()]),
            Block::new("C", ["c".into(), "cv".into()]),
        ];
        let inst = Instance::new(2, hv_context(), members, blocks);
        let a = two_sweep_hv(&inst).unwrap();
        assert_eq!(a.len(), 2);
        assert!(is_sdr(&inst, &a));
    }

    #[test]
    fn wrong_block_count() {
        let inst = Instance::new(
            2,
            hv_context(),
            vec![h("a", 0, 1, 0), v("av", 5, 0, 1)],
            vec![Block::new("A", ["a".into(), "av".into()])],
        );
        assert!(matches!(two_sweep_hv(&inst), Err(Error::Precondition(_))));
    }
}
