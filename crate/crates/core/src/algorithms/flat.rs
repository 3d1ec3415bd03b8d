//! Blocks of intervals on numbered parallel lines.
//!
//! Single-direction segment families and segments of mutually disjoint curves
//! both reduce to this form; two members meet iff they share a line and their
//! closed intervals overlap.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{curve_pairwise_crossings, format_rational, Direction, Rational};
use crate::model::{Context, Instance, MemberId, Payload};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FlatMember {
    /// Rank of the supporting line.
    pub line: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub id: MemberId,
}

impl FlatMember {
    pub fn meets(&self, other: &FlatMember) -> bool {
        self.line == other.line && self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains(&self, line: usize, x: &Rational) -> bool {
        self.line == line && &self.lo <= x && x <= &self.hi
    }

    /// Reflects the interval through 0 so that left and right swap roles.
    pub fn mirrored(&self) -> FlatMember {
        FlatMember {
            line: self.line,
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
            id: self.id.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "member": self.id.as_str(),
            "line": self.line,
            "lo": format_rational(&self.lo),
            "hi": format_rational(&self.hi),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FlatBlock {
    /// Index of the block in the originating instance.
    pub block: usize,
    pub members: Vec<FlatMember>,
}

/// Ranks line keys in sorted order.
pub(crate) fn rank_lines(keys: &[Rational]) -> Vec<usize> {
    let sorted: Vec<&Rational> = keys.iter().collect::<BTreeSet<_>>().into_iter().collect();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("key present"))
        .collect()
}

/// Flattens every block of `inst` onto numbered lines.
///
/// Accepts segments sharing one direction, or curve segments whose curves are
/// pairwise disjoint.
pub(crate) fn flat_blocks(inst: &Instance) -> Result<Vec<FlatBlock>> {
    let members = inst.members();
    let mut keys = Vec::with_capacity(members.len());
    let mut spans = Vec::with_capacity(members.len());
    match inst.context() {
        Context::Directions { .. } => {
            let mut dir: Option<Direction> = None;
            for m in members {
                let Payload::Segment(s) = &m.payload else {
                    return Err(Error::Precondition(format!("member `{}` is not a segment", m.id)));
                };
                match dir {
                    None => dir = Some(s.direction()),
                    Some(d) if d != s.direction() => {
                        return Err(Error::Precondition(format!(
                            "segments use more than one direction ({d} and {}); expected parallel segments",
                            s.direction()
                        )))
                    }
                    _ => {}
                }
                keys.push(s.line_key());
                spans.push(s.axis_interval());
            }
        }
        Context::Curves { curves, .. } => {
            let mut used = BTreeSet::new();
            for m in members {
                let Payload::CurveSegment(s) = &m.payload else {
                    return Err(Error::Precondition(format!("member `{}` is not a curve segment", m.id)));
                };
                used.insert(s.curve().to_string());
                spans.push((s.t_lo().clone(), s.t_hi().clone()));
            }
            let used: Vec<String> = used.into_iter().collect();
            for (i, a) in used.iter().enumerate() {
                for b in &used[i + 1..] {
                    let disjoint = curve_pairwise_crossings(curves.get(a)?, curves.get(b)?)
                        .map(|v| v.is_empty())
                        .unwrap_or(false);
                    if !disjoint {
                        return Err(Error::Precondition(format!(
                            "curves `{a}` and `{b}` intersect; expected mutually disjoint curves"
                        )));
                    }
                }
            }
            for m in members {
                let c = m.as_curve_segment().expect("checked above").curve();
                let rank = used.iter().position(|u| u == c).expect("collected above");
                keys.push(Rational::from_integer(rank.into()));
            }
        }
        Context::Graph { .. } => {
            return Err(Error::Precondition("abstract graph instances have no geometry to flatten".into()))
        }
    }
    let ranks = rank_lines(&keys);
    let flat: Vec<FlatMember> = members
        .iter()
        .zip(ranks)
        .zip(spans)
        .map(|((m, line), (lo, hi))| FlatMember {
            line,
            lo,
            hi,
            id: m.id.clone(),
        })
        .collect();
    Ok((0..inst.blocks().len())
        .map(|b| FlatBlock {
            block: b,
            members: inst.block_indices(b).into_iter().map(|i| flat[i].clone()).collect(),
        })
        .collect())
}
