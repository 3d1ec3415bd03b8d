//! Maps segments of mutually disjoint curves to horizontal segments.
//!
//! A segment `c_i([a, b])` becomes `[a, b] x {rank(c_i)}`. Since the curves
//! are simple and pairwise disjoint, two curve segments meet iff their
//! images do.

use std::collections::BTreeSet;

use super::curve::{curve_pairwise_crossings, CurveSegment, CurveTable};
use super::rational::int;
use super::segment::Segment;
use crate::error::{Error, Result};

/// Ranks (1-based, by sorted id) of the curves referenced by `members`.
pub fn curve_ranks<'a>(members: impl IntoIterator<Item = &'a CurveSegment>) -> Vec<String> {
    let ids: BTreeSet<&str> = members.into_iter().map(|m| m.curve()).collect();
    ids.into_iter().map(str::to_string).collect()
}

pub fn flatten_disjoint_curves(members: &[CurveSegment], curves: &CurveTable) -> Result<Vec<Segment>> {
    let ranked = curve_ranks(members);
    for (i, a) in ranked.iter().enumerate() {
        let ca = curves.get(a)?;
        for b in &ranked[i + 1..] {
            let cb = curves.get(b)?;
            let hits = match curve_pairwise_crossings(ca, cb) {
                Ok(points) => points.len(),
                Err(Error::DegenerateOverlap { .. }) => usize::MAX,
                Err(e) => return Err(e),
            };
            if hits > 0 {
                return Err(Error::Precondition(format!(
                    "curves `{a}` and `{b}` intersect; flattening needs mutually disjoint curves"
                )));
            }
        }
    }
    members
        .iter()
        .map(|m| {
            let rank = ranked.binary_search_by(|id| id.as_str().cmp(m.curve())).unwrap_or(0) + 1;
            Segment::horizontal(m.t_lo().clone(), m.t_hi().clone(), int(rank as i64))
        })
        .collect()
}
