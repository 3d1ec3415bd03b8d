//! Reduction of crossing curves to disjoint pieces.
//!
//! Every block gets a vector naming, for each crossing point, the curve whose
//! segment covers it (or a default curve). Blocks sharing a vector use each
//! crossing from one curve only, so cutting every curve at the crossings it
//! does not own leaves disjoint pieces that still carry all their members.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde_json::json;

use super::trace::Trace;
use crate::error::{Error, Result};
use crate::geometry::{curve_pairwise_crossings, format_rational, Direction, Point, Rational, Segment};
use crate::model::{ensure_valid, Context, Instance, Member};

#[derive(Clone, Debug)]
pub struct Reduction {
    /// Indices of the selected blocks in the input instance, ascending.
    pub blocks: Vec<usize>,
    /// The selected blocks as horizontal segments; block `i` of `flat` is
    /// input block `blocks[i]` and member ids are unchanged.
    pub flat: Instance,
    /// All pairwise crossings of the referenced curves, sorted.
    pub crossings: Vec<Point>,
    /// The shared vector: for each crossing, the curve owning it.
    pub owners: Vec<String>,
}

struct Through {
    curve: String,
    group: usize,
    t: Rational,
}

/// Picks at least `n` blocks sharing one crossing vector and flattens them onto
/// horizontal lines.
///
/// Requires that no crossing is a curve endpoint and that there are at least
/// `n` times the product, over all crossings, of the number of curves through
/// it.
pub fn pigeonhole_curve_reduction(inst: &Instance) -> Result<Reduction> {
    pigeonhole_curve_reduction_traced(inst, &mut Trace::disabled())
}

pub fn pigeonhole_curve_reduction_traced(inst: &Instance, trace: &mut Trace) -> Result<Reduction> {
    reduce(inst, true, trace)
}

/// `interior_only = false` accepts crossings at curve endpoints; cutting there
/// is harmless.
pub(crate) fn reduce(inst: &Instance, interior_only: bool, trace: &mut Trace) -> Result<Reduction> {
    ensure_valid(inst)?;
    let Context::Curves { curves, .. } = inst.context() else {
        return Err(Error::Precondition("expected a curve instance".into()));
    };
    let n = inst.n();
    let used: Vec<String> = inst
        .members()
        .iter()
        .filter_map(|m| m.as_curve_segment().map(|s| s.curve().to_string()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut crossings = BTreeSet::new();
    for (i, a) in used.iter().enumerate() {
        for b in &used[i + 1..] {
            crossings.extend(curve_pairwise_crossings(curves.get(a)?, curves.get(b)?)?);
        }
    }
    let crossings: Vec<Point> = crossings.into_iter().collect();

    let mut through: Vec<Vec<Through>> = Vec::with_capacity(crossings.len());
    for v in &crossings {
        let mut here = Vec::new();
        for c in &used {
            let curve = curves.get(c)?;
            if let Some(t) = curve.param_of(v) {
                if interior_only && curve.is_endpoint_param(&t) {
                    return Err(Error::Precondition(format!(
                        "crossing point {v} is an endpoint of curve `{c}`"
                    )));
                }
                here.push(Through {
                    curve: c.clone(),
                    group: curve.group(),
                    t,
                });
            }
        }
        here.sort_by(|a, b| (a.group, &a.curve).cmp(&(b.group, &b.curve)));
        through.push(here);
    }

    let product: BigUint = through.iter().map(|h| BigUint::from(h.len())).product();
    let required = product * BigUint::from(n);
    if BigUint::from(inst.blocks().len()) < required {
        return Err(Error::Precondition(format!(
            "need at least {required} blocks for {} crossings, found {}",
            crossings.len(),
            inst.blocks().len()
        )));
    }

    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for b in 0..inst.blocks().len() {
        let segs: Vec<_> = inst
            .block_indices(b)
            .into_iter()
            .filter_map(|i| inst.members()[i].as_curve_segment())
            .collect();
        let vector: Vec<usize> = through
            .iter()
            .map(|here| {
                here.iter()
                    .position(|th| segs.iter().any(|s| s.curve() == th.curve && s.contains_param(&th.t)))
                    .unwrap_or(0)
            })
            .collect();
        buckets.entry(vector).or_default().push(b);
    }
    let (vector, selected) = buckets
        .into_iter()
        .max_by(|(_, a), (_, b)| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .unwrap_or_default();
    if selected.len() < n {
        return Err(Error::internal(format!(
            "largest vector class has {} blocks, expected at least {n}",
            selected.len()
        )));
    }
    let owners: Vec<String> = vector
        .iter()
        .zip(&through)
        .map(|(&k, here)| here[k].curve.clone())
        .collect();
    trace.record(|| {
        json!({
            "crossings": crossings.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "owners": owners,
            "selected": selected,
        })
    });

    // Cut parameters per curve: crossings on it that it does not own.
    let mut cuts: BTreeMap<&str, Vec<Rational>> = used.iter().map(|c| (c.as_str(), Vec::new())).collect();
    for (here, owner) in through.iter().zip(&owners) {
        for th in here {
            if &th.curve != owner {
                cuts.get_mut(th.curve.as_str()).expect("used curve").push(th.t.clone());
            }
        }
    }
    let mut offset = BTreeMap::new();
    let mut next = 0usize;
    for (c, ts) in cuts.iter_mut() {
        ts.sort();
        ts.dedup();
        offset.insert(*c, next);
        next += ts.len() + 1;
    }

    let keep: BTreeSet<_> = selected
        .iter()
        .flat_map(|&b| inst.blocks()[b].member_ids.iter())
        .collect();
    let mut members = Vec::new();
    for m in inst.members().iter().filter(|m| keep.contains(&m.id)) {
        let s = m.as_curve_segment().expect("validated curve instance");
        let ts = &cuts[s.curve()];
        if let Some(t) = ts.iter().find(|t| s.contains_param(t)) {
            return Err(Error::internal_with(
                "a selected member covers a crossing owned by another curve",
                json!({ "member": m.id.as_str(), "t": format_rational(t) }),
            ));
        }
        let piece = ts.iter().filter(|t| *t < s.t_lo()).count();
        let y = Rational::from_integer((offset[s.curve()] + piece).into());
        members.push(Member::segment(
            m.id.clone(),
            Segment::horizontal(s.t_lo().clone(), s.t_hi().clone(), y)?,
        ));
    }
    let flat = Instance::new(
        n,
        Context::Directions {
            directions: vec![Direction::HORIZONTAL],
        },
        members,
        selected.iter().map(|&b| inst.blocks()[b].clone()).collect(),
    )
    .with_block_size(inst.block_size());
    Ok(Reduction {
        blocks: selected,
        flat,
        crossings,
        owners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::greedy_disjoint_curves;
    use crate::geometry::{int, CurveSegment, CurveTable, PolyCurve};
    use crate::model::{is_sdr, max_sdr_bruteforce, Block};

    fn x_curves() -> CurveTable {
        let p = Point::from_ints;
        CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(4, 4)], 1).unwrap(),
            PolyCurve::new("b", vec![p(0, 4), p(4, 0)], 2).unwrap(),
        ])
        .unwrap()
    }

    fn cs(id: &str, c: &str, lo: Rational, hi: Rational) -> Member {
        Member::curve_segment(id, CurveSegment::new(c, lo, hi).unwrap())
    }

    #[test]
    fn x_crossing_reduces_and_solves() {
        // The curves cross at t = 1/2 on both.
        let q = |a: i64, b: i64| crate::geometry::ratio(a, b);
        let mut members = Vec::new();
        let mut blocks = Vec::new();
        for j in 0..4 {
            let (c1, c2) = if j % 2 == 0 { ("a", "b") } else { ("b", "a") };
            let m1 = format!("s{j}0");
            let m2 = format!("s{j}1");
            members.push(cs(&m1, c1, q(1, 4), q(3, 4)));
            members.push(cs(&m2, c2, q(0, 1), q(1, 4)));
            blocks.push(Block::new(format!("A{j}"), [m1.as_str().into(), m2.as_str().into()]));
        }
        let inst = Instance::new(2, Context::Curves { curves: x_curves(), t: 1 }, members, blocks);
        let red = pigeonhole_curve_reduction(&inst).unwrap();
        assert_eq!(red.crossings.len(), 1);
        assert!(red.blocks.len() >= 2);
        let a = greedy_disjoint_curves(&red.flat).unwrap();
        let back = a.remap_blocks(&red.blocks);
        assert!(is_sdr(&inst, &back));
        assert_eq!(max_sdr_bruteforce(&inst, None).unwrap().size, 2);
    }

    #[test]
    fn no_crossings_is_identity() {
        let p = Point::from_ints;
        let curves = CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(1, 0)], 1).unwrap(),
            PolyCurve::new("b", vec![p(0, 1), p(1, 1)], 2).unwrap(),
        ])
        .unwrap();
        let inst = Instance::new(
            1,
            Context::Curves { curves, t: 0 },
            vec![cs("x", "a", int(0), int(1)), cs("y", "b", int(0), int(1))],
            vec![Block::new("A", ["x".into()]), Block::new("B", ["y".into()])],
        );
        let red = pigeonhole_curve_reduction(&inst).unwrap();
        assert!(red.crossings.is_empty());
        assert_eq!(red.blocks, vec![0, 1]);
    }

    #[test]
    fn endpoint_crossing_rejected() {
        let p = Point::from_ints;
        let curves = CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(2, 0)], 1).unwrap(),
            PolyCurve::new("b", vec![p(1, 0), p(1, 2)], 2).unwrap(),
        ])
        .unwrap();
        let inst = Instance::new(
            1,
            Context::Curves { curves, t: 1 },
            vec![cs("x", "a", int(0), int(1)), cs("y", "b", int(0), int(1))],
            vec![Block::new("A", ["x".into()]), Block::new("B", ["y".into()])],
        );
        let err = pigeonhole_curve_reduction(&inst).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("endpoint")));
    }

    #[test]
    fn insufficient_blocks_reports_requirement() {
        let inst = Instance::new(
            2,
            Context::Curves { curves: x_curves(), t: 1 },
            vec![cs("x", "a", int(0), int(0)), cs("y", "b", int(1), int(1))],
            vec![Block::new("A", ["x".into(), "y".into()])],
        );
        let err = pigeonhole_curve_reduction(&inst).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("need at least 4 blocks")));
    }
}
