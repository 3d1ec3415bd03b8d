//! End-to-end solver for segments of curves in `k` groups, where curves of one
//! group are disjoint and curves of different groups cross at most `t` times.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use super::few_lines::{few_lines_flat, line_count};
use super::flat::flat_blocks;
use super::greedy::{greedy_flat, Pick};
use super::pigeonhole::reduce;
use super::trace::Trace;
use crate::bounds::bound_m;
use crate::error::{Error, Result};
use crate::model::{ensure_valid, is_sdr, Block, Context, Instance, SdrAssignment};

/// Which branch produced the answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// Greedy on the members of one group (its count equals `n`).
    Greedy { group: usize },
    /// Potential ascent on the members of one group spread over many curves.
    FewLines { group: usize, m: usize },
    /// Crossing-vector reduction followed by greedy.
    Pigeonhole { crossings: usize, selected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub assignment: SdrAssignment,
    /// Per-group member counts shared by the chosen class of blocks.
    pub composition: Vec<usize>,
    /// Size of that class.
    pub class_size: usize,
    pub route: Route,
}

pub fn solve_bounded_directions(inst: &Instance) -> Result<SdrAssignment> {
    Ok(solve_bounded_directions_report(inst, &mut Trace::disabled())?.assignment)
}

pub fn solve_bounded_directions_traced(inst: &Instance, trace: &mut Trace) -> Result<SdrAssignment> {
    Ok(solve_bounded_directions_report(inst, trace)?.assignment)
}

pub fn solve_bounded_directions_report(inst: &Instance, trace: &mut Trace) -> Result<PipelineReport> {
    let Context::Curves { curves, t } = inst.context() else {
        return Err(Error::Precondition("expected a curve instance".into()));
    };
    ensure_valid(inst)?;
    let n = inst.n();
    if inst.block_size() != n {
        return Err(Error::Precondition(format!(
            "blocks must hold n = {n} members, found {}",
            inst.block_size()
        )));
    }
    let k = curves.group_count().max(1);
    let bound = bound_m(n as u64, k as u64, (*t).max(1) as u64)?;
    if BigUint::from(inst.blocks().len()) < bound.integer_upper_bound {
        return Err(Error::Precondition(format!(
            "need at least M({n},{k},{}) = {} blocks, found {}",
            (*t).max(1),
            bound.integer_upper_bound,
            inst.blocks().len()
        )));
    }

    let group_of = |b: usize| -> Vec<usize> {
        let mut counts = vec![0; k];
        for i in inst.block_indices(b) {
            let s = inst.members()[i].as_curve_segment().expect("validated curve instance");
            let g = curves.get(s.curve()).expect("validated").group();
            counts[g.max(1) - 1] += 1;
        }
        counts
    };
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for b in 0..inst.blocks().len() {
        classes.entry(group_of(b)).or_default().push(b);
    }
    let (composition, class) = classes
        .into_iter()
        .max_by(|(_, a), (_, b)| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .expect("at least one block");
    trace.record(|| json!({ "composition": composition, "class_size": class.len() }));

    let (assignment, route) = match few_lines_route(inst, &composition, &class, trace)? {
        Some(found) => found,
        None => {
            let sub = inst.sub_instance(&class);
            let red = reduce(&sub, false, trace)?;
            let blocks = flat_blocks(&red.flat)?;
            let picks = greedy_flat(&blocks, Some(n), trace)?;
            let a = to_assignment(picks, |p| class[red.blocks[blocks[p].block]]);
            let route = Route::Pigeonhole {
                crossings: red.crossings.len(),
                selected: red.blocks.len(),
            };
            (a, route)
        }
    };
    if assignment.len() != n || !is_sdr(inst, &assignment) {
        return Err(Error::internal_with(
            "pipeline result is not an SDR of size n",
            json!({ "route": route, "assignment": assignment }),
        ));
    }
    trace.record(|| json!({ "route": route }));
    Ok(PipelineReport {
        assignment,
        composition,
        class_size: class.len(),
        route,
    })
}

fn to_assignment(picks: Vec<Pick>, block_of: impl Fn(usize) -> usize) -> SdrAssignment {
    SdrAssignment::from_pairs(picks.into_iter().map(|(p, m)| (block_of(p), m.id)))
}

/// Looks for a group whose members in the class lie on many curves and solves
/// the projection onto that group.
fn few_lines_route(
    inst: &Instance,
    composition: &[usize],
    class: &[usize],
    trace: &mut Trace,
) -> Result<Option<(SdrAssignment, Route)>> {
    let Context::Curves { curves, .. } = inst.context() else {
        unreachable!("checked by caller")
    };
    let n = inst.n();
    for (gi, &m) in composition.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let group = gi + 1;
        let in_group = |i: &usize| {
            let s = inst.members()[*i].as_curve_segment().expect("curve segment");
            curves.get(s.curve()).map(|c| c.group().max(1) == group).unwrap_or(false)
        };
        let members: Vec<usize> = class
            .iter()
            .flat_map(|&b| inst.block_indices(b).into_iter().filter(in_group))
            .collect();
        let used: BTreeSet<&str> = members
            .iter()
            .map(|&i| inst.members()[i].as_curve_segment().expect("curve segment").curve())
            .collect();
        if used.len() < m * (n - m) + 1 {
            continue;
        }
        let projected = Instance::new(
            n,
            inst.context().clone(),
            members.iter().map(|&i| inst.members()[i].clone()).collect(),
            class
                .iter()
                .map(|&b| {
                    let blk = &inst.blocks()[b];
                    Block::new(
                        blk.label.clone(),
                        inst.block_indices(b)
                            .into_iter()
                            .filter(in_group)
                            .map(|i| inst.members()[i].id.clone()),
                    )
                })
                .collect(),
        )
        .with_block_size(m);
        let blocks = flat_blocks(&projected)?;
        let (picks, route) = if m == n {
            (greedy_flat(&blocks, Some(n), trace)?, Route::Greedy { group })
        } else {
            if blocks.len() < n + m - 1 || line_count(&blocks) < m * (n - m) + 1 {
                return Err(Error::internal("few-lines branch taken without its hypotheses"));
            }
            (few_lines_flat(&blocks, n, m, trace)?.0, Route::FewLines { group, m })
        };
        return Ok(Some((to_assignment(picks, |p| class[p]), route)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, ratio, CurveSegment, CurveTable, Point, PolyCurve};
    use crate::model::Member;

    #[test]
    fn single_group_routes_to_greedy() {
        let p = Point::from_ints;
        let curves = CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(5, 0), p(10, 0)], 1).unwrap(),
            PolyCurve::new("b", vec![p(0, 1), p(10, 1)], 1).unwrap(),
        ])
        .unwrap();
        // k = 1 gives M = n.
        let mut members = Vec::new();
        let mut blocks = Vec::new();
        for b in 0..2 {
            let x = format!("x{b}");
            let y = format!("y{b}");
            members.push(Member::curve_segment(x.clone(), CurveSegment::new("a", int(b), int(b) + ratio(1, 2)).unwrap()));
            members.push(Member::curve_segment(y.clone(), CurveSegment::new("b", int(0), int(1)).unwrap()));
            blocks.push(Block::new(format!("A{b}"), [x.as_str().into(), y.as_str().into()]));
        }
        let inst = Instance::new(2, Context::Curves { curves, t: 0 }, members, blocks);
        let r = solve_bounded_directions_report(&inst, &mut Trace::disabled()).unwrap();
        assert_eq!(r.route, Route::Greedy { group: 1 });
        assert!(is_sdr(&inst, &r.assignment));
    }

    #[test]
    fn too_few_blocks_names_bound() {
        let p = Point::from_ints;
        let curves = CurveTable::new(vec![
            PolyCurve::new("a", vec![p(0, 0), p(2, 2)], 1).unwrap(),
            PolyCurve::new("b", vec![p(0, 2), p(2, 0)], 2).unwrap(),
        ])
        .unwrap();
        let inst = Instance::new(
            2,
            Context::Curves { curves, t: 1 },
            vec![
                Member::curve_segment("x", CurveSegment::new("a", int(0), ratio(1, 4)).unwrap()),
                Member::curve_segment("y", CurveSegment::new("b", int(0), ratio(1, 4)).unwrap()),
            ],
            vec![Block::new("A", ["x".into(), "y".into()])],
        );
        let err = solve_bounded_directions(&inst).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("M(2,2,1) = 12")));
    }
}
