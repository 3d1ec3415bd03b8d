use std::collections::HashSet;
use std::fmt;

use super::instance::{Context, Instance, MemberId, Payload, PayloadKind};
use crate::error::Error;
use crate::geometry::curve_pairwise_crossings;

/// One violated instance invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NonPositiveSize { field: &'static str },
    DuplicateMember { member: MemberId },
    KindMismatch { member: MemberId, expected: PayloadKind, found: PayloadKind },
    UndeclaredDirection { member: MemberId, direction: String },
    UnknownCurve { member: MemberId, curve: String },
    ParamOutOfRange { member: MemberId, curve: String },
    InvalidGroup { curve: String },
    SameGroupCurvesIntersect { a: String, b: String },
    CrossingBudgetExceeded { a: String, b: String, crossings: Option<usize>, t: usize },
    UnknownEdgeEndpoint { vertex: MemberId },
    SelfLoop { vertex: MemberId },
    BlockSize { block: usize, label: String, expected: usize, actual: usize },
    UnknownMember { block: usize, label: String, member: MemberId },
    RepeatedMember { block: usize, label: String, member: MemberId },
    BlockNotIndependent { block: usize, label: String, a: MemberId, b: MemberId },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Diagnostic::*;
        match self {
            NonPositiveSize { field } => write!(f, "{field} must be positive"),
            DuplicateMember { member } => write!(f, "duplicate member id `{member}`"),
            KindMismatch { member, expected, found } => {
                write!(f, "member `{member}` is a {found}, context expects {expected}")
            }
            UndeclaredDirection { member, direction } => {
                write!(f, "member `{member}` uses undeclared direction {direction}")
            }
            UnknownCurve { member, curve } => write!(f, "member `{member}` lies on unknown curve `{curve}`"),
            ParamOutOfRange { member, curve } => {
                write!(f, "member `{member}` exceeds the parameter range of curve `{curve}`")
            }
            InvalidGroup { curve } => write!(f, "curve `{curve}` has group 0; groups start at 1"),
            SameGroupCurvesIntersect { a, b } => {
                write!(f, "curves `{a}` and `{b}` share a group but intersect")
            }
            CrossingBudgetExceeded { a, b, crossings, t } => match crossings {
                Some(c) => write!(f, "crossing budget exceeded: curves `{a}` and `{b}` cross {c} times (t = {t})"),
                None => write!(f, "crossing budget exceeded: curves `{a}` and `{b}` overlap (t = {t})"),
            },
            UnknownEdgeEndpoint { vertex } => write!(f, "edge endpoint `{vertex}` is not a member"),
            SelfLoop { vertex } => write!(f, "self-loop at `{vertex}`"),
            BlockSize { block, label, expected, actual } => write!(
                f,
                "block #{block} `{label}` has {actual} members, expected {expected}"
            ),
            UnknownMember { block, label, member } => {
                write!(f, "block #{block} `{label}` references unknown member `{member}`")
            }
            RepeatedMember { block, label, member } => {
                write!(f, "block #{block} `{label}` lists member `{member}` twice")
            }
            BlockNotIndependent { block, label, a, b } => write!(
                f,
                "block not independent: #{block} `{label}` members `{a}` and `{b}` intersect"
            ),
        }
    }
}

pub fn validate_instance(inst: &Instance) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if inst.n() == 0 {
        out.push(Diagnostic::NonPositiveSize { field: "n" });
    }
    if inst.block_size() == 0 {
        out.push(Diagnostic::NonPositiveSize { field: "block_size" });
    }

    let mut seen = HashSet::new();
    for m in inst.members() {
        if !seen.insert(&m.id) {
            out.push(Diagnostic::DuplicateMember { member: m.id.clone() });
        }
    }

    check_members(inst, &mut out);
    match inst.context() {
        Context::Curves { curves, t } => check_curves(curves, *t, &mut out),
        Context::Graph { edges } => {
            for (a, b) in edges {
                for v in [a, b] {
                    if inst.member(v).is_none() {
                        out.push(Diagnostic::UnknownEdgeEndpoint { vertex: v.clone() });
                    }
                }
                if a == b {
                    out.push(Diagnostic::SelfLoop { vertex: a.clone() });
                }
            }
        }
        Context::Directions { .. } => {}
    }
    check_blocks(inst, &mut out);
    out
}

fn check_members(inst: &Instance, out: &mut Vec<Diagnostic>) {
    let expected = inst.context().member_kind();
    for m in inst.members() {
        let found = m.payload.kind();
        if found != expected {
            out.push(Diagnostic::KindMismatch {
                member: m.id.clone(),
                expected,
                found,
            });
            continue;
        }
        match (&m.payload, inst.context()) {
            (Payload::Segment(s), Context::Directions { directions }) => {
                if !directions.contains(&s.direction()) {
                    out.push(Diagnostic::UndeclaredDirection {
                        member: m.id.clone(),
                        direction: s.direction().to_string(),
                    });
                }
            }
            (Payload::CurveSegment(s), Context::Curves { curves, .. }) => match curves.get(s.curve()) {
                Ok(c) => {
                    if !c.contains_param(s.t_lo()) || !c.contains_param(s.t_hi()) {
                        out.push(Diagnostic::ParamOutOfRange {
                            member: m.id.clone(),
                            curve: s.curve().to_string(),
                        });
                    }
                }
                Err(_) => out.push(Diagnostic::UnknownCurve {
                    member: m.id.clone(),
                    curve: s.curve().to_string(),
                }),
            },
            _ => {}
        }
    }
}

fn check_curves(curves: &crate::geometry::CurveTable, t: usize, out: &mut Vec<Diagnostic>) {
    let list = curves.curves();
    for c in list {
        if c.group() == 0 {
            out.push(Diagnostic::InvalidGroup { curve: c.id().to_string() });
        }
    }
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            let crossings = curve_pairwise_crossings(a, b).ok().map(|v| v.len());
            let (ia, ib) = (a.id().to_string(), b.id().to_string());
            if a.group() == b.group() {
                if crossings != Some(0) {
                    out.push(Diagnostic::SameGroupCurvesIntersect { a: ia, b: ib });
                }
            } else if crossings.is_none_or(|c| c > t) {
                out.push(Diagnostic::CrossingBudgetExceeded {
                    a: ia,
                    b: ib,
                    crossings,
                    t,
                });
            }
        }
    }
}

fn check_blocks(inst: &Instance, out: &mut Vec<Diagnostic>) {
    for (bi, block) in inst.blocks().iter().enumerate() {
        let label = || block.label.clone();
        if block.member_ids.len() != inst.block_size() {
            out.push(Diagnostic::BlockSize {
                block: bi,
                label: label(),
                expected: inst.block_size(),
                actual: block.member_ids.len(),
            });
        }
        let mut known = Vec::new();
        let mut seen = HashSet::new();
        for id in &block.member_ids {
            if !seen.insert(id) {
                out.push(Diagnostic::RepeatedMember {
                    block: bi,
                    label: label(),
                    member: id.clone(),
                });
                continue;
            }
            match inst.member_index(id) {
                Some(i) => known.push(i),
                None => out.push(Diagnostic::UnknownMember {
                    block: bi,
                    label: label(),
                    member: id.clone(),
                }),
            }
        }
        for (x, &i) in known.iter().enumerate() {
            for &j in &known[x + 1..] {
                if inst.members_meet(i, j) {
                    out.push(Diagnostic::BlockNotIndependent {
                        block: bi,
                        label: label(),
                        a: inst.members()[i].id.clone(),
                        b: inst.members()[j].id.clone(),
                    });
                }
            }
        }
    }
}

/// Validates and converts diagnostics into an error.
pub fn ensure_valid(inst: &Instance) -> Result<(), Error> {
    let diags = validate_instance(inst);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInstance(diags))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, CurveTable, Direction, Point, PolyCurve, Segment};
    use crate::model::{Block, Member};

    fn h(id: &str, x0: i64, x1: i64, y: i64) -> Member {
        Member::segment(id, Segment::horizontal(int(x0), int(x1), int(y)).unwrap())
    }

    fn dirs() -> Context {
        Context::Directions {
            directions: vec![Direction::HORIZONTAL, Direction::VERTICAL],
        }
    }

    #[test]
    fn well_formed_instance_has_no_diagnostics() {
        let inst = Instance::new(
            2,
            dirs(),
            vec![h("a", 0, 1, 0), h("b", 2, 3, 0)],
            vec![Block::new("A", ["a".into(), "b".into()])],
        );
        assert_eq!(validate_instance(&inst), vec![]);
    }

    #[test]
    fn crossing_block_members_flagged() {
        let v = Member::segment("v", Segment::vertical(int(1), int(-1), int(1)).unwrap());
        let inst = Instance::new(
            2,
            dirs(),
            vec![h("a", 0, 2, 0), v],
            vec![Block::new("A", ["a".into(), "v".into()])],
        );
        let diags = validate_instance(&inst);
        assert_eq!(diags.len(), 1);
        assert!(matches!(diags[0], Diagnostic::BlockNotIndependent { .. }));
        assert!(diags[0].to_string().contains("block not independent"));
    }

    #[test]
    fn wrong_block_size_and_unknown_members() {
        let inst = Instance::new(
            2,
            dirs(),
            vec![h("a", 0, 1, 0)],
            vec![Block::new("A", ["a".into()]), Block::new("B", ["a".into(), "zz".into()])],
        );
        let diags = validate_instance(&inst);
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::BlockSize { label, .. } if label == "A")));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::UnknownMember { .. })));
    }

    #[test]
    fn undeclared_direction_flagged() {
        let diag = Member::segment(
            "d",
            Segment::new(Point::from_ints(0, 0), Direction::new(1, 1).unwrap(), int(0), int(1)).unwrap(),
        );
        let inst = Instance::new(1, dirs(), vec![diag], vec![Block::new("A", ["d".into()])]);
        assert!(matches!(
            validate_instance(&inst)[..],
            [Diagnostic::UndeclaredDirection { .. }]
        ));
    }

    #[test]
    fn crossing_budget_enforced() {
        let p = Point::from_ints;
        let zig = PolyCurve::new("z", vec![p(0, -1), p(1, 1), p(2, -1)], 1).unwrap();
        let line = PolyCurve::new("h", vec![p(-1, 0), p(3, 0)], 2).unwrap();
        let curves = CurveTable::new(vec![zig, line]).unwrap();
        let inst = Instance::new(1, Context::Curves { curves, t: 1 }, vec![], vec![]);
        let diags = validate_instance(&inst);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].to_string().contains("crossing budget exceeded"));
    }

    #[test]
    fn same_group_curves_must_be_disjoint() {
        let p = Point::from_ints;
        let a = PolyCurve::new("a", vec![p(0, 0), p(2, 2)], 1).unwrap();
        let b = PolyCurve::new("b", vec![p(0, 2), p(2, 0)], 1).unwrap();
        let curves = CurveTable::new(vec![a, b]).unwrap();
        let inst = Instance::new(1, Context::Curves { curves, t: 5 }, vec![], vec![]);
        assert!(matches!(
            validate_instance(&inst)[..],
            [Diagnostic::SameGroupCurvesIntersect { .. }]
        ));
    }

    #[test]
    fn graph_edges_checked() {
        let inst = Instance::new(
            1,
            Context::Graph {
                edges: vec![("a".into(), "a".into()), ("a".into(), "q".into())],
            },
            vec![Member::vertex("a")],
            vec![Block::new("A", ["a".into()])],
        );
        let diags = validate_instance(&inst);
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::SelfLoop { .. })));
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::UnknownEdgeEndpoint { .. })));
    }
}
