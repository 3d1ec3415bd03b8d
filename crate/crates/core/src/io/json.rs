//! Instance documents (format version 1).
//!
//! ```json
//! {"version": 1, "n": 2,
//!  "context": {"kind": "directions", "directions": [[1, 0]]},
//!  "members": [{"id": "a", "kind": "segment", "anchor": ["0", "0"],
//!               "direction": [1, 0], "t_lo": "0", "t_hi": "1/2"}],
//!  "blocks": [{"label": "A", "member_ids": ["a"]}]}
//! ```
//!
//! Rationals are strings (`"p/q"` or decimals) or JSON integers. An optional
//! `block_size` overrides the default block size `n`.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, CurveSegment, CurveTable, Direction, Point, PolyCurve, Rational, Segment};
use crate::model::{ensure_valid, Block, Context, Instance, Member, MemberId, Payload};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
struct Rat(Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Rat(Rational::from_integer(i.into()))),
            Raw::Text(s) => parse_rational(&s).map(Rat).map_err(de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    version: u32,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    block_size: Option<usize>,
    context: ContextDoc,
    members: Vec<MemberDoc>,
    blocks: Vec<BlockDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ContextDoc {
    Directions {
        directions: Vec<[i64; 2]>,
    },
    Curves {
        curves: Vec<CurveDoc>,
        #[serde(default)]
        t: usize,
    },
    Graph {
        #[serde(default)]
        edges: Vec<[String; 2]>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    id: String,
    group: usize,
    vertices: Vec<[Rat; 2]>,
}

#[derive(Serialize, Deserialize)]
struct MemberDoc {
    id: String,
    #[serde(flatten)]
    payload: PayloadDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PayloadDoc {
    Segment {
        anchor: [Rat; 2],
        direction: [i64; 2],
        t_lo: Rat,
        t_hi: Rat,
    },
    CurveSegment {
        curve: String,
        t_lo: Rat,
        t_hi: Rat,
    },
    Vertex,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    label: String,
    member_ids: Vec<String>,
}

fn point(p: &[Rat; 2]) -> Point {
    Point {
        x: p[0].0.clone(),
        y: p[1].0.clone(),
    }
}

/// A segment with direction `(dx, dy)`, rewritten over the canonical
/// direction with the same point set.
fn segment(anchor: Point, d: [i64; 2], t_lo: Rational, t_hi: Rational) -> Result<Segment> {
    let canon = Direction::new(d[0], d[1])?;
    let scale = if canon.dx() != 0 { d[0] / canon.dx() } else { d[1] / canon.dy() };
    let s = Rational::from_integer(scale.into());
    let (a, b) = (t_lo * &s, t_hi * &s);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Segment::new(anchor, canon, lo, hi)
}

fn build(doc: Doc) -> Result<Instance> {
    if doc.version != FORMAT_VERSION {
        return Err(Error::Parse {
            path: "version".into(),
            message: format!("unsupported version {}, expected {FORMAT_VERSION}", doc.version),
        });
    }
    let context = match doc.context {
        ContextDoc::Directions { directions } => Context::Directions {
            directions: directions
                .iter()
                .map(|d| Direction::new(d[0], d[1]))
                .collect::<Result<_>>()?,
        },
        ContextDoc::Curves { curves, t } => Context::Curves {
            curves: CurveTable::new(
                curves
                    .into_iter()
                    .map(|c| PolyCurve::new(c.id, c.vertices.iter().map(point).collect(), c.group))
                    .collect::<Result<_>>()?,
            )?,
            t,
        },
        ContextDoc::Graph { edges } => Context::Graph {
            edges: edges
                .into_iter()
                .map(|[a, b]| (MemberId(a), MemberId(b)))
                .collect(),
        },
    };
    let members = doc
        .members
        .into_iter()
        .map(|m| {
            let payload = match m.payload {
                PayloadDoc::Segment {
                    anchor,
                    direction,
                    t_lo,
                    t_hi,
                } => Payload::Segment(segment(point(&anchor), direction, t_lo.0, t_hi.0).map_err(|e| Error::Parse {
                    path: format!("members.{}", m.id),
                    message: e.to_string(),
                })?),
                PayloadDoc::CurveSegment { curve, t_lo, t_hi } => {
                    Payload::CurveSegment(CurveSegment::new(curve, t_lo.0, t_hi.0).map_err(|e| Error::Parse {
                        path: format!("members.{}", m.id),
                        message: e.to_string(),
                    })?)
                }
                PayloadDoc::Vertex => Payload::Vertex,
            };
            Ok(Member {
                id: MemberId(m.id),
                payload,
            })
        })
        .collect::<Result<_>>()?;
    let blocks = doc
        .blocks
        .into_iter()
        .map(|b| Block::new(b.label, b.member_ids.into_iter().map(MemberId)))
        .collect();
    let inst = Instance::new(doc.n, context, members, blocks);
    Ok(match doc.block_size {
        Some(s) => inst.with_block_size(s),
        None => inst,
    })
}

/// Reads and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Doc = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    let inst = build(doc)?;
    ensure_valid(&inst)?;
    Ok(inst)
}

fn to_doc(inst: &Instance) -> Doc {
    let rat = |r: &Rational| Rat(r.clone());
    let pt = |p: &Point| [rat(&p.x), rat(&p.y)];
    let context = match inst.context() {
        Context::Directions { directions } => ContextDoc::Directions {
            directions: directions.iter().map(|d| [d.dx(), d.dy()]).collect(),
        },
        Context::Curves { curves, t } => ContextDoc::Curves {
            curves: curves
                .curves()
                .iter()
                .map(|c| CurveDoc {
                    id: c.id().to_string(),
                    group: c.group(),
                    vertices: c.vertices().iter().map(pt).collect(),
                })
                .collect(),
            t: *t,
        },
        Context::Graph { edges } => ContextDoc::Graph {
            edges: edges.iter().map(|(a, b)| [a.0.clone(), b.0.clone()]).collect(),
        },
    };
    let members = inst
        .members()
        .iter()
        .map(|m| MemberDoc {
            id: m.id.0.clone(),
            payload: match &m.payload {
                Payload::Segment(s) => PayloadDoc::Segment {
                    anchor: pt(s.anchor()),
                    direction: [s.direction().dx(), s.direction().dy()],
                    t_lo: rat(s.t_lo()),
                    t_hi: rat(s.t_hi()),
                },
                Payload::CurveSegment(s) => PayloadDoc::CurveSegment {
                    curve: s.curve().to_string(),
                    t_lo: rat(s.t_lo()),
                    t_hi: rat(s.t_hi()),
                },
                Payload::Vertex => PayloadDoc::Vertex,
            },
        })
        .collect();
    Doc {
        version: FORMAT_VERSION,
        n: inst.n(),
        block_size: (inst.block_size() != inst.n()).then_some(inst.block_size()),
        context,
        members,
        blocks: inst
            .blocks()
            .iter()
            .map(|b| BlockDoc {
                label: b.label.clone(),
                member_ids: b.member_ids.iter().map(|m| m.0.clone()).collect(),
            })
            .collect(),
    }
}

/// Pretty-printed instance document.
pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&to_doc(inst)).expect("instance documents always serialize")
}

pub fn instance_to_value(inst: &Instance) -> serde_json::Value {
    serde_json::to_value(to_doc(inst)).expect("instance documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;
    use crate::generators::{gen_hv_tight, gen_random_instance, Family, GenSpec};

    #[test]
    fn minimal_graph_instance() {
        let inst = parse_instance(
            r#"{"version":1,"n":1,"context":{"kind":"graph"},
                "members":[{"id":"v0","kind":"vertex"}],
                "blocks":[{"label":"A","member_ids":["v0"]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.blocks().len(), 1);
    }

    #[test]
    fn rationals_are_canonical() {
        let inst = parse_instance(
            r#"{"version":1,"n":1,"context":{"kind":"directions","directions":[[1,0]]},
                "members":[{"id":"a","kind":"segment","anchor":["0","0"],"direction":[1,0],"t_lo":"3/6","t_hi":"1.5"}],
                "blocks":[{"label":"A","member_ids":["a"]}]}"#,
        )
        .unwrap();
        let s = inst.members()[0].as_segment().unwrap();
        assert_eq!(s.t_lo(), &ratio(1, 2));
        assert_eq!(s.t_hi(), &ratio(3, 2));
    }

    #[test]
    fn non_canonical_direction_keeps_point_set() {
        let inst = parse_instance(
            r#"{"version":1,"n":1,"context":{"kind":"directions","directions":[[-2,0]]},
                "members":[{"id":"a","kind":"segment","anchor":[0,0],"direction":[-2,0],"t_lo":0,"t_hi":1}],
                "blocks":[{"label":"A","member_ids":["a"]}]}"#,
        )
        .unwrap();
        let s = inst.members()[0].as_segment().unwrap();
        assert_eq!(s.direction(), Direction::HORIZONTAL);
        assert_eq!((s.start().x, s.end().x), (ratio(-2, 1), ratio(0, 1)));
    }

    #[test]
    fn short_block_cites_label() {
        let err = parse_instance(
            r#"{"version":1,"n":2,"context":{"kind":"graph"},
                "members":[{"id":"v0","kind":"vertex"},{"id":"v1","kind":"vertex"}],
                "blocks":[{"label":"Short","member_ids":["v0"]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("`Short`"), "{err}");
    }

    #[test]
    fn schema_errors_carry_a_path() {
        let err = parse_instance(r#"{"version":1,"n":1,"context":{"kind":"graph"},"members":[{"id":"a","kind":"segment"}],"blocks":[]}"#)
            .unwrap_err();
        let Error::Parse { path, .. } = err else { panic!("{err}") };
        assert!(path.starts_with("members"), "{path}");
    }

    #[test]
    fn round_trip() {
        for inst in [
            gen_hv_tight(3).unwrap(),
            gen_random_instance(&GenSpec::new(Family::RandomCurves, [("n", 2), ("blocks", 3), ("bends", 1)], 4)).unwrap(),
            gen_random_instance(&GenSpec::new(Family::RandomFewLines, [("n", 3), ("m", 2)], 4)).unwrap(),
        ] {
            assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
        }
    }
}
