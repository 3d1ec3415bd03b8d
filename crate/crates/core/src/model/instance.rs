use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    closed_segments_meet, curve_segments_intersect, segments_intersect, CurveSegment, CurveTable, Direction, Point, Segment,
};

/// Member identifier, unique within an instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MemberId(pub String);

impl MemberId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MemberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for MemberId {
    fn from(s: &str) -> Self {
        MemberId(s.to_string())
    }
}

impl From<String> for MemberId {
    fn from(s: String) -> Self {
        MemberId(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Segment(Segment),
    CurveSegment(CurveSegment),
    /// An abstract graph vertex; the vertex is named by the member id.
    Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PayloadKind {
    Segment,
    CurveSegment,
    Vertex,
}

impl fmt::Display for PayloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PayloadKind::Segment => "segment",
            PayloadKind::CurveSegment => "curve_segment",
            PayloadKind::Vertex => "vertex",
        })
    }
}

impl Payload {
    pub fn kind(&self) -> PayloadKind {
        match self {
            Payload::Segment(_) => PayloadKind::Segment,
            Payload::CurveSegment(_) => PayloadKind::CurveSegment,
            Payload::Vertex => PayloadKind::Vertex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub id: MemberId,
    pub payload: Payload,
}

impl Member {
    pub fn segment(id: impl Into<MemberId>, segment: Segment) -> Self {
        Member {
            id: id.into(),
            payload: Payload::Segment(segment),
        }
    }

    pub fn curve_segment(id: impl Into<MemberId>, segment: CurveSegment) -> Self {
        Member {
            id: id.into(),
            payload: Payload::CurveSegment(segment),
        }
    }

    pub fn vertex(id: impl Into<MemberId>) -> Self {
        Member {
            id: id.into(),
            payload: Payload::Vertex,
        }
    }

    pub fn as_segment(&self) -> Option<&Segment> {
        match &self.payload {
            Payload::Segment(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_curve_segment(&self) -> Option<&CurveSegment> {
        match &self.payload {
            Payload::CurveSegment(s) => Some(s),
            _ => None,
        }
    }
}

/// A labeled family of pairwise-disjoint members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub label: String,
    pub member_ids: Vec<MemberId>,
}

impl Block {
    pub fn new(label: impl Into<String>, member_ids: impl IntoIterator<Item = MemberId>) -> Self {
        Block {
            label: label.into(),
            member_ids: member_ids.into_iter().collect(),
        }
    }

    pub fn contains(&self, id: &MemberId) -> bool {
        self.member_ids.contains(id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Context {
    /// Segments whose directions come from a fixed table.
    Directions { directions: Vec<Direction> },
    /// Segments of polyline curves; `t` bounds crossings between curves of
    /// different groups.
    Curves { curves: CurveTable, t: usize },
    /// Abstract intersection graph given by its edge list.
    Graph { edges: Vec<(MemberId, MemberId)> },
}

impl Context {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Context::Directions { .. } => "directions",
            Context::Curves { .. } => "curves",
            Context::Graph { .. } => "graph",
        }
    }

    pub fn member_kind(&self) -> PayloadKind {
        match self {
            Context::Directions { .. } => PayloadKind::Segment,
            Context::Curves { .. } => PayloadKind::CurveSegment,
            Context::Graph { .. } => PayloadKind::Vertex,
        }
    }

    pub fn curves(&self) -> Option<&CurveTable> {
        match self {
            Context::Curves { curves, .. } => Some(curves),
            _ => None,
        }
    }
}

/// A full problem: target size `n`, the geometric context, the member pool and
/// an ordered list of blocks (repeats allowed).
///
/// Every block is expected to hold `block_size` members; `block_size` equals
/// `n` unless set explicitly (few-lines families use blocks of `m < n`).
#[derive(Clone, Debug)]
pub struct Instance {
    n: usize,
    block_size: usize,
    context: Context,
    members: Vec<Member>,
    blocks: Vec<Block>,
    index: HashMap<MemberId, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.block_size == other.block_size
            && self.context == other.context
            && self.members == other.members
            && self.blocks == other.blocks
    }
}

impl Instance {
    pub fn new(n: usize, context: Context, members: Vec<Member>, blocks: Vec<Block>) -> Self {
        let mut index = HashMap::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            index.entry(m.id.clone()).or_insert(i);
        }
        let mut edges = BTreeSet::new();
        if let Context::Graph { edges: list } = &context {
            for (a, b) in list {
                if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                    if i != j {
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
        Instance {
            n,
            block_size: n,
            context,
            members,
            blocks,
            index,
            edges,
        }
    }

    pub fn with_block_size(mut self, block_size: usize) -> Self {
        self.block_size = block_size;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn member(&self, id: &MemberId) -> Option<&Member> {
        self.index.get(id).map(|&i| &self.members[i])
    }

    pub fn member_index(&self, id: &MemberId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Member indices of a block, skipping unknown ids.
    pub fn block_indices(&self, block: usize) -> Vec<usize> {
        self.blocks[block]
            .member_ids
            .iter()
            .filter_map(|id| self.member_index(id))
            .collect()
    }

    /// Whether members `i` and `j` (by index) intersect. A member always
    /// meets itself.
    pub fn members_meet(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let (a, b) = (&self.members[i], &self.members[j]);
        match (&a.payload, &b.payload, &self.context) {
            (Payload::Segment(x), Payload::Segment(y), _) => segments_intersect(x, y),
            (Payload::CurveSegment(x), Payload::CurveSegment(y), Context::Curves { curves, .. }) => {
                curve_segments_intersect(x, y, curves).unwrap_or(false)
            }
            (Payload::Vertex, Payload::Vertex, _) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    /// `members_meet` for every pair, with segment endpoints computed once.
    pub fn meet_matrix(&self) -> Vec<Vec<bool>> {
        let m = self.members.len();
        let ends: Vec<Option<(Point, Point)>> = self
            .members
            .iter()
            .map(|mem| mem.as_segment().map(|s| (s.start(), s.end())))
            .collect();
        let mut out = vec![vec![false; m]; m];
        for i in 0..m {
            out[i][i] = true;
            for j in i + 1..m {
                let hit = match (&ends[i], &ends[j]) {
                    (Some((p0, p1)), Some((q0, q1))) => closed_segments_meet(p0, p1, q0, q1),
                    _ => self.members_meet(i, j),
                };
                out[i][j] = hit;
                out[j][i] = hit;
            }
        }
        out
    }

    pub fn ids_meet(&self, a: &MemberId, b: &MemberId) -> bool {
        match (self.member_index(a), self.member_index(b)) {
            (Some(i), Some(j)) => self.members_meet(i, j),
            _ => false,
        }
    }

    /// Copy of the instance restricted to the given blocks, in the given order.
    /// Members not used by any kept block are dropped.
    pub fn sub_instance(&self, blocks: &[usize]) -> Instance {
        let kept: Vec<Block> = blocks.iter().map(|&b| self.blocks[b].clone()).collect();
        let used: BTreeSet<&MemberId> = kept.iter().flat_map(|b| b.member_ids.iter()).collect();
        let members: Vec<Member> = self
            .members
            .iter()
            .filter(|m| used.contains(&m.id))
            .cloned()
            .collect();
        let context = match &self.context {
            Context::Graph { edges } => Context::Graph {
                edges: edges
                    .iter()
                    .filter(|(a, b)| used.contains(a) && used.contains(b))
                    .cloned()
                    .collect(),
            },
            other => other.clone(),
        };
        Instance::new(self.n, context, members, kept).with_block_size(self.block_size)
    }
}
