use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::instance::{Instance, MemberId};
use super::validate::ensure_valid;
use crate::error::Result;

/// Intersection graph over member ids. Vertices are kept in id order; edges are
/// stored as index pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    vertices: Vec<MemberId>,
    edges: BTreeSet<(usize, usize)>,
    index: HashMap<MemberId, usize>,
}

impl IntersectionGraph {
    /// Builds a graph from explicit vertex and edge lists. Self-loops and
    /// edges naming unknown vertices are dropped.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = MemberId>,
        edges: impl IntoIterator<Item = (MemberId, MemberId)>,
    ) -> Self {
        let mut vertices: Vec<MemberId> = vertices.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<MemberId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let edges = edges
            .into_iter()
            .filter_map(|(a, b)| {
                let (i, j) = (*index.get(&a)?, *index.get(&b)?);
                (i != j).then(|| (i.min(j), i.max(j)))
            })
            .collect();
        IntersectionGraph { vertices, edges, index }
    }

    pub fn vertices(&self) -> &[MemberId] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &MemberId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&MemberId, &MemberId)> + '_ {
        self.edges.iter().map(|&(i, j)| (&self.vertices[i], &self.vertices[j]))
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, a: &MemberId, b: &MemberId) -> bool {
        match (self.vertex_index(a), self.vertex_index(b)) {
            (Some(i), Some(j)) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    /// Adjacency lists by vertex index.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Graphviz rendering: every vertex on its own line, then one `--` line
    /// per edge in sorted order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph intersections {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", escape(v.as_str()));
        }
        let mut lines: Vec<(&str, &str)> = self.edges().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        lines.sort();
        for (a, b) in lines {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", escape(a), escape(b));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn build_intersection_graph(inst: &Instance) -> Result<IntersectionGraph> {
    ensure_valid(inst)?;
    let members = inst.members();
    let meets = inst.meet_matrix();
    let mut edges = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if meets[i][j] {
                edges.push((members[i].id.clone(), members[j].id.clone()));
            }
        }
    }
    Ok(IntersectionGraph::from_edges(members.iter().map(|m| m.id.clone()), edges))
}
