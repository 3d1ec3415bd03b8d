use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::{int, Point, Rational};
use super::segment::{closed_segments_meet, meet, orient, Meet};
use crate::error::{Error, Result};

/// A simple polyline standing in for a simple curve.
///
/// Parameterized by arc index: edge `j` covers `t in [j, j + 1]`, affinely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCurve {
    id: String,
    vertices: Vec<Point>,
    group: usize,
}

impl PolyCurve {
    /// Builds a curve, rejecting fewer than two vertices, repeated consecutive
    /// vertices and self-intersections.
    pub fn new(id: impl Into<String>, vertices: Vec<Point>, group: usize) -> Result<Self> {
        let curve = PolyCurve {
            id: id.into(),
            vertices,
            group,
        };
        curve.check_simple()?;
        Ok(curve)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn group(&self) -> usize {
        self.group
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edge(&self, j: usize) -> (&Point, &Point) {
        (&self.vertices[j], &self.vertices[j + 1])
    }

    /// Largest parameter value, `m - 1` for `m` vertices.
    pub fn param_max(&self) -> Rational {
        int(self.edge_count() as i64)
    }

    pub fn contains_param(&self, t: &Rational) -> bool {
        !t.is_negative() && t <= &self.param_max()
    }

    fn check_simple(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidCurve {
            id: self.id.clone(),
            reason,
        };
        if self.vertices.len() < 2 {
            return Err(fail("needs at least two vertices".into()));
        }
        for (j, w) in self.vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(fail(format!("vertices {j} and {} coincide", j + 1)));
            }
        }
        let m = self.edge_count();
        for i in 0..m {
            let (a0, a1) = self.edge(i);
            for j in i + 1..m {
                let (b0, b1) = self.edge(j);
                if j == i + 1 {
                    if meet(a0, a1, b0, b1) != Meet::Point(a1.clone()) {
                        return Err(fail(format!("edges {i} and {j} fold back onto each other")));
                    }
                } else if closed_segments_meet(a0, a1, b0, b1) {
                    return Err(fail(format!("edges {i} and {j} intersect")));
                }
            }
        }
        Ok(())
    }

    fn edge_point(&self, j: usize, s: &Rational) -> Point {
        let (a, b) = self.edge(j);
        a.add(&b.sub(a).scale(s))
    }

    /// The point at parameter `t`. Panics if `t` is outside `[0, m - 1]`.
    pub fn point_at(&self, t: &Rational) -> Point {
        assert!(self.contains_param(t), "parameter outside curve range");
        let floor = t.floor().to_integer().to_usize().unwrap_or(0);
        let j = floor.min(self.edge_count() - 1);
        self.edge_point(j, &(t - int(j as i64)))
    }

    /// Straight pieces realizing the image of `[t_lo, t_hi]`.
    pub fn pieces(&self, t_lo: &Rational, t_hi: &Rational) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for j in 0..self.edge_count() {
            let j_lo = int(j as i64);
            let j_hi = int(j as i64 + 1);
            let lo = if t_lo > &j_lo { t_lo.clone() } else { j_lo.clone() };
            let hi = if t_hi < &j_hi { t_hi.clone() } else { j_hi };
            if lo <= hi {
                out.push((self.edge_point(j, &(&lo - &j_lo)), self.edge_point(j, &(&hi - &j_lo))));
            }
        }
        out
    }

    /// Parameter of a point lying on the curve; `None` if it is not on it.
    pub fn param_of(&self, p: &Point) -> Option<Rational> {
        for j in 0..self.edge_count() {
            let (a, b) = self.edge(j);
            if orient(a, b, p) != 0 {
                continue;
            }
            let d = b.sub(a);
            let s = p.sub(a).dot(&d) / d.dot(&d);
            if !s.is_negative() && s <= int(1) {
                return Some(int(j as i64) + s);
            }
        }
        None
    }

    /// `t` is an endpoint parameter of the curve.
    pub fn is_endpoint_param(&self, t: &Rational) -> bool {
        t.is_zero() || t == &self.param_max()
    }
}

/// A closed sub-arc `c([t_lo, t_hi])` of a named curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSegment {
    curve: String,
    t_lo: Rational,
    t_hi: Rational,
}

impl CurveSegment {
    pub fn new(curve: impl Into<String>, t_lo: Rational, t_hi: Rational) -> Result<Self> {
        if t_lo > t_hi {
            return Err(Error::InvalidSegment("curve segment with t_lo > t_hi".into()));
        }
        Ok(CurveSegment {
            curve: curve.into(),
            t_lo,
            t_hi,
        })
    }

    pub fn curve(&self) -> &str {
        &self.curve
    }

    pub fn t_lo(&self) -> &Rational {
        &self.t_lo
    }

    pub fn t_hi(&self) -> &Rational {
        &self.t_hi
    }

    pub fn contains_param(&self, t: &Rational) -> bool {
        &self.t_lo <= t && t <= &self.t_hi
    }
}

/// Curves indexed by id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveTable {
    curves: Vec<PolyCurve>,
    index: HashMap<String, usize>,
}

impl CurveTable {
    pub fn new(curves: Vec<PolyCurve>) -> Result<Self> {
        let mut index = HashMap::with_capacity(curves.len());
        for (i, c) in curves.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::InvalidCurve {
                    id: c.id.clone(),
                    reason: "duplicate curve id".into(),
                });
            }
        }
        Ok(CurveTable { curves, index })
    }

    pub fn get(&self, id: &str) -> Result<&PolyCurve> {
        self.index
            .get(id)
            .map(|&i| &self.curves[i])
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn curves(&self) -> &[PolyCurve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Largest group index present (groups are numbered from 1).
    pub fn group_count(&self) -> usize {
        self.curves.iter().map(|c| c.group).max().unwrap_or(0)
    }
}

pub fn curve_segments_intersect(a: &CurveSegment, b: &CurveSegment, curves: &CurveTable) -> Result<bool> {
    let ca = curves.get(&a.curve)?;
    let cb = curves.get(&b.curve)?;
    if ca.id == cb.id {
        return Ok(a.t_lo <= b.t_hi && b.t_lo <= a.t_hi);
    }
    let pa = ca.pieces(&a.t_lo, &a.t_hi);
    let pb = cb.pieces(&b.t_lo, &b.t_hi);
    Ok(pa
        .iter()
        .any(|(p0, p1)| pb.iter().any(|(q0, q1)| closed_segments_meet(p0, p1, q0, q1))))
}

/// All intersection points of two distinct curves, lexicographically sorted.
pub fn curve_pairwise_crossings(c1: &PolyCurve, c2: &PolyCurve) -> Result<Vec<Point>> {
    if c1.id == c2.id {
        return Err(Error::Precondition(format!(
            "crossings requested between curve `{}` and itself",
            c1.id
        )));
    }
    let mut points = BTreeSet::new();
    for i in 0..c1.edge_count() {
        let (a0, a1) = c1.edge(i);
        for j in 0..c2.edge_count() {
            let (b0, b1) = c2.edge(j);
            match meet(a0, a1, b0, b1) {
                Meet::Disjoint => {}
                Meet::Point(p) => {
                    points.insert(p);
                }
                Meet::Overlap(..) => {
                    return Err(Error::DegenerateOverlap {
                        a: c1.id.clone(),
                        b: c2.id.clone(),
                    })
                }
            }
        }
    }
    Ok(points.into_iter().collect())
}
