use num_traits::{One, Signed, ToPrimitive, Zero};

use super::direction::Direction;
use super::rational::{sign, Point, Rational};
use crate::error::{Error, Result};

/// A closed line segment `{ anchor + t * direction : t in [t_lo, t_hi] }`.
///
/// `t_lo == t_hi` is allowed and gives a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    anchor: Point,
    direction: Direction,
    t_lo: Rational,
    t_hi: Rational,
}

impl Segment {
    pub fn new(anchor: Point, direction: Direction, t_lo: Rational, t_hi: Rational) -> Result<Self> {
        if t_lo > t_hi {
            return Err(Error::InvalidSegment(format!(
                "t_lo {} exceeds t_hi {}",
                super::format_rational(&t_lo),
                super::format_rational(&t_hi)
            )));
        }
        Ok(Segment {
            anchor,
            direction,
            t_lo,
            t_hi,
        })
    }

    /// `[x_lo, x_hi] x {y}`.
    pub fn horizontal(x_lo: Rational, x_hi: Rational, y: Rational) -> Result<Self> {
        Segment::new(Point::new(Rational::zero(), y), Direction::HORIZONTAL, x_lo, x_hi)
    }

    /// `{x} x [y_lo, y_hi]`.
    pub fn vertical(x: Rational, y_lo: Rational, y_hi: Rational) -> Result<Self> {
        Segment::new(Point::new(x, Rational::zero()), Direction::VERTICAL, y_lo, y_hi)
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn t_lo(&self) -> &Rational {
        &self.t_lo
    }

    pub fn t_hi(&self) -> &Rational {
        &self.t_hi
    }

    pub fn point_at(&self, t: &Rational) -> Point {
        self.anchor.add(&self.direction.as_point().scale(t))
    }

    pub fn start(&self) -> Point {
        self.point_at(&self.t_lo)
    }

    pub fn end(&self) -> Point {
        self.point_at(&self.t_hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.t_lo == self.t_hi
    }

    /// Identifies the supporting line among all lines of the same direction:
    /// `cross(direction, anchor)`.
    pub fn line_key(&self) -> Rational {
        self.direction.as_point().cross(&self.anchor)
    }

    /// Projection of the parameter range onto the direction's own axis, so
    /// that collinear segments compare by interval overlap regardless of anchor.
    pub fn axis_interval(&self) -> (Rational, Rational) {
        let d = self.direction.as_point();
        let base = self.anchor.dot(&d) / d.dot(&d);
        (&base + &self.t_lo, &base + &self.t_hi)
    }
}

pub(crate) fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    sign(&b.sub(a).cross(&c.sub(a)))
}

fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (x_lo, x_hi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (y_lo, y_hi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &p.x >= x_lo && &p.x <= x_hi && &p.y >= y_lo && &p.y <= y_hi
}

/// Closed segments `[p0, p1]` and `[q0, q1]` share a point. Handles point
/// segments and collinear overlap.
pub fn closed_segments_meet(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> bool {
    if let (Some(a), Some(b), Some(c), Some(d)) = (small(p0), small(p1), small(q0), small(q1)) {
        return small_meet(a, b, c, d);
    }
    let o1 = orient(p0, p1, q0);
    let o2 = orient(p0, p1, q1);
    let o3 = orient(q0, q1, p0);
    let o4 = orient(q0, q1, p1);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && in_box(p0, p1, q0))
        || (o2 == 0 && in_box(p0, p1, q1))
        || (o3 == 0 && in_box(q0, q1, p0))
        || (o4 == 0 && in_box(q0, q1, p1))
}

/// Integer coordinates below 2^40 in absolute value, where cross products
/// fit in `i128`.
fn small(p: &Point) -> Option<(i128, i128)> {
    const LIMIT: i128 = 1 << 40;
    let f = |v: &Rational| {
        if !v.is_integer() {
            return None;
        }
        v.to_integer().to_i128().filter(|x| x.abs() < LIMIT)
    };
    Some((f(&p.x)?, f(&p.y)?))
}

type Small = (i128, i128);

fn small_orient(a: Small, b: Small, c: Small) -> i128 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn small_in_box(a: Small, b: Small, p: Small) -> bool {
    a.0.min(b.0) <= p.0 && p.0 <= a.0.max(b.0) && a.1.min(b.1) <= p.1 && p.1 <= a.1.max(b.1)
}

fn small_meet(p0: Small, p1: Small, q0: Small, q1: Small) -> bool {
    let o1 = small_orient(p0, p1, q0);
    let o2 = small_orient(p0, p1, q1);
    let o3 = small_orient(q0, q1, p0);
    let o4 = small_orient(q0, q1, p1);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && small_in_box(p0, p1, q0))
        || (o2 == 0 && small_in_box(p0, p1, q1))
        || (o3 == 0 && small_in_box(q0, q1, p0))
        || (o4 == 0 && small_in_box(q0, q1, p1))
}

pub fn segments_intersect(a: &Segment, b: &Segment) -> bool {
    closed_segments_meet(&a.start(), &a.end(), &b.start(), &b.end())
}

/// The common part of two closed point-to-point segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    Point(Point),
    Overlap(Point, Point),
}

/// Computes the intersection set of `[p0, p1]` and `[q0, q1]` exactly.
pub fn meet(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> Meet {
    let d = p1.sub(p0);
    let e = q1.sub(q0);
    let w = q0.sub(p0);
    let denom = d.cross(&e);
    if !denom.is_zero() {
        let s = w.cross(&e) / &denom;
        let u = w.cross(&d) / &denom;
        let one = Rational::one();
        let in_unit = |v: &Rational| !v.is_negative() && v <= &one;
        return if in_unit(&s) && in_unit(&u) {
            Meet::Point(p0.add(&d.scale(&s)))
        } else {
            Meet::Disjoint
        };
    }
    match (d.is_origin(), e.is_origin()) {
        (true, true) => {
            if p0 == q0 {
                Meet::Point(p0.clone())
            } else {
                Meet::Disjoint
            }
        }
        (true, false) => {
            if orient(q0, q1, p0) == 0 && in_box(q0, q1, p0) {
                Meet::Point(p0.clone())
            } else {
                Meet::Disjoint
            }
        }
        (false, true) => {
            if orient(p0, p1, q0) == 0 && in_box(p0, p1, q0) {
                Meet::Point(q0.clone())
            } else {
                Meet::Disjoint
            }
        }
        (false, false) => {
            if !d.cross(&w).is_zero() {
                return Meet::Disjoint;
            }
            let dd = d.dot(&d);
            let s0 = w.dot(&d) / &dd;
            let s1 = q1.sub(p0).dot(&d) / &dd;
            let (lo, hi) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
            let zero = Rational::zero();
            let one = Rational::one();
            let lo = if lo > zero { lo } else { zero };
            let hi = if hi < one { hi } else { one };
            if lo > hi {
                Meet::Disjoint
            } else if lo == hi {
                Meet::Point(p0.add(&d.scale(&lo)))
            } else {
                Meet::Overlap(p0.add(&d.scale(&lo)), p0.add(&d.scale(&hi)))
            }
        }
    }
}
