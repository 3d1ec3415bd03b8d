//! Exact geometric primitives: rationals, directions, closed segments,
//! simple polylines and their intersection predicates.

mod curve;
mod direction;
mod flatten;
mod rational;
mod segment;

pub use curve::{curve_pairwise_crossings, curve_segments_intersect, CurveSegment, CurveTable, PolyCurve};
pub use direction::{canonical_direction, Direction};
pub use flatten::{curve_ranks, flatten_disjoint_curves};
pub use rational::{format_rational, int, parse_rational, ratio, to_f64, Point, Rational};
pub use segment::{closed_segments_meet, meet, segments_intersect, Meet, Segment};
