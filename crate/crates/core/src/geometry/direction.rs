use std::fmt;

use num_integer::Integer;

use super::rational::{int, Point};
use crate::error::{Error, Result};

/// A primitive integer direction vector.
///
/// Canonical sign: `dy > 0`, or `dy == 0 && dx > 0`. Two directions are
/// parallel iff they compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    dx: i64,
    dy: i64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { dx: 1, dy: 0 };
    pub const VERTICAL: Direction = Direction { dx: 0, dy: 1 };

    pub fn new(dx: i64, dy: i64) -> Result<Self> {
        canonical_direction(dx, dy)
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn dy(&self) -> i64 {
        self.dy
    }

    pub fn as_point(&self) -> Point {
        Point::new(int(self.dx), int(self.dy))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

pub fn canonical_direction(dx: i64, dy: i64) -> Result<Direction> {
    if dx == 0 && dy == 0 {
        return Err(Error::InvalidDirection);
    }
    let g = dx.gcd(&dy);
    let (mut dx, mut dy) = (dx / g, dy / g);
    if dy < 0 || (dy == 0 && dx < 0) {
        dx = -dx;
        dy = -dy;
    }
    Ok(Direction { dx, dy })
}
