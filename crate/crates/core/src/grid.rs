//! Points of `ℤ²` under the product order, and chains/antichains of a
//! square box.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64) -> GridPoint {
        GridPoint { x, y }
    }

    /// Product order `≤`.
    pub fn le(self, other: GridPoint) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Strictly smaller in both coordinates.
    pub fn lt_both(self, other: GridPoint) -> bool {
        self.x < other.x && self.y < other.y
    }

    pub fn comparable(self, other: GridPoint) -> bool {
        self.le(other) || other.le(self)
    }

    pub fn strictly_comparable(self, other: GridPoint) -> bool {
        self.lt_both(other) || other.lt_both(self)
    }

    pub fn incomparable(self, other: GridPoint) -> bool {
        !self.comparable(other)
    }

    pub fn partial_cmp_product(self, other: GridPoint) -> Option<Ordering> {
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for GridPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<GridPoint> {
        let bad = || Error::Parse {
            position: 0,
            message: format!("grid point must be written `i,j`, got {s:?}"),
        };
        let (x, y) = s.split_once(',').ok_or_else(bad)?;
        Ok(GridPoint {
            x: x.trim().parse().map_err(|_| bad())?,
            y: y.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Which pairwise relation a family of grid points must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridFamily {
    /// Pairwise strictly increasing in both coordinates.
    StrictChain,
    /// Pairwise comparable in the product order.
    Chain,
    /// Pairwise incomparable.
    Antichain,
}

impl GridFamily {
    pub fn related(self, a: GridPoint, b: GridPoint) -> bool {
        match self {
            GridFamily::StrictChain => a.strictly_comparable(b),
            GridFamily::Chain => a != b && a.comparable(b),
            GridFamily::Antichain => a.incomparable(b),
        }
    }

    pub fn holds(self, points: &[GridPoint]) -> bool {
        points
            .iter()
            .enumerate()
            .all(|(i, &a)| points[i + 1..].iter().all(|&b| self.related(a, b)))
    }

    /// Successor rule once points are sorted lexicographically.
    fn next_ok(self, prev: GridPoint, next: GridPoint) -> bool {
        match self {
            GridFamily::StrictChain => prev.lt_both(next),
            GridFamily::Chain => prev.le(next) && prev != next,
            GridFamily::Antichain => next.x > prev.x && next.y < prev.y,
        }
    }
}

/// Row-major position of a point in the `side × side` box.
pub fn box_position(p: GridPoint, side: usize) -> usize {
    p.x as usize * side + p.y as usize
}

pub fn box_points(side: usize) -> Vec<GridPoint> {
    (0..side as i64)
        .flat_map(|x| (0..side as i64).map(move |y| GridPoint { x, y }))
        .collect()
}

/// All nonempty families of the given type in the `side × side` box with
/// `min_size..=max_size` points, as sorted box positions ordered by size and
/// then lexicographically. Fails once more than `max_count` families exist.
pub fn enumerate_families(
    side: usize,
    family: GridFamily,
    min_size: usize,
    max_size: usize,
    max_count: u128,
) -> Result<Vec<Vec<u32>>> {
    struct Walk<'a> {
        points: &'a [GridPoint],
        family: GridFamily,
        min_size: usize,
        max_size: usize,
        max_count: u128,
        stack: Vec<u32>,
        out: Vec<Vec<u32>>,
    }
    impl Walk<'_> {
        fn dfs(&mut self, start: usize) -> bool {
            if self.stack.len() >= self.min_size.max(1) {
                if self.out.len() as u128 >= self.max_count {
                    return false;
                }
                self.out.push(self.stack.clone());
            }
            if self.stack.len() == self.max_size {
                return true;
            }
            for i in start..self.points.len() {
                let ok = self.stack.last().is_none_or(|&last| {
                    self.family.next_ok(self.points[last as usize], self.points[i])
                });
                if ok {
                    self.stack.push(i as u32);
                    let fine = self.dfs(i + 1);
                    self.stack.pop();
                    if !fine {
                        return false;
                    }
                }
            }
            true
        }
    }
    let points = box_points(side);
    let mut walk = Walk {
        points: &points,
        family,
        min_size,
        max_size,
        max_count,
        stack: Vec::new(),
        out: Vec::new(),
    };
    if !walk.dfs(0) {
        return Err(Error::resource(
            format!("{family:?} families in the {side}×{side} box up to size {max_size}"),
            max_count,
        ));
    }
    let mut out = walk.out;
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
