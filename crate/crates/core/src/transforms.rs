//! Constructive maps between configurations: strongification, truncation
//! pullback, the grid embedding, and infinitesimal scaling.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{box_points, GridPoint};
use crate::index::{Letter, Level, Node};
use crate::limits::Limits;
use crate::patterns::ConsistencyInterface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Codomain {
    /// Nodes of `(2²)^{2d}`.
    Level2d,
    /// Points of the `4^d × 4^d` box.
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Node(Node),
    Point(GridPoint),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Node(n) => n.fmt(f),
            Target::Point(p) => p.fmt(f),
        }
    }
}

/// A table from `(2²)^depth` into a level or a grid box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IndexMapJson", into = "IndexMapJson")]
pub struct IndexMap {
    pub depth: usize,
    pub codomain: Codomain,
    pub entries: Vec<(Node, Target)>,
}

#[derive(Clone, Serialize, Deserialize)]
struct IndexMapJson {
    depth: usize,
    codomain: Codomain,
    map: Vec<(String, String)>,
}

impl From<IndexMap> for IndexMapJson {
    fn from(m: IndexMap) -> Self {
        IndexMapJson {
            depth: m.depth,
            codomain: m.codomain,
            map: m.entries.iter().map(|(s, t)| (s.to_string(), t.to_string())).collect(),
        }
    }
}

impl TryFrom<IndexMapJson> for IndexMap {
    type Error = Error;

    fn try_from(j: IndexMapJson) -> Result<Self> {
        let entries = j
            .map
            .iter()
            .map(|(s, t)| {
                let target = match j.codomain {
                    Codomain::Level2d => Target::Node(t.parse()?),
                    Codomain::Grid => Target::Point(t.parse()?),
                };
                Ok((s.parse()?, target))
            })
            .collect::<Result<_>>()?;
        Ok(IndexMap {
            depth: j.depth,
            codomain: j.codomain,
            entries,
        })
    }
}

impl IndexMap {
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.entries.iter().all(|(_, t)| seen.insert(t))
    }

    pub fn get(&self, node: &Node) -> Option<&Target> {
        // entries follow level order, so the level index is the position
        let hit = self.entries.get(node.level_index() as usize)?;
        (hit.0 == *node).then_some(&hit.1)
    }
}

/// `f(σ)(2t) = (first(σ(t)), 0)` and `f(σ)(2t+1) = σ(t)`.
pub fn strongify_node(sigma: &Node) -> Node {
    Node::from_letters(
        sigma
            .letters()
            .iter()
            .flat_map(|&l| [Letter::new(l.first(), 0), l])
            .collect(),
    )
}

/// Strongification map from `(2²)^d` into `(2²)^{2d}`.
pub fn strongify_index(depth: usize, limits: &Limits) -> Result<IndexMap> {
    Level::new(2 * depth, limits)?;
    let entries = Level::new(depth, limits)?
        .nodes()
        .map(|s| {
            let t = strongify_node(&s);
            (s, Target::Node(t))
        })
        .collect();
    Ok(IndexMap {
        depth,
        codomain: Codomain::Level2d,
        entries,
    })
}

/// Pulls a weave on `(2²)^{2d}` back along the strongification map. A
/// (k,m,n)-weave becomes a strong (k,m,n)-weave on `(2²)^d`.
pub fn strongify_weave(
    ci: &ConsistencyInterface<Node>,
    depth: usize,
    limits: &Limits,
) -> Result<ConsistencyInterface<Node>> {
    if let Some(stray) = ci.indices().iter().find(|n| n.depth() != 2 * depth) {
        return Err(Error::arg(format!("index {stray} is not in level {}", 2 * depth)));
    }
    let nodes = Level::new(depth, limits)?.nodes().collect();
    ci.pullback(nodes, |s| Ok(strongify_node(s)))
}

/// Pulls `ci` back to `(2²)^{depth0}` along `f`, which must satisfy
/// `σ ⪯ f(σ)`. Combs are preserved by such maps, so weaves pull back to
/// weaves.
pub fn pullback(
    ci: &ConsistencyInterface<Node>,
    depth0: usize,
    f: impl Fn(&Node) -> Node,
    limits: &Limits,
) -> Result<ConsistencyInterface<Node>> {
    let nodes = Level::new(depth0, limits)?.nodes().collect();
    ci.pullback(nodes, |s| {
        let t = f(s);
        if !s.is_prefix_of(&t) {
            return Err(Error::arg(format!("{s} is not a prefix of its image {t}")));
        }
        Ok(t)
    })
}

/// Offsets of the four letters in units of `W`, indexed by letter code.
pub const GRID_BASE: [(i64, i64); 4] = [(0, 1), (1, 0), (2, 3), (3, 2)];

/// Image of `σ` in the `4^d × 4^d` box. The outermost letter selects an
/// offset at scale `W = 4^{d−1}`: `(0,0) ↦ (0,W)`, `(0,1) ↦ (W,0)`,
/// `(1,0) ↦ (2W,3W)`, `(1,1) ↦ (3W,2W)`.
pub fn grid_embed_node(sigma: &Node) -> Result<GridPoint> {
    grid_embed_node_with(sigma, &GRID_BASE)
}

/// [`grid_embed_node`] with a caller-supplied base table.
pub fn grid_embed_node_with(sigma: &Node, base: &[(i64, i64); 4]) -> Result<GridPoint> {
    let d = sigma.depth();
    if d > 31 {
        return Err(Error::resource(format!("grid embedding at depth {d}"), 31u32));
    }
    let mut p = GridPoint::new(0, 0);
    for (pos, l) in sigma.letters().iter().enumerate() {
        let w = 1i64 << (2 * (d - 1 - pos));
        let (bx, by) = base[l.code() as usize];
        p = GridPoint::new(p.x + bx * w, p.y + by * w);
    }
    Ok(p)
}

pub fn grid_embed_index(depth: usize, limits: &Limits) -> Result<IndexMap> {
    let entries = Level::new(depth, limits)?
        .nodes()
        .map(|s| Ok((s.clone(), Target::Point(grid_embed_node(&s)?))))
        .collect::<Result<_>>()?;
    Ok(IndexMap {
        depth,
        codomain: Codomain::Grid,
        entries,
    })
}

/// Pulls a grid on the `4^d × 4^d` box back to `(2²)^d` along the grid
/// embedding. Up-combs land on antichains and wide right-combs on strict
/// chains, so a k-grid becomes a strong (k,ω,ω)-weave.
pub fn grid_to_weave(
    ci: &ConsistencyInterface<GridPoint>,
    depth: usize,
    limits: &Limits,
) -> Result<ConsistencyInterface<Node>> {
    let side = 1usize
        .checked_shl(2 * depth as u32)
        .ok_or_else(|| Error::resource(format!("grid box at depth {depth}"), 31u32))?;
    if ci.indices().len() != side * side {
        return Err(Error::arg(format!(
            "expected {} indices for the {side}×{side} box, got {}",
            side * side,
            ci.indices().len()
        )));
    }
    let nodes = Level::new(depth, limits)?.nodes().collect();
    ci.pullback(nodes, grid_embed_node)
}

/// The value `a − b·ε` for a positive infinitesimal ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, u64)", into = "(i64, u64)")]
pub struct EpsCoord {
    pub a: i64,
    pub b: u64,
}

impl From<(i64, u64)> for EpsCoord {
    fn from((a, b): (i64, u64)) -> Self {
        EpsCoord { a, b }
    }
}

impl From<EpsCoord> for (i64, u64) {
    fn from(c: EpsCoord) -> Self {
        (c.a, c.b)
    }
}

impl Ord for EpsCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then(other.b.cmp(&self.b))
    }
}

impl PartialOrd for EpsCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point with infinitesimally perturbed coordinates, under the product order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsPoint {
    pub x: EpsCoord,
    pub y: EpsCoord,
}

impl EpsPoint {
    pub fn le(self, other: EpsPoint) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn lt_both(self, other: EpsPoint) -> bool {
        self.x < other.x && self.y < other.y
    }

    pub fn comparable(self, other: EpsPoint) -> bool {
        self.le(other) || other.le(self)
    }

    pub fn strictly_comparable(self, other: EpsPoint) -> bool {
        self.lt_both(other) || other.lt_both(self)
    }
}

impl fmt::Display for EpsPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}),({},{})", self.x.a, self.x.b, self.y.a, self.y.b)
    }
}

impl FromStr for EpsPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            position: 0,
            message: format!("expected (a,b),(c,d), got {s:?}"),
        };
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (xs, ys) = inner.split_once("),(").ok_or_else(bad)?;
        let coord = |t: &str| -> Result<EpsCoord> {
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok(EpsCoord {
                a: a.trim().parse().map_err(|_| bad())?,
                b: b.trim().parse().map_err(|_| bad())?,
            })
        };
        Ok(EpsPoint {
            x: coord(xs)?,
            y: coord(ys)?,
        })
    }
}

/// `(i,j) ↦ ((1−ε)i, (1−ε)j)`.
pub fn eps_point(p: GridPoint) -> EpsPoint {
    let c = |v: i64| EpsCoord { a: v, b: v.unsigned_abs() };
    EpsPoint { x: c(p.x), y: c(p.y) }
}

/// Reindexes a grid on the `side × side` box by the scaled points.
pub fn epsilon_scale(ci: &ConsistencyInterface<GridPoint>, side: usize) -> Result<ConsistencyInterface<EpsPoint>> {
    let points = box_points(side);
    let scaled: Vec<EpsPoint> = points.iter().map(|&p| eps_point(p)).collect();
    ci.pullback(scaled, |e| {
        Ok(GridPoint::new(e.x.a, e.y.a))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combs::{split_relation, SplitKind};

    fn node(s: &str) -> Node {
        s.parse().unwrap()
    }

    #[test]
    fn strongify_examples() {
        assert_eq!(strongify_node(&node("2")), node("22"));
        assert_eq!(strongify_node(&node("1")), node("01"));
        assert_eq!(strongify_node(&node("13")), node("0123"));
        let up = split_relation(&[strongify_node(&node("0"))], &[strongify_node(&node("1"))]).unwrap();
        assert_eq!(up[0].kind, SplitKind::NarrowBelow(0));
        let right = split_relation(&[strongify_node(&node("0"))], &[strongify_node(&node("2"))]).unwrap();
        assert!(right.iter().any(|w| w.kind == SplitKind::WideLeft));
        // a wide pair lands on a narrow one, which is what makes the pullback strong
        let wide = split_relation(&[strongify_node(&node("0"))], &[strongify_node(&node("3"))]).unwrap();
        assert!(wide.iter().any(|w| w.kind == SplitKind::NarrowLeft(0)));
    }

    #[test]
    fn grid_embed_base_table() {
        let m = grid_embed_index(1, &Limits::default()).unwrap();
        let pts: Vec<String> = m.entries.iter().map(|(_, t)| t.to_string()).collect();
        assert_eq!(pts, ["0,1", "1,0", "2,3", "3,2"]);
        assert!(m.is_injective());
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"depth":1,"codomain":"grid","map":[["0","0,1"],["1","1,0"],["2","2,3"],["3","3,2"]]}"#
        );
        assert_eq!(serde_json::from_str::<IndexMap>(&json).unwrap(), m);
        assert_eq!(grid_embed_node(&Node::empty()).unwrap(), GridPoint::new(0, 0));
    }

    #[test]
    fn eps_order() {
        let e = |a, b| EpsCoord { a, b };
        assert!(e(1, 1) < e(1, 0));
        assert!(e(0, 0) < e(1, 1));
        let tied = [eps_point(GridPoint::new(0, 0)), eps_point(GridPoint::new(0, 1))];
        assert!(!tied[0].strictly_comparable(tied[1]));
        let p = eps_point(GridPoint::new(2, 3));
        assert_eq!(p.to_string().parse::<EpsPoint>().unwrap(), p);
        assert_eq!(serde_json::to_string(&e(2, 2)).unwrap(), "[2,2]");
    }

    #[test]
    fn pullback_contract() {
        let l = Limits::default();
        let ss = crate::patterns::weave_witness(2, 2, crate::combs::Bound::Omega, false, &l).unwrap();
        let ci: ConsistencyInterface<Node> = ss.into();
        assert!(pullback(&ci, 1, |s| s.extend(Letter::new(0, 0)), &l).is_ok());
        let err = pullback(&ci, 1, |_| node("00"), &l).unwrap_err();
        assert!(err.to_string().contains("1 is not a prefix"));
    }
}
