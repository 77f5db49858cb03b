use serde::Serialize;

use super::cotree::{eval_cotree, Cotree};
use super::graph::{Graph, GraphOp};
use crate::combs::{classify_pair, PairClass};
use crate::error::{Error, Result};
use crate::index::{compact_vec, Letter, Node};
use crate::limits::Limits;

/// The comb graph on `(2²)^d`: vertex `i` is the node with level index `i`,
/// and two vertices are adjacent iff they form an up-1-comb.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombGraph {
    pub depth: usize,
    pub graph: Graph,
    pub cotree: Cotree,
}

pub fn comb_graph(depth: usize, limits: &Limits) -> Result<CombGraph> {
    if depth > limits.max_graph_depth {
        return Err(Error::resource(format!("comb graph at depth {depth}"), limits.max_graph_depth as u128));
    }
    let nodes: Vec<Node> = (0..1u64 << (2 * depth))
        .map(|i| Node::from_level_index(i, depth))
        .collect();
    let mut graph = Graph::empty(nodes.len());
    for (u, a) in nodes.iter().enumerate() {
        for (v, b) in nodes.iter().enumerate().skip(u + 1) {
            if classify_pair(a, b)? == PairClass::UpOne {
                graph.add_edge(u, v);
            }
        }
    }
    let cotree = comb_cotree(depth, 0);
    debug_assert_eq!(eval_cotree(&cotree).ok().as_ref(), Some(&graph));
    Ok(CombGraph { depth, graph, cotree })
}

/// `G_{d+1} = (G_d ∇ G_d) ⊕ (G_d ∇ G_d)`, branching on the first letter:
/// letters 0 and 1 share first coordinate 0 and are joined, likewise 2 and 3.
fn comb_cotree(depth: usize, offset: usize) -> Cotree {
    if depth == 0 {
        return Cotree::leaf(offset);
    }
    let width = 1usize << (2 * (depth - 1));
    let block = |letter: usize| comb_cotree(depth - 1, offset + letter * width);
    Cotree::union(vec![
        Cotree::join(vec![block(0), block(1)]),
        Cotree::join(vec![block(2), block(3)]),
    ])
}

/// Vertex `v` of a cograph goes to `map[v]`; all images have length `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CographEmbedding {
    pub depth: usize,
    #[serde(with = "compact_vec")]
    pub map: Vec<Node>,
}

impl CographEmbedding {
    /// The same embedding with every image right-padded to `depth`.
    pub fn padded(&self, depth: usize) -> Result<CographEmbedding> {
        if depth < self.depth {
            return Err(Error::arg(format!(
                "the embedding needs depth {}, which exceeds {depth}",
                self.depth
            )));
        }
        Ok(CographEmbedding {
            depth,
            map: self.map.iter().map(|n| n.padded(depth, Letter::new(0, 0))).collect(),
        })
    }
}

/// Embeds the cograph of `tree` so that edges become up-1-comb pairs and
/// non-edges wide right-1-comb pairs.
///
/// Children are embedded recursively, padded with `(0,0)` to equal length,
/// and told apart by a prepended letter: `(0,0)`/`(1,0)` for a union,
/// `(0,0)`/`(0,1)` for a join. Nodes with more children fold left.
pub fn embed_cograph(tree: &Cotree) -> Result<CographEmbedding> {
    let n = tree.validate()?;
    let mut map = vec![Node::empty(); n];
    fn rec(t: &Cotree, map: &mut [Node]) -> (usize, Vec<usize>) {
        let (op, children) = match t.op() {
            None => {
                let leaves = t.leaves();
                return (0, leaves);
            }
            Some(x) => x,
        };
        let second = match op {
            GraphOp::Union => Letter::new(1, 0),
            GraphOp::Join => Letter::new(0, 1),
        };
        let (mut depth, mut acc) = rec(&children[0], map);
        for child in &children[1..] {
            let (d, vs) = rec(child, map);
            let target = depth.max(d);
            for &v in &acc {
                map[v] = map[v].padded(target, Letter::new(0, 0)).prepend(Letter::new(0, 0));
            }
            for &v in &vs {
                map[v] = map[v].padded(target, Letter::new(0, 0)).prepend(second);
            }
            depth = target + 1;
            acc.extend(vs);
        }
        (depth, acc)
    }
    let (depth, _) = rec(tree, &mut map);
    Ok(CographEmbedding { depth, map })
}
