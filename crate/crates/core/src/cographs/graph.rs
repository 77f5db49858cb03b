use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adjacency: Vec<FixedBitSet>,
}

/// Wire form: `{"n":…, "edges":[[u,v],…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::from_edges(j.n, j.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            adjacency: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The path `0 – 1 – … – (n-1)`.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!("edge {{{u},{v}}} leaves the vertex range 0..{n}")));
            }
            if u == v {
                return Err(Error::arg(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adjacency[u]
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adjacency[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        self.first_edge_within(vertices).is_none()
    }

    pub fn first_edge_within(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.iter().enumerate().find_map(|(i, &u)| {
            vs[i + 1..]
                .iter()
                .find(|&&v| self.has_edge(u, v))
                .map(|&v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `v + offset` inside a graph on `n` vertices.
    pub(crate) fn shifted_into(&self, offset: usize, n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(u + offset, v + offset);
        }
        g
    }

    /// DOT text with vertices listed in order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphOp {
    Union,
    Join,
}

/// Disjoint union or join of two graphs; `g1` is relabeled after `g0`.
pub fn combine(op: GraphOp, g0: &Graph, g1: &Graph) -> Graph {
    let (n0, n1) = (g0.n(), g1.n());
    let mut g = g0.shifted_into(0, n0 + n1);
    for (u, v) in g1.edges() {
        g.add_edge(u + n0, v + n0);
    }
    if op == GraphOp::Join {
        for u in 0..n0 {
            for v in n0..n0 + n1 {
                g.add_edge(u, v);
            }
        }
    }
    g
}
