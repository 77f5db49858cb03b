use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::graph::{Graph, GraphOp};
use crate::error::{Error, Result};

/// Decomposition tree of a cograph. Two leaves are adjacent iff their lowest
/// common ancestor is a join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Cotree {
    Leaf { vertex: usize },
    Union { children: Vec<Cotree> },
    Join { children: Vec<Cotree> },
}

impl Cotree {
    pub fn leaf(vertex: usize) -> Cotree {
        Cotree::Leaf { vertex }
    }

    pub fn union(children: Vec<Cotree>) -> Cotree {
        Cotree::Union { children }
    }

    pub fn join(children: Vec<Cotree>) -> Cotree {
        Cotree::Join { children }
    }

    pub fn node(op: GraphOp, children: Vec<Cotree>) -> Cotree {
        match op {
            GraphOp::Union => Cotree::Union { children },
            GraphOp::Join => Cotree::Join { children },
        }
    }

    /// `None` for leaves.
    pub fn op(&self) -> Option<(GraphOp, &[Cotree])> {
        match self {
            Cotree::Leaf { .. } => None,
            Cotree::Union { children } => Some((GraphOp::Union, children)),
            Cotree::Join { children } => Some((GraphOp::Join, children)),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self.op() {
            None => {
                if let Cotree::Leaf { vertex } = self {
                    out.push(*vertex);
                }
            }
            Some((_, children)) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Checks that internal nodes have at least two children and that the
    /// leaves are exactly `0..n`; returns `n`.
    pub fn validate(&self) -> Result<usize> {
        fn arity(t: &Cotree) -> Result<()> {
            if let Some((op, children)) = t.op() {
                if children.len() < 2 {
                    return Err(Error::arg(format!(
                        "{op:?} node with {} child(ren); internal nodes need at least two",
                        children.len()
                    )));
                }
                children.iter().try_for_each(arity)?;
            }
            Ok(())
        }
        arity(self)?;
        let leaves = self.leaves();
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n {
                return Err(Error::arg(format!(
                    "leaf vertex {v} outside 0..{n}; leaves must be exactly 0..n"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::arg(format!("duplicate leaf vertex {v}")));
            }
        }
        Ok(n)
    }

    /// Merges nested nodes carrying the same label, so labels alternate.
    pub fn normalized(&self) -> Cotree {
        match self.op() {
            None => self.clone(),
            Some((op, children)) => {
                let mut flat = Vec::new();
                for c in children {
                    let c = c.normalized();
                    match c.op() {
                        Some((cop, grandchildren)) if cop == op => flat.extend_from_slice(grandchildren),
                        _ => flat.push(c),
                    }
                }
                Cotree::node(op, flat)
            }
        }
    }

    /// Normalized form with children ordered by their smallest leaf; two
    /// cotrees denote the same graph iff their canonical forms are equal.
    pub fn canonical(&self) -> Cotree {
        fn sort(t: Cotree) -> (usize, Cotree) {
            let (op, children) = match t {
                Cotree::Leaf { vertex } => return (vertex, t),
                Cotree::Union { children } => (GraphOp::Union, children),
                Cotree::Join { children } => (GraphOp::Join, children),
            };
            let mut keyed: Vec<(usize, Cotree)> = children.into_iter().map(sort).collect();
            keyed.sort_by_key(|(k, _)| *k);
            let min = keyed.first().map_or(usize::MAX, |(k, _)| *k);
            (min, Cotree::node(op, keyed.into_iter().map(|(_, c)| c).collect()))
        }
        sort(self.normalized()).1
    }

    /// Longest root-to-leaf path, counted in internal nodes.
    pub fn height(&self) -> usize {
        match self.op() {
            None => 0,
            Some((_, children)) => 1 + children.iter().map(Cotree::height).max().unwrap_or(0),
        }
    }

    /// DOT text for the tree, nodes numbered in preorder.
    pub fn to_dot(&self) -> String {
        fn walk(t: &Cotree, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            match t {
                Cotree::Leaf { vertex } => {
                    let _ = writeln!(out, "  n{id} [label=\"{vertex}\", shape=box];");
                }
                Cotree::Union { children } | Cotree::Join { children } => {
                    let label = if matches!(t, Cotree::Union { .. }) { "union" } else { "join" };
                    let _ = writeln!(out, "  n{id} [label=\"{label}\"];");
                    for c in children {
                        let cid = walk(c, next, out);
                        let _ = writeln!(out, "  n{id} -> n{cid};");
                    }
                }
            }
            id
        }
        let mut out = String::from("digraph cotree {\n");
        walk(self, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}

/// The graph a cotree denotes.
pub fn eval_cotree(tree: &Cotree) -> Result<Graph> {
    let n = tree.validate()?;
    let mut g = Graph::empty(n);
    fn fill(t: &Cotree, g: &mut Graph) -> Vec<usize> {
        match t {
            Cotree::Leaf { vertex } => vec![*vertex],
            Cotree::Union { children } => children.iter().flat_map(|c| fill(c, g)).collect(),
            Cotree::Join { children } => {
                let parts: Vec<Vec<usize>> = children.iter().map(|c| fill(c, g)).collect();
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        for &u in a {
                            for &v in b {
                                g.add_edge(u, v);
                            }
                        }
                    }
                }
                parts.concat()
            }
        }
    }
    fill(tree, &mut g);
    Ok(g)
}

/// An induced path `a – b – c – d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct P4Certificate(pub [usize; 4]);

/// First induced path on four vertices in lexicographic order of `(a,b,c,d)`.
pub fn find_p4(g: &Graph) -> Option<P4Certificate> {
    let n = g.n();
    for a in 0..n {
        for b in g.neighbors(a).ones() {
            for c in g.neighbors(b).ones() {
                if c == a || g.has_edge(a, c) {
                    continue;
                }
                for d in g.neighbors(c).ones() {
                    if d != a && d != b && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some(P4Certificate([a, b, c, d]));
                    }
                }
            }
        }
    }
    None
}

/// Connected components of `g[vs]` (or of its complement), each sorted,
/// ordered by smallest vertex.
fn components(g: &Graph, vs: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut inside = FixedBitSet::with_capacity(g.n());
    vs.iter().for_each(|&v| inside.insert(v));
    let mut unseen = inside.clone();
    let mut out = Vec::new();
    for &start in vs {
        if !unseen.contains(start) {
            continue;
        }
        unseen.set(start, false);
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            let mut next = unseen.clone();
            if complement {
                next.difference_with(g.neighbors(u));
            } else {
                next.intersect_with(g.neighbors(u));
            }
            for w in next.ones() {
                unseen.set(w, false);
                comp.push(w);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Cotree of `g`, or an induced P₄ when `g` is not a cograph.
///
/// Uses the recursive characterization: every induced subgraph on at least
/// two vertices of a cograph is disconnected or has a disconnected complement.
pub fn cotree_of(g: &Graph) -> std::result::Result<Cotree, P4Certificate> {
    fn rec(g: &Graph, vs: &[usize]) -> Option<Cotree> {
        if vs.len() == 1 {
            return Some(Cotree::leaf(vs[0]));
        }
        for (complement, op) in [(false, GraphOp::Union), (true, GraphOp::Join)] {
            let comps = components(g, vs, complement);
            if comps.len() > 1 {
                let children = comps
                    .iter()
                    .map(|c| rec(g, c))
                    .collect::<Option<Vec<_>>>()?;
                return Some(Cotree::node(op, children));
            }
        }
        None
    }
    if g.n() == 0 {
        // no vertices: nothing to decompose, and no leaf to return
        return Ok(Cotree::union(Vec::new()));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    rec(g, &all).ok_or_else(|| find_p4(g).expect("a graph that is not a cograph has an induced P4"))
}

/// Random cotree with leaves `0..n_leaves`, deterministic in `seed`.
/// Internal nodes have 2 or 3 children and labels alternate by level.
pub fn random_cotree(n_leaves: usize, seed: u64) -> Result<Cotree> {
    if n_leaves == 0 {
        return Err(Error::arg("random_cotree needs at least one leaf"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n_leaves).collect();
    labels.shuffle(&mut rng);
    let root = if rng.random_bool(0.5) {
        GraphOp::Union
    } else {
        GraphOp::Join
    };
    fn build(vs: &[usize], op: GraphOp, rng: &mut ChaCha8Rng) -> Cotree {
        if vs.len() == 1 {
            return Cotree::leaf(vs[0]);
        }
        let parts = rng.random_range(2..=vs.len().min(3));
        let mut cuts: Vec<usize> = (1..vs.len()).collect();
        cuts.shuffle(rng);
        let mut cuts = cuts[..parts - 1].to_vec();
        cuts.sort_unstable();
        let other = match op {
            GraphOp::Union => GraphOp::Join,
            GraphOp::Join => GraphOp::Union,
        };
        let mut children = Vec::with_capacity(parts);
        let mut start = 0;
        for end in cuts.into_iter().chain([vs.len()]) {
            children.push(build(&vs[start..end], other, rng));
            start = end;
        }
        Cotree::node(op, children)
    }
    Ok(build(&labels, root, &mut rng))
}

/// Erdős–Rényi graph `G(n, p)`, deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
