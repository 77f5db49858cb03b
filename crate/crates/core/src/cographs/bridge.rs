use super::cotree::{eval_cotree, Cotree};
use super::embed::{comb_graph, embed_cograph};
use crate::combs::Bound;
use crate::error::{Error, Result};
use crate::index::Node;
use crate::limits::Limits;
use crate::patterns::{check_graph_pattern, check_weave, CheckOptions, ConsistencyInterface, WeaveSpec};

/// Reindexes a consistency pattern for the comb graph `G_d` by the nodes of
/// `(2²)^d`. Up-combs are cliques of `G_d` and wide right-combs anticliques,
/// so the result is a strong (2,ω,ω)-weave.
pub fn graph_to_weave_oracle(
    pattern: &ConsistencyInterface<usize>,
    depth: usize,
    opts: &CheckOptions,
    limits: &Limits,
) -> Result<ConsistencyInterface<Node>> {
    let g = comb_graph(depth, limits)?;
    let report = check_graph_pattern(pattern, &g.graph, opts, limits)?;
    if !report.ok {
        return Err(Error::Precondition {
            what: format!("input is not a consistency pattern for the comb graph at depth {depth}"),
            report: Box::new(report),
        });
    }
    let nodes: Vec<Node> = (0..1u64 << (2 * depth))
        .map(|i| Node::from_level_index(i, depth))
        .collect();
    pattern.pullback(nodes, |n| Ok(n.level_index() as usize))
}

/// Pulls a strong (2,1,ω)-weave on `(2²)^depth` back along the embedding of
/// `tree`, giving a consistency pattern for the cograph of `tree`.
pub fn weave_to_graph_oracle(
    ci: &ConsistencyInterface<Node>,
    depth: usize,
    tree: &Cotree,
    opts: &CheckOptions,
    limits: &Limits,
) -> Result<ConsistencyInterface<usize>> {
    let embedding = embed_cograph(tree)?.padded(depth)?;
    let spec = WeaveSpec::new(depth, 2, Bound::Finite(1), Bound::Omega, true);
    let report = check_weave(ci, &spec, opts, limits)?;
    if !report.ok {
        return Err(Error::Precondition {
            what: format!("input is not a strong (2,1,ω)-weave of depth {depth}"),
            report: Box::new(report),
        });
    }
    let n = eval_cotree(tree)?.n();
    ci.pullback((0..n).collect(), |&v| Ok(embedding.map[v].clone()))
}
