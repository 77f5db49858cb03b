use super::{ConsistencyInterface, PredicateOracle};
use crate::cographs::Graph;
use crate::error::{Error, Result};

/// Finite edge pattern behind the triangle-free random graph argument.
///
/// Pair `P_i = (u_i, v_i)` uses vertices `2i` and `2i+1`. On the p side the
/// only edges are `v_i – u_j` for `i < j`; on the q side there are none. A
/// family of pairs is consistent when the union of their endpoints is
/// independent, since a fresh common neighbour can then be added without
/// creating a triangle.
#[derive(Clone, Debug)]
pub struct TriangleFreeDemo {
    pub len: usize,
    pub p_graph: Graph,
    pub q_graph: Graph,
    pub p: ConsistencyInterface<usize>,
    pub q: ConsistencyInterface<usize>,
}

fn pair_oracle(graph: &Graph) -> ConsistencyInterface<usize> {
    let g = graph.clone();
    let len = graph.n() / 2;
    let oracle = PredicateOracle::new((0..len).collect(), move |pairs: &[usize]| {
        let vs: Vec<usize> = pairs.iter().flat_map(|&i| [2 * i, 2 * i + 1]).collect();
        g.is_independent(&vs)
    })
    .expect("pair ids are distinct");
    ConsistencyInterface::Oracle(oracle)
}

pub fn triangle_free_demo(len: usize) -> Result<TriangleFreeDemo> {
    if len < 2 {
        return Err(Error::arg(format!("triangle-free demo needs at least two pairs, got {len}")));
    }
    let mut p_graph = Graph::empty(2 * len);
    for i in 0..len {
        for j in i + 1..len {
            p_graph.add_edge(2 * i + 1, 2 * j);
        }
    }
    let q_graph = Graph::empty(2 * len);
    Ok(TriangleFreeDemo {
        len,
        p: pair_oracle(&p_graph),
        q: pair_oracle(&q_graph),
        p_graph,
        q_graph,
    })
}
