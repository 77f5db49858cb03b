//! Cographs: the union/join algebra, recognition, the comb graph, and the
//! bridges between graph patterns and weaves.

mod bridge;
mod cotree;
mod embed;
mod graph;

pub use bridge::{graph_to_weave_oracle, weave_to_graph_oracle};
pub use cotree::{cotree_of, eval_cotree, find_p4, random_cotree, random_graph, Cotree, P4Certificate};
pub use embed::{comb_graph, embed_cograph, CographEmbedding, CombGraph};
pub use graph::{combine, Graph, GraphOp};
