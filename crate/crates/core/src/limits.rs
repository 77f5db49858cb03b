/// Bounds shared by the enumerating operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest depth accepted by `enumerate_level` and friends.
    pub max_depth: usize,
    /// Largest depth for the comb graph, whose edge set is quadratic in `4^d`.
    pub max_graph_depth: usize,
    /// Largest number of families a single enumeration may materialize.
    pub max_families: u128,
}

impl Limits {
    pub const DEFAULT_MAX_DEPTH: usize = 12;
    pub const DEFAULT_MAX_GRAPH_DEPTH: usize = 4;
    pub const DEFAULT_MAX_FAMILIES: u128 = 20_000_000;

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: Self::DEFAULT_MAX_DEPTH,
            max_graph_depth: Self::DEFAULT_MAX_GRAPH_DEPTH,
            max_families: Self::DEFAULT_MAX_FAMILIES,
        }
    }
}
