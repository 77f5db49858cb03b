//! Set-system semantics of consistency and checkers for weaves, grids and
//! graph patterns.

mod check;
mod system;
mod template;
mod triangle;
mod witness;

use serde::Serialize;

use crate::combs::CombCertificate;

pub use check::{
    check_graph_pattern, check_grid, check_weave, CheckOptions, GridSpec, WeaveSpec,
};
pub use system::{
    ConsistencyInterface, FamilyEntry, IndexKey, PredicateOracle, SetSystem, SetSystemJson,
};
pub use template::{realizable, Template};
pub use triangle::{triangle_free_demo, TriangleFreeDemo};
pub use witness::{
    graph_witness, graph_witness_materialized, grid_witness, maximal_independent_sets,
    weave_witness, witness, Witness, WitnessKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// A family required to be consistent is not.
    Consistency,
    /// A family required to be k-inconsistent has a consistent k-subfamily.
    Inconsistency,
}

/// Why the offending family was subject to its requirement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Comb { class: String, tree: CombCertificate },
    StrictChain,
    Chain,
    Antichain,
    /// The vertex set is independent, so it must be consistent.
    Independent,
    /// The vertex set spans this edge, so it must be inconsistent.
    Edge([usize; 2]),
    /// The family is listed in the template at this position.
    MustConsist(usize),
    MustKInconsist(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<String>,
    pub certificate: Certificate,
    /// An atom shared by the whole family, when it should not exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_atom: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub ok: bool,
    /// Largest family size examined by the consistency clauses.
    pub cap: Option<usize>,
    pub violations: Vec<Violation>,
    /// Set when more violations were found than were recorded.
    pub truncated: bool,
    /// Number of families examined.
    pub checked: u64,
}

impl Report {
    pub(crate) fn from_parts(
        cap: Option<usize>,
        violations: Vec<Violation>,
        total_violations: usize,
        checked: u64,
    ) -> Report {
        Report {
            ok: total_violations == 0,
            cap,
            truncated: total_violations > violations.len(),
            violations,
            checked,
        }
    }
}
