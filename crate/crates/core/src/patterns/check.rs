use itertools::Itertools;

use super::{Certificate, ConsistencyInterface, Report, Violation, ViolationKind};
use crate::cographs::Graph;
use crate::combs::{enumerate_comb_indices, is_comb, Bound, CombClass, Reading};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::{box_points, enumerate_families, GridFamily, GridPoint};
use crate::index::{Level, Node};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest family size for the consistency clauses; `None` picks the
    /// checker's default.
    pub cap: Option<usize>,
    pub max_violations: usize,
    pub exec: Exec,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cap: None,
            max_violations: 10,
            exec: Exec::default(),
        }
    }
}

/// Parameters of a (strong) (k,m,n)-weave of finite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeaveSpec {
    pub depth: usize,
    pub k: usize,
    pub m: Bound,
    pub n: Bound,
    pub strong: bool,
    pub reading: Reading,
}

impl WeaveSpec {
    pub fn new(depth: usize, k: usize, m: Bound, n: Bound, strong: bool) -> WeaveSpec {
        WeaveSpec {
            depth,
            k,
            m,
            n,
            strong,
            reading: Reading::Recursive,
        }
    }

    pub fn default_cap(&self) -> usize {
        self.k.max(2 * self.depth).max(8)
    }

    /// Class whose members must be consistent.
    pub fn consistent_class(&self) -> CombClass {
        if self.strong {
            CombClass::wide_right(self.n, self.reading)
        } else {
            CombClass::right(self.n)
        }
    }

    pub fn inconsistent_class(&self) -> CombClass {
        CombClass::up(self.m)
    }
}

/// Parameters of a (strong) k-grid on a square box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub side: usize,
    pub k: usize,
    pub strong: bool,
}

impl GridSpec {
    pub fn default_cap(&self) -> usize {
        self.k.max(2 * self.side.saturating_sub(1) + 1)
    }
}

/// Positions into `ci` of each family member that fails its requirement.
fn failing<I: super::IndexKey>(
    ci: &ConsistencyInterface<I>,
    families: &[Vec<u32>],
    position: &[usize],
    want_consistent: bool,
    exec: Exec,
) -> Vec<usize> {
    exec.filter_map_range(families.len() as u64, |f| {
        let fam: Vec<usize> = families[f as usize]
            .iter()
            .map(|&i| position[i as usize])
            .collect();
        (ci.consistent_positions(&fam) != want_consistent).then_some(f as usize)
    })
}

fn common_atom<I: super::IndexKey>(ci: &ConsistencyInterface<I>, fam: &[usize]) -> Option<String> {
    let ss = ci.as_sets()?;
    ss.first_common_atom(fam).map(|a| ss.universe()[a].clone())
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::arg(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Checks that `ci`, indexed by `(2²)^depth`, is a (strong) (k,m,n)-weave:
/// every up-m-comb is k-inconsistent and every right-n-comb (wide right-n-comb
/// when strong) of size at most the cap is consistent.
///
/// Up-combs are closed under subsets, so it suffices to examine those of size
/// exactly `k`.
pub fn check_weave(
    ci: &ConsistencyInterface<Node>,
    spec: &WeaveSpec,
    opts: &CheckOptions,
    limits: &Limits,
) -> Result<Report> {
    check_k(spec.k)?;
    let level = Level::new(spec.depth, limits)?;
    if let Some(stray) = ci.indices().iter().find(|n| n.depth() != spec.depth) {
        return Err(Error::arg(format!("index {stray} is not in level {}", spec.depth)));
    }
    let position = level
        .nodes()
        .map(|n| {
            ci.position_of(&n)
                .ok_or_else(|| Error::arg(format!("missing index {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let cap = opts.cap.unwrap_or_else(|| spec.default_cap());

    let up = spec.inconsistent_class();
    let mut up_families = enumerate_comb_indices(spec.depth, up, spec.k, limits)?;
    up_families.retain(|f| f.len() == spec.k);
    let cons = spec.consistent_class();
    let cons_families = enumerate_comb_indices(spec.depth, cons, cap, limits)?;

    let bad_up = failing(ci, &up_families, &position, false, opts.exec);
    let bad_cons = failing(ci, &cons_families, &position, true, opts.exec);
    let total = bad_up.len() + bad_cons.len();

    let to_nodes = |f: &[u32]| -> Vec<Node> {
        f.iter()
            .map(|&i| Node::from_level_index(u64::from(i), spec.depth))
            .collect()
    };
    let make = |f: &[u32], kind: ViolationKind, class: CombClass| {
        let nodes = to_nodes(f);
        let tree = is_comb(&nodes, class)
            .expect("enumerated families are well-formed")
            .expect("enumerated families are members of their class");
        let fam: Vec<usize> = f.iter().map(|&i| position[i as usize]).collect();
        Violation {
            kind,
            indices: nodes.iter().map(|n| n.to_string()).collect(),
            certificate: Certificate::Comb {
                class: class.to_string(),
                tree,
            },
            common_atom: match kind {
                ViolationKind::Inconsistency => common_atom(ci, &fam),
                ViolationKind::Consistency => None,
            },
        }
    };
    let violations = bad_up
        .iter()
        .map(|&f| make(&up_families[f], ViolationKind::Inconsistency, up))
        .chain(
            bad_cons
                .iter()
                .map(|&f| make(&cons_families[f], ViolationKind::Consistency, cons)),
        )
        .take(opts.max_violations)
        .collect();
    Ok(Report::from_parts(
        Some(cap),
        violations,
        total,
        (up_families.len() + cons_families.len()) as u64,
    ))
}

/// Checks that `ci`, indexed by the `side × side` box, is a (strong) k-grid:
/// every antichain is k-inconsistent and every strict chain (every chain when
/// strong) of size at most the cap is consistent.
pub fn check_grid(
    ci: &ConsistencyInterface<GridPoint>,
    spec: &GridSpec,
    opts: &CheckOptions,
    limits: &Limits,
) -> Result<Report> {
    check_k(spec.k)?;
    let points = box_points(spec.side);
    if ci.indices().len() != points.len() {
        return Err(Error::arg(format!(
            "expected {} indices for the {s}×{s} box, got {}",
            points.len(),
            ci.indices().len(),
            s = spec.side
        )));
    }
    let position = points
        .iter()
        .map(|p| {
            ci.position_of(p)
                .ok_or_else(|| Error::arg(format!("missing index {p}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let cap = opts.cap.unwrap_or_else(|| spec.default_cap());
    let anti = enumerate_families(spec.side, GridFamily::Antichain, spec.k, spec.k, limits.max_families)?;
    let chain_kind = if spec.strong {
        GridFamily::Chain
    } else {
        GridFamily::StrictChain
    };
    let chains = enumerate_families(spec.side, chain_kind, 1, cap, limits.max_families)?;

    let bad_anti = failing(ci, &anti, &position, false, opts.exec);
    let bad_chain = failing(ci, &chains, &position, true, opts.exec);
    let total = bad_anti.len() + bad_chain.len();

    let make = |f: &[u32], kind: ViolationKind, certificate: Certificate| {
        let fam: Vec<usize> = f.iter().map(|&i| position[i as usize]).collect();
        Violation {
            kind,
            indices: f.iter().map(|&i| points[i as usize].to_string()).collect(),
            certificate,
            common_atom: match kind {
                ViolationKind::Inconsistency => common_atom(ci, &fam),
                ViolationKind::Consistency => None,
            },
        }
    };
    let chain_cert = if spec.strong {
        Certificate::Chain
    } else {
        Certificate::StrictChain
    };
    let violations = bad_anti
        .iter()
        .map(|&f| make(&anti[f], ViolationKind::Inconsistency, Certificate::Antichain))
        .chain(
            bad_chain
                .iter()
                .map(|&f| make(&chains[f], ViolationKind::Consistency, chain_cert.clone())),
        )
        .take(opts.max_violations)
        .collect();
    Ok(Report::from_parts(
        Some(cap),
        violations,
        total,
        (anti.len() + chains.len()) as u64,
    ))
}

/// Checks that `ci`, indexed by the vertices of `graph`, is a consistency
/// pattern for it: a vertex set is consistent exactly when it is independent.
/// Vertex sets up to the cap (default `min(n, 16)`) are examined.
pub fn check_graph_pattern(
    ci: &ConsistencyInterface<usize>,
    graph: &Graph,
    opts: &CheckOptions,
    limits: &Limits,
) -> Result<Report> {
    let n = graph.n();
    if ci.indices().len() != n {
        return Err(Error::arg(format!(
            "expected {n} vertex indices, got {}",
            ci.indices().len()
        )));
    }
    let position = (0..n)
        .map(|v| {
            ci.position_of(&v)
                .ok_or_else(|| Error::arg(format!("missing index {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let cap = opts.cap.unwrap_or(n.min(16)).min(n);
    let total: u128 = (0..=cap).map(|s| binomial(n, s)).sum();
    if total > limits.max_families {
        return Err(Error::resource(
            format!("{total} vertex subsets of size at most {cap}"),
            limits.max_families,
        ));
    }
    let families: Vec<Vec<u32>> = (0..=cap)
        .flat_map(|s| (0..n as u32).combinations(s))
        .collect();
    let bad = opts.exec.filter_map_range(families.len() as u64, |f| {
        let vs: Vec<usize> = families[f as usize].iter().map(|&v| v as usize).collect();
        let fam: Vec<usize> = vs.iter().map(|&v| position[v]).collect();
        let independent = graph.is_independent(&vs);
        (ci.consistent_positions(&fam) != independent).then_some(f as usize)
    });
    let violations = bad
        .iter()
        .take(opts.max_violations)
        .map(|&f| {
            let vs: Vec<usize> = families[f].iter().map(|&v| v as usize).collect();
            let fam: Vec<usize> = vs.iter().map(|&v| position[v]).collect();
            let (kind, certificate) = match graph.first_edge_within(&vs) {
                Some((u, v)) => (ViolationKind::Inconsistency, Certificate::Edge([u, v])),
                None => (ViolationKind::Consistency, Certificate::Independent),
            };
            Violation {
                kind,
                indices: vs.iter().map(|v| v.to_string()).collect(),
                certificate,
                common_atom: match kind {
                    ViolationKind::Inconsistency => common_atom(ci, &fam),
                    ViolationKind::Consistency => None,
                },
            }
        })
        .collect();
    Ok(Report::from_parts(
        Some(cap),
        violations,
        bad.len(),
        families.len() as u64,
    ))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
