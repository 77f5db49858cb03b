use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::{ConsistencyInterface, PredicateOracle, SetSystem};
use crate::cographs::Graph;
use crate::combs::{enumerate_comb_indices, Bound, CombClass, Reading};
use crate::error::{Error, Result};
use crate::grid::{box_points, enumerate_families, GridFamily, GridPoint};
use crate::index::{Level, Node};
use crate::limits::Limits;

/// Which canonical witness to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Weave {
        depth: usize,
        k: usize,
        m: Bound,
        n: Bound,
    },
    Grid {
        side: usize,
        k: usize,
        strong: bool,
    },
    Graph(Graph),
}

#[derive(Clone, Debug)]
pub enum Witness {
    Weave(ConsistencyInterface<Node>),
    Grid(ConsistencyInterface<GridPoint>),
    Graph(ConsistencyInterface<usize>),
}

/// Builds the canonical witness for `kind`. Graph witnesses are predicate
/// oracles; use [`graph_witness_materialized`] for explicit sets.
pub fn witness(kind: &WitnessKind, genuine_k: bool, limits: &Limits) -> Result<Witness> {
    Ok(match kind {
        WitnessKind::Weave { depth, k, n, .. } => {
            Witness::Weave(weave_witness(*depth, *k, *n, genuine_k, limits)?.into())
        }
        WitnessKind::Grid { side, strong, .. } => Witness::Grid(grid_witness(*side, *strong, limits)?.into()),
        WitnessKind::Graph(g) => Witness::Graph(graph_witness(g)),
    })
}

fn set_name(prefix: &str, members: impl IntoIterator<Item = String>) -> String {
    format!("{prefix}{{{}}}", members.into_iter().join(","))
}

/// Keeps the families not strictly contained in another one. Families are
/// sorted position lists over a universe of `width` points.
fn maximal_only(families: Vec<Vec<u32>>, width: usize) -> Vec<Vec<u32>> {
    if width <= 64 {
        let masks: HashSet<u64> = families
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &i| m | 1 << i))
            .collect();
        families
            .into_iter()
            .filter(|f| {
                let m = f.iter().fold(0u64, |m, &i| m | 1 << i);
                (0..width).all(|x| m >> x & 1 == 1 || !masks.contains(&(m | 1 << x)))
            })
            .collect()
    } else {
        let all: HashSet<Vec<u32>> = families.iter().cloned().collect();
        families
            .into_iter()
            .filter(|f| {
                (0..width as u32).all(|x| {
                    if f.contains(&x) {
                        return true;
                    }
                    let mut g = f.clone();
                    g.push(x);
                    g.sort_unstable();
                    !all.contains(&g)
                })
            })
            .collect()
    }
}

/// Weave witness on `(2²)^depth`: one atom per maximal wide right-n-comb,
/// with `b_σ` the combs containing σ. A family is then consistent exactly
/// when it lies inside a wide right-n-comb, which no up-pair does.
///
/// With `genuine_k`, every `(k−1)`-subset of the level becomes an atom as well,
/// so up-combs of size `k−1` turn consistent while those of size `k` stay
/// inconsistent.
pub fn weave_witness(
    depth: usize,
    k: usize,
    n: Bound,
    genuine_k: bool,
    limits: &Limits,
) -> Result<SetSystem<Node>> {
    if k < 2 {
        return Err(Error::arg(format!("k must be at least 2, got {k}")));
    }
    let level = Level::new(depth, limits)?;
    let width = level.size() as usize;
    let class = CombClass::wide_right(n, Reading::Recursive);
    let combs = maximal_only(enumerate_comb_indices(depth, class, width, limits)?, width);
    let mut atoms: Vec<Vec<u32>> = combs;
    let mut names: Vec<String> = atoms
        .iter()
        .map(|c| set_name("W", c.iter().map(|&i| Node::from_level_index(u64::from(i), depth).to_string())))
        .collect();
    if genuine_k && k > 2 {
        let extra = binomial(width, k - 1);
        if extra > limits.max_families {
            return Err(Error::resource(format!("{extra} subsets of size {}", k - 1), limits.max_families));
        }
        for s in (0..width as u32).combinations(k - 1) {
            names.push(set_name("S", s.iter().map(|&i| Node::from_level_index(u64::from(i), depth).to_string())));
            atoms.push(s);
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); width];
    for (a, atom) in atoms.iter().enumerate() {
        for &i in atom {
            members[i as usize].push(a);
        }
    }
    let family = level.nodes().zip(members).collect();
    SetSystem::from_positions(names, family)
}

/// Grid witness on the `side × side` box: one atom per maximal strict chain
/// (maximal chain when strong), with `b_p` the chains through `p`.
pub fn grid_witness(side: usize, strong: bool, limits: &Limits) -> Result<SetSystem<GridPoint>> {
    let kind = if strong {
        GridFamily::Chain
    } else {
        GridFamily::StrictChain
    };
    let points = box_points(side);
    let chains = enumerate_families(side, kind, 1, 2 * side, limits.max_families)?;
    let chains = maximal_only(chains, points.len());
    let names = chains
        .iter()
        .map(|c| set_name("C", c.iter().map(|&i| format!("({})", points[i as usize]))))
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (a, c) in chains.iter().enumerate() {
        for &i in c {
            members[i as usize].push(a);
        }
    }
    SetSystem::from_positions(names, points.into_iter().zip(members).collect())
}

/// Graph pattern witness as an oracle: a vertex set is consistent iff it is
/// independent.
pub fn graph_witness(graph: &Graph) -> ConsistencyInterface<usize> {
    let g = graph.clone();
    let oracle = PredicateOracle::new((0..graph.n()).collect(), move |vs: &[usize]| g.is_independent(vs))
        .expect("vertex ids are distinct");
    ConsistencyInterface::Oracle(oracle)
}

/// Graph pattern witness with one atom per maximal independent set.
pub fn graph_witness_materialized(graph: &Graph) -> Result<SetSystem<usize>> {
    let sets = maximal_independent_sets(graph);
    let names = sets
        .iter()
        .map(|s| set_name("I", s.iter().map(|v| v.to_string())))
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); graph.n()];
    for (a, s) in sets.iter().enumerate() {
        for &v in s {
            members[v].push(a);
        }
    }
    SetSystem::from_positions(names, members.into_iter().enumerate().collect())
}

/// All maximal independent sets, each sorted, in lexicographic order
/// (Bron–Kerbosch with pivoting on the complement).
pub fn maximal_independent_sets(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.n();
    let co = graph.complement();
    let mut out = Vec::new();
    fn bk(co: &Graph, r: &mut Vec<usize>, p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_clear() && x.is_clear() {
            let mut s = r.clone();
            s.sort_unstable();
            out.push(s);
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection(co.neighbors(u)).count())
            .expect("p or x is nonempty");
        let mut candidates = p.clone();
        candidates.difference_with(co.neighbors(pivot));
        let mut p = p;
        for v in candidates.ones() {
            r.push(v);
            let mut p2 = p.clone();
            p2.intersect_with(co.neighbors(v));
            let mut x2 = x.clone();
            x2.intersect_with(co.neighbors(v));
            bk(co, r, p2, x2, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    bk(&co, &mut Vec::new(), all, FixedBitSet::with_capacity(n), &mut out);
    out.sort_unstable();
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{check_grid, check_weave, CheckOptions, GridSpec, WeaveSpec};

    #[test]
    fn weave_witness_depth_one() {
        let ss = weave_witness(1, 2, Bound::Omega, false, &Limits::default()).unwrap();
        let ci: ConsistencyInterface<Node> = ss.into();
        let n = |s: &str| s.parse::<Node>().unwrap();
        assert!(!ci.consistent(&[n("0"), n("1")]).unwrap());
        assert!(ci.consistent(&[n("0"), n("2")]).unwrap());
        assert!(ci.consistent(&[n("1"), n("2")]).unwrap());
        let spec = WeaveSpec::new(1, 2, Bound::Finite(1), Bound::Finite(1), true);
        let r = check_weave(&ci, &spec, &CheckOptions::default(), &Limits::default()).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn maximal_wide_combs_at_depth_three() {
        let ss = weave_witness(3, 2, Bound::Omega, false, &Limits::default()).unwrap();
        assert_eq!(ss.universe().len(), 16384);
    }

    #[test]
    fn genuine_k_makes_smaller_families_consistent() {
        let ss = weave_witness(1, 3, Bound::Omega, true, &Limits::default()).unwrap();
        let ci: ConsistencyInterface<Node> = ss.into();
        let n = |s: &str| s.parse::<Node>().unwrap();
        assert!(ci.consistent(&[n("0"), n("1")]).unwrap());
        assert!(!ci.consistent(&[n("0"), n("1"), n("2")]).unwrap());
    }

    #[test]
    fn grid_witness_two_by_two() {
        let ss = grid_witness(2, false, &Limits::default()).unwrap();
        assert_eq!(ss.universe(), ["C{(0,1)}", "C{(1,0)}", "C{(0,0),(1,1)}"]);
        let ci: ConsistencyInterface<GridPoint> = ss.into();
        let p = GridPoint::new;
        assert!(ci.consistent(&[p(0, 0), p(1, 1)]).unwrap());
        assert!(ci.k_inconsistent(&[p(0, 1), p(1, 0)], 2).unwrap());
        for strong in [false, true] {
            let ci: ConsistencyInterface<GridPoint> = grid_witness(3, strong, &Limits::default()).unwrap().into();
            let spec = GridSpec { side: 3, k: 2, strong };
            assert!(check_grid(&ci, &spec, &CheckOptions::default(), &Limits::default()).unwrap().ok);
        }
    }

    #[test]
    fn independent_sets() {
        assert_eq!(maximal_independent_sets(&Graph::path(4)), vec![vec![0, 2], vec![0, 3], vec![1, 3]]);
        assert_eq!(maximal_independent_sets(&Graph::complete(3)), vec![vec![0], vec![1], vec![2]]);
        let k2 = graph_witness(&Graph::complete(2));
        assert!(k2.consistent(&[0]).unwrap());
        assert!(!k2.consistent(&[0, 1]).unwrap());
    }
}
