//! Machine checks of the combinatorial lemmas at desk scale.
//!
//! Every check compares an implementation against a brute-force oracle or a
//! defining property. A [`Subject`] can carry a deliberate [`Mutation`] of
//! the pair classifier or of the grid base table; a correct build passes
//! every check and every mutation makes at least one check fail.

use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cographs::{
    comb_graph, cotree_of, embed_cograph, eval_cotree, find_p4, graph_to_weave_oracle, random_cotree,
    random_graph, weave_to_graph_oracle, Graph,
};
use crate::combs::{classify_pair, is_comb, split_relation, Bound, CombClass, PairClass, Reading, SplitKind};
use crate::error::Result;
use crate::exec::Exec;
use crate::genericity::{generic_chain, is_generic_chain, BinaryStrings, DensePredicate, DEFAULT_HORIZON};
use crate::grid::{box_points, GridFamily, GridPoint};
use crate::index::{Letter, Node};
use crate::limits::Limits;
use crate::oracle::{
    has_up_pair, is_comb_by_build_trees, is_grid_by_subsets, is_realizable_by_assignment, is_weave_by_subsets,
    pair_is_up_one,
};
use crate::patterns::{
    check_graph_pattern, check_grid, check_weave, graph_witness, graph_witness_materialized, grid_witness, realizable,
    triangle_free_demo, weave_witness, Certificate, CheckOptions, ConsistencyInterface, GridSpec, IndexKey, Report,
    SetSystem, Template, ViolationKind, WeaveSpec,
};
use crate::transforms::{eps_point, grid_embed_node_with, grid_to_weave, pullback, strongify_node, strongify_weave, GRID_BASE};

/// A deliberate defect injected into the code under test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Flip the verdict of `classify_pair` on one pair of level indices.
    ClassifyPair { depth: usize, pair: (u64, u64) },
    /// Replace the base offset of one letter by that of another.
    GridBase { letter: u8, copy_of: u8 },
}

impl Mutation {
    /// A mutation chosen by `seed`, visible at depths up to `max_depth ≥ 1`.
    pub fn seeded(seed: u64, max_depth: usize) -> Mutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if rng.random_bool(0.5) {
            let depth = rng.random_range(1..=max_depth.clamp(1, 4));
            let width = 1u64 << (2 * depth);
            let a = rng.random_range(0..width);
            let b = (a + rng.random_range(1..width)) % width;
            Mutation::ClassifyPair {
                depth,
                pair: (a.min(b), a.max(b)),
            }
        } else {
            let letter = rng.random_range(0..4u8);
            let copy_of = (letter + rng.random_range(1..4u8)) % 4;
            Mutation::GridBase { letter, copy_of }
        }
    }
}

/// The operations under test, possibly mutated.
#[derive(Clone, Debug, Default)]
pub struct Subject {
    pub mutation: Option<Mutation>,
}

impl Subject {
    pub fn classify_pair(&self, a: &Node, b: &Node) -> Result<PairClass> {
        let verdict = classify_pair(a, b)?;
        if let Some(Mutation::ClassifyPair { depth, pair }) = &self.mutation {
            let (x, y) = (a.level_index().min(b.level_index()), a.level_index().max(b.level_index()));
            if a.depth() == *depth && (x, y) == *pair {
                return Ok(match verdict {
                    PairClass::UpOne => PairClass::WideRightOne,
                    PairClass::WideRightOne => PairClass::UpOne,
                });
            }
        }
        Ok(verdict)
    }

    pub fn grid_embed(&self, sigma: &Node) -> Result<GridPoint> {
        let mut base = GRID_BASE;
        if let Some(Mutation::GridBase { letter, copy_of }) = &self.mutation {
            base[*letter as usize] = GRID_BASE[*copy_of as usize];
        }
        grid_embed_node_with(sigma, &base)
    }
}

/// Sizes of the randomized and exhaustive corpora.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_depth: usize,
    pub seed: u64,
    /// Random subsets for the wide characterization at depth 3.
    pub wide_samples: usize,
    pub templates: usize,
    /// Every graph on this many vertices is recognized.
    pub exhaustive_graph_vertices: usize,
    pub random_graphs: usize,
    pub random_cotrees: usize,
    pub graph_witnesses: usize,
    pub exec: Exec,
}

impl VerifyConfig {
    pub fn new(max_depth: usize, seed: u64) -> VerifyConfig {
        VerifyConfig {
            max_depth,
            seed,
            wide_samples: 100_000,
            templates: 1000,
            exhaustive_graph_vertices: 7,
            random_graphs: 500,
            random_cotrees: 100,
            graph_witnesses: 100,
            exec: Exec::default(),
        }
    }
}

/// Result of one check.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: String,
    pub ok: bool,
    pub cases: u64,
    pub failures: u64,
    /// The first few failures.
    pub examples: Vec<String>,
}

impl Outcome {
    fn new(name: &str) -> Outcome {
        Outcome {
            name: name.to_string(),
            ok: true,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn absorb(&mut self, cases: u64, failures: Vec<String>) {
        self.cases += cases;
        self.failures += failures.len() as u64;
        self.ok &= failures.is_empty();
        let room = 5usize.saturating_sub(self.examples.len());
        self.examples.extend(failures.into_iter().take(room));
    }

    fn expect(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.absorb(1, if holds { Vec::new() } else { vec![what()] });
    }

    fn expect_ok(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(holds) => self.expect(holds, what),
            Err(e) => self.absorb(1, vec![format!("{}: {e}", what())]),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub max_depth: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    pub checks: Vec<Outcome>,
}

fn level(depth: usize) -> Vec<Node> {
    (0..1u64 << (2 * depth))
        .map(|i| Node::from_level_index(i, depth))
        .collect()
}

fn all_classes() -> Vec<CombClass> {
    let bounds = [Bound::Finite(1), Bound::Finite(2), Bound::Omega];
    bounds
        .iter()
        .flat_map(|&n| {
            [
                CombClass::up(n),
                CombClass::right(n),
                CombClass::wide_right(n, Reading::Recursive),
                CombClass::wide_right(n, Reading::Literal),
            ]
        })
        .collect()
}

fn member(set: &[Node], class: CombClass) -> bool {
    matches!(is_comb(set, class), Ok(Some(_)))
}

fn subset_of(nodes: &[Node], mask: u64) -> Vec<Node> {
    (0..nodes.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| nodes[i].clone())
        .collect()
}

fn show(set: &[Node]) -> String {
    format!("{{{}}}", set.iter().join(","))
}

/// Every pair of distinct nodes at `depth` is exactly one of an up-1-comb and
/// a wide right-1-comb, and the classifier names the right one.
pub fn pair_dichotomy(subject: &Subject, depth: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("pair dichotomy d={depth}"));
    let nodes = level(depth);
    let n = nodes.len() as u64;
    let fails = exec.filter_map_range(n * n, |i| {
        let (a, b) = ((i / n) as usize, (i % n) as usize);
        if a >= b {
            return None;
        }
        let pair = [nodes[a].clone(), nodes[b].clone()];
        let up = member(&pair, CombClass::up(Bound::Finite(1)));
        let wide = member(&pair, CombClass::wide_right(Bound::Finite(1), Reading::Recursive));
        let verdict = subject.classify_pair(&pair[0], &pair[1]).ok()?;
        let ok = up != wide && up == (verdict == PairClass::UpOne) && up == pair_is_up_one(&pair[0], &pair[1]);
        (!ok).then(|| format!("{} / {}: classified {verdict:?}, up-comb {up}, wide comb {wide}", pair[0], pair[1]))
    });
    out.absorb(n * n.saturating_sub(1) / 2, fails);
    out
}

/// A set is a wide right-ω-comb iff none of its pairs classifies as up.
pub fn wide_characterization(subject: &Subject, depth: usize, samples: usize, seed: u64, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("wide characterization d={depth}"));
    let nodes = level(depth);
    let class = CombClass::wide_right(Bound::Omega, Reading::Recursive);
    let verdict = |set: &[Node]| -> Option<String> {
        let up_pair = set
            .iter()
            .array_combinations().map(|[a, b]| (a, b))
            .any(|(a, b)| subject.classify_pair(a, b).ok() == Some(PairClass::UpOne));
        let wide = member(set, class);
        (wide == up_pair || up_pair != has_up_pair(set))
            .then(|| format!("{}: wide comb {wide}, up pair {up_pair}", show(set)))
    };
    if nodes.len() <= 16 {
        let total = 1u64 << nodes.len();
        let fails = exec.filter_map_range(total - 1, |m| verdict(&subset_of(&nodes, m + 1)));
        out.absorb(total - 1, fails);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets: Vec<Vec<Node>> = (0..samples)
            .map(|_| {
                let size = rng.random_range(1..=8usize.min(nodes.len()));
                let mut picked = sample(&mut rng, nodes.len(), size).into_vec();
                picked.sort_unstable();
                picked.into_iter().map(|i| nodes[i].clone()).collect()
            })
            .collect();
        let fails = exec.filter_map(&sets, |s| verdict(s));
        out.absorb(sets.len() as u64, fails);
    }
    out
}

/// The meet-splitting recognizer agrees with the search over all build trees.
pub fn recognition_vs_build_trees(depth: usize, max_size: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("recognition vs build trees d={depth}"));
    let nodes = level(depth);
    let sets: Vec<Vec<Node>> = (1..=max_size.min(nodes.len()))
        .flat_map(|s| nodes.iter().cloned().combinations(s))
        .collect();
    let classes = all_classes();
    let fails = exec.filter_map(&sets, |set| {
        classes.iter().find_map(|&c| {
            let fast = is_comb(set, c).ok()?;
            let slow = is_comb_by_build_trees(set, c);
            let certified = fast.as_ref().is_none_or(|t| t.verify(c));
            (fast.is_some() != slow || !certified)
                .then(|| format!("{} in {c}: recognizer {}, oracle {slow}", show(set), fast.is_some()))
        })
    });
    out.absorb((sets.len() * classes.len()) as u64, fails);
    out
}

/// Combs stay combs when an element is removed, and their pairs have the
/// pair class of the comb kind.
pub fn comb_structure(subject: &Subject, depth: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("subset closure and pair classes d={depth}"));
    let nodes = level(depth);
    assert!(nodes.len() <= 16);
    let total = (1u64 << nodes.len()) - 1;
    for class in all_classes() {
        if class.reading == Reading::Literal {
            continue;
        }
        let want = match class.kind {
            crate::combs::CombKind::Up => PairClass::UpOne,
            _ => PairClass::WideRightOne,
        };
        let fails = exec.filter_map_range(total, |m| {
            let set = subset_of(&nodes, m + 1);
            if !member(&set, class) {
                return None;
            }
            for i in 0..set.len() {
                let mut smaller = set.clone();
                smaller.remove(i);
                if !smaller.is_empty() && !member(&smaller, class) {
                    return Some(format!("{} in {class} but {} is not", show(&set), show(&smaller)));
                }
            }
            set.iter()
                .array_combinations().map(|[a, b]| (a, b))
                .find(|(a, b)| subject.classify_pair(a, b).ok() != Some(want))
                .map(|(a, b)| format!("{a},{b} inside {} in {class} is not {want:?}", show(&set)))
        });
        out.absorb(total, fails);
    }
    out
}

fn kinds(a: &Node, b: &Node) -> Vec<SplitKind> {
    split_relation(std::slice::from_ref(a), std::slice::from_ref(b))
        .map(|ws| ws.into_iter().map(|w| w.kind).collect())
        .unwrap_or_default()
}

/// Strongification keeps narrow-below pairs, sends narrow-left pairs to
/// widely-left ones and widely-left pairs to narrow-left ones.
pub fn strongify_pairs(depth: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("strongify pairs d={depth}"));
    let nodes = level(depth);
    let n = nodes.len() as u64;
    let fails = exec.filter_map_range(n * n, |i| {
        let (a, b) = (&nodes[(i / n) as usize], &nodes[(i % n) as usize]);
        if a == b {
            return None;
        }
        let before = kinds(a, b);
        let after = kinds(&strongify_node(a), &strongify_node(b));
        let bad = before.iter().find(|k| match k {
            SplitKind::NarrowBelow(i) => !after.contains(&SplitKind::NarrowBelow(*i)),
            SplitKind::NarrowLeft(_) => !after.contains(&SplitKind::WideLeft),
            SplitKind::WideLeft => !after.contains(&SplitKind::NarrowLeft(0)),
        });
        bad.map(|k| format!("{a} / {b}: {k:?} became {after:?}"))
    });
    out.absorb(n * (n - 1), fails);
    out
}

/// Images of combs under strongification, sizes up to `max_size`.
pub fn strongify_combs(depth: usize, max_size: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("strongify combs d={depth}"));
    let nodes = level(depth);
    let sets: Vec<Vec<Node>> = (1..=max_size.min(nodes.len()))
        .flat_map(|s| nodes.iter().cloned().combinations(s))
        .collect();
    let bounds = [Bound::Finite(1), Bound::Finite(2), Bound::Omega];
    let fails = exec.filter_map(&sets, |set| {
        let image: Vec<Node> = set.iter().map(strongify_node).collect();
        bounds.iter().find_map(|&b| {
            let rules = [
                (CombClass::up(b), CombClass::up(b)),
                (CombClass::right(b), CombClass::wide_right(b, Reading::Recursive)),
                (CombClass::wide_right(b, Reading::Recursive), CombClass::right(b)),
            ];
            rules.iter().find_map(|&(from, to)| {
                (member(set, from) && !member(&image, to))
                    .then(|| format!("{} is in {from} but its image {} is not in {to}", show(set), show(&image)))
            })
        })
    });
    out.absorb(sets.len() as u64 * 9, fails);
    out
}

/// Up pairs land on incomparable points and wide pairs on points strictly
/// comparable in both coordinates; the map is injective into the box.
pub fn grid_embedding(subject: &Subject, depth: usize, exec: Exec) -> Outcome {
    let mut out = Outcome::new(&format!("grid embedding d={depth}"));
    let nodes = level(depth);
    let side = 1i64 << (2 * depth);
    let images: Vec<Option<GridPoint>> = nodes.iter().map(|s| subject.grid_embed(s).ok()).collect();
    for (s, p) in nodes.iter().zip(&images) {
        out.expect(
            p.is_some_and(|p| (0..side).contains(&p.x) && (0..side).contains(&p.y)),
            || format!("{s} ↦ {p:?} leaves the box"),
        );
    }
    let n = nodes.len() as u64;
    let fails = exec.filter_map_range(n * n, |i| {
        let (a, b) = ((i / n) as usize, (i % n) as usize);
        if a >= b {
            return None;
        }
        let (p, q) = (images[a]?, images[b]?);
        let verdict = classify_pair(&nodes[a], &nodes[b]).ok()?;
        let ok = p != q
            && match verdict {
                PairClass::UpOne => p.incomparable(q),
                PairClass::WideRightOne => p.strictly_comparable(q),
            };
        (!ok).then(|| format!("{} ↦ {p}, {} ↦ {q} ({verdict:?})", nodes[a], nodes[b]))
    });
    out.absorb(n * n.saturating_sub(1) / 2, fails);
    out
}

/// Canonical weave witnesses pass the strong checker for every parameter
/// choice, and genuine ones are not (k−1)-inconsistent.
pub fn weave_witnesses(depth: usize, exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new(&format!("weave witnesses d={depth}"));
    let bounds = [Bound::Finite(1), Bound::Finite(2), Bound::Omega];
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };
    for k in [2, 3] {
        for genuine in [false, true] {
            for &n in &bounds {
                let ci: ConsistencyInterface<Node> = match weave_witness(depth, k, n, genuine, limits) {
                    Ok(ss) => ss.into(),
                    Err(e) => {
                        out.absorb(1, vec![format!("witness k={k} n={n}: {e}")]);
                        continue;
                    }
                };
                for &m in &bounds {
                    let spec = WeaveSpec::new(depth, k, m, n, true);
                    out.expect_ok(check_weave(&ci, &spec, &opts, limits).map(|r| r.ok), || {
                        format!("witness fails check_weave(k={k}, m={m}, n={n}, genuine={genuine})")
                    });
                }
                if genuine && k == 3 && depth >= 1 {
                    let spec = WeaveSpec::new(depth, 2, Bound::Omega, n, true);
                    out.expect_ok(check_weave(&ci, &spec, &opts, limits).map(|r| !r.ok), || {
                        format!("genuine witness k=3 n={n} is already 2-inconsistent")
                    });
                }
            }
        }
    }
    out
}

pub fn grid_witnesses(max_side: usize, exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("grid witnesses");
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };
    for side in 1..=max_side {
        for strong in [false, true] {
            let spec = GridSpec { side, k: 2, strong };
            let r = grid_witness(side, strong, limits).and_then(|ss| {
                let ci = ss.into();
                let checked = check_grid(&ci, &spec, &opts, limits)?.ok;
                Ok(checked && (side > 3 || is_grid_by_subsets(&ci, &spec)))
            });
            out.expect_ok(r, || format!("grid witness side {side} strong={strong}"));
        }
    }
    out
}

pub fn graph_witnesses(count: usize, seed: u64, exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("graph witnesses");
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n = rng.random_range(1..=12usize);
        let s = rng.random_range(0..u64::MAX);
        let graphs = [
            random_cotree(n, s).and_then(|t| eval_cotree(&t)),
            Ok(random_graph(n, 0.4, s)),
        ];
        for g in graphs {
            let r = g.and_then(|g| {
                let oracle = check_graph_pattern(&graph_witness(&g), &g, &opts, limits)?.ok;
                let sets = check_graph_pattern(&graph_witness_materialized(&g)?.into(), &g, &opts, limits)?.ok;
                Ok(oracle && sets)
            });
            out.expect_ok(r, || format!("graph witness #{i} on {n} vertices"));
        }
    }
    out
}

/// Parses violation indices back and checks that each violation is genuine:
/// the family fails its requirement and the certificate describes it.
fn violations_genuine<I: IndexKey>(
    ci: &ConsistencyInterface<I>,
    report: &Report,
    certified: impl Fn(&[I], &Certificate) -> bool,
) -> bool {
    report.violations.iter().all(|v| {
        let Ok(family) = v.indices.iter().map(|s| s.parse::<I>()).collect::<std::result::Result<Vec<I>, _>>() else {
            return false;
        };
        let Ok(consistent) = ci.consistent(&family) else {
            return false;
        };
        let fails = match v.kind {
            ViolationKind::Consistency => !consistent,
            ViolationKind::Inconsistency => consistent,
        };
        fails && certified(&family, &v.certificate)
    })
}

fn members<I: IndexKey>(ss: &SetSystem<I>, atom: &str) -> Vec<I> {
    ss.indices()
        .iter()
        .filter(|i| ss.set(i).is_some_and(|s| s.contains(&atom)))
        .cloned()
        .collect()
}

/// Single-atom mutations of materialized witnesses, each of which must flip
/// the checker's verdict with genuine certificates.
pub fn mutation_suite(exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("witness mutations");
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };

    let weave_cert = |family: &[Node], c: &Certificate| match c {
        Certificate::Comb { tree, .. } => {
            let mut nodes = tree.nodes();
            nodes.sort();
            let mut fam = family.to_vec();
            fam.sort();
            nodes == fam
                && (tree.verify(CombClass::up(Bound::Omega))
                    || tree.verify(CombClass::wide_right(Bound::Omega, Reading::Recursive)))
        }
        _ => false,
    };
    for (depth, picks) in [(1usize, 3usize), (2, 5)] {
        let Ok(ss) = weave_witness(depth, 2, Bound::Omega, false, limits) else {
            out.absorb(1, vec![format!("weave witness d={depth}")]);
            continue;
        };
        let spec = WeaveSpec::new(depth, 2, Bound::Omega, Bound::Omega, true);
        let atoms = ss.universe().len();
        let mut mutants = Vec::new();
        for j in 0..picks {
            let atom = ss.universe()[j * atoms / picks].clone();
            let victim = members(&ss, &atom)[0].clone();
            mutants.push((format!("drop {atom} from {victim}"), ss.without_atom(&victim, &atom)));
        }
        let nodes = level(depth);
        let ups: Vec<(Node, Node)> = nodes
            .iter()
            .array_combinations().map(|[a, b]| (a, b))
            .filter(|(a, b)| classify_pair(a, b).ok() == Some(PairClass::UpOne))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        for j in 0..3 {
            let (a, b) = &ups[j * ups.len() / 3];
            mutants.push((format!("join {a},{b}"), ss.with_new_atom("x", &[a.clone(), b.clone()])));
        }
        for (label, mutant) in mutants {
            let r = mutant.and_then(|m| {
                let ci: ConsistencyInterface<Node> = m.into();
                let report = check_weave(&ci, &spec, &opts, limits)?;
                Ok(!report.ok && violations_genuine(&ci, &report, weave_cert))
            });
            out.expect_ok(r, || format!("weave d={depth}: {label} went unnoticed"));
        }
    }

    for strong in [false, true] {
        let Ok(ss) = grid_witness(3, strong, limits) else {
            out.absorb(1, vec!["grid witness".into()]);
            continue;
        };
        let spec = GridSpec { side: 3, k: 2, strong };
        let family = if strong { GridFamily::Chain } else { GridFamily::StrictChain };
        let cert = |points: &[GridPoint], c: &Certificate| match c {
            Certificate::Chain | Certificate::StrictChain => family.holds(points),
            Certificate::Antichain => GridFamily::Antichain.holds(points),
            _ => false,
        };
        let atoms = ss.universe().len();
        let mut mutants = Vec::new();
        for j in 0..3 {
            let atom = ss.universe()[j * atoms / 3].clone();
            let victim = members(&ss, &atom)[0];
            mutants.push((format!("drop {atom} from {victim}"), ss.without_atom(&victim, &atom)));
        }
        let p = GridPoint::new;
        mutants.push(("join (0,1),(1,0)".into(), ss.with_new_atom("x", &[p(0, 1), p(1, 0)])));
        for (label, mutant) in mutants {
            let r = mutant.and_then(|m| {
                let ci: ConsistencyInterface<GridPoint> = m.into();
                let report = check_grid(&ci, &spec, &opts, limits)?;
                Ok(!report.ok && violations_genuine(&ci, &report, cert))
            });
            out.expect_ok(r, || format!("grid strong={strong}: {label} went unnoticed"));
        }
    }

    let graphs = [Graph::path(4), Graph::cycle(5), Graph::complete(3)];
    for g in &graphs {
        let Ok(ss) = graph_witness_materialized(g) else {
            out.absorb(1, vec!["graph witness".into()]);
            continue;
        };
        let cert = |vs: &[usize], c: &Certificate| match c {
            Certificate::Independent => g.is_independent(vs),
            Certificate::Edge([u, v]) => g.has_edge(*u, *v) && vs.contains(u) && vs.contains(v),
            _ => false,
        };
        let atom = ss.universe()[0].clone();
        let victim = members(&ss, &atom)[0];
        let mut mutants = vec![(format!("drop {atom} from {victim}"), ss.without_atom(&victim, &atom))];
        if let Some((u, v)) = g.edges().first() {
            mutants.push((format!("join {u},{v}"), ss.with_new_atom("x", &[*u, *v])));
        }
        for (label, mutant) in mutants {
            let r = mutant.and_then(|m| {
                let ci: ConsistencyInterface<usize> = m.into();
                let report = check_graph_pattern(&ci, g, &opts, limits)?;
                Ok(!report.ok && violations_genuine(&ci, &report, cert))
            });
            out.expect_ok(r, || format!("graph {g:?}: {label} went unnoticed"));
        }
    }
    out
}

/// Random template with at most four indices and four required-consistent
/// families, so four atoms always suffice when it is realizable.
pub fn random_template(rng: &mut ChaCha8Rng) -> Template {
    let names = ["a", "b", "c", "d"];
    let n = rng.random_range(1..=4usize);
    let indices: Vec<String> = names[..n].iter().map(|s| s.to_string()).collect();
    let pick = |rng: &mut ChaCha8Rng| -> Vec<String> {
        indices.iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
    };
    let must_consist = (0..rng.random_range(0..=4)).map(|_| pick(rng)).collect();
    let must_k_inconsist = (0..rng.random_range(0..=3)).map(|_| pick(rng)).collect();
    Template {
        indices: indices.clone(),
        must_consist,
        must_k_inconsist,
        k: rng.random_range(2..=3),
    }
}

pub fn realizability(count: usize, seed: u64, exec: Exec) -> Outcome {
    let mut out = Outcome::new("realizability criterion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let templates: Vec<Template> = (0..count).map(|_| random_template(&mut rng)).collect();
    let fails = exec.filter_map(&templates, |t| {
        let fast = match realizable(t) {
            Ok(r) => r.is_some(),
            Err(e) => return Some(format!("{t:?}: {e}")),
        };
        let slow = is_realizable_by_assignment(t, 4);
        (fast != slow).then(|| format!("{t:?}: criterion {fast}, assignment search {slow}"))
    });
    out.absorb(count as u64, fails);
    out
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    for (bit, (u, v)) in (0..n).array_combinations().map(|[a, b]| (a, b)).enumerate() {
        if mask >> bit & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

fn recognition_verdict(g: &Graph) -> Option<String> {
    match (cotree_of(g), find_p4(g)) {
        (Ok(t), None) => (eval_cotree(&t).ok().as_ref() != Some(g)).then(|| format!("{g:?}: cotree does not evaluate back")),
        (Err(cert), Some(_)) => {
            let [a, b, c, d] = cert.0;
            let induced = g.has_edge(a, b)
                && g.has_edge(b, c)
                && g.has_edge(c, d)
                && !g.has_edge(a, c)
                && !g.has_edge(b, d)
                && !g.has_edge(a, d);
            (!induced).then(|| format!("{g:?}: certificate {:?} is not an induced P4", cert.0))
        }
        (t, p) => Some(format!("{g:?}: recognition {:?} disagrees with P4 search {p:?}", t.is_ok())),
    }
}

/// Cotree recognition succeeds exactly on P₄-free graphs.
pub fn cograph_recognition(vertices: usize, random: usize, seed: u64, exec: Exec) -> Outcome {
    let mut out = Outcome::new("cograph recognition");
    let pairs = vertices * vertices.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    let fails = exec.filter_map_range(total, |m| recognition_verdict(&graph_from_mask(vertices, m)));
    out.absorb(total, fails);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..random)
        .map(|_| {
            let p = rng.random_range(0.05..0.95);
            random_graph(16, p, rng.random_range(0..u64::MAX))
        })
        .collect();
    let fails = exec.filter_map(&graphs, recognition_verdict);
    out.absorb(random as u64, fails);
    out
}

/// Comb graph edge counts against brute force and the recursion.
pub fn comb_graphs(max_depth: usize, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("comb graph");
    let mut expected = 0u64;
    for d in 0..=max_depth.min(limits.max_graph_depth) {
        if d > 0 {
            expected = 4 * expected + 2 * 16u64.pow(d as u32 - 1);
        }
        let Ok(cg) = comb_graph(d, limits) else {
            out.absorb(1, vec![format!("comb graph d={d} failed")]);
            continue;
        };
        let nodes = level(d);
        let brute = nodes.iter().array_combinations().map(|[a, b]| (a, b)).filter(|(a, b)| pair_is_up_one(a, b)).count() as u64;
        out.expect(cg.graph.edge_count() as u64 == brute && brute == expected, || {
            format!("d={d}: {} edges, brute force {brute}, recursion {expected}", cg.graph.edge_count())
        });
        out.expect(eval_cotree(&cg.cotree).ok().as_ref() == Some(&cg.graph), || {
            format!("d={d}: cotree does not evaluate to the comb graph")
        });
    }
    out
}

/// The cograph embedding turns edges into up pairs and non-edges into wide pairs.
pub fn cograph_embedding(subject: &Subject, count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::new("cograph embedding");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.random_range(1..=32usize);
        let s = rng.random_range(0..u64::MAX);
        let Ok(t) = random_cotree(n, s) else { continue };
        let (Ok(g), Ok(e)) = (eval_cotree(&t), embed_cograph(&t)) else {
            out.absorb(1, vec![format!("cotree seed {s} failed")]);
            continue;
        };
        let distinct = e.map.iter().all_unique();
        let bad = (0..n).array_combinations().map(|[a, b]| (a, b)).find(|&(u, v)| {
            let c = subject.classify_pair(&e.map[u], &e.map[v]).ok();
            let want = if g.has_edge(u, v) { PairClass::UpOne } else { PairClass::WideRightOne };
            c != Some(want)
        });
        out.expect(distinct && bad.is_none(), || format!("cotree seed {s} on {n} leaves: pair {bad:?}"));
    }
    out
}

/// Graph patterns for the comb graph become strong weaves, and weaves pull
/// back to patterns for every cograph that embeds at the same depth.
pub fn bridges(max_depth: usize, exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("bridges");
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };
    let mut cographs: Vec<(Graph, crate::cographs::Cotree, usize)> = Vec::new();
    for n in 1..=5usize {
        for m in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, m);
            if let Ok(t) = cotree_of(&g) {
                if let Ok(e) = embed_cograph(&t) {
                    cographs.push((g, t, e.depth));
                }
            }
        }
    }
    for d in 1..=max_depth.min(2) {
        let spec = WeaveSpec::new(d, 2, Bound::Omega, Bound::Omega, true);
        let woven = comb_graph(d, limits).and_then(|cg| graph_to_weave_oracle(&graph_witness(&cg.graph), d, &opts, limits));
        let woven = match woven {
            Ok(w) => w,
            Err(e) => {
                out.absorb(1, vec![format!("graph to weave at d={d}: {e}")]);
                continue;
            }
        };
        out.expect_ok(check_weave(&woven, &spec, &opts, limits).map(|r| r.ok), || {
            format!("bridged weave at d={d} fails the capped checker")
        });
        out.expect(is_weave_by_subsets(&woven, &spec), || format!("bridged weave at d={d} fails the subset oracle"));
        let direct: Result<ConsistencyInterface<Node>> = weave_witness(d, 2, Bound::Omega, false, limits).map(Into::into);
        let Ok(direct) = direct else { continue };
        for (g, t, depth) in cographs.iter().filter(|c| c.2 <= d) {
            for (label, weave) in [("bridged", &woven), ("witness", &direct)] {
                let r = weave_to_graph_oracle(weave, d, t, &opts, limits)
                    .and_then(|p| check_graph_pattern(&p, g, &opts, limits))
                    .map(|r| r.ok);
                out.expect_ok(r, || format!("{label} weave at d={d} on {g:?} (embedding depth {depth})"));
            }
        }
    }
    if max_depth >= 1 {
        let spec = WeaveSpec::new(1, 2, Bound::Omega, Bound::Omega, true);
        let r = grid_witness(4, false, limits)
            .and_then(|ss| grid_to_weave(&ss.into(), 1, limits))
            .and_then(|w| check_weave(&w, &spec, &opts, limits))
            .map(|r| r.ok);
        out.expect_ok(r, || "grid witness pulled to a weave at d=1".into());
    }
    out
}

/// Strongification and prefix pullbacks carry witnesses to passing systems.
pub fn transfers(max_depth: usize, seed: u64, exec: Exec, limits: &Limits) -> Outcome {
    let mut out = Outcome::new("weave transfers");
    let opts = CheckOptions {
        exec,
        ..CheckOptions::default()
    };
    if max_depth >= 2 {
        let strong = WeaveSpec::new(1, 2, Bound::Finite(1), Bound::Finite(1), true);
        let r = weave_witness(2, 2, Bound::Finite(1), false, limits)
            .and_then(|ss| strongify_weave(&ss.into(), 1, limits))
            .and_then(|w| check_weave(&w, &strong, &opts, limits))
            .map(|r| r.ok);
        out.expect_ok(r, || "strongified depth-2 witness fails at depth 1".into());

        // a plain weave that is not strong becomes strong once strongified
        let plain = WeaveSpec::new(2, 2, Bound::Omega, Bound::Omega, false);
        let strong2 = WeaveSpec::new(2, 2, Bound::Omega, Bound::Omega, true);
        let strong1 = WeaveSpec::new(1, 2, Bound::Omega, Bound::Omega, true);
        let r = narrow_witness(2, limits).and_then(|ci| {
            let plain_ok = check_weave(&ci, &plain, &opts, limits)?.ok;
            let strong_ok = check_weave(&ci, &strong2, &opts, limits)?.ok;
            let lifted = check_weave(&strongify_weave(&ci, 1, limits)?, &strong1, &opts, limits)?.ok;
            Ok(plain_ok && !strong_ok && lifted)
        });
        out.expect_ok(r, || "narrow depth-2 weave does not strongify to a strong depth-1 weave".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let d = rng.random_range(1..=max_depth.clamp(1, 2));
        let d0 = rng.random_range(0..=d);
        let tails: Vec<Vec<Letter>> = (0..1usize << (2 * d0))
            .map(|_| (d0..d).map(|_| Letter::from_code(rng.random_range(0..4u8)).expect("code below 4")).collect())
            .collect();
        let spec = WeaveSpec::new(d0, 2, Bound::Omega, Bound::Omega, true);
        let r = weave_witness(d, 2, Bound::Omega, false, limits)
            .and_then(|ss| {
                pullback(
                    &ss.into(),
                    d0,
                    |s| {
                        let mut t = s.clone();
                        for &l in &tails[s.level_index() as usize] {
                            t = t.extend(l);
                        }
                        t
                    },
                    limits,
                )
            })
            .and_then(|w| check_weave(&w, &spec, &opts, limits))
            .map(|r| r.ok);
        out.expect_ok(r, || format!("prefix pullback from depth {d} to {d0}"));
    }
    out
}

/// Weave on `(2²)^depth` whose atoms are the maximal narrow right-combs.
fn narrow_witness(depth: usize, limits: &Limits) -> Result<ConsistencyInterface<Node>> {
    let nodes = level(depth);
    let combs = crate::combs::enumerate_comb_indices(depth, CombClass::right(Bound::Omega), nodes.len(), limits)?;
    let masks: std::collections::HashSet<u64> = combs.iter().map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i)).collect();
    let maximal: Vec<&Vec<u32>> = combs
        .iter()
        .filter(|c| {
            let m = c.iter().fold(0u64, |m, &i| m | 1 << i);
            (0..nodes.len()).all(|x| m >> x & 1 == 1 || !masks.contains(&(m | 1 << x)))
        })
        .collect();
    let names = (0..maximal.len()).map(|i| format!("R{i}")).collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (a, c) in maximal.iter().enumerate() {
        for &i in c.iter() {
            members[i as usize].push(a);
        }
    }
    Ok(SetSystem::from_positions(names, nodes.into_iter().zip(members).collect())?.into())
}

pub fn triangle_free(max_len: usize) -> Outcome {
    let mut out = Outcome::new("triangle-free demo");
    for len in 2..=max_len {
        let Ok(demo) = triangle_free_demo(len) else {
            out.absorb(1, vec![format!("len {len}")]);
            continue;
        };
        let all: Vec<usize> = (0..len).collect();
        out.expect_ok(demo.p.k_inconsistent(&all, 2), || format!("p side len {len} has a consistent pair"));
        out.expect_ok(demo.q.consistent(&all), || format!("q side len {len} is inconsistent"));
        out.expect_ok(Ok(all.iter().all(|&i| demo.p.consistent(&[i]).unwrap_or(false))), || {
            format!("p side len {len} has an inconsistent singleton")
        });
    }
    out
}

/// Infinitesimal scaling on every family of the box: antichains and strict
/// chains keep their type, and chains without tied coordinates become
/// strict. Chains with a tied coordinate do not, which is the known gap.
pub fn epsilon_scaling(max_side: usize) -> Outcome {
    let mut out = Outcome::new("epsilon scaling");
    let mut tied_gap = 0u64;
    for side in 1..=max_side {
        let points = box_points(side);
        for mask in 1u64..1 << points.len() {
            let set: Vec<GridPoint> = (0..points.len()).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
            let image: Vec<_> = set.iter().map(|&p| eps_point(p)).collect();
            let pairs: Vec<(usize, usize)> = (0..set.len()).array_combinations().map(|[a, b]| (a, b)).collect();
            let img_anti = pairs.iter().all(|&(a, b)| !image[a].comparable(image[b]));
            let img_strict = pairs.iter().all(|&(a, b)| image[a].strictly_comparable(image[b]));
            let tie_free = pairs.iter().all(|&(a, b)| set[a].x != set[b].x && set[a].y != set[b].y);
            if GridFamily::Antichain.holds(&set) {
                out.expect(img_anti, || format!("antichain {set:?} lost"));
            }
            if GridFamily::StrictChain.holds(&set) {
                out.expect(img_strict, || format!("strict chain {set:?} lost"));
            }
            if GridFamily::Chain.holds(&set) {
                if tie_free {
                    out.expect(img_strict, || format!("tie-free chain {set:?} not strict"));
                } else if !img_strict {
                    tied_gap += 1;
                }
            }
            for &(a, b) in pairs.iter().filter(|&&(a, b)| set[a].x != set[b].x && set[a].y != set[b].y) {
                out.expect(set[a].comparable(set[b]) == image[a].comparable(image[b]), || {
                    format!("comparability of {} and {} changed", set[a], set[b])
                });
            }
        }
    }
    // the tied-coordinate case must stay visible, not silently repaired
    out.expect(max_side < 2 || tied_gap > 0, || "tied chains unexpectedly became strict".into());
    out
}

pub fn genericity() -> Outcome {
    let mut out = Outcome::new("generic chains");
    let dense: Vec<DensePredicate<String>> = (1..=5)
        .map(|i| DensePredicate::new(format!("length >= {i}"), move |s: &String| s.len() >= i))
        .collect();
    let r = generic_chain(&BinaryStrings, &dense, String::new(), 5, DEFAULT_HORIZON)
        .map(|c| is_generic_chain(&BinaryStrings, &c, dense.len()) && c.len() <= 6);
    out.expect_ok(r, || "binary strings miss a length requirement".into());
    let one = vec![DensePredicate::new("contains 1", |s: &String| s.contains('1'))];
    let r = generic_chain(&BinaryStrings, &one, "000".into(), 1, DEFAULT_HORIZON)
        .map(|c| c.last().is_some_and(|s| s.element.contains('1')));
    out.expect_ok(r, || "no extension of 000 containing 1 found".into());
    let bad = vec![DensePredicate::new("length < 2", |s: &String| s.len() < 2)];
    let named = matches!(
        generic_chain(&BinaryStrings, &bad, "000".into(), 1, DEFAULT_HORIZON),
        Err(crate::error::Error::Density { ref requirement, .. }) if requirement == "length < 2"
    );
    out.expect(named, || "non-dense requirement not reported by name".into());
    out
}

/// Runs every check with depth-dependent parts up to `cfg.max_depth`.
/// `progress` is called after each check with its wall time in seconds.
pub fn verify_paper(
    cfg: &VerifyConfig,
    subject: &Subject,
    limits: &Limits,
    mut progress: impl FnMut(&Outcome, f64),
) -> VerifyReport {
    let exec = cfg.exec;
    let d = cfg.max_depth;
    let small = d.min(2);
    let mut checks = Vec::new();
    let mut run = |f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        progress(&o, t.elapsed().as_secs_f64());
        checks.push(o);
    };
    for depth in 0..=d.min(4) {
        run(&mut || pair_dichotomy(subject, depth, exec));
    }
    for depth in 0..=small {
        run(&mut || wide_characterization(subject, depth, 0, cfg.seed, exec));
    }
    if d >= 3 {
        run(&mut || wide_characterization(subject, 3, cfg.wide_samples, cfg.seed, exec));
    }
    for depth in 0..=small {
        run(&mut || recognition_vs_build_trees(depth, 5, exec));
        run(&mut || comb_structure(subject, depth, exec));
    }
    for depth in 0..=d.min(3) {
        run(&mut || strongify_pairs(depth, exec));
    }
    for depth in 0..=small {
        run(&mut || strongify_combs(depth, 4, exec));
    }
    run(&mut || transfers(d, cfg.seed, exec, limits));
    for depth in 0..=d.min(5) {
        run(&mut || grid_embedding(subject, depth, exec));
    }
    for depth in 0..=d.min(3) {
        run(&mut || weave_witnesses(depth, exec, limits));
    }
    run(&mut || grid_witnesses(5, exec, limits));
    run(&mut || graph_witnesses(cfg.graph_witnesses, cfg.seed, exec, limits));
    run(&mut || mutation_suite(exec, limits));
    run(&mut || realizability(cfg.templates, cfg.seed, exec));
    run(&mut || cograph_recognition(cfg.exhaustive_graph_vertices, cfg.random_graphs, cfg.seed, exec));
    run(&mut || comb_graphs(d.max(3), limits));
    run(&mut || cograph_embedding(subject, cfg.random_cotrees, cfg.seed));
    run(&mut || bridges(d, exec, limits));
    run(&mut || triangle_free(10));
    run(&mut || epsilon_scaling(4));
    run(&mut || genericity());
    VerifyReport {
        ok: checks.iter().all(|c| c.ok),
        max_depth: d,
        seed: cfg.seed,
        mutation: subject.mutation.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_pass_on_the_real_subject() {
        let s = Subject::default();
        let e = Exec::default();
        assert!(pair_dichotomy(&s, 2, e).ok);
        assert!(wide_characterization(&s, 1, 0, 1, e).ok);
        assert!(strongify_pairs(2, e).ok);
        assert!(grid_embedding(&s, 2, e).ok);
        assert!(epsilon_scaling(3).ok);
        assert!(genericity().ok);
    }

    #[test]
    fn mutants_are_caught() {
        for seed in 0..8 {
            let m = Mutation::seeded(seed, 2);
            let s = Subject { mutation: Some(m.clone()) };
            let e = Exec::default();
            let caught = !pair_dichotomy(&s, 1, e).ok
                || !pair_dichotomy(&s, 2, e).ok
                || !grid_embedding(&s, 1, e).ok
                || !grid_embedding(&s, 2, e).ok;
            assert!(caught, "{m:?}");
        }
    }
}
