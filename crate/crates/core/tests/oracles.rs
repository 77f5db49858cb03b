//! Recognizers and checkers against brute-force deciders and closed-form counts.

use comblab::cographs::{cotree_of, find_p4, random_graph, Graph};
use comblab::combs::{
    classify_pair, count_combs, enumerate_comb_indices, is_binary_right_comb, is_comb, Bound, CombClass, PairClass,
    Reading,
};
use comblab::grid::GridPoint;
use comblab::oracle::{
    has_induced_p4, is_binary_right_comb_by_build_trees, is_comb_by_build_trees, is_grid_by_subsets,
    is_realizable_by_assignment, is_weave_by_subsets, pair_is_up_one, product_le,
};
use comblab::patterns::{
    check_grid, check_weave, grid_witness, realizable, weave_witness, CheckOptions, ConsistencyInterface, GridSpec,
    SetSystem, Template, WeaveSpec,
};
use comblab::verify::random_template;
use comblab::{Limits, Node};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OMEGA: Bound = Bound::Omega;

fn level(d: usize) -> Vec<Node> {
    (0..1u64 << (2 * d)).map(|i| Node::from_level_index(i, d)).collect()
}

/// Subsets without an up pair, empty set included: at each split at most one
/// child among letters 0,1 and at most one among 2,3 may be occupied.
fn no_up_pair_subsets(d: usize) -> u128 {
    (0..d).fold(2u128, |f, _| (2 * f - 1) * (2 * f - 1))
}

fn maximal_no_up_pair(d: usize) -> u128 {
    (0..d).fold(1u128, |m, _| (2 * m) * (2 * m))
}

#[test]
fn wide_comb_counts() {
    let wide = CombClass::wide_right(OMEGA, Reading::Recursive);
    for d in 0..=3 {
        let width = 1usize << (2 * d);
        assert_eq!(count_combs(d, wide, width), no_up_pair_subsets(d) - 1, "d={d}");
    }
    assert_eq!(count_combs(2, wide, 16), 288);
    assert_eq!(count_combs(3, wide, 64), 332_928);
}

#[test]
fn maximal_wide_combs_at_depth_3() {
    let l = Limits::default();
    let w = weave_witness(3, 2, OMEGA, false, &l).unwrap();
    assert_eq!(w.universe().len() as u128, maximal_no_up_pair(3));
    assert_eq!(w.universe().len(), 16_384);
}

#[test]
fn enumeration_matches_count_and_build_trees() {
    let l = Limits::default();
    let nodes = level(2);
    for class in [
        CombClass::up(Bound::Finite(1)),
        CombClass::up(Bound::Finite(2)),
        CombClass::right(OMEGA),
        CombClass::wide_right(Bound::Finite(1), Reading::Literal),
        CombClass::wide_right(OMEGA, Reading::Recursive),
    ] {
        let listed = enumerate_comb_indices(2, class, 4, &l).unwrap();
        assert_eq!(listed.len() as u128, count_combs(2, class, 4), "{class}");
        let mut brute = 0;
        for mask in 1u32..1 << 16 {
            if mask.count_ones() > 4 {
                continue;
            }
            let set: Vec<Node> = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| nodes[i].clone()).collect();
            if is_comb_by_build_trees(&set, class) {
                brute += 1;
            }
        }
        assert_eq!(listed.len(), brute, "{class}");
    }
}

#[test]
fn sampled_recognition_at_depth_3() {
    let nodes = level(3);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let classes = [
        CombClass::up(Bound::Finite(2)),
        CombClass::right(Bound::Finite(2)),
        CombClass::wide_right(OMEGA, Reading::Literal),
        CombClass::wide_right(Bound::Finite(1), Reading::Recursive),
    ];
    for _ in 0..3000 {
        let size = rng.random_range(1..=6);
        let mut set: Vec<Node> = (0..size).map(|_| nodes[rng.random_range(0..64)].clone()).collect();
        set.sort();
        set.dedup();
        for class in classes {
            assert_eq!(is_comb(&set, class).unwrap().is_some(), is_comb_by_build_trees(&set, class), "{set:?} {class}");
        }
    }
}

#[test]
fn pair_oracles() {
    let nodes = level(3);
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            let up = classify_pair(a, b).unwrap() == PairClass::UpOne;
            assert_eq!(up, pair_is_up_one(a, b));
        }
    }
    for a in 0..4i64 {
        for b in 0..4i64 {
            for c in 0..4i64 {
                for d in 0..4i64 {
                    assert_eq!(GridPoint::new(a, b).le(GridPoint::new(c, d)), product_le((a, b), (c, d)));
                }
            }
        }
    }
}

#[test]
fn binary_right_combs_against_build_trees() {
    let strings: Vec<String> = (1..=3)
        .flat_map(|len| (0..1u32 << len).map(move |v| format!("{v:0len$b}")))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let size = rng.random_range(1..=4);
        let mut set: Vec<&str> = (0..size).map(|_| strings[rng.random_range(0..strings.len())].as_str()).collect();
        set.sort();
        set.dedup();
        for n in [Bound::Finite(1), Bound::Finite(2), OMEGA] {
            let fast = is_binary_right_comb(&set, n).unwrap();
            assert_eq!(fast, is_binary_right_comb_by_build_trees(&set, n), "{set:?} n={n}");
        }
    }
}

#[test]
fn cograph_recognition_against_p4_search() {
    for seed in 0..300 {
        let n = 2 + (seed as usize % 9);
        let g = random_graph(n, 0.2 + (seed % 7) as f64 / 10.0, seed);
        let brute = has_induced_p4(g.n(), |u, v| g.has_edge(u, v));
        assert_eq!(find_p4(&g).is_some(), brute);
        assert_eq!(cotree_of(&g).is_err(), brute);
    }
    assert!(find_p4(&Graph::cycle(5)).is_some());
}

/// Random single-atom edits of a witness, judged by both the checker and the
/// subset oracle.
#[test]
fn weave_checker_against_subsets() {
    let l = Limits::default();
    let opts = CheckOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=2 {
        let nodes = level(d);
        for (k, n, m) in [(2, OMEGA, OMEGA), (2, Bound::Finite(1), Bound::Finite(1)), (3, OMEGA, Bound::Finite(2))] {
            let base = weave_witness(d, k, n, true, &l).unwrap();
            for trial in 0..40 {
                let mut ss = base.clone();
                if trial % 2 == 0 {
                    let idx = nodes[rng.random_range(0..nodes.len())].clone();
                    let atoms = ss.set(&idx).unwrap().iter().map(|s| s.to_string()).collect::<Vec<_>>();
                    if !atoms.is_empty() {
                        let atom = &atoms[rng.random_range(0..atoms.len())];
                        ss = ss.without_atom(&idx, atom).unwrap();
                    }
                } else {
                    let a = nodes[rng.random_range(0..nodes.len())].clone();
                    let b = nodes[rng.random_range(0..nodes.len())].clone();
                    ss = ss.with_new_atom(&format!("extra{trial}"), &[a, b]).unwrap();
                }
                let ci: ConsistencyInterface<Node> = ss.into();
                let spec = WeaveSpec::new(d, k, m, n, true);
                let mut uncapped = opts;
                uncapped.cap = Some(nodes.len());
                let fast = check_weave(&ci, &spec, &uncapped, &l).unwrap().ok;
                assert_eq!(fast, is_weave_by_subsets(&ci, &spec), "d={d} k={k} trial {trial}");
            }
        }
    }
}

#[test]
fn grid_checker_against_subsets() {
    let l = Limits::default();
    let opts = CheckOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for side in 1..=3usize {
        let points: Vec<GridPoint> = (0..side as i64).flat_map(|x| (0..side as i64).map(move |y| GridPoint::new(x, y))).collect();
        for strong in [false, true] {
            for trial in 0..40 {
                let ss: SetSystem<GridPoint> = if trial % 3 == 0 {
                    grid_witness(side, strong, &l).unwrap()
                } else {
                    let atoms = 4;
                    let family = points
                        .iter()
                        .map(|&p| (p, (0..atoms).filter(|_| rng.random_bool(0.5)).collect()))
                        .collect();
                    SetSystem::from_positions((0..atoms).map(|a| format!("a{a}")).collect(), family).unwrap()
                };
                let spec = GridSpec { side, k: 2, strong };
                let ci: ConsistencyInterface<GridPoint> = ss.into();
                let fast = check_grid(&ci, &spec, &opts, &l).unwrap().ok;
                assert_eq!(fast, is_grid_by_subsets(&ci, &spec), "side {side} strong={strong} trial {trial}");
            }
        }
    }
}

#[test]
fn realizability_against_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..300 {
        let t: Template = random_template(&mut rng);
        let fast = realizable(&t).unwrap();
        assert_eq!(fast.is_some(), is_realizable_by_assignment(&t, 4), "{t:?}");
        if let Some(ss) = fast {
            assert!(t.check(&ss.into(), 10).unwrap().ok);
        }
    }
}
