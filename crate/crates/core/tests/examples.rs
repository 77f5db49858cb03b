//! Worked examples for each public operation.

use comblab::cographs::{
    comb_graph, cotree_of, embed_cograph, eval_cotree, find_p4, graph_to_weave_oracle, random_cotree,
    weave_to_graph_oracle, Cotree, Graph,
};
use comblab::combs::{
    classify_pair, enumerate_combs, is_binary_right_comb, is_comb, split_relation, Bound, CombCertificate,
    CombClass, PairClass, Reading, SplitKind,
};
use comblab::genericity::{generic_chain, BinaryStrings, DensePredicate, DEFAULT_HORIZON};
use comblab::grid::GridPoint;
use comblab::index::{enumerate_level, meet};
use comblab::patterns::{
    check_graph_pattern, check_grid, check_weave, graph_witness, grid_witness, realizable, triangle_free_demo,
    weave_witness, CheckOptions, ConsistencyInterface, GridSpec, SetSystem, Template, ViolationKind, WeaveSpec,
};
use comblab::transforms::{
    eps_point, grid_embed_node, grid_to_weave, pullback, strongify_node, strongify_weave,
};
use comblab::{Error, Letter, Limits, Node};

fn n(s: &str) -> Node {
    s.parse().unwrap()
}

fn nodes(xs: &[&str]) -> Vec<Node> {
    xs.iter().map(|s| n(s)).collect()
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

const OMEGA: Bound = Bound::Omega;
const ONE: Bound = Bound::Finite(1);

#[test]
fn node_basics() {
    assert_eq!(Node::empty().extend(Letter::new(0, 1)).to_string(), "1");
    assert_eq!(n("2").extend(Letter::new(1, 1)).to_string(), "23");
    assert_eq!(meet(&n("01"), &n("02")).to_string(), "0");
    assert_eq!(meet(&n("12"), &n("12")), n("12"));
    assert_eq!(meet(&n("12"), &n("30")), Node::empty());
    assert_eq!(n("-"), Node::empty());
    assert_eq!(n("3").letters(), &[Letter::new(1, 1)]);
    let l = Limits::default();
    assert_eq!(enumerate_level(0, &l).unwrap(), vec![Node::empty()]);
    assert_eq!(enumerate_level(1, &l).unwrap(), nodes(&["0", "1", "2", "3"]));
    assert_eq!(enumerate_level(3, &l).unwrap().len(), 64);
}

#[test]
fn split_relations() {
    let kinds = |a: &str, b: &str| -> Vec<SplitKind> {
        split_relation(&[n(a)], &[n(b)]).unwrap().into_iter().map(|w| w.kind).collect()
    };
    assert_eq!(kinds("0", "1"), vec![SplitKind::NarrowBelow(0)]);
    assert_eq!(kinds("0", "2"), vec![SplitKind::NarrowLeft(0), SplitKind::WideLeft]);
    assert_eq!(kinds("0", "3"), vec![SplitKind::WideLeft]);
    let w = split_relation(&[n("0")], &[n("1")]).unwrap();
    assert_eq!(w[0].tau, Node::empty());
}

#[test]
fn pair_classification() {
    assert_eq!(classify_pair(&n("0"), &n("1")).unwrap(), PairClass::UpOne);
    assert_eq!(classify_pair(&n("00"), &n("01")).unwrap(), PairClass::UpOne);
    assert_eq!(classify_pair(&n("03"), &n("20")).unwrap(), PairClass::WideRightOne);
    assert!(classify_pair(&n("0"), &n("0")).is_err());
    assert!(classify_pair(&n("0"), &n("00")).is_err());
}

#[test]
fn recognition_examples() {
    let s = nodes(&["00", "01", "10"]);
    let cert = is_comb(&s, CombClass::up(Bound::Finite(2))).unwrap().expect("up-2-comb");
    let CombCertificate::Split { a, b, .. } = &cert else { panic!("split expected") };
    assert_eq!(a.nodes(), nodes(&["00", "01"]));
    assert_eq!(b.nodes(), nodes(&["10"]));
    assert!(cert.verify(CombClass::up(Bound::Finite(2))));
    assert!(is_comb(&s, CombClass::up(ONE)).unwrap().is_none());
    let s = nodes(&["00", "13", "20"]);
    assert!(is_comb(&s, CombClass::wide_right(OMEGA, Reading::Recursive)).unwrap().is_none());
}

#[test]
fn enumeration_examples() {
    let l = Limits::default();
    let up: Vec<Vec<Node>> = enumerate_combs(1, CombClass::up(ONE), 2, &l).unwrap().collect();
    let mut expect: Vec<Vec<Node>> = ["0", "1", "2", "3"].iter().map(|s| vec![n(s)]).collect();
    expect.push(nodes(&["0", "1"]));
    expect.push(nodes(&["2", "3"]));
    assert_eq!(up, expect);

    let wide: Vec<Vec<Node>> = enumerate_combs(1, CombClass::wide_right(OMEGA, Reading::Recursive), 4, &l)
        .unwrap()
        .collect();
    // exactly the nonempty subsets without an up pair
    let level = nodes(&["0", "1", "2", "3"]);
    let mut brute = Vec::new();
    for mask in 1u32..16 {
        let set: Vec<Node> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| level[i].clone()).collect();
        let up_pair = set.iter().any(|x| set.iter().any(|y| x < y && classify_pair(x, y).unwrap() == PairClass::UpOne));
        if !up_pair {
            brute.push(set);
        }
    }
    brute.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    assert_eq!(wide, brute);

    for class in [CombClass::up(OMEGA), CombClass::right(ONE), CombClass::wide_right(ONE, Reading::Literal)] {
        let d0: Vec<Vec<Node>> = enumerate_combs(0, class, 3, &l).unwrap().collect();
        assert_eq!(d0, vec![vec![Node::empty()]]);
    }
}

#[test]
fn binary_right_combs() {
    assert!(is_binary_right_comb(&["0", "1"], ONE).unwrap());
    assert!(is_binary_right_comb(&["00", "01"], ONE).unwrap());
    assert!(is_binary_right_comb(&["0", "10", "11"], ONE).unwrap());
    assert!(!is_binary_right_comb(&["00", "01", "1"], ONE).unwrap());
    assert!(is_binary_right_comb(&["00", "01", "1"], Bound::Finite(2)).unwrap());
}

#[test]
fn set_system_semantics() {
    let ss = SetSystem::from_positions(
        vec!["1".into(), "2".into(), "3".into(), "9".into()],
        vec![(0usize, vec![0, 1]), (1, vec![1, 2]), (2, vec![3])],
    )
    .unwrap();
    let ci: ConsistencyInterface<usize> = ss.into();
    assert!(ci.consistent(&[0, 1]).unwrap());
    assert!(!ci.consistent(&[0, 2]).unwrap());
    assert!(ci.consistent(&[]).unwrap());
    assert!(!ci.k_inconsistent(&[0, 1, 2], 2).unwrap());
    assert!(ci.k_inconsistent(&[0, 1, 2], 4).unwrap());
    let disjoint = SetSystem::from_positions(
        vec!["a".into(), "b".into(), "c".into()],
        vec![(0usize, vec![0]), (1, vec![1]), (2, vec![2])],
    )
    .unwrap();
    assert!(ConsistencyInterface::from(disjoint).k_inconsistent(&[0, 1, 2], 2).unwrap());
}

#[test]
fn weave_checker_examples() {
    let l = Limits::default();
    let spec = WeaveSpec::new(1, 2, ONE, ONE, true);
    let w = weave_witness(1, 2, ONE, false, &l).unwrap();
    assert!(check_weave(&w.clone().into(), &spec, &opts(), &l).unwrap().ok);

    let empty = SetSystem::from_positions(vec![], vec![(Node::empty(), vec![])]).unwrap();
    let r = check_weave(&empty.into(), &WeaveSpec::new(0, 2, ONE, ONE, true), &opts(), &l).unwrap();
    assert!(!r.ok);

    // "0" keeps only one of its two atoms, so {"0","3"} is a broken right comb
    let broken = w.without_atom(&n("0"), "W{0,3}").unwrap();
    let r = check_weave(&broken.into(), &spec, &opts(), &l).unwrap();
    assert!(!r.ok);
    assert!(r.violations.iter().all(|v| v.kind == ViolationKind::Consistency));
    assert!(r.violations.iter().any(|v| v.indices == vec!["0".to_string(), "3".to_string()]));
}

#[test]
fn weave_witness_shape() {
    let l = Limits::default();
    let w = weave_witness(1, 2, ONE, false, &l).unwrap();
    assert_eq!(w.set(&n("0")).unwrap(), vec!["W{0,2}", "W{0,3}"]);
    let ci: ConsistencyInterface<Node> = w.into();
    assert!(!ci.consistent(&nodes(&["0", "1"])).unwrap());
}

#[test]
fn grid_checker_examples() {
    let l = Limits::default();
    for strong in [false, true] {
        let spec = GridSpec { side: 3, k: 2, strong };
        let g = grid_witness(3, strong, &l).unwrap();
        assert!(check_grid(&g.into(), &spec, &opts(), &l).unwrap().ok);
    }
    let pts: Vec<GridPoint> = (0..2).flat_map(|x| (0..2).map(move |y| GridPoint::new(x, y))).collect();
    let constant = SetSystem::from_positions(vec!["x".into()], pts.into_iter().map(|p| (p, vec![0])).collect()).unwrap();
    let r = check_grid(&constant.into(), &GridSpec { side: 2, k: 2, strong: false }, &opts(), &l).unwrap();
    assert!(!r.ok);
    assert!(r
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::Inconsistency && v.indices == vec!["0,1".to_string(), "1,0".to_string()]));

    let g2: ConsistencyInterface<GridPoint> = grid_witness(2, false, &l).unwrap().into();
    assert!(g2.consistent(&[GridPoint::new(0, 0), GridPoint::new(1, 1)]).unwrap());
    assert!(!g2.consistent(&[GridPoint::new(0, 1), GridPoint::new(1, 0)]).unwrap());
}

#[test]
fn graph_pattern_examples() {
    let l = Limits::default();
    for g in [Graph::complete(2), Graph::path(4)] {
        assert!(check_graph_pattern(&graph_witness(&g), &g, &opts(), &l).unwrap().ok);
    }
    let k2 = Graph::complete(2);
    let constant = SetSystem::from_positions(vec!["x".into()], vec![(0usize, vec![0]), (1, vec![0])]).unwrap();
    assert!(!check_graph_pattern(&constant.into(), &k2, &opts(), &l).unwrap().ok);
    let w = graph_witness(&k2);
    assert!(w.consistent(&[0]).unwrap());
    assert!(!w.consistent(&[0, 1]).unwrap());
}

#[test]
fn template_examples() {
    let t = Template {
        indices: vec!["a".into(), "b".into()],
        must_consist: vec![vec!["a".into(), "b".into()]],
        must_k_inconsist: vec![vec!["a".into(), "b".into()]],
        k: 2,
    };
    assert!(realizable(&t).unwrap().is_none());
    let t = Template {
        indices: vec!["a".into(), "b".into()],
        must_consist: vec![],
        must_k_inconsist: vec![],
        k: 2,
    };
    let ss = realizable(&t).unwrap().expect("vacuous template");
    assert!(ss.universe().is_empty());
    assert!(t.check(&ss.into(), 10).unwrap().ok);
}

#[test]
fn triangle_free_examples() {
    let d = triangle_free_demo(2).unwrap();
    assert!(!d.p.consistent(&[0, 1]).unwrap());
    let d = triangle_free_demo(5).unwrap();
    let all: Vec<usize> = (0..5).collect();
    assert!(d.p.k_inconsistent(&all, 2).unwrap());
    assert!(all.iter().all(|&i| d.p.consistent(&[i]).unwrap()));
    assert!(d.q.consistent(&all).unwrap());
}

#[test]
fn strongification_examples() {
    assert_eq!(strongify_node(&n("2")).to_string(), "22");
    assert_eq!(strongify_node(&n("1")).to_string(), "01");
    // letters (0,0),(0,1),(1,0),(1,1)
    assert_eq!(strongify_node(&n("13")).to_string(), "0123");
    let up = |a: &str, b: &str| {
        split_relation(&[strongify_node(&n(a))], &[strongify_node(&n(b))])
            .unwrap()
            .into_iter()
            .map(|w| w.kind)
            .collect::<Vec<_>>()
    };
    assert_eq!(up("0", "1"), vec![SplitKind::NarrowBelow(0)]);
    assert!(up("0", "2").contains(&SplitKind::WideLeft));

    let l = Limits::default();
    let w = weave_witness(2, 2, ONE, false, &l).unwrap();
    let pulled = strongify_weave(&w.into(), 1, &l).unwrap();
    assert!(check_weave(&pulled, &WeaveSpec::new(1, 2, ONE, ONE, true), &opts(), &l).unwrap().ok);
}

#[test]
fn pullback_examples() {
    let l = Limits::default();
    let w: ConsistencyInterface<Node> = weave_witness(2, 2, OMEGA, false, &l).unwrap().into();
    let same = pullback(&w, 2, |s| s.clone(), &l).unwrap();
    assert_eq!(same.as_sets(), w.as_sets());
    let down = pullback(&w, 1, |s| s.extend(Letter::new(0, 0)), &l).unwrap();
    assert!(check_weave(&down, &WeaveSpec::new(1, 2, OMEGA, OMEGA, true), &opts(), &l).unwrap().ok);
    let bad = pullback(&w, 2, |s| if s.level_index() == 5 { n("00") } else { s.clone() }, &l);
    assert!(matches!(bad, Err(Error::Argument(_))));
}

#[test]
fn grid_embedding_examples() {
    let p = |s: &str| grid_embed_node(&n(s)).unwrap();
    assert_eq!(p("0"), GridPoint::new(0, 1));
    assert_eq!(p("1"), GridPoint::new(1, 0));
    assert_eq!(p("2"), GridPoint::new(2, 3));
    assert_eq!(p("3"), GridPoint::new(3, 2));
    assert!(p("0").incomparable(p("1")));
    assert!(p("0").lt_both(p("2")));

    let l = Limits::default();
    let spec = WeaveSpec::new(1, 2, OMEGA, OMEGA, true);
    let g = grid_witness(4, false, &l).unwrap();
    let w = grid_to_weave(&g.clone().into(), 1, &l).unwrap();
    assert!(check_weave(&w, &spec, &opts(), &l).unwrap().ok);

    // the antichain {(0,1),(1,0)} is the image of the up pair {"0","1"}
    let glued = g.with_new_atom("glue", &[GridPoint::new(0, 1), GridPoint::new(1, 0)]).unwrap();
    let w = grid_to_weave(&glued.into(), 1, &l).unwrap();
    let r = check_weave(&w, &spec, &opts(), &l).unwrap();
    assert!(!r.ok);
    assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Inconsistency && v.common_atom.as_deref() == Some("glue")));

    let single = SetSystem::from_positions(vec!["x".into()], vec![(GridPoint::new(0, 0), vec![0])]).unwrap();
    let w0 = grid_to_weave(&single.into(), 0, &l).unwrap();
    assert!(check_weave(&w0, &WeaveSpec::new(0, 2, OMEGA, OMEGA, true), &opts(), &l).unwrap().ok);
    let empty = SetSystem::from_positions(vec![], vec![(GridPoint::new(0, 0), vec![])]).unwrap();
    let w0 = grid_to_weave(&empty.into(), 0, &l).unwrap();
    assert!(!check_weave(&w0, &WeaveSpec::new(0, 2, OMEGA, OMEGA, true), &opts(), &l).unwrap().ok);
}

#[test]
fn epsilon_examples() {
    let e = |x, y| eps_point(GridPoint::new(x, y));
    assert!(e(0, 0).strictly_comparable(e(1, 1)));
    assert!(!e(0, 1).comparable(e(1, 0)));
    // tied first coordinate: a chain whose image is not a strict chain
    assert!(!e(0, 0).strictly_comparable(e(0, 1)));
}

#[test]
fn cograph_examples() {
    let k1 = Cotree::leaf(0);
    assert_eq!(eval_cotree(&k1).unwrap(), Graph::empty(1));
    let k2 = Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1)]);
    assert_eq!(eval_cotree(&k2).unwrap(), Graph::complete(2));
    let k3 = Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1), Cotree::leaf(2)]);
    assert_eq!(eval_cotree(&k3).unwrap(), Graph::complete(3));
    let two_k2 = Cotree::union(vec![
        Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1)]),
        Cotree::join(vec![Cotree::leaf(2), Cotree::leaf(3)]),
    ]);
    let g = eval_cotree(&two_k2).unwrap();
    assert_eq!((g.n(), g.edge_count()), (4, 2));

    assert_eq!(find_p4(&Graph::path(4)).map(|c| c.0), Some([0, 1, 2, 3]));
    assert_eq!(find_p4(&Graph::cycle(4)), None);
    assert_eq!(cotree_of(&Graph::complete(2)).unwrap(), k2);
    assert_eq!(cotree_of(&Graph::path(4)).unwrap_err().0, [0, 1, 2, 3]);
    assert_eq!(random_cotree(1, 9).unwrap(), Cotree::leaf(0));
    assert_eq!(random_cotree(10, 9).unwrap(), random_cotree(10, 9).unwrap());
}

#[test]
fn comb_graph_examples() {
    let l = Limits::default();
    let g0 = comb_graph(0, &l).unwrap();
    assert_eq!(g0.graph, Graph::empty(1));
    let g1 = comb_graph(1, &l).unwrap();
    assert_eq!(g1.graph.edges(), vec![(0, 1), (2, 3)]);
    assert_eq!(cotree_of(&g1.graph).unwrap(), g1.cotree.canonical());
    assert_eq!(comb_graph(2, &l).unwrap().graph.edge_count(), 40);
}

#[test]
fn embedding_examples() {
    let e = embed_cograph(&Cotree::leaf(0)).unwrap();
    assert_eq!((e.depth, e.map.clone()), (0, vec![Node::empty()]));
    let e = embed_cograph(&Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1)])).unwrap();
    assert_eq!((e.depth, e.map.clone()), (1, nodes(&["0", "1"])));
    let e = embed_cograph(&Cotree::union(vec![Cotree::leaf(0), Cotree::leaf(1)])).unwrap();
    assert_eq!((e.depth, e.map.clone()), (1, nodes(&["0", "2"])));
}

#[test]
fn bridge_examples() {
    let l = Limits::default();
    for d in 1..=2 {
        let g = comb_graph(d, &l).unwrap();
        let w = graph_to_weave_oracle(&graph_witness(&g.graph), d, &opts(), &l).unwrap();
        let spec = WeaveSpec::new(d, 2, OMEGA, OMEGA, true);
        assert!(check_weave(&w, &spec, &opts(), &l).unwrap().ok);
    }
    let not_pattern = SetSystem::from_positions(vec!["x".into()], (0..4usize).map(|v| (v, vec![0])).collect()).unwrap();
    assert!(graph_to_weave_oracle(&not_pattern.into(), 1, &opts(), &l).is_err());

    let w: ConsistencyInterface<Node> = weave_witness(2, 2, OMEGA, false, &l).unwrap().into();
    let two_k2 = Cotree::union(vec![
        Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1)]),
        Cotree::join(vec![Cotree::leaf(2), Cotree::leaf(3)]),
    ]);
    let p = weave_to_graph_oracle(&w, 2, &two_k2, &opts(), &l).unwrap();
    assert!(check_graph_pattern(&p, &eval_cotree(&two_k2).unwrap(), &opts(), &l).unwrap().ok);
    let k2 = Cotree::join(vec![Cotree::leaf(0), Cotree::leaf(1)]);
    let p = weave_to_graph_oracle(&w, 2, &k2, &opts(), &l).unwrap();
    assert!(!p.consistent(&[0, 1]).unwrap());
    let w1: ConsistencyInterface<Node> = weave_witness(1, 2, OMEGA, false, &l).unwrap().into();
    assert!(weave_to_graph_oracle(&w1, 1, &two_k2, &opts(), &l).is_err());
}

#[test]
fn genericity_examples() {
    let dense: Vec<DensePredicate<String>> = (1..=5)
        .map(|i| DensePredicate::new(format!("len>={i}"), move |s: &String| s.len() >= i))
        .collect();
    let chain = generic_chain(&BinaryStrings, &dense, String::new(), 5, DEFAULT_HORIZON).unwrap();
    assert!(chain.windows(2).all(|w| w[0].element.len() < w[1].element.len()));
    assert!(chain.len() <= 6);
    let one = [DensePredicate::new("has 1", |s: &String| s.contains('1'))];
    let chain = generic_chain(&BinaryStrings, &one, "000".into(), 1, DEFAULT_HORIZON).unwrap();
    assert!(chain.last().unwrap().element.contains('1'));
    let bad = [DensePredicate::new("length < 2", |s: &String| s.len() < 2)];
    match generic_chain(&BinaryStrings, &bad, "000".into(), 1, 50) {
        Err(Error::Density { requirement, .. }) => assert_eq!(requirement, "length < 2"),
        other => panic!("expected a density failure, got {other:?}"),
    }
}
