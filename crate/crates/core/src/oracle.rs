//! Brute-force reference deciders.
//!
//! Each function here follows a definition literally (search over all build
//! trees, all subsets, all assignments) and shares no code path with the
//! recognizers it is used to check. They are exponential and meant for desk
//! sizes only.

use std::collections::HashMap;

use itertools::Itertools;

use crate::combs::{is_comb, Bound, CombClass, CombKind, Reading};
use crate::grid::{box_points, GridPoint};
use crate::index::{Letter, Node};
use crate::patterns::{ConsistencyInterface, GridSpec, Template, WeaveSpec};

/// Relation between two node sets, checked by trying every split prefix.
fn relation_holds(a: &[&Node], b: &[&Node], kind: CombKind) -> bool {
    let depth = a[0].depth();
    (0..depth).any(|p| {
        let tau = &a[0].letters()[..p];
        let under = |x: &Node, allowed: &dyn Fn(Letter) -> bool| {
            x.depth() > p && &x.letters()[..p] == tau && allowed(x.letters()[p])
        };
        match kind {
            CombKind::Up => (0..2).any(|i| {
                a.iter().all(|x| under(x, &|l| l == Letter::new(i, 0)))
                    && b.iter().all(|x| under(x, &|l| l == Letter::new(i, 1)))
            }),
            CombKind::Right => (0..2).any(|j| {
                a.iter().all(|x| under(x, &|l| l == Letter::new(0, j)))
                    && b.iter().all(|x| under(x, &|l| l == Letter::new(1, j)))
            }),
            CombKind::WideRight => {
                a.iter()
                    .all(|x| under(x, &|l| l == Letter::new(0, 0) || l == Letter::new(0, 1)))
                    && b.iter()
                        .all(|x| under(x, &|l| l == Letter::new(1, 0) || l == Letter::new(1, 1)))
            }
        }
    })
}

/// Decides comb membership by searching every way of writing the set as a
/// union of two parts, recursively. Sets of up to 20 elements.
pub fn is_comb_by_build_trees(set: &[Node], class: CombClass) -> bool {
    assert!(!set.is_empty() && set.len() <= 20);
    let mut memo = HashMap::new();
    let full = (1u32 << set.len()) - 1;
    member(set, full, class, &mut memo)
}

fn member(
    set: &[Node],
    mask: u32,
    class: CombClass,
    memo: &mut HashMap<(u32, CombClass), bool>,
) -> bool {
    if mask.count_ones() == 1 {
        return true;
    }
    if let Some(&v) = memo.get(&(mask, class)) {
        return v;
    }
    let part_class = match (class.kind, class.reading) {
        (CombKind::WideRight, Reading::Literal) => CombClass::right(class.n),
        _ => class,
    };
    let mut found = false;
    let mut a = (mask - 1) & mask;
    while a != 0 && !found {
        let b = mask & !a;
        if b != 0 && fits(class.n, a.count_ones() as usize) {
            let pick = |m: u32| -> Vec<&Node> {
                (0..set.len()).filter(|i| m >> i & 1 == 1).map(|i| &set[i]).collect()
            };
            found = relation_holds(&pick(a), &pick(b), class.kind)
                && member(set, a, part_class, memo)
                && member(set, b, part_class, memo);
        }
        a = (a - 1) & mask;
    }
    memo.insert((mask, class), found);
    found
}

fn fits(n: Bound, size: usize) -> bool {
    match n {
        Bound::Finite(n) => size <= n,
        Bound::Omega => true,
    }
}

/// Whether the pair is an up-1-comb, by the definition.
pub fn pair_is_up_one(x: &Node, y: &Node) -> bool {
    relation_holds(&[x], &[y], CombKind::Up) || relation_holds(&[y], &[x], CombKind::Up)
}

/// Whether some 2-subset of `set` is an up-1-comb.
pub fn has_up_pair(set: &[Node]) -> bool {
    set.iter()
        .enumerate()
        .any(|(i, x)| set[i + 1..].iter().any(|y| pair_is_up_one(x, y)))
}

/// Whether the binary strings form a right-n-comb, by searching all
/// two-part decompositions.
pub fn is_binary_right_comb_by_build_trees(set: &[&str], n: Bound) -> bool {
    let mut set: Vec<&str> = set.to_vec();
    set.sort();
    set.dedup();
    assert!(!set.is_empty() && set.len() <= 16);
    fn rec(set: &[&str], mask: u32, n: Bound) -> bool {
        if mask.count_ones() == 1 {
            return true;
        }
        let pick = |m: u32| -> Vec<&str> {
            (0..set.len()).filter(|i| m >> i & 1 == 1).map(|i| set[i]).collect()
        };
        let all = pick(mask);
        // greatest common initial segment of the union
        let gcis = (0..=all[0].len())
            .rev()
            .map(|l| &all[0][..l])
            .find(|p| all.iter().all(|s| s.starts_with(p)))
            .unwrap_or("");
        let mut a = (mask - 1) & mask;
        while a != 0 {
            let b = mask & !a;
            let (pa, pb) = (pick(a), pick(b));
            let z = format!("{gcis}0");
            let o = format!("{gcis}1");
            if fits(n, pa.len())
                && pa.iter().all(|s| s.starts_with(&z))
                && pb.iter().all(|s| s.starts_with(&o))
                && rec(set, a, n)
                && rec(set, b, n)
            {
                return true;
            }
            a = (a - 1) & mask;
        }
        false
    }
    rec(&set, (1u32 << set.len()) - 1, n)
}

/// A 2D point relation for grid oracles.
pub fn product_le(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

/// Does the graph given by `adjacent` contain an induced path on four
/// vertices? Tries every ordered 4-tuple.
pub fn has_induced_p4(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> bool {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                    if distinct
                        && adjacent(a, b)
                        && adjacent(b, c)
                        && adjacent(c, d)
                        && !adjacent(a, c)
                        && !adjacent(b, d)
                        && !adjacent(a, d)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Weave verdict straight from the definition: every subset of the level is
/// classified with `is_comb`, with no size cap. Levels of at most 16 nodes.
pub fn is_weave_by_subsets(ci: &ConsistencyInterface<Node>, spec: &WeaveSpec) -> bool {
    let nodes: Vec<Node> = (0..1u64 << (2 * spec.depth))
        .map(|i| Node::from_level_index(i, spec.depth))
        .collect();
    assert!(nodes.len() <= 16);
    let up = spec.inconsistent_class();
    let cons = spec.consistent_class();
    (1u32..1 << nodes.len()).all(|mask| {
        let set: Vec<Node> = (0..nodes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| nodes[i].clone())
            .collect();
        let in_up = matches!(is_comb(&set, up), Ok(Some(_)));
        let in_cons = matches!(is_comb(&set, cons), Ok(Some(_)));
        (!in_up || ci.k_inconsistent(&set, spec.k).expect("indices come from the level"))
            && (!in_cons || ci.consistent(&set).expect("indices come from the level"))
    })
}

/// Grid verdict from the pairwise definitions over every subset of the box.
/// Boxes of side at most 4.
pub fn is_grid_by_subsets(ci: &ConsistencyInterface<GridPoint>, spec: &GridSpec) -> bool {
    let points = box_points(spec.side);
    assert!(points.len() <= 16);
    (1u32..1 << points.len()).all(|mask| {
        let set: Vec<GridPoint> = (0..points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i])
            .collect();
        let pairs = || set.iter().array_combinations().map(|[a, b]| (a, b));
        let p = |q: &GridPoint| (q.x, q.y);
        let antichain = pairs().all(|(a, b)| !product_le(p(a), p(b)) && !product_le(p(b), p(a)));
        let chain = if spec.strong {
            pairs().all(|(a, b)| product_le(p(a), p(b)) || product_le(p(b), p(a)))
        } else {
            pairs().all(|(a, b)| (a.x < b.x && a.y < b.y) || (b.x < a.x && b.y < a.y))
        };
        (!antichain || ci.k_inconsistent(&set, spec.k).expect("box indices"))
            && (!chain || ci.consistent(&set).expect("box indices"))
    })
}

/// Template realizability by trying every assignment of subsets of
/// `atoms` atoms to the indices. At most 4 atoms and 4 indices.
pub fn is_realizable_by_assignment(t: &Template, atoms: usize) -> bool {
    assert!(atoms <= 4 && t.indices.len() <= 4);
    let pos = |name: &String| t.indices.iter().position(|i| i == name).expect("template index");
    let sets = 1usize << atoms;
    let total = sets.pow(t.indices.len() as u32);
    (0..total).any(|code| {
        let assign: Vec<usize> = (0..t.indices.len())
            .map(|i| code / sets.pow(i as u32) % sets)
            .collect();
        let meet = |fam: &[&String]| fam.iter().fold(sets - 1, |acc, i| acc & assign[pos(i)]);
        t.must_consist
            .iter()
            .all(|c| c.is_empty() || meet(&c.iter().collect::<Vec<_>>()) != 0)
            && t.must_k_inconsist.iter().all(|c| {
                c.iter().unique().combinations(t.k).all(|sub| meet(&sub) == 0)
            })
    })
}
