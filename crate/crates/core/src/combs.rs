//! Split relations between node sets and recognition of up-, right- and wide
//! right-n-combs.
//!
//! Every comb class is built inductively from singletons by joining two parts
//! `A` and `B` that split at a prefix `τ`. For `A ∪ B` the split prefix is
//! forced to be the meet of `A ∪ B`, so recognition never has to search:
//! group the set by the letter at the meet position and recurse.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::{compact, meet_all, Letter, Level, Node};
use crate::limits::Limits;

/// A size bound that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(usize),
    Omega,
}

impl Bound {
    pub fn admits(self, size: usize) -> bool {
        match self {
            Bound::Finite(n) => size <= n,
            Bound::Omega => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Omega => f.write_str("omega"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Bound> {
        match s {
            "omega" | "w" | "ω" | "inf" => Ok(Bound::Omega),
            _ => s
                .parse()
                .map(Bound::Finite)
                .map_err(|_| Error::arg(format!("bound must be a natural or `omega`, got {s:?}"))),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(n) => s.serialize_u64(*n as u64),
            Bound::Omega => s.serialize_str("omega"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CombKind {
    Up,
    Right,
    WideRight,
}

/// Whether the parts of a wide right comb may themselves be wide
/// (`Recursive`) or must be narrow right combs (`Literal`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reading {
    #[default]
    Recursive,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CombClass {
    pub kind: CombKind,
    pub n: Bound,
    /// Only consulted for [`CombKind::WideRight`].
    pub reading: Reading,
}

impl CombClass {
    pub fn up(n: Bound) -> CombClass {
        CombClass {
            kind: CombKind::Up,
            n,
            reading: Reading::Recursive,
        }
    }

    pub fn right(n: Bound) -> CombClass {
        CombClass {
            kind: CombKind::Right,
            n,
            reading: Reading::Recursive,
        }
    }

    pub fn wide_right(n: Bound, reading: Reading) -> CombClass {
        CombClass {
            kind: CombKind::WideRight,
            n,
            reading,
        }
    }

    /// Class the two parts of a top-level split must belong to.
    fn part_class(self) -> CombClass {
        match (self.kind, self.reading) {
            (CombKind::WideRight, Reading::Literal) => CombClass::right(self.n),
            _ => self,
        }
    }
}

impl fmt::Display for CombClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.reading) {
            (CombKind::Up, _) => write!(f, "up-{}-comb", self.n),
            (CombKind::Right, _) => write!(f, "right-{}-comb", self.n),
            (CombKind::WideRight, Reading::Recursive) => write!(f, "wide right-{}-comb", self.n),
            (CombKind::WideRight, Reading::Literal) => {
                write!(f, "wide right-{}-comb (literal)", self.n)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitKind {
    /// `A` extends `τ⌢(i,0)`, `B` extends `τ⌢(i,1)`.
    NarrowBelow(u8),
    /// `A` extends `τ⌢(0,j)`, `B` extends `τ⌢(1,j)`.
    NarrowLeft(u8),
    /// `A` has first coordinate 0 at `|τ|`, `B` has first coordinate 1.
    WideLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitWitness {
    #[serde(with = "compact")]
    pub tau: Node,
    pub kind: SplitKind,
}

/// All split relations under which `a` lies below or to the left of `b`.
///
/// The returned list is empty when no relation holds. A pair of parts can be
/// both narrowly and widely left, never narrowly below and widely left.
pub fn split_relation(a: &[Node], b: &[Node]) -> Result<Vec<SplitWitness>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::arg("split_relation needs two nonempty sets"));
    }
    if a.iter().any(|x| b.contains(x)) {
        return Err(Error::arg("split_relation needs disjoint sets"));
    }
    let tau = meet_all(a.iter().chain(b)).expect("nonempty");
    let p = tau.depth();
    let letters = |set: &[Node]| -> Option<BTreeSet<Letter>> {
        set.iter().map(|x| x.letter_at(p)).collect()
    };
    let (Some(la), Some(lb)) = (letters(a), letters(b)) else {
        // some element is the split prefix itself
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    if let (Some(&x), Some(&y)) = (single(&la), single(&lb)) {
        if x.first() == y.first() && x.second() == 0 && y.second() == 1 {
            out.push(SplitWitness {
                tau: tau.clone(),
                kind: SplitKind::NarrowBelow(x.first()),
            });
        }
        if x.second() == y.second() && x.first() == 0 && y.first() == 1 {
            out.push(SplitWitness {
                tau: tau.clone(),
                kind: SplitKind::NarrowLeft(x.second()),
            });
        }
    }
    if la.iter().all(|l| l.first() == 0) && lb.iter().all(|l| l.first() == 1) {
        out.push(SplitWitness {
            tau,
            kind: SplitKind::WideLeft,
        });
    }
    Ok(out)
}

fn single<T>(set: &BTreeSet<T>) -> Option<&T> {
    if set.len() == 1 {
        set.iter().next()
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    UpOne,
    WideRightOne,
}

/// Classifies a pair of distinct nodes of equal depth as an up-1-comb or a
/// wide right-1-comb. Exactly one verdict applies.
pub fn classify_pair(sigma: &Node, tau: &Node) -> Result<PairClass> {
    if sigma.depth() != tau.depth() {
        return Err(Error::arg(format!(
            "classify_pair needs equal depths, got {} and {}",
            sigma.depth(),
            tau.depth()
        )));
    }
    if sigma == tau {
        return Err(Error::arg(format!("classify_pair needs distinct nodes, got {sigma} twice")));
    }
    let p = sigma.common_prefix_len(tau);
    let (x, y) = (sigma.letters()[p], tau.letters()[p]);
    Ok(if x.first() == y.first() {
        PairClass::UpOne
    } else {
        PairClass::WideRightOne
    })
}

/// A proof that a node set belongs to a comb class: a binary tree of splits
/// with singleton leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombCertificate {
    Leaf(Node),
    Split {
        witness: SplitWitness,
        /// The lower or left part.
        a: Box<CombCertificate>,
        b: Box<CombCertificate>,
    },
}

impl CombCertificate {
    /// The certified node set, in leaf order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Node>) {
        match self {
            CombCertificate::Leaf(n) => out.push(n.clone()),
            CombCertificate::Split { a, b, .. } => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Re-evaluates the tree bottom-up against the inductive clauses of `class`.
    pub fn verify(&self, class: CombClass) -> bool {
        match self {
            CombCertificate::Leaf(_) => true,
            CombCertificate::Split { witness, a, b } => {
                let kind_ok = matches!(
                    (class.kind, witness.kind),
                    (CombKind::Up, SplitKind::NarrowBelow(_))
                        | (CombKind::Right, SplitKind::NarrowLeft(_))
                        | (CombKind::WideRight, SplitKind::WideLeft)
                );
                let (na, nb) = (a.nodes(), b.nodes());
                kind_ok
                    && class.n.admits(na.len())
                    && split_relation(&na, &nb).is_ok_and(|ws| ws.contains(witness))
                    && a.verify(class.part_class())
                    && b.verify(class.part_class())
            }
        }
    }
}

impl Serialize for CombCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CombCertificate::Leaf(n) => s.collect_seq([n.to_string()]),
            CombCertificate::Split { witness, a, b } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("split", witness)?;
                m.serialize_entry("A", a)?;
                m.serialize_entry("B", b)?;
                m.end()
            }
        }
    }
}

fn check_equal_depth(set: &[Node]) -> Result<()> {
    if let Some(first) = set.first() {
        if let Some(other) = set.iter().find(|n| n.depth() != first.depth()) {
            return Err(Error::arg(format!(
                "comb sets must have equal depth: {first} has depth {}, {other} has depth {}",
                first.depth(),
                other.depth()
            )));
        }
    }
    Ok(())
}

/// Decides membership of `set` in `class`, returning a certificate on success.
pub fn is_comb(set: &[Node], class: CombClass) -> Result<Option<CombCertificate>> {
    if set.is_empty() {
        return Err(Error::arg("is_comb needs a nonempty set"));
    }
    check_equal_depth(set)?;
    let mut sorted = set.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok(recognize(&sorted, class))
}

/// `set` must be sorted, deduplicated and of equal depth.
fn recognize(set: &[Node], class: CombClass) -> Option<CombCertificate> {
    if set.len() == 1 {
        return Some(CombCertificate::Leaf(set[0].clone()));
    }
    let (first, last) = (&set[0], &set[set.len() - 1]);
    let p = first.common_prefix_len(last);
    let tau = first.prefix(p);
    // sorted order groups the elements by their letter at `p`
    let split_at = |pred: &dyn Fn(Letter) -> bool| -> Option<usize> {
        let k = set.iter().take_while(|x| pred(x.letters()[p])).count();
        set[k..].iter().all(|x| !pred(x.letters()[p])).then_some(k)
    };
    let letter_a = first.letters()[p];
    let letter_b = last.letters()[p];
    let (k, kind) = match class.kind {
        CombKind::Up => {
            let ok = letter_a.first() == letter_b.first()
                && letter_a.second() == 0
                && letter_b.second() == 1;
            (split_at(&|l| l == letter_a).filter(|_| ok)?, SplitKind::NarrowBelow(letter_a.first()))
        }
        CombKind::Right => {
            let ok = letter_a.second() == letter_b.second()
                && letter_a.first() == 0
                && letter_b.first() == 1;
            (split_at(&|l| l == letter_a).filter(|_| ok)?, SplitKind::NarrowLeft(letter_a.second()))
        }
        CombKind::WideRight => {
            let ok = letter_a.first() == 0 && letter_b.first() == 1;
            (split_at(&|l| l.first() == 0).filter(|_| ok)?, SplitKind::WideLeft)
        }
    };
    // narrow splits need exactly the two letters
    if kind != SplitKind::WideLeft && set[k..].iter().any(|x| x.letters()[p] != letter_b) {
        return None;
    }
    if !class.n.admits(k) {
        return None;
    }
    let part = class.part_class();
    let a = recognize(&set[..k], part)?;
    let b = recognize(&set[k..], part)?;
    Some(CombCertificate::Split {
        witness: SplitWitness { tau, kind },
        a: Box::new(a),
        b: Box::new(b),
    })
}

/// Letter pairs `(A-letter, B-letter)` allowed at a split for each class.
fn split_letters(kind: CombKind) -> &'static [(u32, u32)] {
    match kind {
        CombKind::Up => &[(0, 1), (2, 3)],
        CombKind::Right => &[(0, 2), (1, 3)],
        CombKind::WideRight => &[(0, 2), (0, 3), (1, 2), (1, 3)],
    }
}

/// Number of members of `class` at depth `depth` with size `1..=max_size`,
/// saturating at `u128::MAX`.
pub fn count_combs(depth: usize, class: CombClass, max_size: usize) -> u128 {
    let part = class.part_class();
    let mut own = vec![0u128; max_size + 1];
    if max_size >= 1 {
        own[1] = 1;
    }
    let mut parts = own.clone();
    for _ in 0..depth {
        let step = |cur: &[u128], src: &[u128], kind: CombKind, n: Bound| {
            let mut next = vec![0u128; max_size + 1];
            for s in 1..=max_size {
                next[s] = cur[s].saturating_mul(4);
            }
            let pairs = split_letters(kind).len() as u128;
            for a in 1..max_size {
                if !n.admits(a) {
                    break;
                }
                for b in 1..=(max_size - a) {
                    let c = src[a].saturating_mul(src[b]).saturating_mul(pairs);
                    next[a + b] = next[a + b].saturating_add(c);
                }
            }
            next
        };
        let next_own = step(&own, &parts, class.kind, class.n);
        let next_parts = if part == class {
            next_own.clone()
        } else {
            step(&parts, &parts, part.kind, part.n)
        };
        own = next_own;
        parts = next_parts;
    }
    own.iter().fold(0u128, |acc, &c| acc.saturating_add(c))
}

/// Members of `class` at depth `depth` as sorted level-index lists, ordered by
/// size and then lexicographically.
pub fn enumerate_comb_indices(
    depth: usize,
    class: CombClass,
    max_size: usize,
    limits: &Limits,
) -> Result<Vec<Vec<u32>>> {
    Level::new(depth, limits)?;
    if depth > 15 {
        return Err(Error::resource(format!("comb enumeration at depth {depth}"), 15u32));
    }
    let total = count_combs(depth, class, max_size);
    if total > limits.max_families {
        return Err(Error::resource(
            format!("{total} members of the {class} class at depth {depth} up to size {max_size}"),
            limits.max_families,
        ));
    }
    if max_size == 0 {
        return Ok(Vec::new());
    }
    let part = class.part_class();
    let mut own: Vec<Vec<u32>> = vec![vec![0]];
    let mut parts = own.clone();
    for r in 1..=depth {
        let width = 1u32 << (2 * (r - 1));
        let step = |cur: &[Vec<u32>], src: &[Vec<u32>], kind: CombKind, n: Bound| {
            let mut next = Vec::new();
            for letter in 0..4u32 {
                let shift = letter * width;
                next.extend(cur.iter().map(|c| c.iter().map(|x| x + shift).collect::<Vec<_>>()));
            }
            for &(la, lb) in split_letters(kind) {
                for a in src.iter().filter(|a| n.admits(a.len()) && a.len() < max_size) {
                    for b in src.iter().filter(|b| a.len() + b.len() <= max_size) {
                        let mut set = Vec::with_capacity(a.len() + b.len());
                        set.extend(a.iter().map(|x| x + la * width));
                        set.extend(b.iter().map(|x| x + lb * width));
                        next.push(set);
                    }
                }
            }
            next
        };
        let next_own = step(&own, &parts, class.kind, class.n);
        let next_parts = if part == class {
            next_own.clone()
        } else {
            step(&parts, &parts, part.kind, part.n)
        };
        own = next_own;
        parts = next_parts;
    }
    own.sort_unstable_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(own)
}

/// All members of `class` among the subsets of `(2²)^depth` with at most
/// `max_size` elements, ordered by size and then lexicographically.
pub fn enumerate_combs(
    depth: usize,
    class: CombClass,
    max_size: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = Vec<Node>>> {
    let sets = enumerate_comb_indices(depth, class, max_size, limits)?;
    Ok(sets.into_iter().map(move |set| {
        set.into_iter()
            .map(|i| Node::from_level_index(u64::from(i), depth))
            .collect()
    }))
}

/// Right-n-combs of binary strings: split at the greatest common initial
/// segment `σ`, `A` extending `σ⌢0` and `B` extending `σ⌢1`, with `|A| ≤ n`.
pub fn is_binary_right_comb<S: AsRef<str>>(set: &[S], n: Bound) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::arg("is_binary_right_comb needs a nonempty set"));
    }
    let mut strings: Vec<&[u8]> = Vec::with_capacity(set.len());
    for s in set {
        let s = s.as_ref();
        if let Some(position) = s.bytes().position(|c| c != b'0' && c != b'1') {
            return Err(Error::Parse {
                position,
                message: format!("binary strings use only 0 and 1, got {s:?}"),
            });
        }
        strings.push(s.as_bytes());
    }
    strings.sort();
    strings.dedup();
    Ok(binary_rec(&strings, n))
}

fn binary_rec(set: &[&[u8]], n: Bound) -> bool {
    if set.len() == 1 {
        return true;
    }
    let (first, last) = (set[0], set[set.len() - 1]);
    let p = first.iter().zip(last).take_while(|(a, b)| a == b).count();
    // the meet itself cannot sit inside a split
    if set.iter().any(|s| s.len() == p) {
        return false;
    }
    let k = set.iter().take_while(|s| s[p] == b'0').count();
    n.admits(k) && binary_rec(&set[..k], n) && binary_rec(&set[k..], n)
}
