//! Chains through a poset that meet a list of dense requirement sets, built
//! by round-robin scheduling and breadth-first search for extensions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_HORIZON: usize = 10_000;

/// A poset presented by its immediate extensions.
pub trait RequirementPoset {
    type Element: Clone + Eq + Hash + Display + Debug;

    /// Elements immediately above `e`, in a fixed order.
    fn extensions(&self, e: &Self::Element) -> Vec<Self::Element>;

    /// Reflexive-transitive extension order.
    fn le(&self, a: &Self::Element, b: &Self::Element) -> bool;
}

/// Finite binary strings ordered by prefix.
#[derive(Clone, Copy, Debug, Default)]
pub struct BinaryStrings;

impl RequirementPoset for BinaryStrings {
    type Element = String;

    fn extensions(&self, e: &String) -> Vec<String> {
        vec![format!("{e}0"), format!("{e}1")]
    }

    fn le(&self, a: &String, b: &String) -> bool {
        b.starts_with(a.as_str())
    }
}

/// An explicit finite poset given by cover pairs `[lower, upper]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FinitePosetJson", into = "FinitePosetJson")]
pub struct FinitePoset {
    elements: Vec<String>,
    covers: Vec<[String; 2]>,
    up: HashMap<String, Vec<String>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct FinitePosetJson {
    elements: Vec<String>,
    covers: Vec<[String; 2]>,
}

impl From<FinitePoset> for FinitePosetJson {
    fn from(p: FinitePoset) -> Self {
        FinitePosetJson {
            elements: p.elements,
            covers: p.covers,
        }
    }
}

impl TryFrom<FinitePosetJson> for FinitePoset {
    type Error = Error;

    fn try_from(j: FinitePosetJson) -> Result<Self> {
        FinitePoset::new(j.elements, j.covers)
    }
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, covers: Vec<[String; 2]>) -> Result<Self> {
        let known: HashSet<&String> = elements.iter().collect();
        if known.len() != elements.len() {
            return Err(Error::arg("poset elements are not distinct"));
        }
        let mut up: HashMap<String, Vec<String>> = elements.iter().map(|e| (e.clone(), Vec::new())).collect();
        for [a, b] in &covers {
            if !known.contains(a) || !known.contains(b) {
                return Err(Error::arg(format!("cover {a} < {b} names an unknown element")));
            }
            up.get_mut(a).expect("known element").push(b.clone());
        }
        let poset = FinitePoset { elements, covers, up };
        for [a, b] in &poset.covers {
            if poset.le(b, a) {
                return Err(Error::arg(format!("cover {a} < {b} closes a cycle")));
            }
        }
        Ok(poset)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }
}

impl RequirementPoset for FinitePoset {
    type Element = String;

    fn extensions(&self, e: &String) -> Vec<String> {
        self.up.get(e).cloned().unwrap_or_default()
    }

    fn le(&self, a: &String, b: &String) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            if seen.insert(x) {
                stack.extend(self.up.get(x).into_iter().flatten());
            }
        }
        false
    }
}

/// A requirement every element is promised to be extendable into.
pub struct DensePredicate<E> {
    pub name: String,
    test: Box<dyn Fn(&E) -> bool + Send + Sync>,
}

impl<E> DensePredicate<E> {
    pub fn new(name: impl Into<String>, test: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self {
        DensePredicate {
            name: name.into(),
            test: Box::new(test),
        }
    }

    pub fn holds(&self, e: &E) -> bool {
        (self.test)(e)
    }
}

impl<E> Debug for DensePredicate<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensePredicate({})", self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep<E> {
    pub element: E,
    /// Requirements this element satisfies.
    pub satisfied: Vec<usize>,
}

/// Builds a chain from `start` meeting every requirement, with at most
/// `steps` extensions after `start`. Requirements are served round-robin;
/// an unmet one is sought breadth-first among proper extensions of the
/// current element, expanding at most `horizon` elements.
pub fn generic_chain<P: RequirementPoset>(
    poset: &P,
    dense: &[DensePredicate<P::Element>],
    start: P::Element,
    steps: usize,
    horizon: usize,
) -> Result<Vec<ChainStep<P::Element>>> {
    if steps < dense.len() {
        return Err(Error::arg(format!(
            "{steps} steps cannot serve {} requirements",
            dense.len()
        )));
    }
    let record = |e: P::Element| {
        let satisfied = (0..dense.len()).filter(|&i| dense[i].holds(&e)).collect();
        ChainStep { element: e, satisfied }
    };
    let mut chain = vec![record(start)];
    for (i, req) in dense.iter().enumerate() {
        if chain.iter().any(|s| s.satisfied.contains(&i)) {
            continue;
        }
        let current = chain.last().expect("chain starts nonempty").element.clone();
        let found = search(poset, req, &current, horizon).ok_or_else(|| Error::Density {
            requirement: req.name.clone(),
            stuck_at: current.to_string(),
            horizon,
        })?;
        if chain.len() > steps {
            return Err(Error::arg(format!("requirement `{}` needs more than {steps} steps", req.name)));
        }
        debug_assert!(poset.le(&current, &found));
        chain.push(record(found));
    }
    Ok(chain)
}

fn search<P: RequirementPoset>(
    poset: &P,
    req: &DensePredicate<P::Element>,
    from: &P::Element,
    horizon: usize,
) -> Option<P::Element> {
    let mut queue: VecDeque<P::Element> = poset.extensions(from).into();
    let mut seen: HashSet<P::Element> = queue.iter().cloned().collect();
    let mut expanded = 0;
    while let Some(e) = queue.pop_front() {
        if req.holds(&e) {
            return Some(e);
        }
        expanded += 1;
        if expanded >= horizon {
            return None;
        }
        for x in poset.extensions(&e) {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    None
}

/// Checks that consecutive elements extend each other and that every
/// requirement is recorded somewhere.
pub fn is_generic_chain<P: RequirementPoset>(poset: &P, chain: &[ChainStep<P::Element>], requirements: usize) -> bool {
    chain.windows(2).all(|w| poset.le(&w[0].element, &w[1].element) && w[0].element != w[1].element)
        && (0..requirements).all(|i| chain.iter().any(|s| s.satisfied.contains(&i)))
}
