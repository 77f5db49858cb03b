use std::collections::{HashMap, HashSet};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Types usable as family indices: nodes, grid points, vertex ids, labels.
pub trait IndexKey:
    Clone + Ord + Hash + Display + FromStr + Debug + Send + Sync + 'static
{
}

impl<T> IndexKey for T where T: Clone + Ord + Hash + Display + FromStr + Debug + Send + Sync + 'static {}

/// A family of subsets of a finite universe of named atoms.
#[derive(Clone)]
pub struct SetSystem<I> {
    universe: Vec<String>,
    indices: Vec<I>,
    sets: Vec<FixedBitSet>,
    position: HashMap<I, usize>,
}

impl<I: IndexKey> SetSystem<I> {
    /// Builds a system from atom positions into `universe`.
    pub fn from_positions(universe: Vec<String>, family: Vec<(I, Vec<usize>)>) -> Result<Self> {
        let mut seen = HashSet::new();
        if let Some(dup) = universe.iter().find(|a| !seen.insert(*a)) {
            return Err(Error::arg(format!("atom {dup:?} appears twice in the universe")));
        }
        let mut indices = Vec::with_capacity(family.len());
        let mut sets = Vec::with_capacity(family.len());
        let mut position = HashMap::with_capacity(family.len());
        for (index, atoms) in family {
            let mut set = FixedBitSet::with_capacity(universe.len());
            for a in atoms {
                if a >= universe.len() {
                    return Err(Error::arg(format!("atom #{a} of {index} is outside the universe")));
                }
                set.insert(a);
            }
            if position.insert(index.clone(), indices.len()).is_some() {
                return Err(Error::arg(format!("index {index} appears twice")));
            }
            indices.push(index);
            sets.push(set);
        }
        Ok(SetSystem {
            universe,
            indices,
            sets,
            position,
        })
    }

    /// Builds a system from atom names.
    pub fn from_named(universe: Vec<String>, family: Vec<(I, Vec<String>)>) -> Result<Self> {
        let atom_pos: HashMap<&str, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_str(), i))
            .collect();
        let family = family
            .into_iter()
            .map(|(index, names)| {
                let atoms = names
                    .iter()
                    .map(|n| {
                        atom_pos.get(n.as_str()).copied().ok_or_else(|| {
                            Error::arg(format!("atom {n:?} of {index} is not in the universe"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((index, atoms))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(universe, family)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn indices(&self) -> &[I] {
        &self.indices
    }

    pub fn position_of(&self, index: &I) -> Option<usize> {
        self.position.get(index).copied()
    }

    /// Atom names of the set at `index`.
    pub fn set(&self, index: &I) -> Option<Vec<&str>> {
        let pos = self.position_of(index)?;
        Some(self.sets[pos].ones().map(|a| self.universe[a].as_str()).collect())
    }

    pub fn atom_position(&self, atom: &str) -> Option<usize> {
        self.universe.iter().position(|a| a == atom)
    }

    /// Nonempty intersection over the positions; the empty family is consistent.
    pub fn consistent_positions(&self, family: &[usize]) -> bool {
        self.first_common_atom(family).is_some() || family.is_empty()
    }

    /// First atom common to every set of the family.
    pub fn first_common_atom(&self, family: &[usize]) -> Option<usize> {
        let (&head, rest) = family.split_first()?;
        let blocks = |p: usize| self.sets[p].as_slice();
        let words = blocks(head).len();
        (0..words).find_map(|w| {
            let word = rest.iter().fold(blocks(head)[w], |acc, &p| acc & blocks(p)[w]);
            (word != 0).then(|| w * usize::BITS as usize + word.trailing_zeros() as usize)
        })
    }

    /// Copy with `atom` removed from the set at `index`.
    pub fn without_atom(&self, index: &I, atom: &str) -> Result<Self> {
        let pos = self
            .position_of(index)
            .ok_or_else(|| Error::arg(format!("unknown index {index}")))?;
        let a = self
            .atom_position(atom)
            .ok_or_else(|| Error::arg(format!("unknown atom {atom:?}")))?;
        let mut out = self.clone();
        out.sets[pos].set(a, false);
        Ok(out)
    }

    /// Copy with a fresh atom added to the sets at `targets`.
    pub fn with_new_atom(&self, atom: &str, targets: &[I]) -> Result<Self> {
        if self.atom_position(atom).is_some() {
            return Err(Error::arg(format!("atom {atom:?} already exists")));
        }
        let mut out = self.clone();
        out.universe.push(atom.to_string());
        let len = out.universe.len();
        for set in &mut out.sets {
            set.grow(len);
        }
        for t in targets {
            let pos = out
                .position_of(t)
                .ok_or_else(|| Error::arg(format!("unknown index {t}")))?;
            out.sets[pos].insert(len - 1);
        }
        Ok(out)
    }

    /// Reindexes along `f`: the new set at `j` is the old set at `f(j)`.
    pub fn pullback<J: IndexKey>(
        &self,
        new_indices: Vec<J>,
        f: impl Fn(&J) -> Result<I>,
    ) -> Result<SetSystem<J>> {
        let mut family = Vec::with_capacity(new_indices.len());
        for j in new_indices {
            let i = f(&j)?;
            let pos = self
                .position_of(&i)
                .ok_or_else(|| Error::arg(format!("{j} maps to {i}, which is not an index")))?;
            family.push((j, self.sets[pos].ones().collect()));
        }
        SetSystem::from_positions(self.universe.clone(), family)
    }

    pub fn to_json(&self) -> SetSystemJson {
        SetSystemJson {
            universe: self.universe.clone(),
            family: self
                .indices
                .iter()
                .zip(&self.sets)
                .map(|(i, s)| FamilyEntry {
                    index: i.to_string(),
                    set: s.ones().map(|a| self.universe[a].clone()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SetSystemJson) -> Result<Self>
    where
        <I as FromStr>::Err: Display,
    {
        let family = json
            .family
            .iter()
            .map(|e| {
                let index = e.index.parse::<I>().map_err(|err| Error::Parse {
                    position: 0,
                    message: format!("bad index {:?}: {err}", e.index),
                })?;
                Ok((index, e.set.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_named(json.universe.clone(), family)
    }
}

impl<I: IndexKey> PartialEq for SetSystem<I> {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.indices == other.indices && self.sets == other.sets
    }
}

impl<I: IndexKey> Eq for SetSystem<I> {}

impl<I: IndexKey> Debug for SetSystem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.indices
                    .iter()
                    .zip(&self.sets)
                    .map(|(i, s)| (i.to_string(), s.ones().map(|a| &self.universe[a]).join(" "))),
            )
            .finish()
    }
}

/// Wire form: `{"universe":[…], "family":[{"index":"…", "set":[…]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemJson {
    pub universe: Vec<String>,
    pub family: Vec<FamilyEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub index: String,
    pub set: Vec<String>,
}

type Predicate = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

/// A consistency predicate over index positions, with no materialized sets.
#[derive(Clone)]
pub struct PredicateOracle<I> {
    indices: Vec<I>,
    position: HashMap<I, usize>,
    predicate: Predicate,
}

impl<I: IndexKey> PredicateOracle<I> {
    /// `predicate` receives sorted, deduplicated positions into `indices` and
    /// must be deterministic.
    pub fn new(
        indices: Vec<I>,
        predicate: impl Fn(&[usize]) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let mut position = HashMap::with_capacity(indices.len());
        for (p, i) in indices.iter().enumerate() {
            if position.insert(i.clone(), p).is_some() {
                return Err(Error::arg(format!("index {i} appears twice")));
            }
        }
        Ok(PredicateOracle {
            indices,
            position,
            predicate: Arc::new(predicate),
        })
    }
}

/// Answers "is this subfamily consistent?" for a fixed index set.
#[derive(Clone)]
pub enum ConsistencyInterface<I> {
    Sets(SetSystem<I>),
    Oracle(PredicateOracle<I>),
}

impl<I: IndexKey> From<SetSystem<I>> for ConsistencyInterface<I> {
    fn from(s: SetSystem<I>) -> Self {
        ConsistencyInterface::Sets(s)
    }
}

impl<I: IndexKey> Debug for ConsistencyInterface<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyInterface::Sets(s) => s.fmt(f),
            ConsistencyInterface::Oracle(o) => write!(f, "Oracle({} indices)", o.indices.len()),
        }
    }
}

impl<I: IndexKey> ConsistencyInterface<I> {
    pub fn indices(&self) -> &[I] {
        match self {
            ConsistencyInterface::Sets(s) => s.indices(),
            ConsistencyInterface::Oracle(o) => &o.indices,
        }
    }

    pub fn position_of(&self, index: &I) -> Option<usize> {
        match self {
            ConsistencyInterface::Sets(s) => s.position_of(index),
            ConsistencyInterface::Oracle(o) => o.position.get(index).copied(),
        }
    }

    pub fn as_sets(&self) -> Option<&SetSystem<I>> {
        match self {
            ConsistencyInterface::Sets(s) => Some(s),
            ConsistencyInterface::Oracle(_) => None,
        }
    }

    /// Consistency of a family given by positions (any order, duplicates allowed).
    pub fn consistent_positions(&self, family: &[usize]) -> bool {
        match self {
            ConsistencyInterface::Sets(s) => s.consistent_positions(family),
            ConsistencyInterface::Oracle(o) => {
                let mut sorted = family.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                (o.predicate)(&sorted)
            }
        }
    }

    pub fn positions(&self, family: &[I]) -> Result<Vec<usize>> {
        family
            .iter()
            .map(|i| {
                self.position_of(i)
                    .ok_or_else(|| Error::arg(format!("unknown index {i}")))
            })
            .collect()
    }

    /// Whether the sets indexed by `family` have a common element.
    pub fn consistent(&self, family: &[I]) -> Result<bool> {
        Ok(self.consistent_positions(&self.positions(family)?))
    }

    /// Whether every `k`-element subfamily is inconsistent.
    pub fn k_inconsistent(&self, family: &[I], k: usize) -> Result<bool> {
        if k < 2 {
            return Err(Error::arg(format!("k-inconsistency needs k ≥ 2, got {k}")));
        }
        let mut positions = self.positions(family)?;
        positions.sort_unstable();
        positions.dedup();
        Ok(positions
            .iter()
            .copied()
            .combinations(k)
            .all(|sub| !self.consistent_positions(&sub)))
    }

    /// Reindexes along `f`: the new family member at `j` is the old one at `f(j)`.
    pub fn pullback<J: IndexKey>(
        &self,
        new_indices: Vec<J>,
        f: impl Fn(&J) -> Result<I>,
    ) -> Result<ConsistencyInterface<J>> {
        match self {
            ConsistencyInterface::Sets(s) => Ok(ConsistencyInterface::Sets(s.pullback(new_indices, f)?)),
            ConsistencyInterface::Oracle(_) => {
                let mut old = Vec::with_capacity(new_indices.len());
                for j in &new_indices {
                    let i = f(j)?;
                    old.push(self.position_of(&i).ok_or_else(|| {
                        Error::arg(format!("{j} maps to {i}, which is not an index"))
                    })?);
                }
                let inner = self.clone();
                let oracle = PredicateOracle::new(new_indices, move |family: &[usize]| {
                    let mapped: Vec<usize> = family.iter().map(|&p| old[p]).collect();
                    inner.consistent_positions(&mapped)
                })?;
                Ok(ConsistencyInterface::Oracle(oracle))
            }
        }
    }
}
