//! Finite sequences over the four-letter alphabet `{0,1}²`.
//!
//! A [`Node`] is written compactly as a string of digits `0..=3`, digit `c`
//! standing for the letter `(c / 2, c % 2)`. The empty node is written `-`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// One of the four letters `(first, second)` with both coordinates in `{0,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const ALL: [Letter; 4] = [Letter(0), Letter(1), Letter(2), Letter(3)];

    pub fn new(first: u8, second: u8) -> Letter {
        assert!(first < 2 && second < 2, "letter coordinates are bits");
        Letter(2 * first + second)
    }

    pub fn from_code(code: u8) -> Option<Letter> {
        (code < 4).then_some(Letter(code))
    }

    pub fn first(self) -> u8 {
        self.0 >> 1
    }

    pub fn second(self) -> u8 {
        self.0 & 1
    }

    /// The compact digit, `2·first + second`.
    pub fn code(self) -> u8 {
        self.0
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.first(), self.second()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [i, j] = <[u8; 2]>::deserialize(d)?;
        if i > 1 || j > 1 {
            return Err(D::Error::custom(format!("letter ({i},{j}) is not a pair of bits")));
        }
        Ok(Letter::new(i, j))
    }
}

/// A finite sequence of letters. Lexicographic order on the compact string
/// is the derived `Ord`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Node {
    letters: Vec<Letter>,
}

impl Node {
    pub fn empty() -> Node {
        Node::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Node {
        Node { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter_at(&self, position: usize) -> Option<Letter> {
        self.letters.get(position).copied()
    }

    /// `σ⌢a`.
    pub fn extend(&self, letter: Letter) -> Node {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(letter);
        Node { letters }
    }

    /// `a⌢σ`.
    pub fn prepend(&self, letter: Letter) -> Node {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Node { letters }
    }

    /// Right-pads with `letter` up to `depth`; longer nodes are returned unchanged.
    pub fn padded(&self, depth: usize, letter: Letter) -> Node {
        let mut letters = self.letters.clone();
        while letters.len() < depth {
            letters.push(letter);
        }
        Node { letters }
    }

    pub fn prefix(&self, len: usize) -> Node {
        Node {
            letters: self.letters[..len.min(self.letters.len())].to_vec(),
        }
    }

    /// `self ⪯ other`.
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Node) -> usize {
        self.letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// Greatest common initial segment.
    pub fn meet(&self, other: &Node) -> Node {
        self.prefix(self.common_prefix_len(other))
    }

    /// Position of this node in `enumerate_level(self.depth())`.
    pub fn level_index(&self) -> u64 {
        self.letters
            .iter()
            .fold(0u64, |acc, l| acc * 4 + u64::from(l.code()))
    }

    /// Inverse of [`Node::level_index`].
    pub fn from_level_index(mut index: u64, depth: usize) -> Node {
        let mut letters = vec![Letter(0); depth];
        for slot in letters.iter_mut().rev() {
            *slot = Letter((index % 4) as u8);
            index /= 4;
        }
        debug_assert_eq!(index, 0, "index out of range for depth");
        Node { letters }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        for l in &self.letters {
            write!(f, "{}", l.code())?;
        }
        Ok(())
    }
}

impl FromStr for Node {
    type Err = Error;

    fn from_str(text: &str) -> Result<Node> {
        if text == "-" {
            return Ok(Node::empty());
        }
        if text.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty string; the empty node is written `-`".into(),
            });
        }
        let letters = text
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0'..='3' => Ok(Letter(c as u8 - b'0')),
                other => Err(Error::Parse {
                    position,
                    message: format!("invalid character {other:?}, expected one of 0123"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Node { letters })
    }
}

/// `σ⌢a`.
pub fn extend(node: &Node, letter: Letter) -> Node {
    node.extend(letter)
}

/// Longest common prefix of two nodes.
pub fn meet(a: &Node, b: &Node) -> Node {
    a.meet(b)
}

/// Longest common prefix of a nonempty set of nodes.
pub fn meet_all<'a>(nodes: impl IntoIterator<Item = &'a Node>) -> Option<Node> {
    let mut it = nodes.into_iter();
    let first = it.next()?;
    let len = it.fold(first.depth(), |len, n| len.min(first.common_prefix_len(n)));
    Some(first.prefix(len))
}

/// The full level `(2²)^depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    pub depth: usize,
}

impl Level {
    pub fn new(depth: usize, limits: &Limits) -> Result<Level> {
        if depth > limits.max_depth {
            return Err(Error::resource(
                format!("level depth {depth}"),
                limits.max_depth as u128,
            ));
        }
        Ok(Level { depth })
    }

    /// `4^depth`.
    pub fn size(self) -> u64 {
        1u64 << (2 * self.depth)
    }

    pub fn nodes(self) -> impl Iterator<Item = Node> {
        (0..self.size()).map(move |i| Node::from_level_index(i, self.depth))
    }
}

/// All `4^depth` nodes of the given depth in lexicographic order.
pub fn enumerate_level(depth: usize, limits: &Limits) -> Result<Vec<Node>> {
    Ok(Level::new(depth, limits)?.nodes().collect())
}

/// Serde adapter writing a node as its compact string.
pub mod compact {
    use super::*;

    pub fn serialize<S: Serializer>(node: &Node, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(node)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Node, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Serde adapter writing a node list as an array of compact strings.
pub mod compact_vec {
    use super::*;

    pub fn serialize<S: Serializer>(nodes: &[Node], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(nodes.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Node>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| t.parse().map_err(D::Error::custom))
            .collect()
    }
}
