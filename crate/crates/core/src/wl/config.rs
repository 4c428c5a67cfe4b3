use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::AdjacencySemantics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Adjacency {
    Boundary,
    Coboundary,
    Lower,
    Upper,
}

impl Adjacency {
    pub const ALL: [Adjacency; 4] = [Self::Boundary, Self::Coboundary, Self::Lower, Self::Upper];

    pub fn letter(self) -> char {
        match self {
            Self::Boundary => 'b',
            Self::Coboundary => 'c',
            Self::Lower => 'l',
            Self::Upper => 'u',
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A non-empty subset of `{B, C, L, U}`, written as letters such as `"bu"`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdjacencySet(u8);

impl AdjacencySet {
    pub const FULL: AdjacencySet = AdjacencySet(0b1111);
    pub const BLU: AdjacencySet = AdjacencySet(0b1101);
    pub const BU: AdjacencySet = AdjacencySet(0b1001);

    pub fn new(items: impl IntoIterator<Item = Adjacency>) -> Result<Self> {
        let bits = items.into_iter().fold(0, |acc, a| acc | a.bit());
        if bits == 0 {
            return Err(Error::Config("adjacency set must not be empty".into()));
        }
        Ok(Self(bits))
    }

    pub fn contains(self, a: Adjacency) -> bool {
        self.0 & a.bit() != 0
    }

    /// Enabled adjacencies in canonical `B, C, L, U` order.
    pub fn iter(self) -> impl Iterator<Item = Adjacency> {
        Adjacency::ALL.into_iter().filter(move |&a| self.contains(a))
    }
}

impl Default for AdjacencySet {
    fn default() -> Self {
        Self::FULL
    }
}

impl FromStr for AdjacencySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut items = Vec::new();
        for ch in s.chars() {
            let a = match ch.to_ascii_lowercase() {
                'b' => Adjacency::Boundary,
                'c' => Adjacency::Coboundary,
                'l' => Adjacency::Lower,
                'u' => Adjacency::Upper,
                other => return Err(Error::Config(format!("unknown adjacency `{other}`, expected letters from `bclu`"))),
            };
            if items.contains(&a) {
                return Err(Error::Config(format!("adjacency `{ch}` listed twice")));
            }
            items.push(a);
        }
        Self::new(items)
    }
}

impl fmt::Display for AdjacencySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.iter().try_for_each(|a| write!(f, "{}", a.letter()))
    }
}

impl fmt::Debug for AdjacencySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdjacencySet({self})")
    }
}

impl Serialize for AdjacencySet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdjacencySet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementConfig {
    pub adjacencies: AdjacencySet,
    pub semantics: AdjacencySemantics,
    /// Defaults to one more than the larger poset.
    pub max_iterations: Option<usize>,
}

impl RefinementConfig {
    pub fn new(adjacencies: AdjacencySet, semantics: AdjacencySemantics) -> Self {
        Self { adjacencies, semantics, max_iterations: None }
    }

    /// Short stable identifier such as `bclu-pair`.
    pub fn id(&self) -> String {
        format!("{}-{}", self.adjacencies, self.semantics)
    }
}
