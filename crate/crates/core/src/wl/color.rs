use std::collections::{BTreeMap, HashMap};

use serde::{Serialize, Serializer};

/// Dense index into a [`ColorTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ColorId(pub u32);

/// Canonical, order-independent description of how a color was produced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// A seed color. Graded refinement starts everyone at `Initial(0)`; the
    /// bipartite baseline seeds nodes with 0 and hyperedges with 1.
    Initial(u32),
    /// Own previous color, then one sorted multiset per enabled adjacency
    /// in `B, C, L, U` order. Boundary and coboundary entries carry no
    /// witness; lower and upper entries carry the shared element's color
    /// under pair semantics.
    Graded {
        prev: ColorId,
        parts: Vec<Vec<(ColorId, Option<ColorId>)>>,
    },
    /// Own previous color and the sorted colors of incident elements on
    /// the other side of the incidence graph.
    Bipartite { prev: ColorId, neighbors: Vec<ColorId> },
}

/// Injective interning of encodings. One table is shared by both sides of
/// a comparison so colors are comparable across them.
#[derive(Clone, Debug, Default)]
pub struct ColorTable {
    ids: HashMap<Encoding, ColorId>,
    encodings: Vec<Encoding>,
}

impl ColorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, encoding: Encoding) -> ColorId {
        if let Some(&id) = self.ids.get(&encoding) {
            return id;
        }
        let id = ColorId(u32::try_from(self.encodings.len()).expect("color table overflow"));
        self.encodings.push(encoding.clone());
        self.ids.insert(encoding, id);
        id
    }

    pub fn encoding(&self, id: ColorId) -> &Encoding {
        &self.encodings[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.encodings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.encodings.is_empty()
    }
}

/// A total coloring of one poset (or one incidence graph) at iteration `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub iteration: usize,
    pub colors: Vec<ColorId>,
}

impl Coloring {
    pub fn new(iteration: usize, colors: Vec<ColorId>) -> Self {
        Self { iteration, colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn histogram(&self) -> Histogram {
        Histogram::of(&[self])
    }

    pub fn class_count(&self) -> usize {
        Histogram::of(&[self]).0.len()
    }
}

/// Color counts sorted by color id. Serialises as `[[id, count], ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram(pub Vec<(ColorId, usize)>);

impl Histogram {
    pub fn of(colorings: &[&Coloring]) -> Self {
        let mut counts: BTreeMap<ColorId, usize> = BTreeMap::new();
        for c in colorings {
            for &id in &c.colors {
                *counts.entry(id).or_default() += 1;
            }
        }
        Self(counts.into_iter().collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&(_, n)| n).sum()
    }
}

impl Serialize for Histogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[u32; 2]> = self.0.iter().map(|&(id, n)| [id.0, n as u32]).collect();
        pairs.serialize(serializer)
    }
}
