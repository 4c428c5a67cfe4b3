//! Graded posets stored by their covering relation.
//!
//! Only covers are stored; the full order is their reflexive-transitive
//! closure and is derived on demand. Each element keeps sorted lists of the
//! elements it covers (`boundary`) and the elements covering it
//! (`coboundary`), which is all refinement ever needs.

mod iso;
mod render;
mod validate;

pub use iso::{poset_isomorphic_bruteforce, PosetOracleBound};
pub use validate::{validate_graded, Violation};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a lifted element came from. Never consulted by refinement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum Provenance {
    #[default]
    None,
    Node(String),
    Edge(String),
    /// A vertex subset of a hyperedge, keyed by the edge label.
    Simplex { nodes: Vec<String>, edge: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosetElement {
    pub id: String,
    pub dim: usize,
    pub provenance: Provenance,
}

impl PosetElement {
    pub fn new(id: impl Into<String>, dim: usize) -> Self {
        Self { id: id.into(), dim, provenance: Provenance::None }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}

/// How lower and upper adjacencies are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjacencySemantics {
    /// One entry `(σ', τ)` for every shared cover-child (or cover-parent) `τ`.
    #[default]
    PairMultiset,
    /// One entry per distinct neighbour `σ'`, witness dropped.
    DistinctNeighbor,
}

impl FromStr for AdjacencySemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair" | "pair-multiset" => Ok(Self::PairMultiset),
            "distinct" | "distinct-neighbor" => Ok(Self::DistinctNeighbor),
            other => Err(Error::Config(format!("unknown adjacency semantics `{other}`"))),
        }
    }
}

impl fmt::Display for AdjacencySemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PairMultiset => "pair",
            Self::DistinctNeighbor => "distinct",
        })
    }
}

/// An entry of a lower or upper adjacency: the neighbour `σ'` and, under
/// [`AdjacencySemantics::PairMultiset`], the shared element `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjacencyEntry {
    pub neighbor: usize,
    pub via: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    elements: Vec<PosetElement>,
    covers: Vec<(usize, usize)>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl GradedPoset {
    /// Builds a poset from elements and cover pairs `(τ, σ)` meaning `τ ≺ σ`,
    /// given by element index. Duplicate pairs are merged. The grading
    /// axioms are not enforced here; see [`validate_graded`].
    pub fn new(elements: Vec<PosetElement>, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, el) in elements.iter().enumerate() {
            if index.insert(el.id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(el.id.clone()));
            }
        }
        let mut covers: Vec<(usize, usize)> = covers.into_iter().collect();
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= elements.len() || b >= elements.len()) {
            return Err(Error::UnknownElement(format!("#{}", a.max(b))));
        }
        covers.sort_unstable();
        covers.dedup();
        let mut down = vec![Vec::new(); elements.len()];
        let mut up = vec![Vec::new(); elements.len()];
        for &(lo, hi) in &covers {
            down[hi].push(lo);
            up[lo].push(hi);
        }
        down.iter_mut().for_each(|d| d.sort_unstable());
        Ok(Self { elements, covers, down, up, index })
    }

    /// Builds a poset from covers given by element id.
    pub fn from_id_covers<S: AsRef<str>>(
        elements: Vec<PosetElement>,
        covers: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let ids: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
        let lookup = |id: &str| ids.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()));
        let covers = covers
            .into_iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, covers)
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), []).expect("empty poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PosetElement {
        &self.elements[i]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.elements[i].dim
    }

    /// Sorted, deduplicated cover pairs `(τ, σ)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.elements.iter().map(|e| e.dim).max()
    }

    /// Number of elements at each dimension `0..=max_dim`.
    pub fn dim_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for e in &self.elements {
            hist[e.dim] += 1;
        }
        hist
    }

    /// Elements covered by `sigma`: `{τ | τ ≺ σ}`.
    pub fn boundary(&self, sigma: usize) -> &[usize] {
        &self.down[sigma]
    }

    /// Elements covering `sigma`: `{τ | σ ≺ τ}`.
    pub fn coboundary(&self, sigma: usize) -> &[usize] {
        &self.up[sigma]
    }

    /// Peers sharing a cover-child with `sigma`.
    pub fn lower_adjacency(&self, sigma: usize, semantics: AdjacencySemantics) -> Vec<AdjacencyEntry> {
        self.peers(sigma, &self.down, &self.up, semantics)
    }

    /// Peers sharing a cover-parent with `sigma`.
    pub fn upper_adjacency(&self, sigma: usize, semantics: AdjacencySemantics) -> Vec<AdjacencyEntry> {
        self.peers(sigma, &self.up, &self.down, semantics)
    }

    fn peers(
        &self,
        sigma: usize,
        toward: &[Vec<usize>],
        back: &[Vec<usize>],
        semantics: AdjacencySemantics,
    ) -> Vec<AdjacencyEntry> {
        let pairs = toward[sigma].iter().flat_map(|&tau| {
            back[tau]
                .iter()
                .filter(move |&&other| other != sigma)
                .map(move |&other| AdjacencyEntry { neighbor: other, via: Some(tau) })
        });
        let mut entries: Vec<AdjacencyEntry> = match semantics {
            AdjacencySemantics::PairMultiset => pairs.collect(),
            AdjacencySemantics::DistinctNeighbor => {
                let mut seen: Vec<usize> = pairs.map(|e| e.neighbor).collect();
                seen.sort_unstable();
                seen.dedup();
                seen.into_iter().map(|neighbor| AdjacencyEntry { neighbor, via: None }).collect()
            }
        };
        entries.sort_unstable();
        entries
    }

    /// `p ≤ q` in the order generated by the covers.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        if p == q {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![p];
        while let Some(x) = stack.pop() {
            for &y in &self.up[x] {
                if y == q {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Reorders elements so that element `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let inverse = crate::perm::invert(perm)
            .filter(|_| perm.len() == self.len())
            .ok_or(Error::NotBijective("element"))?;
        let elements = inverse.iter().map(|&i| self.elements[i].clone()).collect();
        let covers = self.covers.iter().map(|&(a, b)| (perm[a], perm[b]));
        Self::new(elements, covers)
    }
}

/// A small poset with six elements used to illustrate a single refinement
/// step: `σ2, σ ≺ σ1`, `σ3, σ4 ≺ σ2` and `σ4, σ5 ≺ σ`.
pub fn refinement_step_example() -> GradedPoset {
    let elements = vec![
        PosetElement::new("sigma", 1),
        PosetElement::new("sigma1", 2),
        PosetElement::new("sigma2", 1),
        PosetElement::new("sigma3", 0),
        PosetElement::new("sigma4", 0),
        PosetElement::new("sigma5", 0),
    ];
    GradedPoset::from_id_covers(
        elements,
        [
            ("sigma2", "sigma1"),
            ("sigma", "sigma1"),
            ("sigma3", "sigma2"),
            ("sigma4", "sigma2"),
            ("sigma4", "sigma"),
            ("sigma5", "sigma"),
        ],
    )
    .expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(p: &GradedPoset, items: impl IntoIterator<Item = usize>) -> Vec<String> {
        items.into_iter().map(|i| p.element(i).id.clone()).collect()
    }

    #[test]
    fn example_adjacencies() {
        let p = refinement_step_example();
        let s = p.index_of("sigma").unwrap();
        assert_eq!(ids(&p, p.boundary(s).iter().copied()), ["sigma4", "sigma5"]);
        assert_eq!(ids(&p, p.coboundary(s).iter().copied()), ["sigma1"]);
        for semantics in [AdjacencySemantics::PairMultiset, AdjacencySemantics::DistinctNeighbor] {
            let lower = p.lower_adjacency(s, semantics);
            assert_eq!(ids(&p, lower.iter().map(|e| e.neighbor)), ["sigma2"]);
            let upper = p.upper_adjacency(s, semantics);
            assert_eq!(ids(&p, upper.iter().map(|e| e.neighbor)), ["sigma2"]);
        }
        let lower = p.lower_adjacency(s, AdjacencySemantics::PairMultiset);
        assert_eq!(lower[0].via, Some(p.index_of("sigma4").unwrap()));
        let upper = p.upper_adjacency(s, AdjacencySemantics::PairMultiset);
        assert_eq!(upper[0].via, Some(p.index_of("sigma1").unwrap()));
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        let dup = GradedPoset::new(vec![PosetElement::new("a", 0), PosetElement::new("a", 0)], []);
        assert!(matches!(dup, Err(Error::DuplicateElement(_))));
        let unknown = GradedPoset::from_id_covers(vec![PosetElement::new("a", 0)], [("a", "b")]);
        assert!(matches!(unknown, Err(Error::UnknownElement(_))));
        let p = refinement_step_example();
        assert!(matches!(p.index_of("zzz"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn order_is_reachability() {
        let p = refinement_step_example();
        let [s1, s3, s5] = ["sigma1", "sigma3", "sigma5"].map(|id| p.index_of(id).unwrap());
        assert!(p.leq(s3, s1));
        assert!(p.leq(s5, s1));
        assert!(!p.leq(s1, s3));
        assert!(!p.leq(s3, s5));
    }

    #[test]
    fn permutation_preserves_structure() {
        let p = refinement_step_example();
        let perm = [5, 4, 3, 2, 1, 0];
        let q = p.permuted(&perm).unwrap();
        for (i, el) in p.elements().iter().enumerate() {
            assert_eq!(q.element(perm[i]), el);
            assert_eq!(
                q.boundary(perm[i]).len(),
                p.boundary(i).len(),
            );
        }
        assert!(p.permuted(&[0, 0, 1, 2, 3, 4]).is_err());
    }
}
