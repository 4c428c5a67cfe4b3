use super::GradedPoset;
use crate::error::{Error, Result};

/// Element-count limit for the exhaustive poset search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetOracleBound(pub usize);

impl Default for PosetOracleBound {
    fn default() -> Self {
        Self(14)
    }
}

/// True iff some bijection preserves dimension and covers in both
/// directions. Ground truth for refinement soundness checks.
pub fn poset_isomorphic_bruteforce(p: &GradedPoset, q: &GradedPoset, bound: PosetOracleBound) -> Result<bool> {
    for poset in [p, q] {
        if poset.len() > bound.0 {
            return Err(Error::BoundExceeded { what: "poset", size: poset.len(), bound: bound.0 });
        }
    }
    if p.len() != q.len() || p.covers().len() != q.covers().len() || p.dim_histogram() != q.dim_histogram() {
        return Ok(false);
    }
    let profile = |g: &GradedPoset, i: usize| (g.dim(i), g.boundary(i).len(), g.coboundary(i).len());
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    Ok(extend(p, q, &profile, 0, &mut map, &mut used))
}

fn extend(
    p: &GradedPoset,
    q: &GradedPoset,
    profile: &dyn Fn(&GradedPoset, usize) -> (usize, usize, usize),
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == p.len() {
        return true;
    }
    for y in 0..q.len() {
        if used[y] || profile(p, x) != profile(q, y) {
            continue;
        }
        // Every cover between x and an already-mapped element must be matched.
        // Degrees agree, so checking one direction on the full map suffices.
        let consistent = p.boundary(x).iter().filter(|&&t| t < x).all(|&t| q.boundary(y).contains(&map[t]))
            && p.coboundary(x).iter().filter(|&&t| t < x).all(|&t| q.coboundary(y).contains(&map[t]))
            && q.boundary(y).iter().filter(|&&t| used[t]).count()
                == p.boundary(x).iter().filter(|&&t| t < x).count()
            && q.coboundary(y).iter().filter(|&&t| used[t]).count()
                == p.coboundary(x).iter().filter(|&&t| t < x).count();
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, profile, x + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}
