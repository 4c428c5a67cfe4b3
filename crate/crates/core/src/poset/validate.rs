use std::fmt;

use super::GradedPoset;

/// A failed grading axiom, naming the offending elements by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A cover `lower ≺ upper` whose dimensions differ by `gap != 1`.
    DimensionGap { lower: String, upper: String, gap: i64 },
    /// A cover `lower ≺ upper` with `dim(upper) < dim(lower)`.
    NonMonotone { lower: String, upper: String },
    /// Elements lying on a directed cycle of covers.
    Cycle { elements: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionGap { lower, upper, gap } => {
                write!(f, "cover {lower} < {upper} has dimension gap {gap}")
            }
            Violation::NonMonotone { lower, upper } => {
                write!(f, "{lower} < {upper} but dim({upper}) < dim({lower})")
            }
            Violation::Cycle { elements } => write!(f, "covers form a cycle through {}", elements.join(", ")),
        }
    }
}

/// Checks the grading axioms; an empty result means the poset is graded.
///
/// The order is generated by the covers, so monotonicity along every cover
/// is equivalent to monotonicity of the whole order. It is reported
/// separately from the gap condition even though the latter implies it.
pub fn validate_graded(p: &GradedPoset) -> Vec<Violation> {
    let mut violations = Vec::new();
    let id = |i: usize| p.element(i).id.clone();

    for &(lo, hi) in p.covers() {
        let gap = p.dim(hi) as i64 - p.dim(lo) as i64;
        if gap != 1 {
            violations.push(Violation::DimensionGap { lower: id(lo), upper: id(hi), gap });
        }
        if gap < 0 {
            violations.push(Violation::NonMonotone { lower: id(lo), upper: id(hi) });
        }
    }

    // Kahn's algorithm; whatever cannot be ordered lies on or above a cycle.
    let mut indegree: Vec<usize> = (0..p.len()).map(|i| p.boundary(i).len()).collect();
    let mut queue: Vec<usize> = (0..p.len()).filter(|&i| indegree[i] == 0).collect();
    let mut ordered = 0;
    while let Some(x) = queue.pop() {
        ordered += 1;
        for &y in p.coboundary(x) {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push(y);
            }
        }
    }
    if ordered < p.len() {
        // Keep only elements that can reach themselves.
        let elements: Vec<String> = (0..p.len())
            .filter(|&i| indegree[i] > 0)
            .filter(|&i| p.coboundary(i).iter().any(|&j| p.leq(j, i)))
            .map(id)
            .collect();
        violations.push(Violation::Cycle { elements });
    }
    violations
}
