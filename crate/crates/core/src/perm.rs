/// Inverse of a permutation of `0..perm.len()`, or `None` if `perm` is not one.
pub(crate) fn invert(perm: &[usize]) -> Option<Vec<usize>> {
    let mut inverse = vec![usize::MAX; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        if p >= perm.len() || inverse[p] != usize::MAX {
            return None;
        }
        inverse[p] = i;
    }
    Some(inverse)
}
