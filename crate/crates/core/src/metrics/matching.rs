use alloc::vec;
use alloc::vec::Vec;

/// Perfect matching of `left` against `right` where either side may also
/// be "deleted". Returns, for every left vertex, its partner or `None` when
/// deleted; `None` overall if no such matching exists.
///
/// Reduces to an ordinary perfect matching on `left + right` vertices per
/// side: each left vertex `i` also owns a sink `i'` on the right, each
/// right vertex `j` a source `j'` on the left, and sources and sinks are
/// freely matchable. Solved with Kuhn's augmenting paths in index order,
/// so the result is deterministic.
pub fn augmented_perfect_matching(
    left: usize,
    right: usize,
    close: impl Fn(usize, usize) -> bool,
    left_deletable: impl Fn(usize) -> bool,
    right_deletable: impl Fn(usize) -> bool,
) -> Option<Vec<Option<usize>>> {
    let n = left + right;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..left {
        for j in 0..right {
            if close(i, j) {
                adj[i].push(j);
            }
        }
        if left_deletable(i) {
            adj[i].push(right + i);
        }
    }
    for j in 0..right {
        if right_deletable(j) {
            adj[left + j].push(j);
        }
        adj[left + j].extend((0..left).map(|i| right + i));
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        if !augment(u, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut partner = vec![None; left];
    for (r, o) in owner.iter().enumerate() {
        if let Some(u) = *o {
            if u < left && r < right {
                partner[u] = Some(r);
            }
        }
    }
    Some(partner)
}

fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &r in &adj[u] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r].is_none() || augment(owner[r].unwrap(), adj, owner, seen) {
            owner[r] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deletion_and_matching() {
        // 1 ↔ 1 only; left 0 must be deleted
        let m = augmented_perfect_matching(2, 2, |i, j| i == 1 && j == 1, |i| i == 0, |j| j == 0).unwrap();
        assert_eq!(m, vec![None, Some(1)]);
        assert!(augmented_perfect_matching(1, 0, |_, _| false, |_| false, |_| true).is_none());
        assert_eq!(augmented_perfect_matching(0, 0, |_, _| false, |_| false, |_| false), Some(vec![]));
    }
}
