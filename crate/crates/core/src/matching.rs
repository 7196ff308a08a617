//! Maximum bipartite matching by augmenting paths.

/// `adjacency[l]` lists the right vertices joined to left vertex `l`.
/// Returns, for every left vertex, its partner in one maximum matching.
///
/// Left vertices are processed in index order and their neighbours in list
/// order, so the result is deterministic.
pub fn maximum_matching(right_count: usize, adjacency: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_count];
    for left in 0..adjacency.len() {
        let mut seen = vec![false; right_count];
        augment(left, adjacency, &mut seen, &mut owner);
    }
    let mut partner = vec![None; adjacency.len()];
    for (right, left) in owner.iter().enumerate() {
        if let Some(l) = left {
            partner[*l] = Some(right);
        }
    }
    partner
}

fn augment(left: usize, adjacency: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &right in &adjacency[left] {
        if seen[right] {
            continue;
        }
        seen[right] = true;
        let free = match owner[right] {
            None => true,
            Some(other) => augment(other, adjacency, seen, owner),
        };
        if free {
            owner[right] = Some(left);
            return true;
        }
    }
    false
}
