//! Candidate subset generation for property counts.

/// Calls `emit` once for every connected vertex subset of size `p` in the
/// graph (ESU enumeration). Subsets are passed in discovery order.
pub(crate) fn connected_subsets(
    adjacency: &[Vec<usize>],
    p: usize,
    mut emit: impl FnMut(&[usize]),
) {
    if p == 0 {
        return;
    }
    let mut sub = Vec::with_capacity(p);
    for v in 0..adjacency.len() {
        sub.clear();
        sub.push(v);
        let ext: Vec<usize> = adjacency[v].iter().copied().filter(|&u| u > v).collect();
        extend(adjacency, p, v, &mut sub, ext, &mut emit);
    }
}

fn extend(
    adjacency: &[Vec<usize>],
    p: usize,
    root: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if sub.len() == p {
        emit(sub);
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        // exclusive neighbours of w: not in sub and not adjacent to sub
        for &u in &adjacency[w] {
            if u > root
                && !sub.contains(&u)
                && !sub.iter().any(|&s| adjacency[s].binary_search(&u).is_ok())
                && !next.contains(&u)
            {
                next.push(u);
            }
        }
        sub.push(w);
        extend(adjacency, p, root, sub, next, emit);
        sub.pop();
    }
}

/// Calls `emit` once for every clique of size `p`, vertices increasing.
pub(crate) fn cliques(adjacency: &[Vec<usize>], p: usize, mut emit: impl FnMut(&[usize])) {
    if p == 0 {
        return;
    }
    let mut cur = Vec::with_capacity(p);
    for v in 0..adjacency.len() {
        cur.clear();
        cur.push(v);
        let cand: Vec<usize> = adjacency[v].iter().copied().filter(|&u| u > v).collect();
        grow_clique(adjacency, p, &mut cur, &cand, &mut emit);
    }
}

fn grow_clique(
    adjacency: &[Vec<usize>],
    p: usize,
    cur: &mut Vec<usize>,
    cand: &[usize],
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == p {
        emit(cur);
        return;
    }
    for (i, &w) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..]
            .iter()
            .copied()
            .filter(|u| adjacency[w].binary_search(u).is_ok())
            .collect();
        if next.len() + cur.len() + 1 < p {
            continue;
        }
        cur.push(w);
        grow_clique(adjacency, p, cur, &next, emit);
        cur.pop();
    }
}
