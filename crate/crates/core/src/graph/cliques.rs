use std::ops::ControlFlow;

use super::VertexSet;

/// Visits every `k`-clique inside `within` in lexicographic order until the
/// callback breaks. Returns whether it was broken.
pub fn for_each_clique<F>(adjacency: &[VertexSet], within: VertexSet, k: usize, mut f: F) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut stack = Vec::with_capacity(k);
    extend(adjacency, within, k, &mut stack, &mut f).is_break()
}

fn extend<F>(
    adjacency: &[VertexSet],
    candidates: VertexSet,
    k: usize,
    stack: &mut Vec<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if stack.len() == k {
        return f(stack);
    }
    let need = k - stack.len();
    if candidates.len() < need {
        return ControlFlow::Continue(());
    }
    let mut rest = candidates;
    for v in candidates.iter() {
        rest.remove(v);
        if rest.len() + 1 < need {
            break;
        }
        stack.push(v);
        extend(adjacency, rest & adjacency[v], k, stack, f)?;
        stack.pop();
    }
    ControlFlow::Continue(())
}

/// Lexicographically first `k`-clique inside `within`.
pub fn find_clique(adjacency: &[VertexSet], within: VertexSet, k: usize) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_clique(adjacency, within, k, |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<VertexSet> {
        (0..n)
            .map(|v| {
                let mut s = VertexSet::full(n);
                s.remove(v);
                s
            })
            .collect()
    }

    #[test]
    fn counts_cliques_in_complete_graph() {
        let adj = complete(7);
        for k in 0..=8 {
            let mut count = 0u64;
            for_each_clique(&adj, VertexSet::full(7), k, |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            let expect = if k > 7 { 0 } else { (0..k as u64).fold(1, |acc, i| acc * (7 - i) / (i + 1)) };
            assert_eq!(count, expect, "k = {k}");
        }
    }

    #[test]
    fn first_clique_is_lexicographic() {
        let mut adj = complete(6);
        adj[0].remove(1);
        adj[1].remove(0);
        assert_eq!(find_clique(&adj, VertexSet::full(6), 3), Some(vec![0, 2, 3]));
        assert_eq!(find_clique(&adj, VertexSet::full(6), 6), None);
    }
}
