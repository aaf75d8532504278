//! Exhaustive reference solvers for small graphs.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::{Vertex, Weight, WeightedIntervalGraph};

pub const ORACLE_LIMIT: usize = 18;

fn guard(graph: &WeightedIntervalGraph) -> Result<()> {
    if graph.n() > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n: graph.n(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Same value by dynamic programming over vertex subsets, with one witness
/// path reconstructed from the reachable-end sets. Independent of the search
/// above and much faster on inputs without a Hamiltonian path.
pub fn subset_longest_path(graph: &WeightedIntervalGraph) -> Result<(usize, Vec<Vertex>)> {
    guard(graph)?;
    let n = graph.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let nb = neighbor_masks(graph);
    let ends = path_ends(n, &nb);
    let (mut mask, mut e) = (1..ends.len())
        .filter(|&m| ends[m] != 0)
        .max_by_key(|&m| m.count_ones())
        .map(|m| (m, ends[m]))
        .unwrap();
    let mut v = e.trailing_zeros() as usize;
    let mut path = vec![v];
    while mask.count_ones() > 1 {
        mask &= !(1 << v);
        e = ends[mask] & nb[v];
        v = e.trailing_zeros() as usize;
        path.push(v);
    }
    Ok((path.len(), path))
}

/// Longest simple path by exhaustive depth-first search from every start
/// vertex. A branch is cut when the path plus every unused vertex still
/// reachable from its end cannot beat the best length found so far.
pub fn brute_longest_path(graph: &WeightedIntervalGraph) -> Result<(usize, Vec<Vertex>)> {
    guard(graph)?;
    let n = graph.n();
    let mut best: Vec<Vertex> = Vec::new();
    let mut path = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for s in 0..n {
        if best.len() == n {
            break;
        }
        path.push(s);
        used[s] = true;
        dfs(graph, &mut path, &mut used, &mut best);
        used[s] = false;
        path.pop();
    }
    Ok((best.len(), best))
}

fn dfs(
    graph: &WeightedIntervalGraph,
    path: &mut Vec<Vertex>,
    used: &mut [bool],
    best: &mut Vec<Vertex>,
) {
    if path.len() > best.len() {
        *best = path.clone();
    }
    let last = *path.last().unwrap();
    if path.len() == used.len() || path.len() + reachable_unused(graph, last, used) <= best.len() {
        return;
    }
    for &u in graph.neighbors(last) {
        if !used[u] {
            used[u] = true;
            path.push(u);
            dfs(graph, path, used, best);
            path.pop();
            used[u] = false;
            if best.len() == used.len() {
                return;
            }
        }
    }
}

fn reachable_unused(graph: &WeightedIntervalGraph, from: Vertex, used: &[bool]) -> usize {
    let mut seen = used.to_vec();
    let mut stack = vec![from];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        for &u in graph.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count
}

fn neighbor_masks(graph: &WeightedIntervalGraph) -> Vec<u32> {
    (0..graph.n())
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// `ends[mask]`: the vertices at which some path covering exactly `mask` ends.
fn path_ends(n: usize, nb: &[u32]) -> Vec<u32> {
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..ends.len() {
        let mut rest = ends[mask];
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next = nb[v] & !(mask as u32);
            while next != 0 {
                let u = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | 1 << u] |= 1 << u;
            }
        }
    }
    ends
}

/// Maximum total weight of a simple path: the heaviest vertex subset that
/// some path covers exactly.
pub fn brute_max_weight_path(graph: &WeightedIntervalGraph) -> Result<Weight> {
    guard(graph)?;
    let n = graph.n();
    if n == 0 {
        return Ok(Weight::zero());
    }
    let ends = path_ends(n, &neighbor_masks(graph));
    let mut weight = vec![Weight::zero(); ends.len()];
    let mut best = Weight::zero();
    for mask in 1..ends.len() {
        let low = mask.trailing_zeros() as usize;
        weight[mask] = weight[mask & (mask - 1)] + graph.weight(low);
        if ends[mask] != 0 && weight[mask] > best {
            best = weight[mask];
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{claw4, path3, split3};
    use crate::interval::{build, validate_path, Interval};

    #[test]
    fn longest_examples() {
        assert_eq!(brute_longest_path(&path3()).unwrap().0, 3);
        assert_eq!(subset_longest_path(&path3()).unwrap().0, 3);
        assert_eq!(brute_longest_path(&claw4()).unwrap().0, 3);
        let ivs: Vec<Interval> = (0..5)
            .map(|v| Interval::new(v, 10 * v as i64, 10 * v as i64 + 1))
            .collect();
        assert_eq!(brute_longest_path(&build(&ivs).unwrap()).unwrap().0, 1);
    }

    #[test]
    fn witness_paths_are_valid() {
        for g in [path3(), claw4(), split3()] {
            for f in [brute_longest_path, subset_longest_path] {
                let (len, p) = f(&g).unwrap();
                assert_eq!(p.len(), len);
                validate_path(&g, &p).unwrap();
            }
        }
    }

    #[test]
    fn weighted_examples() {
        let g =
            WeightedIntervalGraph::new(&[Interval::new(0, 1, 2)], vec![Weight::new(7, 2)]).unwrap();
        assert_eq!(brute_max_weight_path(&g).unwrap(), Weight::new(7, 2));
        assert_eq!(brute_max_weight_path(&path3()).unwrap(), Weight::from(3));
        assert_eq!(brute_max_weight_path(&split3()).unwrap(), Weight::from(5));
    }

    #[test]
    fn size_guard() {
        let ivs: Vec<Interval> = (0..19)
            .map(|v| Interval::new(v, 2 * v as i64, 2 * v as i64 + 1))
            .collect();
        let g = build(&ivs).unwrap();
        assert_eq!(
            brute_longest_path(&g).unwrap_err(),
            Error::TooLarge { n: 19, limit: 18 }
        );
        assert!(brute_max_weight_path(&g).is_err());
        assert!(subset_longest_path(&g).is_err());
    }
}
