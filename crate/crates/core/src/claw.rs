//! Claw detection and proper interval vertex deletion sets.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, Vertex, Weight, WeightedIntervalGraph};

/// Induced `K_{1,3}`; leaves are listed in right-endpoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClawWitness {
    pub center: Vertex,
    pub leaves: [Vertex; 3],
}

impl ClawWitness {
    pub fn vertices(&self) -> [Vertex; 4] {
        [self.center, self.leaves[0], self.leaves[1], self.leaves[2]]
    }

    pub fn is_induced_in(&self, graph: &WeightedIntervalGraph) -> bool {
        let [a, b, c] = self.leaves;
        self.leaves.iter().all(|&l| graph.adjacent(self.center, l))
            && !graph.adjacent(a, b)
            && !graph.adjacent(a, c)
            && !graph.adjacent(b, c)
            && a != b
            && b != c
            && a != c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionSet {
    /// Sorted vertex ids, dummies included once added.
    pub marked: Vec<Vertex>,
    pub certificates: Vec<ClawWitness>,
    /// `(d0, d_{k+1})`.
    pub dummies: Option<(Vertex, Vertex)>,
}

impl DeletionSet {
    pub fn len(&self) -> usize {
        self.marked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marked.is_empty()
    }

    /// Number of non-dummy members.
    pub fn k(&self) -> usize {
        self.marked.len() - if self.dummies.is_some() { 2 } else { 0 }
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.marked {
            m[v] = true;
        }
        m
    }
}

/// Claw centered at `u` among vertices not flagged in `removed`.
pub fn find_claw_at_masked(
    graph: &WeightedIntervalGraph,
    u: Vertex,
    removed: &[bool],
) -> Option<ClawWitness> {
    if removed[u] {
        return None;
    }
    let live = || graph.neighbors(u).iter().copied().filter(|&v| !removed[v]);
    // Neighbor lists are sorted by right endpoint.
    let z1 = live().next()?;
    let z2 = live().max_by_key(|&v| (graph.left(v), std::cmp::Reverse(v)))?;
    if z1 == z2 || graph.adjacent(z1, z2) {
        return None;
    }
    let v = live().find(|&v| {
        v != z1 && v != z2 && graph.right(z1) < graph.left(v) && graph.right(v) < graph.left(z2)
    })?;
    Some(ClawWitness {
        center: u,
        leaves: [z1, v, z2],
    })
}

pub fn find_claw_at(graph: &WeightedIntervalGraph, u: Vertex) -> Option<ClawWitness> {
    find_claw_at_masked(graph, u, &vec![false; graph.n()])
}

pub fn find_any_claw(graph: &WeightedIntervalGraph, removed: &[bool]) -> Option<ClawWitness> {
    graph
        .sigma()
        .iter()
        .find_map(|&u| find_claw_at_masked(graph, u, removed))
}

/// Greedy deletion set of at most four times the optimum size, built from
/// vertex-disjoint claws found in right-endpoint order.
pub fn approx_deletion_set(graph: &WeightedIntervalGraph) -> DeletionSet {
    let mut marked = vec![false; graph.n()];
    let mut certificates = Vec::new();
    for &u in graph.sigma() {
        if marked[u] {
            continue;
        }
        if let Some(w) = find_claw_at_masked(graph, u, &marked) {
            for v in w.vertices() {
                marked[v] = true;
            }
            certificates.push(w);
        }
    }
    let marked = (0..graph.n()).filter(|&v| marked[v]).collect();
    DeletionSet {
        marked,
        certificates,
        dummies: None,
    }
}

pub const DEFAULT_NODE_CAP: u64 = 1_000_000;

/// Minimum deletion set of size at most `k_max` by branching on claws.
pub fn exact_deletion_set(
    graph: &WeightedIntervalGraph,
    k_max: usize,
) -> Result<Option<DeletionSet>> {
    exact_deletion_set_with_cap(graph, k_max, DEFAULT_NODE_CAP)
}

pub fn exact_deletion_set_with_cap(
    graph: &WeightedIntervalGraph,
    k_max: usize,
    node_cap: u64,
) -> Result<Option<DeletionSet>> {
    let mut removed = vec![false; graph.n()];
    let mut nodes = 0u64;
    for budget in 0..=k_max {
        if branch(graph, &mut removed, budget, &mut nodes, node_cap)? {
            let marked = (0..graph.n()).filter(|&v| removed[v]).collect();
            return Ok(Some(DeletionSet {
                marked,
                certificates: Vec::new(),
                dummies: None,
            }));
        }
    }
    Ok(None)
}

// On success `removed` holds the solution.
fn branch(
    graph: &WeightedIntervalGraph,
    removed: &mut [bool],
    budget: usize,
    nodes: &mut u64,
    cap: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::BudgetExceeded(cap));
    }
    let Some(claw) = find_any_claw(graph, removed) else {
        return Ok(true);
    };
    if budget == 0 {
        return Ok(false);
    }
    for v in claw.vertices() {
        removed[v] = true;
        if branch(graph, removed, budget - 1, nodes, cap)? {
            return Ok(true);
        }
        removed[v] = false;
    }
    Ok(false)
}

/// No interval strictly contains another.
pub fn is_proper_representation(graph: &WeightedIntervalGraph) -> bool {
    // In right-endpoint order, a containment shows up as a left endpoint
    // smaller than some earlier one.
    let mut max_left = i64::MIN;
    for &v in graph.sigma() {
        if graph.left(v) < max_left {
            return false;
        }
        max_left = graph.left(v);
    }
    true
}

/// Appends isolated weight-0 sentinels `d0` (id n) left of and `d_{k+1}`
/// (id n+1) right of every endpoint.
pub fn add_dummies(
    graph: &WeightedIntervalGraph,
    set: &DeletionSet,
) -> Result<(WeightedIntervalGraph, DeletionSet)> {
    if set.dummies.is_some() {
        return Err(Error::DoubleAugment);
    }
    let n = graph.n();
    let (lo, hi) = match graph.extent() {
        Some(s) => (s.left, s.right),
        None => (1, 0),
    };
    let mut ivs = graph.intervals();
    ivs.push(Interval::new(n, lo - 3, lo - 2));
    ivs.push(Interval::new(n + 1, hi + 1, hi + 2));
    let mut weights = graph.weights().to_vec();
    weights.push(Weight::zero());
    weights.push(Weight::zero());
    let g = WeightedIntervalGraph::new(&ivs, weights)?;
    let mut marked = set.marked.clone();
    marked.push(n);
    marked.push(n + 1);
    marked.sort_unstable();
    Ok((
        g,
        DeletionSet {
            marked,
            certificates: set.certificates.clone(),
            dummies: Some((n, n + 1)),
        },
    ))
}
