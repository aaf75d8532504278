//! Interval representations, weighted interval graphs and normal paths.
//!
//! Vertices are dense ids `0..n`. Every graph stores its vertices in
//! right-endpoint order (`sigma`) together with the inverse permutation, and
//! sorted neighbor lists built in a single endpoint sweep.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Exact vertex weight.
pub type Weight = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub vertex: Vertex,
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn new(vertex: Vertex, left: i64, right: i64) -> Self {
        Interval {
            vertex,
            left,
            right,
        }
    }
}

/// A closed range `[left, right]` not attached to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub left: i64,
    pub right: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedIntervalGraph {
    left: Vec<i64>,
    right: Vec<i64>,
    weight: Vec<Weight>,
    sigma: Vec<Vertex>,
    rank: Vec<usize>,
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

/// Builds a unit-weight graph from a representation.
pub fn build(intervals: &[Interval]) -> Result<WeightedIntervalGraph> {
    WeightedIntervalGraph::new(intervals, vec![Weight::one(); intervals.len()])
}

impl WeightedIntervalGraph {
    /// `weights[v]` is the weight of vertex `v`.
    pub fn new(intervals: &[Interval], weights: Vec<Weight>) -> Result<Self> {
        let n = intervals.len();
        if weights.len() != n {
            return Err(Error::WeightCount {
                got: weights.len(),
                expected: n,
            });
        }
        let mut left = vec![0i64; n];
        let mut right = vec![0i64; n];
        let mut seen = vec![false; n];
        for iv in intervals {
            if iv.vertex >= n {
                return Err(Error::VertexIdOutOfRange { id: iv.vertex, n });
            }
            if seen[iv.vertex] {
                return Err(Error::DuplicateVertexId(iv.vertex));
            }
            seen[iv.vertex] = true;
            if iv.left >= iv.right {
                return Err(Error::DegenerateInterval {
                    vertex: iv.vertex,
                    left: iv.left,
                    right: iv.right,
                });
            }
            left[iv.vertex] = iv.left;
            right[iv.vertex] = iv.right;
        }
        for (v, w) in weights.iter().enumerate() {
            if *w < Weight::zero() {
                return Err(Error::NegativeWeight(v));
            }
        }
        Self::from_parts(left, right, weights)
    }

    fn from_parts(left: Vec<i64>, right: Vec<i64>, weight: Vec<Weight>) -> Result<Self> {
        let n = left.len();
        // (coordinate, vertex, is_right)
        let mut events: Vec<(i64, Vertex, bool)> = Vec::with_capacity(2 * n);
        for v in 0..n {
            events.push((left[v], v, false));
            events.push((right[v], v, true));
        }
        events.sort_unstable();
        for pair in events.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateEndpoint(pair[0].0));
            }
        }

        let mut sigma = Vec::with_capacity(n);
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut active: Vec<Vertex> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        let mut m = 0;
        for &(_, v, is_right) in &events {
            if is_right {
                let s = slot[v];
                let last = active.pop().expect("active set underflow");
                if last != v {
                    active[s] = last;
                    slot[last] = s;
                }
                sigma.push(v);
            } else {
                for &u in &active {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                m += active.len();
                slot[v] = active.len();
                active.push(v);
            }
        }
        let mut rank = vec![0; n];
        for (i, &v) in sigma.iter().enumerate() {
            rank[v] = i;
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&u| rank[u]);
        }
        Ok(WeightedIntervalGraph {
            left,
            right,
            weight,
            sigma,
            rank,
            adj,
            m,
        })
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn left(&self, v: Vertex) -> i64 {
        self.left[v]
    }

    pub fn right(&self, v: Vertex) -> i64 {
        self.right[v]
    }

    pub fn interval(&self, v: Vertex) -> Interval {
        Interval::new(v, self.left[v], self.right[v])
    }

    pub fn intervals(&self) -> Vec<Interval> {
        (0..self.n()).map(|v| self.interval(v)).collect()
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weight[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weight
    }

    pub fn total_weight(&self) -> Weight {
        self.weight.iter().fold(Weight::zero(), |acc, w| acc + w)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weight.iter().all(|w| w.is_one())
    }

    /// Vertices in increasing order of right endpoint.
    pub fn sigma(&self) -> &[Vertex] {
        &self.sigma
    }

    /// Position of `v` in `sigma`.
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    /// Neighbors of `v`, sorted by rank.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.left[u] < self.right[v] && self.left[v] < self.right[u]
    }

    /// `I_inner ⊆ I_outer` for distinct vertices.
    pub fn contains(&self, outer: Vertex, inner: Vertex) -> bool {
        outer != inner
            && self.left[outer] < self.left[inner]
            && self.right[inner] < self.right[outer]
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self> {
        WeightedIntervalGraph::new(&self.intervals(), weights)
    }

    /// Smallest left endpoint and largest right endpoint, if any vertex exists.
    pub fn extent(&self) -> Option<Span> {
        if self.n() == 0 {
            return None;
        }
        let left = *self.left.iter().min().unwrap();
        let right = *self.right.iter().max().unwrap();
        Some(Span { left, right })
    }

    /// Whether every endpoint lies in `1..=2n`.
    pub fn is_normalized(&self) -> bool {
        let top = 2 * self.n() as i64;
        self.left
            .iter()
            .chain(self.right.iter())
            .all(|&c| c >= 1 && c <= top)
    }
}

pub fn span(graph: &WeightedIntervalGraph, set: &[Vertex]) -> Result<Span> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let left = set.iter().map(|&v| graph.left(v)).min().unwrap();
    let right = set.iter().map(|&v| graph.right(v)).max().unwrap();
    Ok(Span { left, right })
}

/// Ranks arbitrary ordered endpoint keys onto `1..=2n`.
///
/// `keys[v] = (left_key, right_key)`; keys must be pairwise distinct.
pub(crate) fn rank_keys<K: Ord + Clone>(keys: &[(K, K)]) -> Vec<(i64, i64)> {
    let mut all: Vec<(K, usize, bool)> = Vec::with_capacity(2 * keys.len());
    for (v, (l, r)) in keys.iter().enumerate() {
        all.push((l.clone(), v, false));
        all.push((r.clone(), v, true));
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = vec![(0, 0); keys.len()];
    for (i, (_, v, is_right)) in all.into_iter().enumerate() {
        let c = i as i64 + 1;
        if is_right {
            out[v].1 = c;
        } else {
            out[v].0 = c;
        }
    }
    out
}

/// Graph from ordered endpoint keys, re-ranked onto `1..=2n`.
pub(crate) fn graph_from_keys<K: Ord + Clone>(
    keys: &[(K, K)],
    weights: Vec<Weight>,
) -> Result<WeightedIntervalGraph> {
    let ranked = rank_keys(keys);
    let intervals: Vec<Interval> = ranked
        .iter()
        .enumerate()
        .map(|(v, &(l, r))| Interval::new(v, l, r))
        .collect();
    WeightedIntervalGraph::new(&intervals, weights)
}

/// Order-preserving remap of all endpoints onto `1..=2n`.
pub fn normalize_endpoints(graph: &WeightedIntervalGraph) -> WeightedIntervalGraph {
    let keys: Vec<(i64, i64)> = (0..graph.n())
        .map(|v| (graph.left(v), graph.right(v)))
        .collect();
    graph_from_keys(&keys, graph.weights().to_vec()).expect("re-ranking a valid representation")
}

/// Position on the line refined by nested infinitesimal offsets.
///
/// Compared lexicographically with missing trailing entries read as zero, so
/// `p ++ [i]` sits just after `p` for `i > 0` and just before it for `i < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pos(Vec<i64>);

impl Pos {
    fn offset(&self, by: i64) -> Pos {
        let mut v = self.0.clone();
        v.push(by);
        Pos(v)
    }
}

impl Ord for Pos {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.0.len().max(other.0.len());
        for i in 0..len {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Pos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `z1(u)`: neighbor with the smallest right endpoint; `z2(u)`: neighbor with
/// the largest left endpoint. Both are `u` itself when `u` is isolated.
pub(crate) fn extreme_neighbors(graph: &WeightedIntervalGraph, u: Vertex) -> (Vertex, Vertex) {
    let nb = graph.neighbors(u);
    if nb.is_empty() {
        return (u, u);
    }
    let z1 = nb[0];
    let z2 = *nb.iter().max_by_key(|&&v| graph.left(v)).unwrap();
    (z1, z2)
}

/// Stretches contained intervals so that every remaining containment
/// `I_v ⊆ I_u` lies inside an induced claw, keeping the edge set intact.
///
/// First pass: a contained `v` whose neighborhood reaches `z2(u)` gets its
/// right endpoint moved just past `r_u`. Second pass: a contained `v` missing
/// `z2(u)` but reaching `z1(u)` gets its left endpoint moved just before `l_u`.
/// If `v` is itself `z1(u)` or `z2(u)` the membership test counts as satisfied.
pub fn make_semi_proper(graph: &WeightedIntervalGraph) -> WeightedIntervalGraph {
    let g = normalize_endpoints(graph);
    let n = g.n();
    let z: Vec<(Vertex, Vertex)> = (0..n).map(|u| extreme_neighbors(&g, u)).collect();
    let reaches = |v: Vertex, target: Vertex| v == target || g.adjacent(v, target);

    let mut lpos: Vec<Pos> = (0..n).map(|v| Pos(vec![g.left(v)])).collect();
    let mut rpos: Vec<Pos> = (0..n).map(|v| Pos(vec![g.right(v)])).collect();
    let inside =
        |lpos: &[Pos], rpos: &[Pos], u: Vertex, v: Vertex| lpos[u] < lpos[v] && rpos[v] < rpos[u];

    for &u in g.sigma() {
        let mut contained: Vec<Vertex> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| inside(&lpos, &rpos, u, v))
            .collect();
        contained.sort_by(|&a, &b| lpos[a].cmp(&lpos[b]));
        let mut step = 0;
        for v in contained {
            if reaches(v, z[u].1) {
                step += 1;
                rpos[v] = rpos[u].offset(step);
            }
        }
    }

    for &u in g.sigma() {
        let mut contained: Vec<Vertex> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| inside(&lpos, &rpos, u, v))
            .collect();
        contained.sort_by(|&a, &b| rpos[b].cmp(&rpos[a]));
        let mut step = 0;
        for v in contained {
            if !reaches(v, z[u].1) && reaches(v, z[u].0) {
                step += 1;
                lpos[v] = lpos[u].offset(-step);
            }
        }
    }

    let keys: Vec<(Pos, Pos)> = lpos.into_iter().zip(rpos).collect();
    let out = graph_from_keys(&keys, g.weights().to_vec()).expect("stretched keys stay distinct");
    debug_assert_eq!(
        out.edges(),
        g.edges(),
        "semi-proper stretch changed the edge set"
    );
    out
}

/// Checks that `path` is a simple path of `graph`.
pub fn validate_path(graph: &WeightedIntervalGraph, path: &[Vertex]) -> Result<()> {
    let mut seen = vec![false; graph.n()];
    for &v in path {
        if v >= graph.n() {
            return Err(Error::InvalidPath(format!("vertex {v} out of range")));
        }
        if seen[v] {
            return Err(Error::InvalidPath(format!("vertex {v} repeated")));
        }
        seen[v] = true;
    }
    for pair in path.windows(2) {
        if !graph.adjacent(pair[0], pair[1]) {
            return Err(Error::InvalidPath(format!(
                "{} and {} are not adjacent",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

pub fn path_weight(graph: &WeightedIntervalGraph, path: &[Vertex]) -> Weight {
    path.iter()
        .fold(Weight::zero(), |acc, &v| acc + graph.weight(v))
}

pub fn is_normal_path(graph: &WeightedIntervalGraph, path: &[Vertex]) -> Result<bool> {
    validate_path(graph, path)?;
    let ivs: Vec<(i64, i64)> = path
        .iter()
        .map(|&v| (graph.left(v), graph.right(v)))
        .collect();
    Ok(is_normal_order(&ivs))
}

/// Normality of a sequence of intervals taken as a path in that order.
pub(crate) fn is_normal_order<K: Ord>(ivs: &[(K, K)]) -> bool {
    let k = ivs.len();
    if k == 0 {
        return true;
    }
    let meets = |a: &(K, K), b: &(K, K)| a.0 < b.1 && b.0 < a.1;
    if (1..k).any(|j| ivs[j].1 < ivs[0].1) {
        return false;
    }
    for i in 1..k {
        let prev = &ivs[i - 1];
        for j in i + 1..k {
            if ivs[j].1 < ivs[i].1 && meets(prev, &ivs[j]) {
                return false;
            }
        }
    }
    true
}

/// Greedy normal ordering of a set of intervals: start at the one with the
/// smallest right endpoint, then repeatedly move to the unvisited neighbor
/// with the smallest right endpoint. Returns indices into `ivs`, or `None`
/// when the walk gets stuck.
pub(crate) fn greedy_normal_order<K: Ord>(ivs: &[(K, K)]) -> Option<Vec<usize>> {
    let k = ivs.len();
    let mut by_right: Vec<usize> = (0..k).collect();
    by_right.sort_by(|&a, &b| ivs[a].1.cmp(&ivs[b].1));
    let mut remaining: BTreeSet<usize> = (0..k).collect();
    let mut order = Vec::with_capacity(k);
    let Some(&first) = remaining.iter().next() else {
        return Some(order);
    };
    remaining.remove(&first);
    let mut cur = by_right[first];
    order.push(cur);
    while !remaining.is_empty() {
        // Candidates have right endpoint beyond l_cur; the first such one
        // that starts before r_cur is the answer.
        let start = by_right.partition_point(|&x| ivs[x].1 < ivs[cur].0);
        let next = remaining
            .range(start..)
            .copied()
            .find(|&p| ivs[by_right[p]].0 < ivs[cur].1)?;
        remaining.remove(&next);
        cur = by_right[next];
        order.push(cur);
    }
    Some(order)
}

pub fn normalize_path(graph: &WeightedIntervalGraph, set: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut seen = vec![false; graph.n()];
    for &v in set {
        if v >= graph.n() || seen[v] {
            return Err(Error::InvalidPath(format!("bad vertex set member {v}")));
        }
        seen[v] = true;
    }
    let ivs: Vec<(i64, i64)> = set
        .iter()
        .map(|&v| (graph.left(v), graph.right(v)))
        .collect();
    let order = greedy_normal_order(&ivs).ok_or(Error::NormalizationFailed)?;
    Ok(order.into_iter().map(|i| set[i]).collect())
}
