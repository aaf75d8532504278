//! Kernelization and decision procedure for maximum matching.
//!
//! Rule 1 removes a vertex of degree above `2(k-1)` and decreases `k`; Rule 2
//! drops isolated vertices. A residual graph with maximum degree at most
//! `2(k-1)` and more than `(k-1)(2k-1)` vertices or edges has a matching of
//! size `k`.
//!
//! Degrees are tracked only up to the cap `2k-1`, the smallest value that can
//! ever fire Rule 1. Each vertex keeps a prefix of its adjacency list holding
//! its counted neighbors; when one of them is removed the prefix is extended
//! to refill the count. A vertex thus probes fewer than `3k` list entries.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexIdOutOfRange { id: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpec(format!("repeated edge {u} {}", w[0])));
            }
        }
        Ok(SimpleGraph {
            adj,
            m: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    Kernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutcome {
    pub verdict: Verdict,
    /// Kernel graph, residual parameter and, per kernel vertex, its id in the
    /// input graph.
    pub kernel: Option<(SimpleGraph, usize, Vec<Vertex>)>,
    /// Vertices removed by Rule 1.
    pub removed_high_degree: usize,
    /// Largest number of adjacency entries any single vertex probed.
    pub max_probes: usize,
}

/// `(k-1)(2k-1)`.
pub fn kernel_bound(k: usize) -> usize {
    if k == 0 {
        0
    } else {
        (k - 1) * (2 * k - 1)
    }
}

pub fn kernelize(graph: &SimpleGraph, k: usize) -> KernelOutcome {
    let n = graph.n();
    let yes = |removed, probes| KernelOutcome {
        verdict: Verdict::Yes,
        kernel: None,
        removed_high_degree: removed,
        max_probes: probes,
    };
    if k == 0 {
        return yes(0, 0);
    }
    let cap = 2 * k - 1;
    let mut removed = vec![false; n];
    let mut prefix = vec![0usize; n];
    let mut count = vec![0usize; n];
    let mut probes = vec![0usize; n];
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); cap + 1];

    let refill = |v: Vertex,
                  removed: &[bool],
                  prefix: &mut [usize],
                  count: &mut [usize],
                  probes: &mut [usize]| {
        let list = graph.neighbors(v);
        while count[v] < cap && prefix[v] < list.len() {
            probes[v] += 1;
            if !removed[list[prefix[v]]] {
                count[v] += 1;
            }
            prefix[v] += 1;
        }
    };
    for v in 0..n {
        refill(v, &removed, &mut prefix, &mut count, &mut probes);
        buckets[count[v]].push(v);
    }

    let mut r0 = 0;
    loop {
        let kk = k - r0;
        if kk == 0 {
            return yes(r0, probes.iter().copied().max().unwrap_or(0));
        }
        let threshold = 2 * (kk - 1);
        let mut pick = None;
        'scan: for c in (threshold + 1..=cap).rev() {
            while let Some(v) = buckets[c].pop() {
                if !removed[v] && count[v] == c {
                    pick = Some(v);
                    break 'scan;
                }
            }
        }
        let Some(u) = pick else { break };
        removed[u] = true;
        r0 += 1;
        for &v in graph.neighbors(u) {
            if removed[v] {
                continue;
            }
            let pos = graph.neighbors(v).partition_point(|&x| x < u);
            if pos < prefix[v] {
                count[v] -= 1;
                refill(v, &removed, &mut prefix, &mut count, &mut probes);
                buckets[count[v]].push(v);
            }
        }
    }

    let max_probes = probes.iter().copied().max().unwrap_or(0);
    let kk = k - r0;
    let bound = kernel_bound(kk);
    let keep: Vec<Vertex> = (0..n).filter(|&v| !removed[v] && count[v] > 0).collect();
    let edge_ends: usize = keep.iter().map(|&v| count[v]).sum();
    if keep.len() > bound || edge_ends / 2 > bound {
        return yes(r0, max_probes);
    }
    let mut id = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        id[v] = i;
    }
    let mut edges = Vec::with_capacity(edge_ends / 2);
    for &v in &keep {
        for &w in graph.neighbors(v) {
            if v < w && id[w] != usize::MAX {
                edges.push((id[v], id[w]));
            }
        }
    }
    let g = SimpleGraph::new(keep.len(), &edges).expect("subgraph of a simple graph");
    KernelOutcome {
        verdict: Verdict::Kernel,
        kernel: Some((g, kk, keep)),
        removed_high_degree: r0,
        max_probes,
    }
}

/// Maximum matching by Edmonds' blossom algorithm, as `(u, v)` pairs with
/// `u < v`.
pub fn max_matching(graph: &SimpleGraph) -> Vec<(Vertex, Vertex)> {
    let n = graph.n();
    let none = usize::MAX;
    let mut mate = vec![none; n];
    for v in 0..n {
        if mate[v] == none {
            if let Some(&u) = graph.neighbors(v).iter().find(|&&u| mate[u] == none) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut parent = vec![none; n];
    let mut base: Vec<Vertex> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];
    for root in 0..n {
        if mate[root] != none || graph.degree(root) == 0 {
            continue;
        }
        parent.fill(none);
        used.fill(false);
        for (v, b) in base.iter_mut().enumerate() {
            *b = v;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = none;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in graph.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != none && parent[mate[to]] != none) {
                    let cur = lca(&mate, &base, &parent, v, to);
                    blossom.fill(false);
                    mark_path(&mate, &base, &mut parent, &mut blossom, v, cur, to);
                    mark_path(&mate, &base, &mut parent, &mut blossom, to, cur, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == none {
                    parent[to] = v;
                    if mate[to] == none {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        let mut v = end;
        while v != none {
            let pv = parent[v];
            let next = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = next;
        }
    }
    (0..n)
        .filter(|&v| mate[v] != none && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect()
}

fn lca(
    mate: &[Vertex],
    base: &[Vertex],
    parent: &[Vertex],
    mut a: Vertex,
    mut b: Vertex,
) -> Vertex {
    let mut seen = vec![false; mate.len()];
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == usize::MAX {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    mate: &[Vertex],
    base: &[Vertex],
    parent: &mut [Vertex],
    blossom: &mut [bool],
    mut v: Vertex,
    b: Vertex,
    mut child: Vertex,
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Whether the graph has a matching with `k` edges.
pub fn decide_matching(graph: &SimpleGraph, k: usize) -> bool {
    let out = kernelize(graph, k);
    match out.kernel {
        None => true,
        Some((g, kk, _)) => max_matching(&g).len() >= kk,
    }
}
