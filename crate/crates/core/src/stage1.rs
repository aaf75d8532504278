//! First reduction: collapse reducible sets into single weighted intervals.
//!
//! With the deletion set `D = {d0, .., d_{k+1}}` sorted by right endpoint, the
//! line between consecutive right endpoints `r_{d_{i-1}}` and `r_{d_i}` is cut
//! at the left endpoints of `D`. Vertices outside `D` that avoid every right
//! endpoint of `D` fall into these cells; within a cell, those with no
//! neighbor in an earlier cell of the same block form connected proper runs,
//! and each run becomes one interval weighing its size.

use std::ops::Range;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::claw::DeletionSet;
use crate::error::{Error, Result};
use crate::interval::{graph_from_keys, span, Vertex, Weight, WeightedIntervalGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Block index, `1..=k+1`.
    pub i: usize,
    /// Cell index within the block, `1..=p_i`.
    pub x: usize,
    pub lo: i64,
    pub hi: i64,
    /// Range into `Stage1Families::u_star`.
    pub star: Range<usize>,
    /// Range into `Stage1Families::u_2star`.
    pub star2: Range<usize>,
    /// Range into `Stage1Families::components`.
    pub components: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage1Families {
    /// `D` in right-endpoint order; first and last are the dummies.
    pub d_sorted: Vec<Vertex>,
    pub l_points: Vec<i64>,
    pub r_points: Vec<i64>,
    pub u: Vec<Vertex>,
    /// Members of `U` whose interval holds no point of `R`, in sigma order.
    pub u_star: Vec<Vertex>,
    /// `li[i-1] = [l_{i,0}, .., l_{i,p_i}]`.
    pub li: Vec<Vec<i64>>,
    pub cells: Vec<Cell>,
    pub u_2star: Vec<Vertex>,
    /// Ranges into `u_2star`, one per component.
    pub components: Vec<Range<usize>>,
}

impl Stage1Families {
    /// Number of non-dummy members of `D`.
    pub fn k(&self) -> usize {
        self.d_sorted.len() - 2
    }

    pub fn p(&self, i: usize) -> usize {
        self.li[i - 1].len() - 1
    }

    pub fn p_sum(&self) -> usize {
        (1..=self.li.len()).map(|i| self.p(i)).sum()
    }

    pub fn component(&self, c: usize) -> &[Vertex] {
        &self.u_2star[self.components[c].clone()]
    }

    pub fn s1(&self) -> Vec<Vec<Vertex>> {
        (0..self.components.len())
            .map(|c| self.component(c).to_vec())
            .collect()
    }
}

pub fn compute_stage1_families(
    graph: &WeightedIntervalGraph,
    d: &DeletionSet,
) -> Result<Stage1Families> {
    let (d0, d_last) = d.dummies.ok_or(Error::MissingDummies)?;
    let mut d_sorted = d.marked.clone();
    d_sorted.sort_unstable_by_key(|&v| graph.rank(v));
    if d_sorted.first() != Some(&d0) || d_sorted.last() != Some(&d_last) {
        return Err(Error::MissingDummies);
    }
    let in_d = d.mask(graph.n());
    let mut l_points: Vec<i64> = d_sorted.iter().map(|&v| graph.left(v)).collect();
    l_points.sort_unstable();
    let r_points: Vec<i64> = d_sorted.iter().map(|&v| graph.right(v)).collect();

    let u: Vec<Vertex> = (0..graph.n()).filter(|&v| !in_d[v]).collect();
    let u_star: Vec<Vertex> = graph
        .sigma()
        .iter()
        .copied()
        .filter(|&v| !in_d[v])
        .filter(|&v| {
            let at = r_points.partition_point(|&r| r < graph.left(v));
            at == r_points.len() || r_points[at] > graph.right(v)
        })
        .collect();

    let mut li = Vec::with_capacity(d_sorted.len() - 1);
    for w in r_points.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mut pts = vec![lo];
        pts.extend(l_points.iter().copied().filter(|&l| lo < l && l < hi));
        pts.push(hi);
        li.push(pts);
    }

    let mut cells = Vec::new();
    let mut u_2star = Vec::new();
    let mut components: Vec<Range<usize>> = Vec::new();
    let mut at = 0;
    for (bi, pts) in li.iter().enumerate() {
        // Largest right endpoint over the U* cells already passed in this block.
        let mut reach = pts[0];
        for x in 1..pts.len() {
            let (lo, hi) = (pts[x - 1], pts[x]);
            let start = at;
            while at < u_star.len() && graph.right(u_star[at]) < hi {
                debug_assert!(graph.right(u_star[at]) > lo);
                at += 1;
            }
            let star = start..at;
            let s2_start = u_2star.len();
            let c_start = components.len();
            let mut prev: Option<Vertex> = None;
            for &v in &u_star[star.clone()] {
                if reach < graph.left(v) {
                    match prev {
                        Some(p) if graph.left(v) < graph.right(p) => {}
                        _ => components.push(u_2star.len()..u_2star.len()),
                    }
                    u_2star.push(v);
                    components.last_mut().unwrap().end = u_2star.len();
                    prev = Some(v);
                }
            }
            for &v in &u_star[star.clone()] {
                reach = reach.max(graph.right(v));
            }
            cells.push(Cell {
                i: bi + 1,
                x,
                lo,
                hi,
                star,
                star2: s2_start..u_2star.len(),
                components: c_start..components.len(),
            });
        }
    }
    if at != u_star.len() {
        return Err(Error::Invariant("U* vertex outside every cell".into()));
    }

    let fam = Stage1Families {
        d_sorted,
        l_points,
        r_points,
        u,
        u_star,
        li,
        cells,
        u_2star,
        components,
    };
    check_s1(graph, &fam)?;
    Ok(fam)
}

/// Linear-time structural check of the collapsed runs: each is a connected
/// proper run, runs have disjoint spans, and no outside interval lies inside
/// a run's span.
fn check_s1(graph: &WeightedIntervalGraph, fam: &Stage1Families) -> Result<()> {
    let mut spans = Vec::with_capacity(fam.components.len());
    let mut owner = vec![usize::MAX; graph.n()];
    for c in 0..fam.components.len() {
        let set = fam.component(c);
        for w in set.windows(2) {
            if graph.left(w[1]) < graph.left(w[0]) || !graph.adjacent(w[0], w[1]) {
                return Err(Error::Invariant(format!(
                    "component {c} is not a connected proper run"
                )));
            }
        }
        for &v in set {
            owner[v] = c;
        }
        let s = span(graph, set)?;
        spans.push((s.left, s.right, c));
    }
    spans.sort_unstable();
    for w in spans.windows(2) {
        if w[0].1 > w[1].0 {
            return Err(Error::Invariant("component spans overlap".into()));
        }
    }
    for v in 0..graph.n() {
        let at = spans.partition_point(|s| s.0 < graph.left(v));
        if at > 0 {
            let (_, hi, c) = spans[at - 1];
            if graph.right(v) < hi && owner[v] != c {
                return Err(Error::Invariant(format!(
                    "vertex {v} lies inside the span of component {c}"
                )));
            }
        }
    }
    Ok(())
}

/// Both conditions of reducibility, checked directly.
pub fn is_reducible(graph: &WeightedIntervalGraph, set: &[Vertex]) -> bool {
    if set.is_empty() {
        return false;
    }
    if !is_connected_proper(graph, set) {
        return false;
    }
    let s = span(graph, set).unwrap();
    (0..graph.n())
        .all(|v| !(s.left <= graph.left(v) && graph.right(v) <= s.right) || set.contains(&v))
}

/// `set` induces a connected graph whose intervals are pairwise non-nested.
pub(crate) fn is_connected_proper(graph: &WeightedIntervalGraph, set: &[Vertex]) -> bool {
    for &a in set {
        for &b in set {
            if graph.contains(a, b) {
                return false;
            }
        }
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable_by_key(|&v| graph.right(v));
    sorted.windows(2).all(|w| graph.adjacent(w[0], w[1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SharpOrigin {
    Original(Vertex),
    /// Index into `Stage1Result::back_map`.
    Collapsed(usize),
}

#[derive(Clone, Debug)]
pub struct Stage1Result {
    pub g_sharp: WeightedIntervalGraph,
    pub origin: Vec<SharpOrigin>,
    /// Collapsed vertices, one per member of S1, in family order.
    pub a: Vec<Vertex>,
    pub u_sharp: Vec<Vertex>,
    /// `D` in G# ids, right-endpoint order.
    pub d: Vec<Vertex>,
    /// Per collapsed vertex, its set in sigma order (ids of the input graph).
    pub back_map: Vec<Vec<Vertex>>,
    /// Per cell, its collapsed vertices in order.
    pub cell_a: Vec<Vec<Vertex>>,
    /// Intervals of G# vertices in input-graph coordinates.
    pub coords: Vec<(i64, i64)>,
}

impl Stage1Result {
    pub fn is_a(&self, v: Vertex) -> bool {
        matches!(self.origin[v], SharpOrigin::Collapsed(_))
    }
}

pub fn apply_rule1(graph: &WeightedIntervalGraph, fam: &Stage1Families) -> Result<Stage1Result> {
    let n = graph.n();
    let mut in_set = vec![false; n];
    for &v in &fam.u_2star {
        in_set[v] = true;
    }
    let mut origin = Vec::new();
    let mut coords = Vec::new();
    let mut weights = Vec::new();
    let mut new_id = vec![usize::MAX; n];
    for v in 0..n {
        if !in_set[v] {
            new_id[v] = origin.len();
            origin.push(SharpOrigin::Original(v));
            coords.push((graph.left(v), graph.right(v)));
            weights.push(graph.weight(v));
        }
    }
    let mut a = Vec::new();
    let mut back_map = Vec::new();
    for c in 0..fam.components.len() {
        let set = fam.component(c);
        let s = span(graph, set)?;
        a.push(origin.len());
        origin.push(SharpOrigin::Collapsed(c));
        coords.push((s.left, s.right));
        weights.push(
            set.iter()
                .fold(Weight::zero(), |acc, &v| acc + graph.weight(v)),
        );
        back_map.push(set.to_vec());
    }
    let g_sharp = graph_from_keys(&coords, weights)?;
    let cell_a = fam
        .cells
        .iter()
        .map(|cell| cell.components.clone().map(|c| a[c]).collect())
        .collect();
    let mut d: Vec<Vertex> = fam.d_sorted.iter().map(|&v| new_id[v]).collect();
    d.sort_unstable_by_key(|&v| g_sharp.rank(v));
    let in_d: Vec<bool> = {
        let mut m = vec![false; origin.len()];
        for &v in &d {
            m[v] = true;
        }
        m
    };
    let u_sharp = (0..origin.len())
        .filter(|&v| matches!(origin[v], SharpOrigin::Original(_)) && !in_d[v])
        .collect();
    Ok(Stage1Result {
        g_sharp,
        origin,
        a,
        u_sharp,
        d,
        back_map,
        cell_a,
        coords,
    })
}
