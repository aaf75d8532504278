//! Second reduction: replace weakly reducible sets by a few equal-weight clones.
//!
//! The cut points `T` are the endpoints of `D` plus the endpoints of the first
//! two and last two collapsed runs of every cell. The remaining free vertices
//! are grouped by the pair of `T`-gaps holding their two endpoints; a group
//! `S` becomes `min(|S|, |D| + 4)` copies of `span(S)` sharing its weight.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{graph_from_keys, Vertex, Weight, WeightedIntervalGraph};
use crate::stage1::{is_connected_proper, Stage1Result};

/// Position in the shared coordinate space used for lifting: an input-graph
/// coordinate refined by a sub-position.
pub type Key = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage2Families {
    /// Sorted cut points `t_1 < .. < t_{|T|}` in G# coordinates.
    pub t: Vec<i64>,
    /// Nonempty `U_{ji}` keyed by `(j, i)`, members in sigma order.
    pub groups: BTreeMap<(usize, usize), Vec<Vertex>>,
}

impl Stage2Families {
    pub fn s2(&self) -> Vec<Vec<Vertex>> {
        self.groups.values().cloned().collect()
    }
}

/// `κ = (k+2) + C(18k+16, 2)·(k+6)`.
pub fn kappa_bound(k: usize) -> u128 {
    let k = k as u128;
    let t = 18 * k + 16;
    (k + 2) + t * (t - 1) / 2 * (k + 6)
}

pub fn compute_stage2_families(st1: &Stage1Result) -> Result<Stage2Families> {
    let g = &st1.g_sharp;
    let mut t: Vec<i64> = Vec::new();
    for &d in &st1.d {
        t.push(g.left(d));
        t.push(g.right(d));
    }
    for runs in &st1.cell_a {
        let q = runs.len();
        let mut picks: Vec<usize> = [0, 1, q.wrapping_sub(2), q.wrapping_sub(1)]
            .into_iter()
            .filter(|&c| c < q)
            .collect();
        picks.dedup();
        for c in picks {
            t.push(g.left(runs[c]));
            t.push(g.right(runs[c]));
        }
    }
    t.sort_unstable();
    t.dedup();

    let mut u_sharp = st1.u_sharp.clone();
    u_sharp.sort_unstable_by_key(|&v| g.rank(v));
    let mut groups: BTreeMap<(usize, usize), Vec<Vertex>> = BTreeMap::new();
    for u in u_sharp {
        // t_{j-1} < l_u < t_j with t_0 = -inf.
        let j = t.partition_point(|&p| p < g.left(u)) + 1;
        let i = t.partition_point(|&p| p < g.right(u)) + 1;
        if i == j {
            return Err(Error::Invariant(format!("U_ii is nonempty (i = {i})")));
        }
        groups.entry((j, i)).or_default().push(u);
    }
    Ok(Stage2Families { t, groups })
}

/// Both conditions of weak reducibility, checked directly.
pub fn is_weakly_reducible(graph: &WeightedIntervalGraph, set: &[Vertex]) -> bool {
    if set.is_empty() || !is_connected_proper(graph, set) {
        return false;
    }
    for &u in set {
        for v in 0..graph.n() {
            if graph.contains(u, v) && !set.iter().all(|&s| s == v || graph.adjacent(s, v)) {
                return false;
            }
        }
    }
    set.iter()
        .all(|&a| set.iter().all(|&b| a == b || graph.adjacent(a, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HatOrigin {
    /// A vertex of G#, kept as is.
    Sharp(Vertex),
    Clone {
        group: usize,
        index: usize,
    },
    /// The isolated weight-0 root added before the dynamic program.
    Root,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneGroup {
    pub cell: (usize, usize),
    /// G# ids in sigma order.
    pub members: Vec<Vertex>,
    /// Ids in the special graph, by clone index.
    pub clones: Vec<Vertex>,
}

/// Interval graph whose vertices split into an independent part `A`, whose
/// intervals contain no other interval, and the rest `B`.
#[derive(Clone, Debug)]
pub struct SpecialWeightedIntervalGraph {
    pub graph: WeightedIntervalGraph,
    pub in_a: Vec<bool>,
    pub kappa: u128,
    pub origin: Vec<HatOrigin>,
    pub groups: Vec<CloneGroup>,
    /// Endpoint keys in the shared coordinate space.
    pub keys: Vec<(Key, Key)>,
    pub v0: Option<Vertex>,
}

impl SpecialWeightedIntervalGraph {
    /// Wraps a graph with a given partition; `kappa` is set to `|B|`.
    pub fn new(graph: WeightedIntervalGraph, in_a: Vec<bool>) -> Result<Self> {
        if in_a.len() != graph.n() {
            return Err(Error::InvalidSpecialPartition(
                "partition length mismatch".into(),
            ));
        }
        validate_partition(&graph, &in_a)?;
        let n = graph.n();
        let keys = (0..n)
            .map(|v| ((graph.left(v), 0), (graph.right(v), 0)))
            .collect();
        let kappa = in_a.iter().filter(|&&a| !a).count() as u128;
        Ok(SpecialWeightedIntervalGraph {
            graph,
            in_a,
            kappa,
            origin: (0..n).map(HatOrigin::Sharp).collect(),
            groups: Vec::new(),
            keys,
            v0: None,
        })
    }

    pub fn a(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn b(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| !self.in_a[v]).collect()
    }

    pub fn b_size(&self) -> usize {
        self.in_a.iter().filter(|&&a| !a).count()
    }

    pub fn validate(&self) -> Result<()> {
        validate_partition(&self.graph, &self.in_a)
    }
}

/// `A` independent and no interval inside an `A`-interval.
pub fn validate_partition(graph: &WeightedIntervalGraph, in_a: &[bool]) -> Result<()> {
    let mut a: Vec<Vertex> = (0..graph.n()).filter(|&v| in_a[v]).collect();
    a.sort_unstable_by_key(|&v| graph.left(v));
    for w in a.windows(2) {
        if graph.right(w[0]) > graph.left(w[1]) {
            return Err(Error::InvalidSpecialPartition(format!(
                "A-vertices {} and {} are adjacent",
                w[0], w[1]
            )));
        }
    }
    for v in 0..graph.n() {
        let at = a.partition_point(|&x| graph.left(x) < graph.left(v));
        if at > 0 {
            let host = a[at - 1];
            if host != v && graph.right(v) < graph.right(host) {
                return Err(Error::InvalidSpecialPartition(format!(
                    "vertex {v} lies inside A-vertex {host}"
                )));
            }
        }
    }
    Ok(())
}

pub fn apply_rule2(
    st1: &Stage1Result,
    fam: &Stage2Families,
) -> Result<SpecialWeightedIntervalGraph> {
    let g = &st1.g_sharp;
    let d_size = st1.d.len();
    let cap = d_size + 4;
    let mut grouped = vec![false; g.n()];
    for members in fam.groups.values() {
        for &v in members {
            grouped[v] = true;
        }
    }

    let mut origin = Vec::new();
    let mut keys: Vec<(Key, Key)> = Vec::new();
    let mut weights = Vec::new();
    let mut in_a = Vec::new();
    for v in 0..g.n() {
        if !grouped[v] {
            let (l, r) = st1.coords[v];
            origin.push(HatOrigin::Sharp(v));
            keys.push(((l, 0), (r, 0)));
            weights.push(g.weight(v));
            in_a.push(st1.is_a(v));
        }
    }
    let mut groups = Vec::new();
    for (gi, (&cell, members)) in fam.groups.iter().enumerate() {
        let copies = members.len().min(cap);
        let total = members
            .iter()
            .fold(Weight::zero(), |acc, &v| acc + g.weight(v));
        let each = total / Weight::from(copies as i64);
        let l = members.iter().map(|&v| st1.coords[v].0).min().unwrap();
        let r = members.iter().map(|&v| st1.coords[v].1).max().unwrap();
        let mut clones = Vec::with_capacity(copies);
        for index in 0..copies {
            clones.push(origin.len());
            origin.push(HatOrigin::Clone { group: gi, index });
            // Staircase: both endpoints move right by `index` sub-positions.
            keys.push(((l, index as i64), (r, index as i64)));
            weights.push(each);
            in_a.push(false);
        }
        groups.push(CloneGroup {
            cell,
            members: members.clone(),
            clones,
        });
    }
    let graph = graph_from_keys(&keys, weights)?;
    validate_partition(&graph, &in_a)?;
    Ok(SpecialWeightedIntervalGraph {
        graph,
        in_a,
        kappa: kappa_bound(d_size - 2),
        origin,
        groups,
        keys,
        v0: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claw::{add_dummies, approx_deletion_set};
    use crate::fixtures::path3;
    use crate::interval::{build, make_semi_proper, normalize_endpoints, Interval};
    use crate::stage1::{apply_rule1, compute_stage1_families};

    fn stage1_of(g: &WeightedIntervalGraph) -> Stage1Result {
        let g = make_semi_proper(g);
        let (g, d) = add_dummies(&g, &approx_deletion_set(&g)).unwrap();
        let g = normalize_endpoints(&g);
        apply_rule1(&g, &compute_stage1_families(&g, &d).unwrap()).unwrap()
    }

    #[test]
    fn path3_stage2_is_identity() {
        let st1 = stage1_of(&path3());
        let fam = compute_stage2_families(&st1).unwrap();
        assert!(fam.groups.is_empty());
        let sp = apply_rule2(&st1, &fam).unwrap();
        assert_eq!(sp.graph, st1.g_sharp);
        assert_eq!(sp.a().len(), 1);
        assert_eq!(sp.b_size(), 2);
        assert_eq!(sp.kappa, 2 + 120 * 6);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa_bound(0), 722);
        assert_eq!(kappa_bound(1), 3 + 561 * 7);
    }

    #[test]
    fn weak_reducibility() {
        let tri = build(&[
            Interval::new(0, 1, 4),
            Interval::new(1, 2, 5),
            Interval::new(2, 3, 6),
        ])
        .unwrap();
        assert!(is_weakly_reducible(&tri, &[0, 1, 2]));
        assert!(!is_weakly_reducible(&path3(), &[0, 2]));
        // z sits inside u and misses w.
        let g = build(&[
            Interval::new(0, 1, 10),
            Interval::new(1, 8, 14),
            Interval::new(2, 2, 3),
            Interval::new(3, 12, 16),
        ])
        .unwrap();
        assert!(!is_weakly_reducible(&g, &[0, 1]));
    }

    fn clone_fixture(size: usize, d_size: usize) -> (Stage1Result, Stage2Families) {
        // `size` pairwise-overlapping free intervals next to `d_size` sentinels.
        let mut ivs = Vec::new();
        for j in 0..size {
            ivs.push(Interval::new(j, 100 + j as i64, 200 + j as i64));
        }
        for j in 0..d_size {
            let base = 1000 + 10 * j as i64;
            ivs.push(Interval::new(size + j, base, base + 1));
        }
        let g = build(&ivs).unwrap();
        let d: Vec<Vertex> = (size..size + d_size).collect();
        let st1 = Stage1Result {
            g_sharp: g.clone(),
            origin: (0..g.n())
                .map(crate::stage1::SharpOrigin::Original)
                .collect(),
            a: Vec::new(),
            u_sharp: (0..size).collect(),
            d,
            back_map: Vec::new(),
            cell_a: Vec::new(),
            coords: (0..g.n()).map(|v| (g.left(v), g.right(v))).collect(),
        };
        let mut groups = BTreeMap::new();
        groups.insert((1, 2), (0..size).collect());
        (
            st1,
            Stage2Families {
                t: vec![150],
                groups,
            },
        )
    }

    #[test]
    fn rule2_clone_counts_and_weights() {
        let (st1, fam) = clone_fixture(10, 4);
        let sp = apply_rule2(&st1, &fam).unwrap();
        let clones = &sp.groups[0].clones;
        assert_eq!(clones.len(), 8);
        for &c in clones {
            assert_eq!(sp.graph.weight(c), Weight::new(5, 4));
        }
        for &a in clones {
            for &b in clones {
                assert!(a == b || (sp.graph.adjacent(a, b) && !sp.graph.contains(a, b)));
            }
        }

        let (st1, fam) = clone_fixture(2, 4);
        let sp = apply_rule2(&st1, &fam).unwrap();
        assert_eq!(sp.groups[0].clones.len(), 2);
        assert!(sp.groups[0]
            .clones
            .iter()
            .all(|&c| sp.graph.weight(c) == Weight::from(1)));
    }
}
