#![allow(dead_code)]

use fpt_ip::generate::{generate, GeneratorSpec, Kind, SeededRng};
use fpt_ip::interval::{
    build, is_normal_path, path_weight, Interval, Vertex, Weight, WeightedIntervalGraph,
};
use fpt_ip::matching::SimpleGraph;

pub fn random(n: usize, seed: u64) -> WeightedIntervalGraph {
    generate(&GeneratorSpec {
        kind: Kind::Random,
        n,
        k: 0,
        seed,
    })
    .unwrap()
}

pub fn planted(n: usize, k: usize, seed: u64) -> WeightedIntervalGraph {
    generate(&GeneratorSpec {
        kind: Kind::Planted,
        n,
        k,
        seed,
    })
    .unwrap()
}

/// A claw `[0,100] ⊃ {[10,20], [40,50], [80,90]}` (scaled by 1000) plus a
/// dense proper cluster straddling one end of the long interval and a few
/// random extras, redrawn until all endpoints differ. The cluster lands in a
/// single group of the second reduction, large enough to be cut down to
/// fewer clones.
pub fn clustered(seed: u64) -> WeightedIntervalGraph {
    let mut rng = SeededRng::new(seed);
    loop {
        if let Ok(g) = build(&clustered_draw(&mut rng)) {
            return g;
        }
    }
}

fn clustered_draw(rng: &mut SeededRng) -> Vec<Interval> {
    let mut ivs = vec![
        Interval::new(0, 0, 100_000),
        Interval::new(1, 10_000, 20_000),
        Interval::new(2, 40_000, 50_000),
        Interval::new(3, 80_000, 90_000),
    ];
    let c = rng.range(9, 13) as usize;
    let at = if rng.below(2) == 0 { 100_000 } else { 0 };
    for i in 0..c {
        let l = at - rng.range(2, 6) * 1000 + i as i64 * 37 + rng.range(0, 30);
        ivs.push(Interval::new(
            ivs.len(),
            l,
            l + rng.range(7, 9) * 1000 + rng.range(0, 999),
        ));
    }
    while ivs.len() < 17 && rng.below(2) == 0 {
        let l = rng.range(-20, 120) * 1000 + 500 + rng.range(0, 400);
        ivs.push(Interval::new(ivs.len(), l, l + rng.range(1, 30) * 1000 + 1));
    }
    ivs
}

/// Every normal path, grown vertex by vertex: a prefix of a normal path is
/// normal, and appending `z` keeps normality iff `z` is not σ-before the
/// first vertex and, for every step `(p, q)` of the path, `z` is not a
/// neighbor of `p` that comes σ-before `q`.
pub fn normal_paths(g: &WeightedIntervalGraph) -> Vec<Vec<Vertex>> {
    fn grow(
        g: &WeightedIntervalGraph,
        path: &mut Vec<Vertex>,
        used: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        out.push(path.clone());
        let last = *path.last().unwrap();
        for &z in g.neighbors(last) {
            if used[z] || g.rank(z) < g.rank(path[0]) {
                continue;
            }
            let blocked = path
                .windows(2)
                .any(|w| g.rank(z) < g.rank(w[1]) && g.adjacent(w[0], z));
            if blocked {
                continue;
            }
            used[z] = true;
            path.push(z);
            grow(g, path, used, out);
            path.pop();
            used[z] = false;
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    for s in 0..g.n() {
        used[s] = true;
        grow(g, &mut vec![s], &mut used, &mut out);
        used[s] = false;
    }
    debug_assert!(out.iter().all(|p| is_normal_path(g, p).unwrap()));
    out
}

/// Violations of the normal-path properties over every normal path of `g`:
/// (i) a later vertex that is σ-before an earlier one is adjacent to it,
/// (ii) a σ-backward step goes into the current interval, (iii) non-nested
/// pairs appear in σ order, (iv) appending a neighbor of the last vertex that
/// is σ-after the whole path keeps it normal.
pub fn normal_path_violations(g: &WeightedIntervalGraph) -> Vec<String> {
    let r = |v: Vertex| g.rank(v);
    let mut bad = Vec::new();
    for p in normal_paths(g) {
        for (i, &u) in p.iter().enumerate() {
            for &w in &p[i + 1..] {
                if r(w) < r(u) && !g.adjacent(u, w) {
                    bad.push(format!("(i) {u} {w} in {p:?}"));
                }
                if !g.contains(u, w) && !g.contains(w, u) && r(w) < r(u) {
                    bad.push(format!("(iii) {u} {w} in {p:?}"));
                }
            }
        }
        for s in p.windows(2) {
            if r(s[1]) < r(s[0]) && !g.contains(s[0], s[1]) {
                bad.push(format!("(ii) {} {} in {p:?}", s[0], s[1]));
            }
        }
        let last = *p.last().unwrap();
        let top = p.iter().map(|&v| r(v)).max().unwrap();
        for &z in g.neighbors(last) {
            if r(z) > top {
                let mut q = p.clone();
                q.push(z);
                if !is_normal_path(g, &q).unwrap() {
                    bad.push(format!("(iv) {z} after {p:?}"));
                }
            }
        }
    }
    bad
}

/// All simple paths (each direction counted), for tiny graphs.
pub fn all_paths(g: &WeightedIntervalGraph) -> Vec<Vec<Vertex>> {
    fn grow(
        g: &WeightedIntervalGraph,
        path: &mut Vec<Vertex>,
        used: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        out.push(path.clone());
        let last = *path.last().unwrap();
        for &z in g.neighbors(last) {
            if !used[z] {
                used[z] = true;
                path.push(z);
                grow(g, path, used, out);
                path.pop();
                used[z] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    for s in 0..g.n() {
        used[s] = true;
        grow(g, &mut vec![s], &mut used, &mut out);
        used[s] = false;
    }
    out
}

/// Normal paths of maximum weight; every maximum-weight path has the vertex
/// set of one of these.
pub fn heaviest_normal_paths(g: &WeightedIntervalGraph) -> (Weight, Vec<Vec<Vertex>>) {
    let paths = normal_paths(g);
    let best = paths
        .iter()
        .map(|p| path_weight(g, p))
        .max()
        .unwrap_or_default();
    (
        best,
        paths
            .into_iter()
            .filter(|p| path_weight(g, p) == best)
            .collect(),
    )
}

pub fn random_simple_graph(n: usize, density_percent: u64, seed: u64) -> SimpleGraph {
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(100) < density_percent {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, &edges).unwrap()
}

/// Maximum matching size by dynamic programming over vertex subsets: the
/// lowest vertex of the set is left unmatched or matched to a neighbor.
pub fn brute_matching(g: &SimpleGraph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let mut best = vec![0u8; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best[rest];
        for &u in g.neighbors(v) {
            if rest >> u & 1 == 1 {
                b = b.max(1 + best[rest & !(1 << u)]);
            }
        }
        best[mask] = b;
    }
    best[(1 << n) - 1] as usize
}
