//! Maximum-weight path of a special weighted interval graph.
//!
//! Vertices are visited in right-endpoint order `v_0, .., v_n`, where `v_0` is
//! an isolated weight-0 root. For every left bound `ξ` in `Ξ` the table holds
//! `W_ξ(v_i, y)`: the best weight of a normal path ending at `y` that uses only
//! intervals inside `[ξ, r_{v_i}]`, for `y = v_i` and for every neighbor `y`
//! of `v_i` that comes earlier in the order.
//!
//! Weights are scaled to integers by the common denominator of the input
//! weights, so all arithmetic is exact.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::{Vertex, Weight, WeightedIntervalGraph};
use crate::stage2::{validate_partition, HatOrigin, SpecialWeightedIntervalGraph};

const UNDEF: i64 = i64::MIN;

/// How an entry got its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Undefined,
    /// The single-vertex path `(v_i)`.
    Init,
    /// `(P_1, v_i)` with `P_1` ending at `x`.
    SelfAppend {
        x: u32,
    },
    /// Copied from `W_ξ(π_{y,v_i}, y)`.
    Delegate,
    /// `(P_1, v_i, y)` with `P_1` ending at `x`.
    Tail {
        x: u32,
    },
    /// `(P_1, v_i, P_2)` with `P_1` ending at `x` and `P_2` taken from the
    /// table at left bound `Ξ[zeta]`.
    Split {
        x: u32,
        zeta: u32,
    },
}

/// Adds the isolated root `v_0` with weight 0 left of every interval.
pub fn add_dummy_v0(sp: &SpecialWeightedIntervalGraph) -> Result<SpecialWeightedIntervalGraph> {
    if sp.v0.is_some() {
        return Err(Error::DoubleAugment);
    }
    let g = &sp.graph;
    let n = g.n();
    let lo = g.extent().map_or(1, |s| s.left);
    let mut ivs = g.intervals();
    ivs.push(crate::interval::Interval::new(n, lo - 2, lo - 1));
    let mut weights = g.weights().to_vec();
    weights.push(Weight::zero());
    let graph = WeightedIntervalGraph::new(&ivs, weights)?;
    let mut out = sp.clone();
    out.graph = graph;
    out.in_a.push(false);
    out.origin.push(HatOrigin::Root);
    let klo = sp.keys.iter().map(|k| k.0 .0).min().unwrap_or(1);
    out.keys.push(((klo - 2, 0), (klo - 1, 0)));
    out.v0 = Some(n);
    Ok(out)
}

/// `ξ ≤ l_v` and `r_v ≤ r_{v_i}`.
pub fn subgraph_contains(graph: &WeightedIntervalGraph, xi: i64, vi: Vertex, v: Vertex) -> bool {
    xi <= graph.left(v) && graph.right(v) <= graph.right(vi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpOutcome {
    pub weight: Weight,
    /// Path in the special graph, without the root.
    pub path: Vec<Vertex>,
}

/// Runs the dynamic program and reconstructs one optimal path.
pub fn max_weight_path(sp: &SpecialWeightedIntervalGraph) -> Result<DpOutcome> {
    let table = DpTable::run(sp)?;
    let (weight, a, v, y) = table.best();
    let path = table.reconstruct(a, v, y)?;
    let path: Vec<Vertex> = path
        .into_iter()
        .filter(|&u| Some(u) != table.sp.v0)
        .collect();
    Ok(DpOutcome { weight, path })
}

pub struct DpTable {
    sp: SpecialWeightedIntervalGraph,
    xi: Vec<i64>,
    xi_of: Vec<Option<i64>>,
    scale: i64,
    sw: Vec<i64>,
    /// Per sigma position, earlier neighbors in sigma order.
    earlier: Vec<Vec<Vertex>>,
    /// `pi[i][j] = π_{earlier[i][j], v_i}`.
    pi: Vec<Vec<Vertex>>,
    /// Per sigma position, the number of `Ξ` values below `r_{v_i}`.
    cnt: Vec<usize>,
    base: Vec<usize>,
    val: Vec<i64>,
    step: Vec<Step>,
    ahead_reads: u64,
}

impl DpTable {
    /// Adds the root if missing, validates the partition and fills the table.
    pub fn run(sp: &SpecialWeightedIntervalGraph) -> Result<DpTable> {
        validate_partition(&sp.graph, &sp.in_a)?;
        let sp = if sp.v0.is_some() {
            sp.clone()
        } else {
            add_dummy_v0(sp)?
        };
        let mut t = DpTable::prepare(sp)?;
        t.fill();
        Ok(t)
    }

    fn prepare(sp: SpecialWeightedIntervalGraph) -> Result<DpTable> {
        let g = &sp.graph;
        let n = g.n();
        let (scale, sw) = scale_weights(g.weights())?;

        let mut a_sorted: Vec<Vertex> = (0..n).filter(|&v| sp.in_a[v]).collect();
        a_sorted.sort_unstable_by_key(|&v| g.left(v));
        let mut xi_of = vec![None; n];
        let mut xi = Vec::new();
        for v in 0..n {
            if sp.in_a[v] {
                continue;
            }
            let at = a_sorted.partition_point(|&u| g.left(u) < g.left(v));
            let x = match at.checked_sub(1).map(|p| a_sorted[p]) {
                Some(u) if g.left(v) < g.right(u) => g.left(u),
                _ => g.left(v),
            };
            xi_of[v] = Some(x);
            xi.push(x);
            xi.push(g.left(v));
        }
        xi.sort_unstable();
        xi.dedup();

        let sigma = g.sigma();
        let earlier: Vec<Vec<Vertex>> = sigma
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .take_while(|&u| g.rank(u) < g.rank(v))
                    .collect()
            })
            .collect();
        // B-neighbors of u that come later in sigma, in sigma order.
        let mut later_b: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (i, &w) in sigma.iter().enumerate() {
            if !sp.in_a[w] {
                for &u in &earlier[i] {
                    later_b[u].push(w);
                }
            }
        }
        let pi: Vec<Vec<Vertex>> = sigma
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                earlier[i]
                    .iter()
                    .map(|&y| {
                        let lb = &later_b[y];
                        let at = lb.partition_point(|&w| g.rank(w) < g.rank(v));
                        if at == 0 {
                            y
                        } else {
                            lb[at - 1]
                        }
                    })
                    .collect()
            })
            .collect();

        let cnt: Vec<usize> = sigma
            .iter()
            .map(|&v| xi.partition_point(|&x| x < g.right(v)))
            .collect();
        let mut base = Vec::with_capacity(n + 1);
        let mut total = 0usize;
        for i in 0..n {
            base.push(total);
            total += cnt[i] * (1 + earlier[i].len());
        }
        base.push(total);
        Ok(DpTable {
            xi,
            xi_of,
            scale,
            sw,
            earlier,
            pi,
            cnt,
            base,
            val: vec![UNDEF; total],
            step: vec![Step::Undefined; total],
            ahead_reads: 0,
            sp,
        })
    }

    fn slot_index(&self, pos: usize, a: usize, slot: usize) -> usize {
        self.base[pos] + a * (1 + self.earlier[pos].len()) + slot
    }

    /// Table index of `W_{Ξ[a]}(v, y)`, if such an entry can exist.
    fn index_of(&self, a: usize, v: Vertex, y: Vertex) -> Option<usize> {
        let g = &self.sp.graph;
        let pos = g.rank(v);
        if a >= self.cnt[pos] {
            return None;
        }
        let slot = if v == y {
            0
        } else {
            let e = &self.earlier[pos];
            let j = e.partition_point(|&u| g.rank(u) < g.rank(y));
            if j == e.len() || e[j] != y {
                return None;
            }
            j + 1
        };
        Some(self.slot_index(pos, a, slot))
    }

    fn fill(&mut self) {
        let mut val = std::mem::take(&mut self.val);
        let mut step = std::mem::take(&mut self.step);
        let mut ahead = 0;
        for i in 0..self.sp.graph.n() {
            self.fill_position(i, &mut val, &mut step, &mut ahead);
        }
        self.val = val;
        self.step = step;
        self.ahead_reads = ahead;
    }

    fn fill_position(&self, i: usize, val: &mut [i64], steps: &mut [Step], ahead: &mut u64) {
        let g = &self.sp.graph;
        let mut read = |a: usize, v: Vertex, y: Vertex, val: &[i64]| -> i64 {
            if g.rank(v) >= i {
                *ahead += 1;
            }
            self.index_of(a, v, y).map_or(UNDEF, |ix| val[ix])
        };
        let v = g.sigma()[i];
        let (lv, wv) = (g.left(v), self.sw[v]);
        let e = &self.earlier[i];
        let pis = &self.pi[i];
        let er: Vec<i64> = e.iter().map(|&x| g.right(x)).collect();
        // om[c] = best W_ξ(π_{x,v}, x) over the first c earlier neighbors.
        let mut om: Vec<(i64, u32)> = vec![(UNDEF, 0); e.len() + 1];
        for a in 0..self.cnt[i] {
            let xi = self.xi[a];
            for j in 0..e.len() {
                let mut cur = om[j];
                if xi <= g.left(e[j]) {
                    let w = read(a, pis[j], e[j], val);
                    if w != UNDEF && w > cur.0 {
                        cur = (w, e[j] as u32);
                    }
                }
                om[j + 1] = cur;
            }

            let ix = self.slot_index(i, a, 0);
            if xi <= lv {
                let (mut best, mut step) = (wv, Step::Init);
                let (w1, x) = om[e.len()];
                if w1 != UNDEF && w1 + wv > best {
                    best = w1 + wv;
                    step = Step::SelfAppend { x };
                }
                val[ix] = best;
                steps[ix] = step;
            }

            for j in 0..e.len() {
                let y = e[j];
                let ly = g.left(y);
                if xi > ly {
                    continue;
                }
                let mut best = read(a, pis[j], y, val);
                let mut step = Step::Delegate;
                if xi <= lv && lv < ly {
                    let wy = self.sw[y];
                    // Independent of ζ, so evaluated once before the ζ loop.
                    let (w1, x) = om[er.partition_point(|&r| r < ly)];
                    if w1 != UNDEF && w1 + wv + wy > best {
                        best = w1 + wv + wy;
                        step = Step::Tail { x };
                    }
                    let lo = self.xi.partition_point(|&z| z <= lv);
                    let hi = self.xi.partition_point(|&z| z <= ly);
                    for b in lo..hi {
                        let (w1, x) = om[er.partition_point(|&r| r < self.xi[b])];
                        if w1 == UNDEF {
                            continue;
                        }
                        let w2 = read(b, pis[j], y, val);
                        if w2 != UNDEF && w1 + wv + w2 > best {
                            best = w1 + wv + w2;
                            step = Step::Split { x, zeta: b as u32 };
                        }
                    }
                }
                let ix = self.slot_index(i, a, j + 1);
                val[ix] = best;
                steps[ix] = step;
            }
        }
    }

    pub fn graph(&self) -> &WeightedIntervalGraph {
        &self.sp.graph
    }

    pub fn special(&self) -> &SpecialWeightedIntervalGraph {
        &self.sp
    }

    /// Sorted `Ξ`.
    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    /// `ξ_v` for `v ∈ B`.
    pub fn xi_of(&self, v: Vertex) -> Option<i64> {
        self.xi_of[v]
    }

    /// `π_{u,v}` for adjacent `u` earlier than `v`.
    pub fn pi(&self, u: Vertex, v: Vertex) -> Option<Vertex> {
        let g = &self.sp.graph;
        let pos = g.rank(v);
        let e = &self.earlier[pos];
        let j = e.partition_point(|&w| g.rank(w) < g.rank(u));
        (j < e.len() && e[j] == u).then(|| self.pi[pos][j])
    }

    fn unscale(&self, w: i64) -> Weight {
        Weight::new(w, self.scale)
    }

    /// `W_{Ξ[a]}(v, y)`, or `None` when undefined.
    pub fn entry(&self, a: usize, v: Vertex, y: Vertex) -> Option<Weight> {
        let ix = self.index_of(a, v, y)?;
        (self.val[ix] != UNDEF).then(|| self.unscale(self.val[ix]))
    }

    /// `ω_{Ξ[a]}(q, v)`: best `W(π_{x,v}, x)` over earlier neighbors `x` of
    /// `v` inside the window with `r_x < q`.
    pub fn omega(&self, a: usize, v: Vertex, q: i64) -> Option<Weight> {
        let g = &self.sp.graph;
        let pos = g.rank(v);
        let mut best = UNDEF;
        for (j, &x) in self.earlier[pos].iter().enumerate() {
            if g.right(x) >= q {
                break;
            }
            if self.xi[a] <= g.left(x) {
                if let Some(ix) = self.index_of(a, self.pi[pos][j], x) {
                    best = best.max(self.val[ix]);
                }
            }
        }
        (best != UNDEF).then(|| self.unscale(best))
    }

    /// Reads of entries belonging to the current or a later outer iteration.
    pub fn ahead_reads(&self) -> u64 {
        self.ahead_reads
    }

    /// Optimum over the widest window: `(weight, ξ-index, v, y)`.
    pub fn best(&self) -> (Weight, usize, Vertex, Vertex) {
        let g = &self.sp.graph;
        let mut best = (UNDEF, 0, 0, 0);
        for (i, &v) in g.sigma().iter().enumerate() {
            if self.cnt[i] == 0 {
                continue;
            }
            for slot in 0..=self.earlier[i].len() {
                let w = self.val[self.slot_index(i, 0, slot)];
                if w > best.0 {
                    let y = if slot == 0 {
                        v
                    } else {
                        self.earlier[i][slot - 1]
                    };
                    best = (w, 0, v, y);
                }
            }
        }
        (self.unscale(best.0.max(0)), best.1, best.2, best.3)
    }

    /// Replays the producing steps of `W_{Ξ[a]}(v, y)` into a path.
    pub fn reconstruct(&self, a: usize, v: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
        enum Job {
            Expand(usize, Vertex, Vertex),
            Emit(Vertex),
        }
        let mut path = Vec::new();
        let mut stack = vec![Job::Expand(a, v, y)];
        let mut budget = self.val.len() + self.sp.graph.n() + 1;
        while let Some(job) = stack.pop() {
            if budget == 0 {
                return Err(Error::CorruptParentChain);
            }
            budget -= 1;
            let (a, v, y) = match job {
                Job::Emit(u) => {
                    path.push(u);
                    continue;
                }
                Job::Expand(a, v, y) => (a, v, y),
            };
            let ix = self.index_of(a, v, y).ok_or(Error::CorruptParentChain)?;
            let pi = |x: u32| self.pi(x as Vertex, v).ok_or(Error::CorruptParentChain);
            match self.step[ix] {
                Step::Undefined => return Err(Error::CorruptParentChain),
                Step::Init => stack.push(Job::Emit(v)),
                Step::SelfAppend { x } => {
                    stack.push(Job::Emit(v));
                    stack.push(Job::Expand(a, pi(x)?, x as Vertex));
                }
                Step::Delegate => {
                    let p = self.pi(y, v).ok_or(Error::CorruptParentChain)?;
                    stack.push(Job::Expand(a, p, y));
                }
                Step::Tail { x } => {
                    stack.push(Job::Emit(y));
                    stack.push(Job::Emit(v));
                    stack.push(Job::Expand(a, pi(x)?, x as Vertex));
                }
                Step::Split { x, zeta } => {
                    let p = self.pi(y, v).ok_or(Error::CorruptParentChain)?;
                    stack.push(Job::Expand(zeta as usize, p, y));
                    stack.push(Job::Emit(v));
                    stack.push(Job::Expand(a, pi(x)?, x as Vertex));
                }
            }
        }
        Ok(path)
    }
}

/// Common denominator of all weights and the scaled integer weights.
fn scale_weights(weights: &[Weight]) -> Result<(i64, Vec<i64>)> {
    let mut scale: i64 = 1;
    for w in weights {
        let d = *w.denom();
        let l = (scale as i128).lcm(&(d as i128));
        scale = i64::try_from(l).map_err(|_| Error::WeightOverflow)?;
    }
    let mut total: i128 = 0;
    let mut out = Vec::with_capacity(weights.len());
    for w in weights {
        let s = *w.numer() as i128 * (scale / *w.denom()) as i128;
        total += s;
        out.push(i64::try_from(s).map_err(|_| Error::WeightOverflow)?);
    }
    if total > (i64::MAX / 2) as i128 {
        return Err(Error::WeightOverflow);
    }
    Ok((scale, out))
}
