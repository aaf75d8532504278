//! Seeded instance generators.
//!
//! Randomness comes from PCG-XSL-RR 128/64 (`Pcg64`) started at state
//! `seed ^ 0xcafef00dd15ea5e5` on stream `0xa02bdbf7bb3c0a7ac28fa16a64abf96`.
//! Bounded draws use the high 64 bits of `x * bound` for a raw 64-bit output
//! `x`, and shuffles are Fisher-Yates from the back, so corpora can be
//! reproduced from this description alone.

use rand_pcg::rand_core::Rng;
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{build, normalize_endpoints, Interval, Weight, WeightedIntervalGraph};
use crate::stage2::SpecialWeightedIntervalGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Random,
    Proper,
    Planted,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "random" => Ok(Kind::Random),
            "proper" => Ok(Kind::Proper),
            "planted" => Ok(Kind::Planted),
            _ => Err(Error::InvalidSpec(format!("unknown kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: Kind,
    /// Vertex count; for `Planted`, the length of the staircase.
    pub n: usize,
    /// Number of wide intervals (`Planted` only).
    pub k: usize,
    pub seed: u64,
}

pub struct SeededRng(Pcg64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Pcg64::new(
            (seed ^ 0xcafe_f00d_d15e_a5e5) as u128,
            0x0a02_bdbf_7bb3_c0a7_ac28_fa16_a64a_bf96,
        ))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw from `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<WeightedIntervalGraph> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let mut rng = SeededRng::new(spec.seed);
    match spec.kind {
        Kind::Random => {
            let mut pts: Vec<i64> = (1..=2 * spec.n as i64).collect();
            rng.shuffle(&mut pts);
            let ivs: Vec<Interval> = pts
                .chunks(2)
                .enumerate()
                .map(|(v, c)| Interval::new(v, c[0].min(c[1]), c[0].max(c[1])))
                .collect();
            build(&ivs)
        }
        Kind::Proper => build(&staircase(spec.n, 1)),
        Kind::Planted => {
            let scale = spec.k as i64 + 1;
            let mut ivs = staircase(spec.n, scale);
            let n = spec.n as u64;
            for t in 0..spec.k {
                let s = rng.below(n) as i64;
                let len = 2 + rng.below((n / 4).max(1)) as i64;
                let e = (s + len).min(spec.n as i64 - 1);
                let off = t as i64 + 1;
                ivs.push(Interval::new(
                    spec.n + t,
                    2 * s * scale + off,
                    (2 * e + 3) * scale + off,
                ));
            }
            Ok(normalize_endpoints(&build(&ivs)?))
        }
    }
}

/// `[2j, 2j+3]` for `j < n`, coordinates multiplied by `scale`.
fn staircase(n: usize, scale: i64) -> Vec<Interval> {
    (0..n)
        .map(|j| Interval::new(j, 2 * j as i64 * scale, (2 * j as i64 + 3) * scale))
        .collect()
}

/// Connected proper representation with random overlaps.
pub fn random_proper(n: usize, seed: u64) -> WeightedIntervalGraph {
    let mut rng = SeededRng::new(seed);
    let mut a = Vec::with_capacity(n + 1);
    let mut cur = 0i64;
    for _ in 0..=n {
        a.push(cur);
        cur += rng.range(1, 3);
    }
    let mut ivs = Vec::with_capacity(n);
    let mut prev_b = i64::MIN;
    for i in 0..n {
        let lo = a[i + 1].max(prev_b + 1);
        let b = rng.range(lo, lo + 2);
        prev_b = b;
        ivs.push(Interval::new(i, 4 * a[i], 4 * b + 2));
    }
    normalize_endpoints(&build(&ivs).expect("distinct endpoints by construction"))
}

/// Random special graph with small rational weights: a random representation
/// in which a random maximal set of disjoint, non-nesting intervals forms `A`.
pub fn random_special(n: usize, seed: u64) -> SpecialWeightedIntervalGraph {
    let mut rng = SeededRng::new(seed);
    let mut pts: Vec<i64> = (1..=2 * n as i64).collect();
    rng.shuffle(&mut pts);
    let ivs: Vec<Interval> = pts
        .chunks(2)
        .enumerate()
        .map(|(v, c)| Interval::new(v, c[0].min(c[1]), c[0].max(c[1])))
        .collect();
    let weights: Vec<Weight> = (0..n)
        .map(|_| Weight::new(rng.range(0, 6), rng.range(1, 4)))
        .collect();
    let g = WeightedIntervalGraph::new(&ivs, weights).expect("valid by construction");
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut in_a = vec![false; n];
    for v in order {
        if rng.below(3) == 0 {
            continue;
        }
        let holds_other = (0..n).any(|u| g.contains(v, u));
        let clashes = (0..n).any(|u| in_a[u] && g.adjacent(u, v));
        if !holds_other && !clashes {
            in_a[v] = true;
        }
    }
    SpecialWeightedIntervalGraph::new(g, in_a).expect("partition valid by construction")
}
