//! End-to-end longest path: reduce, solve the special instance, lift back.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::claw::{add_dummies, approx_deletion_set, DeletionSet};
use crate::dp::{max_weight_path, DpOutcome};
use crate::error::{Error, Result};
use crate::interval::{
    greedy_normal_order, make_semi_proper, normalize_endpoints, normalize_path, path_weight,
    validate_path, Vertex, WeightedIntervalGraph,
};
use crate::stage1::{
    apply_rule1, compute_stage1_families, SharpOrigin, Stage1Families, Stage1Result,
};
use crate::stage2::{
    apply_rule2, compute_stage2_families, HatOrigin, Key, SpecialWeightedIntervalGraph,
    Stage2Families,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    /// Size of the approximate deletion set, sentinels excluded.
    pub d_size: usize,
    pub kappa: u128,
    pub a_size: usize,
    pub b_size: usize,
    pub t_preprocess_ns: u64,
    pub t_reduce1_ns: u64,
    pub t_reduce2_ns: u64,
    pub t_dp_ns: u64,
    pub t_lift_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathResult {
    pub length: usize,
    pub path: Vec<Vertex>,
    pub stats: Stats,
}

/// Every intermediate object of one run.
#[derive(Clone, Debug)]
pub struct Trace {
    /// Semi-proper, normalized, with sentinels; vertex ids match the input.
    pub work: WeightedIntervalGraph,
    pub deletion: DeletionSet,
    pub fam1: Stage1Families,
    pub st1: Stage1Result,
    pub fam2: Stage2Families,
    pub special: SpecialWeightedIntervalGraph,
    pub dp: DpOutcome,
    /// DP path lifted to G#.
    pub sharp_path: Vec<Vertex>,
}

/// Output of both reductions.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub work: WeightedIntervalGraph,
    pub deletion: DeletionSet,
    pub fam1: Stage1Families,
    pub st1: Stage1Result,
    pub fam2: Stage2Families,
    pub special: SpecialWeightedIntervalGraph,
}

fn elapsed(t: Instant) -> u64 {
    t.elapsed().as_nanos() as u64
}

/// Preprocessing and both reductions, for any nonnegative weights.
pub fn reduce(graph: &WeightedIntervalGraph) -> Result<Reduction> {
    reduce_timed(graph, &mut Stats::default())
}

fn reduce_timed(graph: &WeightedIntervalGraph, stats: &mut Stats) -> Result<Reduction> {
    let t = Instant::now();
    let g = make_semi_proper(&normalize_endpoints(graph));
    let d = approx_deletion_set(&g);
    let (g, deletion) = add_dummies(&g, &d)?;
    let work = normalize_endpoints(&g);
    stats.d_size = deletion.k();
    stats.t_preprocess_ns = elapsed(t);

    let t = Instant::now();
    let fam1 = compute_stage1_families(&work, &deletion)?;
    let st1 = apply_rule1(&work, &fam1)?;
    stats.t_reduce1_ns = elapsed(t);

    let t = Instant::now();
    let fam2 = compute_stage2_families(&st1)?;
    let special = apply_rule2(&st1, &fam2)?;
    stats.kappa = special.kappa;
    stats.a_size = special.a().len();
    stats.b_size = special.b_size();
    stats.t_reduce2_ns = elapsed(t);
    Ok(Reduction {
        work,
        deletion,
        fam1,
        st1,
        fam2,
        special,
    })
}

pub fn longest_path(graph: &WeightedIntervalGraph) -> Result<PathResult> {
    longest_path_traced(graph).map(|(r, _)| r)
}

pub fn longest_path_traced(graph: &WeightedIntervalGraph) -> Result<(PathResult, Trace)> {
    if !graph.has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let mut stats = Stats {
        n: graph.n(),
        m: graph.m(),
        ..Stats::default()
    };
    let Reduction {
        work,
        deletion,
        fam1,
        st1,
        fam2,
        special,
    } = reduce_timed(graph, &mut stats)?;

    let t = Instant::now();
    let dp = max_weight_path(&special)?;
    stats.t_dp_ns = elapsed(t);

    let t = Instant::now();
    let sharp_path = lift_stage2(&dp.path, &special, &st1)?;
    let lifted = lift_stage1(&sharp_path, &st1, &work)?;
    let (d0, d1) = deletion.dummies.ok_or(Error::MissingDummies)?;
    let path: Vec<Vertex> = lifted.into_iter().filter(|&v| v != d0 && v != d1).collect();
    validate_path(graph, &path)?;
    stats.t_lift_ns = elapsed(t);

    if !dp.weight.is_integer() || dp.weight.to_integer() != path.len() as i64 {
        return Err(Error::Invariant(format!(
            "dp weight {} but lifted path has {} vertices",
            dp.weight,
            path.len()
        )));
    }
    let result = PathResult {
        length: path.len(),
        path,
        stats,
    };
    Ok((
        result,
        Trace {
            work,
            deletion,
            fam1,
            st1,
            fam2,
            special,
            dp,
            sharp_path,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    Sharp(Vertex),
    Clone(usize),
}

#[derive(Clone, Copy, Debug)]
struct Item {
    l: Key,
    r: Key,
    tag: Tag,
}

fn meets(a: &Item, b: &Item) -> bool {
    a.l < b.r && b.l < a.r
}

fn is_walk(items: &[Item]) -> bool {
    items.windows(2).all(|w| meets(&w[0], &w[1]))
}

fn normalized(items: &[Item]) -> Option<Vec<Item>> {
    let keys: Vec<(Key, Key)> = items.iter().map(|it| (it.l, it.r)).collect();
    greedy_normal_order(&keys).map(|ord| ord.into_iter().map(|i| items[i]).collect())
}

/// Maps a path of the special graph back to G#.
///
/// Groups touched by the path are completed with their missing clones, the
/// path is put in normal form, and then, group by group from the last one,
/// the first `c-1` clones in path order become the first `c-1` members of the
/// group and the last clone becomes the remaining members, all in sigma
/// order. A failed substitution is retried once on a re-normalized path.
pub fn lift_stage2(
    path: &[Vertex],
    sp: &SpecialWeightedIntervalGraph,
    st1: &Stage1Result,
) -> Result<Vec<Vertex>> {
    validate_path(&sp.graph, path)?;
    let mut group_of = vec![usize::MAX; sp.graph.n()];
    for (gi, grp) in sp.groups.iter().enumerate() {
        for &c in &grp.clones {
            group_of[c] = gi;
        }
    }
    let item = |v: Vertex| -> Option<Item> {
        let (l, r) = sp.keys[v];
        match sp.origin[v] {
            HatOrigin::Sharp(s) => Some(Item {
                l,
                r,
                tag: Tag::Sharp(s),
            }),
            HatOrigin::Clone { .. } => Some(Item {
                l,
                r,
                tag: Tag::Clone(v),
            }),
            HatOrigin::Root => None,
        }
    };

    let mut used = vec![false; sp.graph.n()];
    let mut last_at = vec![usize::MAX; sp.groups.len()];
    for (i, &v) in path.iter().enumerate() {
        used[v] = true;
        if group_of[v] != usize::MAX {
            last_at[group_of[v]] = i;
        }
    }
    let mut items = Vec::with_capacity(path.len());
    for (i, &v) in path.iter().enumerate() {
        items.extend(item(v));
        if group_of[v] != usize::MAX && last_at[group_of[v]] == i {
            for &c in &sp.groups[group_of[v]].clones {
                if !used[c] {
                    items.extend(item(c));
                }
            }
        }
    }
    if !is_walk(&items) {
        return Err(Error::LiftFailure(
            "clone augmentation broke the path".into(),
        ));
    }
    let mut items =
        normalized(&items).ok_or_else(|| Error::LiftFailure("path has no normal order".into()))?;

    let sharp_item = |s: Vertex| {
        let (l, r) = st1.coords[s];
        Item {
            l: (l, 0),
            r: (r, 0),
            tag: Tag::Sharp(s),
        }
    };
    for gi in (0..sp.groups.len()).rev() {
        if last_at[gi] == usize::MAX {
            continue;
        }
        let grp = &sp.groups[gi];
        let substitute = |items: &[Item]| -> Vec<Item> {
            let c = grp.clones.len();
            let mut seen = 0;
            let mut out = Vec::with_capacity(items.len() + grp.members.len());
            for it in items {
                match it.tag {
                    Tag::Clone(v) if group_of[v] == gi => {
                        seen += 1;
                        if seen < c {
                            out.push(sharp_item(grp.members[seen - 1]));
                        } else {
                            out.extend(grp.members[c - 1..].iter().map(|&s| sharp_item(s)));
                        }
                    }
                    _ => out.push(*it),
                }
            }
            out
        };
        let first = substitute(&items);
        items = if is_walk(&first) {
            first
        } else {
            let renorm = normalized(&items)
                .ok_or_else(|| Error::LiftFailure(format!("group {gi}: no normal order")))?;
            let second = substitute(&renorm);
            if !is_walk(&second) {
                return Err(Error::LiftFailure(format!(
                    "group {gi}: substitution is not a path"
                )));
            }
            second
        };
    }

    let out: Vec<Vertex> = items
        .iter()
        .map(|it| match it.tag {
            Tag::Sharp(s) => Ok(s),
            Tag::Clone(_) => Err(Error::LiftFailure("clone left after substitution".into())),
        })
        .collect::<Result<_>>()?;
    validate_path(&st1.g_sharp, &out)
        .map_err(|e| Error::LiftFailure(format!("result invalid in G#: {e}")))?;
    Ok(out)
}

/// Maps a path of G# back to `graph` by expanding every collapsed vertex into
/// its run in sigma order, after putting the path in normal form.
pub fn lift_stage1(
    path: &[Vertex],
    st1: &Stage1Result,
    graph: &WeightedIntervalGraph,
) -> Result<Vec<Vertex>> {
    validate_path(&st1.g_sharp, path)?;
    let norm = normalize_path(&st1.g_sharp, path)
        .map_err(|_| Error::LiftFailure("path has no normal order".into()))?;
    let mut out = Vec::with_capacity(graph.n());
    for &v in &norm {
        match st1.origin[v] {
            SharpOrigin::Original(u) => out.push(u),
            SharpOrigin::Collapsed(c) => out.extend_from_slice(&st1.back_map[c]),
        }
    }
    if validate_path(graph, &out).is_ok() {
        return Ok(out);
    }
    let retry = normalize_path(graph, &out)
        .map_err(|_| Error::LiftFailure("expanded set has no normal order".into()))?;
    validate_path(graph, &retry)
        .map_err(|e| Error::LiftFailure(format!("expansion invalid: {e}")))?;
    debug_assert_eq!(path_weight(graph, &retry), path_weight(&st1.g_sharp, path));
    Ok(retry)
}
