mod common;

use std::collections::HashMap;

use proptest::prelude::*;

use common::{
    all_paths, brute_matching, clustered, heaviest_normal_paths, normal_path_violations,
    normal_paths, planted, random, random_simple_graph,
};
use fpt_ip::claw::{exact_deletion_set, find_any_claw, find_claw_at, is_proper_representation};
use fpt_ip::dp::{max_weight_path, DpTable};
use fpt_ip::generate::{generate, random_proper, random_special, GeneratorSpec, Kind};
use fpt_ip::interval::{
    is_normal_path, make_semi_proper, normalize_endpoints, normalize_path, path_weight,
    validate_path, Vertex, Weight, WeightedIntervalGraph,
};
use fpt_ip::matching::{decide_matching, kernel_bound, kernelize, max_matching, Verdict};
use fpt_ip::oracle::{brute_longest_path, brute_max_weight_path, subset_longest_path};
use fpt_ip::pipeline::{longest_path, longest_path_traced, Trace};
use fpt_ip::stage1::is_reducible;
use fpt_ip::stage2::{is_weakly_reducible, kappa_bound, HatOrigin};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn has_claw_with(g: &WeightedIntervalGraph, u: Vertex, v: Vertex) -> bool {
    // With I_v inside I_u the only possible claw has centre u and leaf v.
    let others: Vec<Vertex> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&x| x != v && !g.adjacent(x, v))
        .collect();
    others
        .iter()
        .any(|&a| others.iter().any(|&b| a < b && !g.adjacent(a, b)))
}

fn traced(g: &WeightedIntervalGraph) -> Trace {
    longest_path_traced(g).unwrap().1
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn umbrella_property(n in 1usize..25, seed in any::<u64>()) {
        let g = random(n, seed);
        let s = g.sigma();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                for c in b + 1..s.len() {
                    if g.adjacent(s[a], s[c]) {
                        prop_assert!(g.adjacent(s[b], s[c]));
                    }
                }
            }
        }
    }

    #[test]
    fn semi_proper_keeps_edges_and_witnesses_containment(n in 1usize..20, seed in any::<u64>()) {
        let g = random(n, seed);
        let sp = make_semi_proper(&g);
        prop_assert_eq!(sp.edges(), g.edges());
        prop_assert!(sp.is_normalized());
        for u in 0..n {
            for v in 0..n {
                if sp.contains(u, v) {
                    prop_assert!(has_claw_with(&sp, u, v), "containment {} ⊃ {} without claw", u, v);
                }
            }
        }
    }

    #[test]
    fn claw_free_graphs_become_proper(n in 1usize..30, seed in any::<u64>()) {
        let g = random(n, seed);
        let claw_free = (0..n).all(|u| find_claw_at(&g, u).is_none());
        prop_assert_eq!(claw_free, is_proper_representation(&make_semi_proper(&g)));
    }

    #[test]
    fn normalize_endpoints_idempotent_and_order_isomorphic(n in 1usize..30, seed in any::<u64>()) {
        let g = random(n, seed);
        let scaled: Vec<_> = g.intervals().into_iter()
            .map(|iv| fpt_ip::Interval::new(iv.vertex, 7 * iv.left - 3, 7 * iv.right + 2)).collect();
        let h = fpt_ip::interval::build(&scaled).unwrap();
        let a = normalize_endpoints(&h);
        prop_assert_eq!(normalize_endpoints(&a), a.clone());
        prop_assert_eq!(a.sigma(), h.sigma());
        prop_assert_eq!(a.edges(), h.edges());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(a.contains(u, v), h.contains(u, v));
            }
        }
    }

    #[test]
    fn approx_deletion_set_certificates(n in 1usize..40, seed in any::<u64>()) {
        let g = random(n, seed);
        let d = fpt_ip::claw::approx_deletion_set(&g);
        prop_assert_eq!(d.len(), 4 * d.certificates.len());
        let mut seen = vec![false; n];
        for w in &d.certificates {
            prop_assert!(w.is_induced_in(&g));
            for v in w.vertices() {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(find_any_claw(&g, &d.mask(n)).is_none());
    }

    #[test]
    fn proper_generators_are_claw_free(n in 1usize..60, seed in any::<u64>()) {
        let g = generate(&GeneratorSpec { kind: Kind::Proper, n, k: 0, seed }).unwrap();
        prop_assert!(is_proper_representation(&g));
        let h = random_proper(n, seed);
        prop_assert!(is_proper_representation(&h));
        prop_assert!((0..n).all(|u| find_claw_at(&h, u).is_none()));
    }

    #[test]
    fn oracles_agree(n in 1usize..13, seed in any::<u64>()) {
        let g = random(n, seed);
        let (a, p) = brute_longest_path(&g).unwrap();
        let (b, q) = subset_longest_path(&g).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(Weight::from(a as i64), brute_max_weight_path(&g).unwrap());
        validate_path(&g, &p).unwrap();
        validate_path(&g, &q).unwrap();
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn normalize_path_on_path_vertex_sets(n in 1usize..8, seed in any::<u64>()) {
        let g = random(n, seed);
        let mut sets: Vec<Vec<Vertex>> = all_paths(&g).into_iter().map(|mut p| { p.sort_unstable(); p }).collect();
        sets.sort();
        sets.dedup();
        for set in sets {
            let p = normalize_path(&g, &set).unwrap();
            prop_assert!(is_normal_path(&g, &p).unwrap());
            let mut back = p.clone();
            back.sort_unstable();
            prop_assert_eq!(back, set);
        }
    }

    #[test]
    fn normal_path_properties(n in 1usize..=10, seed in any::<u64>()) {
        let bad = normal_path_violations(&random(n, seed));
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn planted_deletion_sets(n in 4usize..12, k in 0usize..=3, seed in any::<u64>()) {
        let g = planted(n, k, seed);
        let exact = exact_deletion_set(&g, k).unwrap();
        prop_assert!(exact.is_some(), "planted instance needs more than {} deletions", k);
        let exact = exact.unwrap().len();
        let approx = fpt_ip::claw::approx_deletion_set(&g).len();
        prop_assert!(exact <= approx && approx <= 4 * exact);
    }
}

fn stage_checks(g: &WeightedIntervalGraph) -> Result<(), TestCaseError> {
    let (res, tr) = longest_path_traced(g).unwrap();
    let k = tr.deletion.k();
    let w = &tr.work;
    let sharp = &tr.st1.g_sharp;

    // First reduction.
    prop_assert_eq!(tr.fam1.p_sum(), 2 * (k + 1));
    for s in tr.fam1.s1() {
        prop_assert!(is_reducible(w, &s));
    }
    prop_assert_eq!(sharp.total_weight(), w.total_weight());
    let points: Vec<i64> = tr
        .fam1
        .l_points
        .iter()
        .chain(&tr.fam1.r_points)
        .copied()
        .collect();
    for &v in &tr.st1.u_sharp {
        let (l, r) = tr.st1.coords[v];
        prop_assert!(
            points.iter().any(|&p| l <= p && p <= r),
            "free vertex {} crosses no point of D",
            v
        );
    }

    // Second reduction.
    prop_assert!(tr.fam2.t.len() <= 18 * k + 16);
    prop_assert!(tr.fam2.groups.keys().all(|&(j, i)| j < i));
    prop_assert!((tr.special.b_size() as u128) <= kappa_bound(k));
    prop_assert_eq!(tr.special.kappa, kappa_bound(k));
    tr.special.validate().unwrap();
    for s in tr.fam2.s2() {
        prop_assert!(is_weakly_reducible(sharp, &s));
    }
    let hat = &tr.special.graph;
    prop_assert_eq!(hat.total_weight(), sharp.total_weight());
    for grp in &tr.special.groups {
        let l = grp
            .members
            .iter()
            .map(|&v| tr.st1.coords[v].0)
            .min()
            .unwrap();
        let r = grp
            .members
            .iter()
            .map(|&v| tr.st1.coords[v].1)
            .max()
            .unwrap();
        prop_assert_eq!(grp.clones.len(), grp.members.len().min(tr.st1.d.len() + 4));
        for &c in &grp.clones {
            for &c2 in &grp.clones {
                if c != c2 {
                    prop_assert!(hat.adjacent(c, c2) && !hat.contains(c, c2));
                }
            }
            for x in 0..hat.n() {
                if let HatOrigin::Sharp(s) = tr.special.origin[x] {
                    let (sl, sr) = tr.st1.coords[s];
                    prop_assert_eq!(hat.adjacent(c, x), sl < r && l < sr);
                }
            }
        }
    }

    // Lifting.
    validate_path(g, &res.path).unwrap();
    prop_assert_eq!(res.path.len(), res.length);
    prop_assert!(tr.dp.weight.is_integer());
    prop_assert_eq!(tr.dp.weight, Weight::from(res.length as i64));
    validate_path(sharp, &tr.sharp_path).unwrap();
    prop_assert_eq!(path_weight(sharp, &tr.sharp_path), tr.dp.weight);
    Ok(())
}

proptest! {
    #![proptest_config(config(150))]

    #[test]
    fn stage_invariants_random(n in 1usize..40, seed in any::<u64>()) {
        stage_checks(&random(n, seed))?;
    }

    #[test]
    fn stage_invariants_planted(n in 2usize..60, k in 0usize..6, seed in any::<u64>()) {
        stage_checks(&planted(n, k, seed))?;
    }

    #[test]
    fn stage_invariants_clustered(seed in any::<u64>()) {
        stage_checks(&clustered(seed))?;
    }

    #[test]
    fn end_to_end_matches_oracle(n in 1usize..=14, seed in any::<u64>()) {
        let g = random(n, seed);
        prop_assert_eq!(longest_path(&g).unwrap().length, subset_longest_path(&g).unwrap().0);
    }

    #[test]
    fn end_to_end_clustered(seed in any::<u64>()) {
        let g = clustered(seed);
        prop_assert_eq!(longest_path(&g).unwrap().length, subset_longest_path(&g).unwrap().0);
    }

    #[test]
    fn connected_proper_is_traceable(n in 1usize..150, seed in any::<u64>()) {
        prop_assert_eq!(longest_path(&random_proper(n, seed)).unwrap().length, n);
    }
}

/// Number of maximal runs of `set` members along `path`.
fn runs(path: &[Vertex], in_set: &[bool]) -> usize {
    path.iter()
        .enumerate()
        .filter(|&(i, &v)| in_set[v] && (i == 0 || !in_set[path[i - 1]]))
        .count()
}

fn weight_chain(g: &WeightedIntervalGraph) -> Result<(), TestCaseError> {
    let tr = traced(g);
    let want = Weight::from(subset_longest_path(g).unwrap().0 as i64);
    let w = &tr.work;
    let sharp = &tr.st1.g_sharp;
    prop_assert_eq!(brute_max_weight_path(w).unwrap(), want);
    prop_assert_eq!(brute_max_weight_path(sharp).unwrap(), want);
    prop_assert_eq!(brute_max_weight_path(&tr.special.graph).unwrap(), want);
    prop_assert_eq!(tr.dp.weight, want);

    let (best, heavy) = heaviest_normal_paths(w);
    prop_assert_eq!(best, want);
    for s in tr.fam1.s1() {
        for p in &heavy {
            let hit = s.iter().filter(|v| p.contains(v)).count();
            prop_assert!(
                hit == 0 || hit == s.len(),
                "reducible set {:?} split by {:?}",
                s,
                p
            );
        }
    }

    let (best, heavy) = heaviest_normal_paths(sharp);
    prop_assert_eq!(best, want);
    let cap = tr.st1.d.len() + 4;
    let mut by_set: HashMap<Vec<Vertex>, Vec<&Vec<Vertex>>> = HashMap::new();
    for p in &heavy {
        let mut key = p.clone();
        key.sort_unstable();
        by_set.entry(key).or_default().push(p);
    }
    for s in tr.fam2.s2() {
        let mut in_s = vec![false; sharp.n()];
        for &v in &s {
            in_s[v] = true;
        }
        for (set, paths) in &by_set {
            let hit = s.iter().filter(|v| set.contains(v)).count();
            prop_assert!(
                hit == 0 || hit == s.len(),
                "weakly reducible set {:?} split",
                s
            );
            if hit == s.len() {
                let fewest = paths.iter().map(|p| runs(p, &in_s)).min().unwrap();
                prop_assert!(fewest <= s.len().min(cap));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(120))]

    #[test]
    fn stage_weight_chain_random(n in 1usize..=12, seed in any::<u64>()) {
        weight_chain(&random(n, seed))?;
    }

    #[test]
    fn stage_weight_chain_planted(n in 2usize..=9, k in 1usize..=3, seed in any::<u64>()) {
        weight_chain(&planted(n, k, seed))?;
    }
}

fn dp_checks(
    sp: &fpt_ip::stage2::SpecialWeightedIntervalGraph,
    exhaustive: bool,
) -> Result<(), TestCaseError> {
    let out = max_weight_path(sp).unwrap();
    prop_assert_eq!(out.weight, brute_max_weight_path(&sp.graph).unwrap());
    validate_path(&sp.graph, &out.path).unwrap();
    prop_assert_eq!(path_weight(&sp.graph, &out.path), out.weight);

    let t = DpTable::run(sp).unwrap();
    prop_assert_eq!(t.ahead_reads(), 0);
    let g = t.graph();
    let xi = t.xi();

    // ω against an incremental scan over earlier neighbors by right endpoint.
    for &v in g.sigma() {
        let mut earlier: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| g.rank(x) < g.rank(v))
            .collect();
        earlier.sort_unstable_by_key(|&x| g.right(x));
        for a in (0..xi.len()).filter(|&a| xi[a] < g.right(v)) {
            let mut running: Option<Weight> = None;
            for &x in &earlier {
                prop_assert_eq!(t.omega(a, v, g.right(x)), running);
                if xi[a] <= g.left(x) {
                    let pi = t.pi(x, v).unwrap();
                    if let Some(w) = t.entry(a, pi, x) {
                        running = Some(running.map_or(w, |r| r.max(w)));
                    }
                }
            }
        }
    }

    if !exhaustive {
        return Ok(());
    }
    // Every entry is the best normal path inside its window ending at y.
    let mut by_end: Vec<Vec<(i64, i64, Weight)>> = vec![Vec::new(); g.n()];
    for p in normal_paths(g) {
        let lo = p.iter().map(|&v| g.left(v)).min().unwrap();
        let hi = p.iter().map(|&v| g.right(v)).max().unwrap();
        by_end[*p.last().unwrap()].push((lo, hi, path_weight(g, &p)));
    }
    for &v in g.sigma() {
        let ys: Vec<Vertex> = std::iter::once(v)
            .chain(
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&y| g.rank(y) < g.rank(v)),
            )
            .collect();
        for a in (0..xi.len()).filter(|&a| xi[a] < g.right(v)) {
            for &y in &ys {
                let want = by_end[y]
                    .iter()
                    .filter(|&&(lo, hi, _)| xi[a] <= lo && hi <= g.right(v))
                    .map(|t| t.2)
                    .max();
                prop_assert_eq!(t.entry(a, v, y), want, "entry ξ={} v={} y={}", xi[a], v, y);
                if want.is_some() {
                    let p = t.reconstruct(a, v, y).unwrap();
                    prop_assert!(is_normal_path(g, &p).unwrap());
                    prop_assert_eq!(*p.last().unwrap(), y);
                    prop_assert_eq!(Some(path_weight(g, &p)), want);
                    prop_assert!(p
                        .iter()
                        .all(|&u| xi[a] <= g.left(u) && g.right(u) <= g.right(v)));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(150))]

    #[test]
    fn dp_on_random_special_graphs(n in 1usize..=12, seed in any::<u64>()) {
        dp_checks(&random_special(n, seed), n <= 10)?;
    }

    #[test]
    fn dp_on_pipeline_special_graphs(n in 1usize..=16, seed in any::<u64>()) {
        let tr = traced(&random(n, seed));
        if tr.special.graph.n() <= 12 {
            dp_checks(&tr.special, tr.special.graph.n() <= 10)?;
        }
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn matching_decision_matches_brute_force(n in 1usize..=12, density in 5u64..80, seed in any::<u64>()) {
        let g = random_simple_graph(n, density, seed);
        let mm = brute_matching(&g);
        prop_assert_eq!(max_matching(&g).len(), mm);
        for k in 1..=n / 2 {
            prop_assert_eq!(decide_matching(&g, k), mm >= k, "k = {}", k);
            let out = kernelize(&g, k);
            prop_assert!(out.max_probes < 3 * k);
            if let Some((h, kk, _)) = &out.kernel {
                prop_assert_eq!(out.verdict, Verdict::Kernel);
                prop_assert!(h.n() <= kernel_bound(*kk) && h.m() <= kernel_bound(*kk));
                prop_assert!((0..h.n()).all(|v| h.degree(v) >= 1 && h.degree(v) <= 2 * (kk - 1)));
            }
        }
    }
}
