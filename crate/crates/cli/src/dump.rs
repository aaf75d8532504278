//! Reduced graphs in the interval format.
//!
//! Vertices that come from the input keep their labels. Sentinels are
//! `_d0`, `_d1`, collapsed vertices `_a<i>` and clones `_c<group>_<index>`;
//! the underscore prefix is doubled until no input label starts with it.
//! Each line carries a comment `A` or `B`, followed by the input labels the
//! vertex stands for when it is not an input vertex itself.

use fpt_ip::io::{format_intervals, LabeledGraph};
use fpt_ip::pipeline::Reduction;
use fpt_ip::stage1::SharpOrigin;
use fpt_ip::stage2::HatOrigin;
use fpt_ip::Vertex;

fn prefix(input: &LabeledGraph) -> String {
    let mut p = String::from("_");
    while input.labels.iter().any(|l| l.starts_with(&p)) {
        p.push('_');
    }
    p
}

/// Label and member list of a G# vertex.
fn sharp_label(input: &LabeledGraph, red: &Reduction, p: &str, v: Vertex) -> (String, Vec<Vertex>) {
    let n = input.graph.n();
    match red.st1.origin[v] {
        SharpOrigin::Original(u) if u < n => (input.labels[u].clone(), Vec::new()),
        SharpOrigin::Original(u) => (format!("{p}d{}", u - n), Vec::new()),
        SharpOrigin::Collapsed(c) => (format!("{p}a{c}"), red.st1.back_map[c].clone()),
    }
}

fn note(input: &LabeledGraph, in_a: bool, members: &[Vertex]) -> String {
    let mut s = String::from(if in_a { "A" } else { "B" });
    for &u in members {
        s.push(' ');
        s.push_str(&input.labels[u]);
    }
    s
}

pub fn stage1(input: &LabeledGraph, red: &Reduction) -> String {
    let p = prefix(input);
    let g = &red.st1.g_sharp;
    let mut labels = Vec::with_capacity(g.n());
    let mut notes = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let (label, members) = sharp_label(input, red, &p, v);
        labels.push(label);
        notes.push(note(input, red.st1.is_a(v), &members));
    }
    format_intervals(g, &labels, &notes)
}

pub fn stage2(input: &LabeledGraph, red: &Reduction) -> String {
    let p = prefix(input);
    let sp = &red.special;
    let mut labels = Vec::with_capacity(sp.graph.n());
    let mut notes = Vec::with_capacity(sp.graph.n());
    for v in 0..sp.graph.n() {
        let (label, members) = match sp.origin[v] {
            HatOrigin::Sharp(s) => sharp_label(input, red, &p, s),
            HatOrigin::Clone { group, index } => {
                let members =
                    sp.groups[group]
                        .members
                        .iter()
                        .flat_map(|&s| match red.st1.origin[s] {
                            SharpOrigin::Original(u) => vec![u],
                            SharpOrigin::Collapsed(c) => red.st1.back_map[c].clone(),
                        });
                (format!("{p}c{group}_{index}"), members.collect())
            }
            HatOrigin::Root => (format!("{p}root"), Vec::new()),
        };
        labels.push(label);
        notes.push(note(input, sp.in_a[v], &members));
    }
    format_intervals(&sp.graph, &labels, &notes)
}
